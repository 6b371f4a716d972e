#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdint>
#include <vector>

#include "strengthlab/degeneration.hpp"
#include "strengthlab/errors.hpp"
#include "strengthlab/forms.hpp"
#include "strengthlab/matrix.hpp"
#include "strengthlab/qrank.hpp"
#include "strengthlab/rng.hpp"

using namespace strengthlab;

namespace {

CubicForm cubic(const FieldPtr& f, std::uint32_t n,
                std::vector<std::pair<std::array<std::uint32_t, 3>, std::uint32_t>> raw) {
    return CubicForm::from_terms(f, n, raw);
}

// f = sum of j <= 3 random (linear) * (quadric) products: q-rank <= 3 by
// construction and never zero by rejection.
CubicForm random_low_rank(const FieldPtr& f, std::uint32_t n, SplitMix64& rng) {
    for (;;) {
        CubicForm acc(f, n);
        const int j = 1 + static_cast<int>(rng.below(3));
        for (int i = 0; i < j; ++i) {
            std::vector<std::uint32_t> lc(n);
            for (auto& x : lc) x = static_cast<std::uint32_t>(rng.below(f->q()));
            std::vector<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>> monos;
            for (std::uint32_t a = 0; a < n; ++a)
                for (std::uint32_t b = a; b < n; ++b) {
                    auto c = static_cast<std::uint32_t>(rng.below(f->q()));
                    if (c) monos.emplace_back(a, b, c);
                }
            acc = add(acc, mul(LinearForm(f, lc), QuadraticForm::from_monomials(f, n, monos)));
        }
        if (!acc.is_zero()) return acc;
    }
}

}  // namespace

TEST_CASE("verify_certificate replays steps and pinpoints failures") {
    auto f5 = Field::prime(5);
    auto x3 = cubic(f5, 2, {{{0, 0, 0}, 1}});
    auto y3 = cubic(f5, 2, {{{1, 1, 1}, 1}});
    Matrix swap(f5, 2, 2, {0, 1, 1, 0});

    SUBCASE("a coordinate swap carries x^3 to y^3") {
        DegenerationCertificate cert{x3, {CoordinateChange{swap}}, y3};
        auto out = verify_certificate(cert);
        CHECK(out.ok);
    }
    SUBCASE("a weight-positive limit kills the graded tail") {
        auto f = cubic(f5, 2, {{{0, 0, 0}, 1}, {{0, 1, 1}, 1}});  // x^3 + x y^2
        DegenerationCertificate cert{f, {CocharacterLimit{Cocharacter{{0, 1}}}}, x3};
        CHECK(verify_certificate(cert).ok);
    }
    SUBCASE("a singular matrix fails at its own index") {
        Matrix sing(f5, 2, 2, {1, 1, 1, 1});
        DegenerationCertificate cert{x3, {CoordinateChange{swap}, CoordinateChange{sing}}, y3};
        auto out = verify_certificate(cert);
        CHECK_FALSE(out.ok);
        CHECK(out.failing_step == 1);
    }
    SUBCASE("a negative-weight component fails the limit step") {
        auto f = cubic(f5, 2, {{{0, 1, 1}, 1}});
        DegenerationCertificate cert{f, {CocharacterLimit{Cocharacter{{0, -1}}}}, f};
        auto out = verify_certificate(cert);
        CHECK_FALSE(out.ok);
        CHECK(out.failing_step == 0);
    }
    SUBCASE("a wrong endpoint fails at steps.size()") {
        DegenerationCertificate cert{x3, {CoordinateChange{swap}}, x3};
        auto out = verify_certificate(cert);
        CHECK_FALSE(out.ok);
        CHECK(out.failing_step == 1);
    }
}

TEST_CASE("separable_degenerate carries x(y^2 + yz) to xyz") {
    auto f5 = Field::prime(5);
    auto f = cubic(f5, 3, {{{0, 1, 1}, 1}, {{0, 1, 2}, 1}});
    auto sep = separable_degenerate(f);

    CHECK(sep.g == cubic(f5, 3, {{{0, 1, 2}, 1}}));
    CHECK(sep.k_prime == 1);
    CHECK(sep.bound == 1);
    CHECK(sep.split_block == std::vector<std::uint32_t>{0});
    CHECK(sep.cert.start == f);
    CHECK(sep.cert.end == sep.g);
    CHECK(sep.cert.steps.size() == 4);
    CHECK(verify_certificate(sep.cert).ok);
    CHECK(qrank_oracle(sep.g).r >= sep.bound);
}

TEST_CASE("separable_degenerate degenerate outcomes") {
    auto f5 = Field::prime(5);

    SUBCASE("a pure power collapses to zero with k' = 0") {
        auto f = cubic(f5, 2, {{{0, 0, 0}, 1}, {{1, 1, 1}, 1}});
        auto sep = separable_degenerate(f);
        CHECK(sep.k_prime == 0);
        CHECK(sep.bound == 0);
        CHECK(sep.g.is_zero());
        CHECK(sep.split_block.empty());
        CHECK(verify_certificate(sep.cert).ok);
    }
    SUBCASE("full-rank forms have an empty residual block") {
        // the norm form has no vanishing subspace of positive dimension, so
        // the whole form is degree-3 in the block and k' = 0
        auto k5 = Field::prime(5);
        auto ext = field_extend(k5, 3);
        const Field& E = *ext.field;
        const std::uint32_t theta = E.compose({0, 1, 0});
        std::vector<LinearForm> conj;
        for (std::uint32_t i = 0, c = theta; i < 3; ++i, c = E.pow(c, 5))
            conj.push_back(LinearForm(ext.field, {E.from_int(1), c, E.mul(c, c)}));
        CubicForm big = product3(conj[0], conj[1], conj[2]);
        std::vector<std::pair<std::array<std::uint32_t, 3>, std::uint32_t>> raw;
        for (const auto& t : big.terms)
            raw.push_back({{t.v[0], t.v[1], t.v[2]}, E.decompose(t.c)[0]});
        auto f = CubicForm::from_terms(k5, 3, raw);

        auto sep = separable_degenerate(f);
        CHECK(sep.k_prime == 0);
        CHECK(sep.g.is_zero());
        CHECK(verify_certificate(sep.cert).ok);
    }
    SUBCASE("the zero form is rejected") {
        CHECK_THROWS_AS(separable_degenerate(CubicForm(f5, 2)), std::invalid_argument);
    }
}

TEST_CASE("separable_degenerate randomized invariants") {
    auto f5 = Field::prime(5);
    SplitMix64 rng(2024);
    for (int trial = 0; trial < 8; ++trial) {
        auto f = random_low_rank(f5, 4, rng);
        auto sep = separable_degenerate(f);
        CHECK(sep.cert.start == f);
        CHECK(sep.cert.end == sep.g);
        CHECK(verify_certificate(sep.cert).ok);
        CHECK(is_separable_witness(sep.g, sep.split_block));
        CHECK(sep.bound == (sep.k_prime + 1) / 2);
        CHECK(qrank_oracle(sep.g).r >= sep.bound);
    }
}

TEST_CASE("surjection_pipeline reports the achieved and required ranks") {
    auto f5 = Field::prime(5);
    auto f = cubic(f5, 3, {{{0, 1, 1}, 1}, {{0, 1, 2}, 1}});

    auto rep = surjection_pipeline(f, 1);
    CHECK(rep.g == cubic(f5, 3, {{{0, 1, 2}, 1}}));
    CHECK(rep.split_block == std::vector<std::uint32_t>{0});
    REQUIRE(rep.chosen_pairs.length() == 1);
    CHECK(rep.chosen_pairs.pairs[0].first.coeffs == std::vector<std::uint32_t>{1, 0, 0});
    CHECK(assemble(rep.chosen_pairs) == rep.g);
    CHECK(rep.minrank_achieved == 2);
    CHECK(rep.required_minrank == 6);
    CHECK(rep.ells_independent);
    CHECK_FALSE(rep.deg2_hypothesis_met);
    CHECK(verify_certificate(rep.cert).ok);
    CHECK(rep.cert.start == f);
    CHECK(rep.cert.end == rep.g);

    SUBCASE("asking for more pairs than exist leaves the hypothesis unmet") {
        auto rep2 = surjection_pipeline(f, 2);
        CHECK(rep2.chosen_pairs.length() == 1);
        CHECK(rep2.required_minrank == 28);
        CHECK_FALSE(rep2.deg2_hypothesis_met);
        CHECK(verify_certificate(rep2.cert).ok);
    }
    SUBCASE("d = 0 is the vacuous hypothesis") {
        auto rep0 = surjection_pipeline(f, 0);
        CHECK(rep0.chosen_pairs.length() == 0);
        CHECK(rep0.required_minrank == 0);
        CHECK(rep0.deg2_hypothesis_met);
        CHECK(rep0.g.is_zero());
        CHECK(verify_certificate(rep0.cert).ok);
    }
    SUBCASE("the zero form is rejected") {
        CHECK_THROWS_AS(surjection_pipeline(CubicForm(f5, 3), 1), std::invalid_argument);
    }
    SUBCASE("budget refusals keep their type through the stages") {
        QrankOptions opt;
        opt.budget = 3;
        CHECK_THROWS_AS(surjection_pipeline(f, 1, opt), budget_exceeded_error);
    }
}

TEST_CASE("surjection_pipeline randomized consistency") {
    auto f5 = Field::prime(5);
    SplitMix64 rng(4096);
    for (int trial = 0; trial < 6; ++trial) {
        auto f = random_low_rank(f5, 4, rng);
        auto rep = surjection_pipeline(f, 2);
        CHECK(rep.chosen_pairs.length() <= 2);
        CHECK(rep.required_minrank == 28);
        CHECK_FALSE(rep.deg2_hypothesis_met);  // 28 is far beyond any 4-var rank
        CHECK(verify_certificate(rep.cert).ok);
        CHECK(rep.cert.end == rep.g);
        if (rep.chosen_pairs.length() > 0) {
            // the report's pairs assemble exactly to the reduced form
            CHECK(assemble(rep.chosen_pairs) == rep.g);
        }
    }
}
