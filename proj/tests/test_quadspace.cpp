#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdint>
#include <vector>

#include "strengthlab/errors.hpp"
#include "strengthlab/forms.hpp"
#include "strengthlab/matrix.hpp"
#include "strengthlab/qrank.hpp"
#include "strengthlab/quadspace.hpp"
#include "strengthlab/rng.hpp"

using namespace strengthlab;

namespace {

QuadraticForm quad(const FieldPtr& f, std::uint32_t n,
                   std::vector<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>> monos) {
    return QuadraticForm::from_monomials(f, n, monos);
}

// Exhaustive (minrank, maxrank) over every coefficient tuple, not just
// projective representatives. Independent of the enumeration order used by
// minmax_rank.
std::pair<std::uint32_t, std::uint32_t> minmax_brute(const QuadricSubspace& Q) {
    const std::uint64_t q = Q.field->q();
    const auto dim = Q.dim();
    if (dim == 0) return {0, 0};
    std::vector<std::uint32_t> c(dim, 0);
    std::uint32_t lo = Q.nvars + 1, hi = 0;
    for (;;) {
        bool zero = true;
        for (auto x : c) zero = zero && x == 0;
        if (!zero) {
            const std::uint32_t r = quadratic_rank(Q.element(c));
            lo = std::min(lo, r);
            hi = std::max(hi, r);
        }
        std::size_t j = 0;
        while (j < c.size() && ++c[j] == q) c[j++] = 0;
        if (j == c.size()) break;
    }
    return {lo, hi};
}

CubicForm random_cubic(const FieldPtr& f, std::uint32_t n, SplitMix64& rng) {
    std::vector<std::pair<std::array<std::uint32_t, 3>, std::uint32_t>> raw;
    for (std::uint32_t a = 0; a < n; ++a)
        for (std::uint32_t b = a; b < n; ++b)
            for (std::uint32_t c = b; c < n; ++c) {
                auto v = static_cast<std::uint32_t>(rng.below(f->q()));
                if (v) raw.push_back({{a, b, c}, v});
            }
    return CubicForm::from_terms(f, n, raw);
}

}  // namespace

TEST_CASE("quadratic_rank on explicit forms") {
    auto f5 = Field::prime(5);
    CHECK(quadratic_rank(QuadraticForm(f5, 2)) == 0);
    CHECK(quadratic_rank(quad(f5, 2, {{0, 0, 1}})) == 1);
    CHECK(quadratic_rank(quad(f5, 2, {{0, 1, 1}})) == 2);
    CHECK(quadratic_rank(quad(f5, 3, {{0, 0, 1}, {1, 2, 1}})) == 3);
    CHECK(quadratic_rank(quad(f5, 3, {{0, 0, 1}, {0, 1, 2}, {1, 1, 1}})) == 1);  // (x+y)^2
}

TEST_CASE("QuadricSubspace construction and membership") {
    auto f5 = Field::prime(5);
    auto x2 = quad(f5, 2, {{0, 0, 1}});
    auto y2 = quad(f5, 2, {{1, 1, 1}});
    auto xy = quad(f5, 2, {{0, 1, 1}});

    auto Q = QuadricSubspace::from_basis(f5, 2, {x2, y2});
    CHECK(Q.dim() == 2);
    CHECK(Q.contains(x2));
    CHECK(Q.contains(quad(f5, 2, {{0, 0, 2}, {1, 1, 3}})));
    CHECK(Q.contains(QuadraticForm(f5, 2)));
    CHECK_FALSE(Q.contains(xy));
    CHECK(Q.element({1, 1}) == quad(f5, 2, {{0, 0, 1}, {1, 1, 1}}));
    CHECK_THROWS_AS(Q.element({1}), std::invalid_argument);

    auto scaled = quad(f5, 2, {{0, 0, 2}});
    CHECK_THROWS_AS(QuadricSubspace::from_basis(f5, 2, {x2, scaled}), std::invalid_argument);

    auto S = QuadricSubspace::from_span(f5, 2, {x2, scaled, y2});
    CHECK(S.dim() == 2);
    CHECK(S.contains(x2));
    CHECK(S.contains(y2));
    auto S2 = QuadricSubspace::from_span(f5, 2, {y2, x2, x2});
    for (std::size_t i = 0; i < S.dim(); ++i) CHECK(S.basis[i] == S2.basis[i]);
}

TEST_CASE("minmax_rank exact values and brute-force agreement") {
    auto f5 = Field::prime(5);
    auto x2 = quad(f5, 2, {{0, 0, 1}});
    auto y2 = quad(f5, 2, {{1, 1, 1}});
    auto xy = quad(f5, 2, {{0, 1, 1}});

    CHECK(minmax_rank(QuadricSubspace::from_span(f5, 2, {})) == std::pair<std::uint32_t, std::uint32_t>{0, 0});
    CHECK(minmax_rank(QuadricSubspace::from_basis(f5, 2, {x2, y2})) ==
          std::pair<std::uint32_t, std::uint32_t>{1, 2});
    CHECK(minmax_rank(QuadricSubspace::from_basis(f5, 2, {xy})) ==
          std::pair<std::uint32_t, std::uint32_t>{2, 2});

    CHECK_THROWS_AS(minmax_rank(QuadricSubspace::from_basis(f5, 2, {x2, y2}), 5),
                    budget_exceeded_error);

    SplitMix64 rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<QuadraticForm> gens;
        for (int i = 0; i < 2; ++i) {
            Matrix m(f5, 3, 3);
            for (std::size_t a = 0; a < 3; ++a)
                for (std::size_t b = 0; b < 3; ++b)
                    m.at(a, b) = static_cast<std::uint32_t>(rng.below(5));
            gens.push_back(substitute(quad(f5, 3, {{0, 0, 1}, {1, 2, 1}}), m));
        }
        auto Q = QuadricSubspace::from_span(f5, 3, gens);
        if (Q.dim() == 0) continue;
        CHECK(minmax_rank(Q) == minmax_brute(Q));
    }
}

TEST_CASE("bounded_rank_combination finds the first adequate combination") {
    auto f5 = Field::prime(5);
    auto x2 = quad(f5, 3, {{0, 0, 1}});
    auto y2 = quad(f5, 3, {{1, 1, 1}});
    auto z2 = quad(f5, 3, {{2, 2, 1}});

    auto got = bounded_rank_combination({x2, y2, z2}, 2, 2);
    CHECK(got == quad(f5, 3, {{0, 0, 1}, {1, 1, 1}}));  // support {0,1} precedes {0,2}
    CHECK(quadratic_rank(got) == 2);

    SUBCASE("input of rank >= s is rejected") {
        auto xy = quad(f5, 3, {{0, 1, 1}});
        CHECK_THROWS_AS(bounded_rank_combination({x2, xy}, 2, 2), std::invalid_argument);
    }
    SUBCASE("exhaustion reports no combination") {
        auto x2s = quad(f5, 3, {{0, 0, 2}});
        CHECK_THROWS_AS(bounded_rank_combination({x2, x2s}, 2, 2), std::invalid_argument);
    }
    SUBCASE("budget refusal happens before the search") {
        CHECK_THROWS_AS(bounded_rank_combination({x2, y2, z2}, 2, 2, 10), budget_exceeded_error);
        try {
            bounded_rank_combination({x2, y2, z2}, 2, 2, 10);
        } catch (const budget_exceeded_error& e) {
            CHECK(e.planned_count == "31");  // (5^3 - 1) / 4
        }
    }
}

TEST_CASE("bounded_rank_combination rank window on random low-rank spans") {
    auto f5 = Field::prime(5);
    SplitMix64 rng(77);
    const std::uint32_t s = 3, n = 4;
    int productive = 0;
    for (int trial = 0; trial < 30 && productive < 12; ++trial) {
        std::vector<QuadraticForm> qs;
        for (int i = 0; i < 3; ++i) {
            Matrix m(f5, s - 1, n);
            for (std::size_t a = 0; a < s - 1; ++a)
                for (std::size_t b = 0; b < n; ++b)
                    m.at(a, b) = static_cast<std::uint32_t>(rng.below(5));
            qs.push_back(substitute(quad(f5, s - 1, {{0, 0, 1}, {1, 1, 1}}), m));
        }
        for (const auto& q : qs) REQUIRE(quadratic_rank(q) < s);
        auto span = QuadricSubspace::from_span(f5, n, qs);
        if (span.dim() == 0) continue;
        const auto [mn, mx] = minmax_rank(span);
        if (mx == 0) continue;
        ++productive;
        auto got = bounded_rank_combination(qs, mx, s);
        CHECK(quadratic_rank(got) >= mx);
        CHECK(quadratic_rank(got) <= mx + s - 2);
        CHECK(span.contains(got));
    }
    CHECK(productive >= 12);
}

TEST_CASE("lex_minimal_rank_basis picks squares before mixed terms") {
    auto f5 = Field::prime(5);
    auto x2 = quad(f5, 2, {{0, 0, 1}});
    auto xy = quad(f5, 2, {{0, 1, 1}});
    auto Q = QuadricSubspace::from_basis(f5, 2, {xy, x2});
    auto basis = lex_minimal_rank_basis(Q);
    REQUIRE(basis.size() == 2);
    CHECK(basis[0] == x2);
    CHECK(basis[1] == xy);
    CHECK(quadratic_rank(basis[0]) == 1);
    CHECK(quadratic_rank(basis[1]) == 2);

    SplitMix64 rng(13);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<QuadraticForm> gens;
        for (int i = 0; i < 3; ++i) {
            Matrix m(f5, 3, 3);
            for (std::size_t a = 0; a < 3; ++a)
                for (std::size_t b = 0; b < 3; ++b)
                    m.at(a, b) = static_cast<std::uint32_t>(rng.below(5));
            gens.push_back(substitute(quad(f5, 3, {{0, 1, 1}}), m));
        }
        auto S = QuadricSubspace::from_span(f5, 3, gens);
        if (S.dim() == 0) continue;
        auto b = lex_minimal_rank_basis(S);
        REQUIRE(b.size() == S.dim());
        auto rebuilt = QuadricSubspace::from_basis(S.field, S.nvars, b);
        for (const auto& e : b) CHECK(S.contains(e));
        CHECK(quadratic_rank(b.front()) == minmax_rank(S).first);
        for (std::size_t i = 1; i < b.size(); ++i)
            CHECK(quadratic_rank(b[i - 1]) <= quadratic_rank(b[i]));
    }
}

TEST_CASE("extract_high_minrank top-slice and staged paths") {
    auto f5 = Field::prime(5);
    auto x2 = quad(f5, 2, {{0, 0, 1}});
    auto y2 = quad(f5, 2, {{1, 1, 1}});
    auto xy = quad(f5, 2, {{0, 1, 1}});

    SUBCASE("staged path builds the cross combination") {
        auto Q = QuadricSubspace::from_basis(f5, 2, {x2, y2});
        auto out = extract_high_minrank(Q, 1, 2, 2);
        REQUIRE(out.dim() == 1);
        CHECK(out.basis[0] == quad(f5, 2, {{0, 0, 1}, {1, 1, 1}}));
        CHECK(minmax_rank(out).first == 2);
        CHECK(Q.contains(out.basis[0]));
    }
    SUBCASE("top-slice path suffices when the profile already ends high") {
        // lex basis of span{x^2, xy} is (x^2, x^2 + xy) with ranks (1, 2)
        auto Q = QuadricSubspace::from_basis(f5, 2, {x2, xy});
        auto out = extract_high_minrank(Q, 1, 2, 2);
        REQUIRE(out.dim() == 1);
        CHECK(out.basis[0] == quad(f5, 2, {{0, 0, 1}, {0, 1, 1}}));
        CHECK(minmax_rank(out).first == 2);
        CHECK(Q.contains(out.basis[0]));
    }
    SUBCASE("full quadric space in two variables yields a rank-2 line") {
        auto Q = QuadricSubspace::from_span(f5, 2, {x2, y2, xy});
        REQUIRE(Q.dim() == 3);
        auto out = extract_high_minrank(Q, 1, 2, 2);
        REQUIRE(out.dim() == 1);
        CHECK(minmax_rank(out).first >= 2);
        CHECK(Q.contains(out.basis[0]));
    }
    SUBCASE("precondition violations throw invalid_argument") {
        auto Q = QuadricSubspace::from_basis(f5, 2, {x2, y2});
        CHECK_THROWS_AS(extract_high_minrank(Q, 2, 2, 2), std::invalid_argument);  // need 5 > 2
    }
    SUBCASE("too-small spaces refute the claimed inequality") {
        auto Q = QuadricSubspace::from_basis(f5, 2, {x2});
        CHECK_THROWS_AS(extract_high_minrank(Q, 1, 2, 2), construction_failed_error);
    }
    SUBCASE("exhaustion surfaces the refuting prefix span") {
        // all quadrics in three variables: max rank 3 < r = 5, so the staged
        // build must fail at the second threshold and name the prefix
        std::vector<QuadraticForm> gens;
        for (std::uint32_t u = 0; u < 3; ++u)
            for (std::uint32_t v = u; v < 3; ++v) gens.push_back(quad(f5, 3, {{u, v, 1}}));
        auto Q = QuadricSubspace::from_span(f5, 3, gens);
        REQUIRE(Q.dim() == 6);
        try {
            extract_high_minrank(Q, 2, 2, 5);
            FAIL("expected construction_failed_error");
        } catch (const construction_failed_error& e) {
            CHECK(e.refuting_span.find("span of the first 5") != std::string::npos);
        }
    }
}

TEST_CASE("verify_maxrank_inequality on decompositions from the oracle") {
    auto f5 = Field::prime(5);
    SplitMix64 rng(99);
    int checked = 0;
    for (int trial = 0; trial < 10; ++trial) {
        auto f = random_cubic(f5, 3, rng);
        auto res = qrank_oracle(f);
        REQUIRE(res.witness.has_value());
        auto dec = decompose_via_subspace(f, *res.witness);
        if (dec.length() == 0) continue;
        std::vector<QuadraticForm> quads;
        for (const auto& [l, q] : dec.pairs) quads.push_back(q);
        auto Q = QuadricSubspace::from_span(f5, 3, quads);

        CHECK(verify_maxrank_inequality(f, dec, Q));
        if (Q.dim() > 1) {
            auto part = QuadricSubspace::from_span(f5, 3, {Q.basis[0]});
            CHECK(verify_maxrank_inequality(f, dec, part));
        }
        CHECK(verify_maxrank_inequality(f, dec, QuadricSubspace::from_span(f5, 3, {})));
        ++checked;
    }
    CHECK(checked >= 5);

    SUBCASE("preconditions are validated") {
        auto xyz = CubicForm::from_terms(f5, 3, {{{0, 1, 2}, 1}});
        auto res = qrank_oracle(xyz);
        auto dec = decompose_via_subspace(xyz, *res.witness);
        auto outside = QuadricSubspace::from_basis(f5, 3, {quad(f5, 3, {{0, 0, 1}})});
        CHECK_THROWS_AS(verify_maxrank_inequality(xyz, dec, outside), std::invalid_argument);
        auto other = CubicForm::from_terms(f5, 3, {{{0, 0, 0}, 1}});
        CHECK_THROWS_AS(verify_maxrank_inequality(other, dec, outside), std::invalid_argument);
    }
}
