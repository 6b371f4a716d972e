#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "strengthlab/degeneration.hpp"
#include "strengthlab/field.hpp"
#include "strengthlab/forms.hpp"
#include "strengthlab/json_io.hpp"
#include "strengthlab/polyio.hpp"
#include "strengthlab/qrank.hpp"
#include "strengthlab/quadspace.hpp"
#include "strengthlab/rng.hpp"
#include "strengthlab/subspace.hpp"
#include "strengthlab/witness.hpp"

using namespace strengthlab;

namespace {

CubicForm random_cubic(const FieldPtr& K, std::uint32_t n, SplitMix64& rng) {
    std::vector<std::pair<std::array<std::uint32_t, 3>, std::uint32_t>> terms;
    const std::size_t m = 1 + rng.below(6);
    for (std::size_t i = 0; i < m; ++i) {
        std::array<std::uint32_t, 3> v{};
        for (auto& x : v) x = static_cast<std::uint32_t>(rng.below(n));
        terms.push_back({v, static_cast<std::uint32_t>(rng.below(K->q()))});
    }
    return CubicForm::from_terms(K, n, terms);
}

Matrix random_matrix(const FieldPtr& K, std::size_t rows, std::size_t cols, SplitMix64& rng) {
    Matrix m(K, rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            m.at(i, j) = static_cast<std::uint32_t>(rng.below(K->q()));
    return m;
}

}  // namespace

TEST_CASE("hand-written cubic input parses") {
    const std::string text =
        "# sum of two cubes\n"
        "field p=5   # the working field\n"
        "vars x y\n"
        "f = 1*x*x*x + 1*y*y*y\n";
    const PolyDocument doc = parse_poly_text(text);
    CHECK(doc.field->q() == 5);
    CHECK(doc.vars == std::vector<std::string>{"x", "y"});
    CHECK(doc.f == CubicForm::from_terms(doc.field, 2, {{{0, 0, 0}, 1}, {{1, 1, 1}, 1}}));
}

TEST_CASE("variables default to first-appearance order") {
    const PolyDocument doc =
        parse_poly_text("f = 2*b*a*a + 1*b*b*b", FieldSpec{5, 1, {}});
    CHECK(doc.vars == std::vector<std::string>{"b", "a"});
    // b is variable 0, a is variable 1.
    CHECK(doc.f == CubicForm::from_terms(doc.field, 2, {{{0, 1, 1}, 2}, {{0, 0, 0}, 1}}));
}

TEST_CASE("expressions continue over lines, signs and bare variables work") {
    const std::string text =
        "field p=5\n"
        "vars x y z\n"
        "f = -x*x*x\n"
        "    + 2*x*y*z   # mixed term\n"
        "    - 2*z*z*z\n";
    const PolyDocument doc = parse_poly_text(text);
    CHECK(doc.f == CubicForm::from_terms(doc.field, 3,
                                         {{{0, 0, 0}, 4}, {{0, 1, 2}, 2}, {{2, 2, 2}, 3}}));
}

TEST_CASE("integer coefficients reduce into the prime subfield") {
    const PolyDocument doc = parse_poly_text("f = 7*x*x*x + 10*y*y*y + 2*3*x*y*y",
                                             FieldSpec{5, 1, {}});
    // 7 = 2, 10 = 0 (term drops), 2*3 = 1.
    CHECK(doc.f == CubicForm::from_terms(doc.field, 2, {{{0, 0, 0}, 2}, {{0, 1, 1}, 1}}));
}

TEST_CASE("digit lists denote extension field scalars") {
    const std::string text =
        "field p=5,e=2\n"
        "vars x y\n"
        "f = [2,3]*x*x*y + [0,1]*y*y*y\n";
    const PolyDocument doc = parse_poly_text(text);
    CHECK(doc.field->e() == 2);
    CHECK(doc.f.coeff(0, 0, 1) == 2 + 3 * 5);
    CHECK(doc.f.coeff(1, 1, 1) == 5);
}

TEST_CASE("the zero form reads and writes as f = 0") {
    const PolyDocument with_vars = parse_poly_text("vars x y\nf = 0", FieldSpec{5, 1, {}});
    CHECK(with_vars.f.is_zero());
    CHECK(with_vars.f.n() == 2);
    const PolyDocument bare = parse_poly_text("f = 0", FieldSpec{5, 1, {}});
    CHECK(bare.f.is_zero());
    CHECK(bare.f.n() == 0);
    CHECK(write_poly_text(with_vars.f, {"x", "y"}) == "field p=5\nvars x y\nf = 0\n");
    CHECK(write_poly_text(bare.f) == "field p=5\nf = 0\n");
}

TEST_CASE("the writer emits the canonical layout") {
    auto K = Field::prime(5);
    const CubicForm f = CubicForm::from_terms(K, 2, {{{1, 1, 0}, 4}, {{0, 0, 0}, 1}});
    CHECK(write_poly_text(f, {"x", "y"}) == "field p=5\nvars x y\nf = 1*x*x*x + 4*x*y*y\n");
    auto K25 = Field::extension(5, 2);
    const CubicForm g = CubicForm::from_terms(K25, 1, {{{0, 0, 0}, 17}});
    CHECK(write_poly_text(g) == "field p=5,e=2\nvars x1\nf = [2,3]*x1*x1*x1\n");
}

TEST_CASE("malformed input is rejected") {
    const FieldSpec f5{5, 1, {}};
    CHECK_THROWS_AS(parse_poly_text("f = x*y", f5), std::invalid_argument);           // degree 2
    CHECK_THROWS_AS(parse_poly_text("f = x*x*x*x", f5), std::invalid_argument);       // degree 4
    CHECK_THROWS_AS(parse_poly_text("f = 3", f5), std::invalid_argument);             // no variables
    CHECK_THROWS_AS(parse_poly_text("f = 0 + 1*x*x*x", f5), std::invalid_argument);   // 0 not alone
    CHECK_THROWS_AS(parse_poly_text("vars x\nf = 1*x*x*y", f5), std::invalid_argument);
    CHECK_THROWS_AS(parse_poly_text("vars x x\nf = 1*x*x*x", f5), std::invalid_argument);
    CHECK_THROWS_AS(parse_poly_text("vars 3x\nf = 0", f5), std::invalid_argument);
    CHECK_THROWS_AS(parse_poly_text("f = 1*x*x*x\nf = 0", f5), std::invalid_argument);  // no 2nd f
    CHECK_THROWS_AS(parse_poly_text("field p=7\nf = 1*x*x*x", f5), std::invalid_argument);
    CHECK_THROWS_AS(parse_poly_text("f = 1*x*x*x"), std::invalid_argument);  // no field anywhere
    CHECK_THROWS_AS(parse_poly_text("field p=5\nfield p=5\nf = 0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_poly_text("f = [1,2]*x*x*x", f5), std::invalid_argument);  // list too long
    CHECK_THROWS_AS(parse_poly_text("f = [1,2*x*x*x", FieldSpec{5, 2, {}}), std::invalid_argument);
    CHECK_THROWS_AS(parse_poly_text("f = 1*x*x*x ? 2", f5), std::invalid_argument);
    CHECK_THROWS_AS(parse_poly_text("g = 1*x*x*x", f5), std::invalid_argument);
    CHECK_THROWS_AS(parse_poly_text("", f5), std::invalid_argument);
}

TEST_CASE("parse of write is the identity on random forms") {
    SplitMix64 rng(0x51a9b1u);
    for (const auto& K : {Field::prime(5), Field::prime(7), Field::extension(5, 2)}) {
        for (int trial = 0; trial < 25; ++trial) {
            const auto n = static_cast<std::uint32_t>(1 + rng.below(4));
            const CubicForm f = random_cubic(K, n, rng);
            const std::string text = write_poly_text(f);
            const PolyDocument doc = parse_poly_text(text);
            CHECK(doc.f == f);
            CHECK(doc.vars == default_var_names(n));
            CHECK(write_poly_text(doc.f) == text);
        }
    }
}

TEST_CASE("decompositions survive a JSON round trip") {
    auto K = Field::prime(5);
    SplitMix64 rng(0xdecaf1u);
    for (int trial = 0; trial < 8; ++trial) {
        const CubicForm f = random_cubic(K, 3, rng);
        const QrankResult res = qrank_oracle(f);
        REQUIRE(res.witness.has_value());
        const LQDecomposition d = decompose_via_subspace(f, *res.witness);
        const std::string text = decomposition_to_json(d);
        const LQDecomposition back = decomposition_from_json(text);
        REQUIRE(back.pairs.size() == d.pairs.size());
        for (std::size_t i = 0; i < d.pairs.size(); ++i) {
            CHECK(back.pairs[i].first == d.pairs[i].first);
            CHECK(back.pairs[i].second == d.pairs[i].second);
        }
        CHECK(decomposition_to_json(back) == text);
    }
}

TEST_CASE("degeneration certificates survive a JSON round trip") {
    auto K = Field::prime(5);
    // x0 x1^2 + x0 x1 x2 degenerates separably; its certificate mixes
    // coordinate changes and limits.
    const CubicForm f = CubicForm::from_terms(K, 3, {{{0, 1, 1}, 1}, {{0, 1, 2}, 1}});
    const SeparableResult sep = separable_degenerate(f);
    const std::string text = degeneration_certificate_to_json(sep.cert);
    const DegenerationCertificate back = degeneration_certificate_from_json(text);
    CHECK(back.start == sep.cert.start);
    CHECK(back.end == sep.cert.end);
    REQUIRE(back.steps.size() == sep.cert.steps.size());
    CHECK(verify_certificate(back).ok);
    CHECK(degeneration_certificate_to_json(back) == text);
    CHECK(separable_result_to_json(sep).find("separable_result") != std::string::npos);
}

TEST_CASE("phase certificates survive a JSON round trip") {
    auto K = Field::prime(5);
    SplitMix64 rng(0x8899aau);
    Matrix constraints = random_matrix(K, 2, 9, rng);
    while (rank(constraints) != 2) constraints = random_matrix(K, 2, 9, rng);
    const NonvanishingCertificate cert = certify_diagonal_qrank(3, kernel(constraints));

    const std::string text = phase_certificate_to_json(cert.phase);
    const PhaseCertificate back = phase_certificate_from_json(text);
    CHECK(back.n == cert.phase.n);
    CHECK(back.ambient == cert.phase.ambient);
    CHECK(back.r == cert.phase.r);
    CHECK(back.s == cert.phase.s);
    CHECK(back.t == cert.phase.t);
    CHECK(back.basis == cert.phase.basis);
    CHECK(back.pivot_coefficient == cert.phase.pivot_coefficient);
    REQUIRE(back.trace.size() == cert.phase.trace.size());
    for (std::size_t i = 0; i < back.trace.size(); ++i) CHECK(back.trace[i] == cert.phase.trace[i]);
    CHECK(phase_certificate_to_json(back) == text);

    const std::string whole = nonvanishing_certificate_to_json(cert);
    CHECK(whole.find("nonvanishing_certificate") != std::string::npos);
    CHECK(whole.find("\"pivot_coefficient\": 1") != std::string::npos);
}

TEST_CASE("subspaces and quadric spans survive JSON round trips") {
    auto K = Field::prime(5);
    SplitMix64 rng(0x777u);
    for (int trial = 0; trial < 10; ++trial) {
        const Subspace w = kernel(random_matrix(K, 1 + rng.below(3), 5, rng));
        const Subspace back = subspace_from_json(subspace_to_json(w));
        CHECK(back == w);
        CHECK(subspace_to_json(back) == subspace_to_json(w));
    }

    const QuadraticForm xx = QuadraticForm::from_monomials(K, 2, {{0, 0, 1}});
    const QuadraticForm xy = QuadraticForm::from_monomials(K, 2, {{0, 1, 1}});
    const QuadricSubspace Q = QuadricSubspace::from_basis(K, 2, {xx, xy});
    const QuadricSubspace back = quadric_subspace_from_json(quadric_subspace_to_json(Q));
    REQUIRE(back.dim() == 2);
    CHECK(back.basis[0] == xx);
    CHECK(back.basis[1] == xy);
}

TEST_CASE("qrank reports are deterministic and carry no timing") {
    auto K = Field::prime(5);
    const CubicForm f = CubicForm::from_terms(K, 2, {{{0, 0, 0}, 1}, {{1, 1, 1}, 1}});
    const QrankResult res = qrank_oracle(f);
    const LQDecomposition d = decompose_via_subspace(f, *res.witness);
    const std::string a = qrank_report_to_json(f, res, &d);
    const std::string b = qrank_report_to_json(f, res, &d);
    CHECK(a == b);
    CHECK(a.find("\"r\": 1") != std::string::npos);
    CHECK(a.find("\"exact\": true") != std::string::npos);
    CHECK(a.find("time") == std::string::npos);
    CHECK(a.find("elapsed") == std::string::npos);
    // Capped searches have no witness; the keys stay present.
    QrankOptions capped;
    capped.max_r = 0;
    const QrankResult res0 = qrank_oracle(f, capped);
    const std::string c = qrank_report_to_json(f, res0, nullptr);
    CHECK(c.find("\"witness\": null") != std::string::npos);
    CHECK(c.find("\"decomposition\": null") != std::string::npos);
}

TEST_CASE("reduction reports serialize with exact big integers") {
    auto K = Field::prime(5);
    SplitMix64 rng(0xfeedu);
    CubicForm f = random_cubic(K, 3, rng);
    while (f.is_zero()) f = random_cubic(K, 3, rng);
    const ReductionReport rep = surjection_pipeline(f, 2);
    const std::string text = reduction_report_to_json(rep);
    CHECK(text.find("\"required_minrank\": \"28\"") != std::string::npos);
    CHECK(text.find("reduction_report") != std::string::npos);
    CHECK(nlohmann::json::parse(text).at("kind") == "reduction_report");
}

TEST_CASE("malformed JSON is rejected with runtime errors") {
    CHECK_THROWS_AS(subspace_from_json("{"), std::runtime_error);
    CHECK_THROWS_AS(subspace_from_json("[1,2]"), std::runtime_error);
    CHECK_THROWS_AS(subspace_from_json(R"({"kind":"decomposition"})"), std::runtime_error);
    CHECK_THROWS_AS(
        subspace_from_json(
            R"({"kind":"subspace","field":{"p":5,"e":1},"ambient":2,"basis":[[9,0]]})"),
        std::runtime_error);
    CHECK_THROWS_AS(
        decomposition_from_json(
            R"({"kind":"decomposition","field":{"p":5,"e":1},"n":1,"pairs":[{"l":[1],"q":[[2]]},{"l":[1]}]})"),
        std::runtime_error);
    CHECK_THROWS_AS(
        decomposition_from_json(
            R"({"kind":"decomposition","field":{"p":4,"e":1},"n":1,"pairs":[]})"),
        std::runtime_error);
    // Asymmetric Gram matrix.
    CHECK_THROWS_AS(
        decomposition_from_json(
            R"({"kind":"decomposition","field":{"p":5,"e":1},"n":2,"pairs":[{"l":[1,0],"q":[[0,1],[2,0]]}]})"),
        std::runtime_error);
    auto K = Field::prime(5);
    const PhaseCertificate good = three_phase_basis(TripleMatrix::from_rows(
        K, 3,
        {{LinearForm::coordinate(K, 3, 0), LinearForm::coordinate(K, 3, 1),
          LinearForm::coordinate(K, 3, 2)}}));
    nlohmann::json j = nlohmann::json::parse(phase_certificate_to_json(good));
    j["t"] = 2;  // breaks r + s + t == ambient
    CHECK_THROWS_AS(phase_certificate_from_json(j.dump()), std::runtime_error);
}
