#include "strengthlab/degeneration.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "strengthlab/errors.hpp"
#include "strengthlab/quadspace.hpp"
#include "strengthlab/subspace.hpp"

namespace strengthlab {

VerifyOutcome verify_certificate(const DegenerationCertificate& cert) {
    CubicForm cur = cert.start;
    for (std::size_t i = 0; i < cert.steps.size(); ++i) {
        try {
            if (const auto* cc = std::get_if<CoordinateChange>(&cert.steps[i]))
                cur = change_of_variables(cur, cc->g);
            else
                cur = cocharacter_limit(cur, std::get<CocharacterLimit>(cert.steps[i]).c);
        } catch (const std::exception&) {
            return {false, i};
        }
    }
    if (!(cur == cert.end)) return {false, cert.steps.size()};
    return {true, 0};
}

namespace {

CubicForm component_or_zero(const std::map<std::int64_t, CubicForm>& comps, std::int64_t w,
                            const FieldPtr& f, std::uint32_t n) {
    auto it = comps.find(w);
    return it == comps.end() ? CubicForm(f, n) : it->second;
}

QrankResult exact_qrank(const CubicForm& f, const QrankOptions& opt, const char* who) {
    QrankResult res = qrank_oracle(f, opt);
    if (!res.witness)
        throw std::invalid_argument(std::string(who) +
                                    ": max_r cap is too small to produce a witness");
    return res;
}

}  // namespace

SeparableResult separable_degenerate(const CubicForm& f, const QrankOptions& opt) {
    if (!f.field) throw std::invalid_argument("separable_degenerate: form has no field");
    if (f.is_zero()) throw std::invalid_argument("separable_degenerate: the zero form");
    const FieldPtr& K = f.field;
    const std::uint32_t n = f.nvars;

    // The construction needs exact ranks and witnesses throughout, so a
    // caller's rank cap is ignored (budget and threads still apply).
    QrankOptions xopt = opt;
    xopt.max_r.reset();

    const QrankResult head = exact_qrank(f, xopt, "separable_degenerate");
    const std::uint32_t r = head.r;

    std::vector<DegenerationStep> steps;

    // 1. move the witness to the coordinate tail: afterwards every monomial
    //    contains one of the first r variables
    const Matrix Ct = complete_basis(*head.witness).transpose();
    steps.push_back(CoordinateChange{*inverse(Ct)});
    CubicForm cur = substitute(f, Ct);

    Cocharacter block{std::vector<std::int32_t>(n, 0)};
    for (std::uint32_t i = 0; i < r; ++i) block.weights[i] = 1;

    // 2. the part of degree 3 in the block, ranked over its own r variables
    auto comps = grade_by_weight(cur, block);
    const CubicForm f3 = component_or_zero(comps, 3, K, n);
    std::vector<std::pair<std::array<std::uint32_t, 3>, std::uint32_t>> triples;
    for (const auto& t : f3.terms) triples.push_back({{t.v[0], t.v[1], t.v[2]}, t.c});
    const CubicForm f3_block = CubicForm::from_terms(K, r, triples);
    const QrankResult part = exact_qrank(f3_block, xopt, "separable_degenerate");
    const std::uint32_t k_prime = r - part.r;

    // 3. rotate the block so the degree-3 part misses the span of the first
    //    k' coordinates (its witness becomes that span)
    const Matrix cb = complete_basis(*part.witness);  // r x r
    Matrix P(K, n, n);
    for (std::uint32_t i = 0; i < k_prime; ++i)
        for (std::uint32_t j = 0; j < r; ++j) P.at(i, j) = cb.at(part.r + i, j);
    for (std::uint32_t i = 0; i < part.r; ++i)
        for (std::uint32_t j = 0; j < r; ++j) P.at(k_prime + i, j) = cb.at(i, j);
    for (std::uint32_t i = r; i < n; ++i) P.at(i, i) = 1;
    const Matrix Pt = P.transpose();
    steps.push_back(CoordinateChange{*inverse(Pt)});
    cur = substitute(cur, Pt);

    // 4. send the rest of the block to zero; the degree-3 part dies with it
    Cocharacter kill3{std::vector<std::int32_t>(n, 0)};
    for (std::uint32_t i = k_prime; i < r; ++i) kill3.weights[i] = 1;
    steps.push_back(CocharacterLimit{kill3});
    cur = cocharacter_limit(cur, kill3);

    comps = grade_by_weight(cur, block);
    if (comps.count(3))
        throw std::logic_error("separable_degenerate: a degree-3 block part survived");
    const CubicForm f1 = component_or_zero(comps, 1, K, n);
    const CubicForm f2 = component_or_zero(comps, 2, K, n);
    const std::uint32_t r1 = qrank_oracle(f1, xopt).r;
    const std::uint32_t r2 = qrank_oracle(f2, xopt).r;

    // 5. keep the graded piece of larger q-rank (ties to the linear-in-block
    //    piece); the other one is pushed to positive weight and dies
    Cocharacter pick{std::vector<std::int32_t>(n, 0)};
    std::vector<std::uint32_t> split;
    if (r1 >= r2) {
        for (std::uint32_t i = 0; i < n; ++i) pick.weights[i] = i < r ? 2 : -1;
        for (std::uint32_t i = 0; i < k_prime; ++i) split.push_back(i);
    } else {
        for (std::uint32_t i = 0; i < n; ++i) pick.weights[i] = i < r ? -1 : 2;
        for (std::uint32_t i = r; i < n; ++i) split.push_back(i);
    }
    steps.push_back(CocharacterLimit{pick});
    cur = cocharacter_limit(cur, pick);

    const std::uint32_t bound = (k_prime + 1) / 2;
    if (std::max(r1, r2) < bound)
        throw std::logic_error("separable_degenerate: kept piece ranks below ceil(k'/2)");

    DegenerationCertificate cert{f, std::move(steps), cur};
    const VerifyOutcome replay = verify_certificate(cert);
    if (!replay.ok) throw std::logic_error("separable_degenerate: certificate replay failed");
    if (!is_separable_witness(cur, split))
        throw std::logic_error("separable_degenerate: split block fails the separability check");
    return {std::move(cur), std::move(cert), k_prime, bound, std::move(split)};
}

namespace {

template <typename Fn>
auto staged(const char* stage, Fn&& fn) {
    try {
        return fn();
    } catch (const budget_exceeded_error&) {
        throw;  // a refusal, not a failure: it keeps its type for the caller
    } catch (const stage_error&) {
        throw;
    } catch (const std::exception& e) {
        throw stage_error(stage, e.what());
    }
}

}  // namespace

ReductionReport surjection_pipeline(const CubicForm& f, std::uint32_t d, const QrankOptions& opt) {
    if (!f.field) throw std::invalid_argument("surjection_pipeline: form has no field");
    if (f.is_zero()) throw std::invalid_argument("surjection_pipeline: the zero form");
    const FieldPtr& K = f.field;
    const std::uint32_t n = f.nvars;

    SeparableResult sep = staged("separable", [&] { return separable_degenerate(f, opt); });

    // read off (l_i, q_i) with l_i the block coordinate and q_i the quadric
    // collecting the terms through it
    struct Pair {
        std::uint32_t coord;
        QuadraticForm q;
    };
    std::vector<Pair> pairs = staged("pairs", [&] {
        std::vector<Pair> out;
        std::vector<bool> in_block(n, false);
        for (auto i : sep.split_block) in_block[i] = true;
        for (auto i : sep.split_block) {
            std::vector<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>> monos;
            for (const auto& t : sep.g.terms) {
                std::array<std::uint32_t, 3> v{t.v[0], t.v[1], t.v[2]};
                std::vector<std::uint32_t> rest;
                bool hit = false;
                for (auto x : v) {
                    if (!hit && x == i)
                        hit = true;
                    else
                        rest.push_back(x);
                }
                if (!hit) continue;
                monos.emplace_back(rest[0], rest[1], t.c);
            }
            if (monos.empty()) continue;
            out.push_back({i, QuadraticForm::from_monomials(K, n, monos)});
        }
        return out;
    });

    const BigInt s_req = BigInt(d) * d * (BigInt(1) << d) + BigInt(2) * (BigInt(d) + 1) * d;
    const BigInt entry = ((BigInt(1) << d) - 1) * (s_req - 1) + d;

    std::vector<Pair> chosen(pairs.begin(),
                             pairs.begin() + std::min<std::size_t>(pairs.size(), d));
    std::uint32_t minrank_achieved = 0;

    if (entry <= sep.bound) {
        // feasible only when the separable bound is enormous; the extraction
        // then certifies a d-dimensional quadric space of minrank >= s
        minrank_achieved = staged("extract", [&] {
            std::vector<QuadraticForm> all;
            for (const auto& p : pairs) all.push_back(p.q);
            auto Q = QuadricSubspace::from_span(K, n, all);
            auto high = extract_high_minrank(Q, d, s_req.convert_to<std::uint32_t>(), sep.bound,
                                             opt.budget);
            return minmax_rank(high, opt.budget).first;
        });
    } else if (!chosen.empty()) {
        minrank_achieved = staged("rank", [&] {
            std::vector<QuadraticForm> kept;
            for (const auto& p : chosen) kept.push_back(p.q);
            return minmax_rank(QuadricSubspace::from_span(K, n, kept), opt.budget).first;
        });
    }

    // kill the block coordinates whose pair was not retained
    DegenerationCertificate cert = std::move(sep.cert);
    CubicForm g = staged("kill", [&] {
        std::vector<bool> keep(n, false);
        for (const auto& p : chosen) keep[p.coord] = true;
        Cocharacter c{std::vector<std::int32_t>(n, 0)};
        for (auto i : sep.split_block)
            if (!keep[i]) c.weights[i] = 1;
        cert.steps.push_back(CocharacterLimit{c});
        return cocharacter_limit(sep.g, c);
    });
    cert.end = g;
    if (!verify_certificate(cert).ok)
        throw stage_error("kill", "certificate replay failed after the kill step");

    LQDecomposition dec{K, n, {}};
    std::vector<std::uint32_t> block;
    Matrix ell_rows(K, chosen.size(), n);
    for (std::size_t i = 0; i < chosen.size(); ++i) {
        std::vector<std::uint32_t> e(n, 0);
        e[chosen[i].coord] = 1;
        ell_rows.at(i, chosen[i].coord) = 1;
        dec.pairs.emplace_back(LinearForm(K, e), chosen[i].q);
        block.push_back(chosen[i].coord);
    }
    const bool ells_independent = rank(ell_rows) == chosen.size();
    const bool met = chosen.size() == d && ells_independent && BigInt(minrank_achieved) >= s_req;

    return {std::move(g),          std::move(block),       std::move(dec), minrank_achieved,
            s_req,                 ells_independent,       met,            std::move(cert)};
}

}  // namespace strengthlab
