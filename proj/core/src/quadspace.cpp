#include "strengthlab/quadspace.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "strengthlab/errors.hpp"
#include "strengthlab/matrix.hpp"
#include "strengthlab/subspace.hpp"

namespace strengthlab {

namespace {

Matrix flatten_grams(const FieldPtr& f, const std::vector<QuadraticForm>& qs) {
    const std::size_t len = qs.empty() ? 0 : qs[0].gram.size();
    Matrix m(f, qs.size(), len);
    for (std::size_t i = 0; i < qs.size(); ++i)
        std::copy(qs[i].gram.begin(), qs[i].gram.end(), m.row(i));
    return m;
}

QuadraticForm unflatten(const FieldPtr& f, std::uint32_t nvars, const std::uint32_t* row,
                        std::size_t len) {
    QuadraticForm q(f, nvars);
    std::copy(row, row + len, q.gram.begin());
    return q;
}

void check_members(const FieldPtr& f, std::uint32_t nvars, const std::vector<QuadraticForm>& qs,
                   const char* who) {
    for (const auto& q : qs) {
        require_same_field(f, q.field, who);
        if (q.n() != nvars) throw std::invalid_argument(std::string(who) + ": variable count mismatch");
    }
}

// Walks the projective points of the coefficient space: leading coordinate 1,
// later coordinates sweeping all values, earlier free positions varying
// slowest. Calls fn(coeffs) for every point.
template <typename Fn>
void for_each_projective_coeff(std::uint32_t dim, std::uint64_t q, Fn&& fn) {
    std::vector<std::uint32_t> c(dim, 0);
    for (std::uint32_t lead = 0; lead < dim; ++lead) {
        std::fill(c.begin(), c.end(), 0);
        c[lead] = 1;
        for (;;) {
            fn(const_cast<const std::vector<std::uint32_t>&>(c));
            std::size_t t = dim;
            bool done = true;
            while (t > lead + 1) {
                --t;
                if (++c[t] < q) {
                    done = false;
                    break;
                }
                c[t] = 0;
            }
            if (done) break;
        }
    }
}

BigInt projective_count(std::uint32_t dim, std::uint64_t q) {
    BigInt total = 0, size = 1;
    for (std::uint32_t i = 0; i < dim; ++i) {
        total += size;
        size *= q;
    }
    return total;  // (q^dim - 1) / (q - 1)
}

}  // namespace

QuadricSubspace QuadricSubspace::from_basis(FieldPtr f, std::uint32_t nvars,
                                            std::vector<QuadraticForm> basis) {
    check_members(f, nvars, basis, "QuadricSubspace::from_basis");
    if (rank(flatten_grams(f, basis)) != basis.size())
        throw std::invalid_argument("QuadricSubspace::from_basis: forms are linearly dependent");
    return {std::move(f), nvars, std::move(basis)};
}

QuadricSubspace QuadricSubspace::from_span(FieldPtr f, std::uint32_t nvars,
                                           const std::vector<QuadraticForm>& span) {
    check_members(f, nvars, span, "QuadricSubspace::from_span");
    Matrix m = flatten_grams(f, span);
    std::size_t r = rref_in_place(m);
    std::vector<QuadraticForm> basis;
    basis.reserve(r);
    for (std::size_t i = 0; i < r; ++i) basis.push_back(unflatten(f, nvars, m.row(i), m.cols()));
    return {std::move(f), nvars, std::move(basis)};
}

QuadraticForm QuadricSubspace::element(const std::vector<std::uint32_t>& coeffs) const {
    if (coeffs.size() != basis.size())
        throw std::invalid_argument("QuadricSubspace::element: coefficient count mismatch");
    const Field& F = *field;
    QuadraticForm out(field, nvars);
    for (std::size_t i = 0; i < basis.size(); ++i) {
        if (!coeffs[i]) continue;
        const auto& g = basis[i].gram;
        for (std::size_t j = 0; j < g.size(); ++j)
            out.gram[j] = F.add(out.gram[j], F.mul(coeffs[i], g[j]));
    }
    return out;
}

bool QuadricSubspace::contains(const QuadraticForm& q) const {
    require_same_field(field, q.field, "QuadricSubspace::contains");
    if (q.n() != nvars)
        throw std::invalid_argument("QuadricSubspace::contains: variable count mismatch");
    if (q.is_zero()) return true;
    std::vector<QuadraticForm> all = basis;
    all.push_back(q);
    return rank(flatten_grams(field, all)) == basis.size();
}

std::uint32_t quadratic_rank(const QuadraticForm& q) {
    return static_cast<std::uint32_t>(rank(q.gram_matrix()));
}

std::pair<std::uint32_t, std::uint32_t> minmax_rank(const QuadricSubspace& Q,
                                                    std::uint64_t budget) {
    const auto dim = static_cast<std::uint32_t>(Q.dim());
    if (dim == 0) return {0, 0};
    const BigInt planned = projective_count(dim, Q.field->q());
    if (planned > budget)
        throw budget_exceeded_error("minmax_rank: projective enumeration exceeds budget",
                                    planned.str(), budget);
    std::uint32_t lo = Q.nvars + 1, hi = 0;
    for_each_projective_coeff(dim, Q.field->q(), [&](const std::vector<std::uint32_t>& c) {
        const std::uint32_t r = quadratic_rank(Q.element(c));
        lo = std::min(lo, r);
        hi = std::max(hi, r);
    });
    return {lo, hi};
}

QuadraticForm bounded_rank_combination(const std::vector<QuadraticForm>& qs, std::uint32_t t,
                                       std::uint32_t s, std::uint64_t budget) {
    if (qs.empty()) throw std::invalid_argument("bounded_rank_combination: no forms given");
    const FieldPtr& K = qs.front().field;
    const std::uint32_t nvars = static_cast<std::uint32_t>(qs.front().n());
    check_members(K, nvars, qs, "bounded_rank_combination");
    for (const auto& q : qs)
        if (quadratic_rank(q) >= s)
            throw std::invalid_argument("bounded_rank_combination: an input has rank >= s");

    const std::size_t N = qs.size();
    const std::uint64_t q = K->q();
    BigInt planned = 0;
    {
        BigInt per = 1;  // (q-1)^(c-1)
        BigInt binom = 1;
        for (std::size_t c = 1; c <= N; ++c) {
            binom = binom * (N - c + 1) / c;  // C(N, c)
            planned += binom * per;
            per *= q - 1;
        }
    }
    if (planned > budget)
        throw budget_exceeded_error("bounded_rank_combination: search exceeds budget",
                                    planned.str(), budget);

    const Field& F = *K;
    std::vector<std::size_t> support;
    std::vector<std::uint32_t> coeff;  // coeff[i] multiplies qs[support[i]]; coeff[0] == 1
    QuadraticForm acc(K, nvars);
    auto build = [&]() {
        std::fill(acc.gram.begin(), acc.gram.end(), 0);
        for (std::size_t i = 0; i < support.size(); ++i) {
            const auto& g = qs[support[i]].gram;
            for (std::size_t j = 0; j < g.size(); ++j)
                acc.gram[j] = F.add(acc.gram[j], F.mul(coeff[i], g[j]));
        }
    };

    for (std::size_t c = 1; c <= N; ++c) {
        support.resize(c);
        for (std::size_t i = 0; i < c; ++i) support[i] = i;
        for (;;) {
            coeff.assign(c, 1);
            // sweep the trailing c-1 coefficients over 1..q-1, first position
            // varying slowest
            for (;;) {
                build();
                if (quadratic_rank(acc) >= t) return acc;
                std::size_t t2 = c;
                bool done = true;
                while (t2 > 1) {
                    --t2;
                    if (++coeff[t2] < q) {
                        done = false;
                        break;
                    }
                    coeff[t2] = 1;
                }
                if (done) break;
            }
            // next support in lexicographic order
            std::size_t i = c;
            while (i > 0 && support[i - 1] == N - c + (i - 1)) --i;
            if (i == 0) break;
            ++support[i - 1];
            for (std::size_t j = i; j < c; ++j) support[j] = support[j - 1] + 1;
        }
    }
    throw std::invalid_argument("bounded_rank_combination: no combination reaches the target rank");
}

std::vector<QuadraticForm> lex_minimal_rank_basis(const QuadricSubspace& Q, std::uint64_t budget) {
    const auto dim = static_cast<std::uint32_t>(Q.dim());
    if (dim == 0) return {};
    const BigInt planned = projective_count(dim, Q.field->q()) * dim;
    if (planned > budget)
        throw budget_exceeded_error("lex_minimal_rank_basis: enumeration exceeds budget",
                                    planned.str(), budget);

    std::vector<QuadraticForm> picks;
    std::uint32_t prev_rank = 0;
    for (std::uint32_t step = 0; step < dim; ++step) {
        const std::size_t base_rank = picks.size();
        bool have = false;
        std::uint32_t best_rank = 0;
        QuadraticForm best(Q.field, Q.nvars);
        for_each_projective_coeff(dim, Q.field->q(), [&](const std::vector<std::uint32_t>& c) {
            QuadraticForm cand = Q.element(c);
            const std::uint32_t r = quadratic_rank(cand);
            if (have && r >= best_rank) return;
            std::vector<QuadraticForm> all = picks;
            all.push_back(cand);
            if (rank(flatten_grams(Q.field, all)) == base_rank) return;  // inside the span
            have = true;
            best_rank = r;
            best = std::move(cand);
        });
        if (!have) throw std::logic_error("lex_minimal_rank_basis: basis is not spanning");
        if (best_rank < prev_rank)
            throw std::logic_error("lex_minimal_rank_basis: rank profile decreased");
        prev_rank = best_rank;
        picks.push_back(std::move(best));
    }
    return picks;
}

QuadricSubspace extract_high_minrank(const QuadricSubspace& Q, std::uint32_t k, std::uint32_t s,
                                     std::uint32_t r, std::uint64_t budget) {
    const BigInt need = ((BigInt(1) << k) - 1) * (BigInt(s) - 1) + k;
    if (need > r)
        throw std::invalid_argument(
            "extract_high_minrank: (2^k - 1)(s - 1) + k exceeds the claimed rank");
    const auto n = static_cast<std::uint32_t>(Q.dim());
    if (k == 0) return QuadricSubspace{Q.field, Q.nvars, {}};
    if (k > n)
        throw std::invalid_argument("extract_high_minrank: k exceeds the dimension of Q");
    if (n < r)
        throw construction_failed_error(
            "extract_high_minrank: the ambient space is too small for the claimed rank",
            "the zero subspace (codim " + std::to_string(n) + " plus max rank 0 is below " +
                std::to_string(r) + ")");

    std::vector<QuadraticForm> basis = lex_minimal_rank_basis(Q, budget);

    // Every value below s forces the staged build; ranks are non-decreasing,
    // so one look at the k-th element from the top decides.
    if (s <= 1 || quadratic_rank(basis[n - k]) >= s) {
        std::vector<QuadraticForm> top(basis.end() - k, basis.end());
        auto out = QuadricSubspace::from_basis(Q.field, Q.nvars, std::move(top));
        if (minmax_rank(out, budget).first < s)
            throw std::logic_error("extract_high_minrank: top slice fails the rank bound");
        return out;
    }

    std::vector<QuadraticForm> picks;
    std::uint64_t bound_sum = 0;  // sum of (m_i + s - 2) over previous stages
    for (std::uint32_t stage = 1; stage <= k; ++stage) {
        const std::uint64_t m = ((1ull << stage) - 1) * (s - 1) + 1;
        if (bound_sum + s != m)
            throw std::logic_error("extract_high_minrank: stage threshold bookkeeping is off");
        const std::uint32_t N = n - r + static_cast<std::uint32_t>(m);
        std::vector<QuadraticForm> prefix(basis.begin(), basis.begin() + N);
        QuadraticForm p(Q.field, Q.nvars);
        try {
            p = bounded_rank_combination(prefix, static_cast<std::uint32_t>(m), s, budget);
        } catch (const std::invalid_argument&) {
            throw construction_failed_error(
                "extract_high_minrank: no combination reaches the stage threshold",
                "the span of the first " + std::to_string(N) +
                    " basis elements (codim " + std::to_string(r - m) +
                    ", every element of rank below " + std::to_string(m) + ")");
        }
        const std::uint32_t pr = quadratic_rank(p);
        if (pr < m || pr > m + s - 2)
            throw std::logic_error("extract_high_minrank: stage combination rank out of range");
        bound_sum += m + s - 2;
        picks.push_back(std::move(p));
    }

    auto out = QuadricSubspace::from_basis(Q.field, Q.nvars, std::move(picks));
    if (minmax_rank(out, budget).first < s)
        throw std::logic_error("extract_high_minrank: staged build fails the rank bound");
    return out;
}

bool verify_maxrank_inequality(const CubicForm& f, const LQDecomposition& d,
                               const QuadricSubspace& qprime, const QrankOptions& opt) {
    if (!(assemble(d) == f))
        throw std::invalid_argument("verify_maxrank_inequality: decomposition does not assemble to f");
    require_same_field(f.field, qprime.field, "verify_maxrank_inequality");
    if (qprime.nvars != f.nvars)
        throw std::invalid_argument("verify_maxrank_inequality: variable count mismatch");

    std::vector<QuadraticForm> quads;
    quads.reserve(d.pairs.size());
    for (const auto& [l, q] : d.pairs) quads.push_back(q);
    QuadricSubspace Q = QuadricSubspace::from_span(f.field, f.nvars, quads);
    for (const auto& q : qprime.basis)
        if (!Q.contains(q))
            throw std::invalid_argument(
                "verify_maxrank_inequality: the subspace is not inside the decomposition span");

    const std::uint64_t codim = Q.dim() - qprime.dim();
    const std::uint32_t maxrank = minmax_rank(qprime, opt.budget).second;
    const QrankResult res = qrank_oracle(f, opt);
    return codim + maxrank >= res.r;
}

}  // namespace strengthlab
