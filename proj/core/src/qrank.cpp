#include "strengthlab/qrank.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <stdexcept>
#include <thread>
#include <tuple>
#include <vector>

#include "strengthlab/errors.hpp"

namespace strengthlab {

namespace {

constexpr std::uint64_t kZeroTableCap = 1ull << 22;
constexpr std::uint64_t kChunk = 1024;
constexpr std::uint64_t kNoPosition = std::numeric_limits<std::uint64_t>::max();

// Zero set of f indexed by point code (sum v_j q^j). One upfront sweep of the
// whole space; pays for itself as soon as the scan tests more points than the
// space holds, which is the normal situation for round sizes past [n 2]_q.
std::vector<bool> build_zero_table(const CubicForm& f, std::uint64_t space) {
    const std::uint64_t q = f.field->q();
    std::vector<bool> table(space);
    std::vector<std::uint32_t> v(f.nvars, 0);
    for (std::uint64_t code = 0;; ++code) {
        table[code] = evaluate(f, v) == 0;
        std::size_t j = 0;
        while (j < v.size() && ++v[j] == q) v[j++] = 0;
        if (j == v.size()) break;
    }
    return table;
}

// Decides restrict(f, span of B's rows) == 0 by evaluating f at every
// projective point of the span (first nonzero combination coefficient fixed
// to 1). Valid because deg f = 3 < q. Points are walked with an odometer over
// the trailing coefficients so each step is one row-addition; the wrap adds a
// row q times, which is the identity since char | q.
class VanishTester {
public:
    VanishTester(const CubicForm& f, const std::vector<bool>* table)
        : f_(&f), table_(table), field_(f.field.get()), q_(f.field->q()),
          prime_(f.field->e() == 1), p_(static_cast<std::uint32_t>(f.field->p())) {}

    bool vanishes_on(const Matrix& basis) {
        const std::size_t k = basis.rows(), n = basis.cols();
        if (k == 0) return true;
        v_.assign(n, 0);
        u_.assign(k, 0);
        for (std::size_t lead = 0; lead < k; ++lead) {
            const std::uint32_t* row = basis.row(lead);
            std::copy(row, row + n, v_.begin());
            std::fill(u_.begin() + static_cast<std::ptrdiff_t>(lead) + 1, u_.end(), 0);
            for (;;) {
                if (!point_is_zero()) return false;
                std::size_t t = k;
                bool rolled_over = true;
                while (t > lead + 1) {
                    --t;
                    add_row(basis, t, n);
                    if (++u_[t] < q_) {
                        rolled_over = false;
                        break;
                    }
                    u_[t] = 0;
                }
                if (rolled_over) break;
            }
        }
        return true;
    }

private:
    void add_row(const Matrix& basis, std::size_t t, std::size_t n) {
        const std::uint32_t* row = basis.row(t);
        if (prime_) {
            for (std::size_t j = 0; j < n; ++j) {
                std::uint32_t s = v_[j] + row[j];
                v_[j] = s >= p_ ? s - p_ : s;
            }
        } else {
            for (std::size_t j = 0; j < n; ++j) v_[j] = field_->add(v_[j], row[j]);
        }
    }

    bool point_is_zero() const {
        if (table_) {
            std::uint64_t code = 0, mult = 1;
            for (std::size_t j = 0; j < v_.size(); ++j) {
                code += v_[j] * mult;
                mult *= q_;
            }
            return (*table_)[code];
        }
        return evaluate(*f_, v_) == 0;
    }

    const CubicForm* f_;
    const std::vector<bool>* table_;
    const Field* field_;
    std::uint64_t q_;
    bool prime_;
    std::uint32_t p_;
    std::vector<std::uint32_t> v_, u_;
};

std::pair<std::size_t, std::uint64_t> locate_position(const std::vector<std::uint64_t>& prefix,
                                                      std::uint64_t pos) {
    std::size_t bi = static_cast<std::size_t>(
        std::upper_bound(prefix.begin(), prefix.end(), pos) - prefix.begin() - 1);
    return {bi, pos - prefix[bi]};
}

// Scans one Grassmannian round for the first vanishing subspace. Chunks are
// claimed through an atomic counter and the winning canonical position is
// reconciled by compare-and-swap minimum, so the result (and everything
// derived from it) is independent of the thread count: every position below
// the final minimum was inspected by somebody and failed.
std::uint64_t scan_round(const CubicForm& f, std::uint32_t dim, std::uint64_t round_total,
                         const std::vector<PivotBlock>& blocks,
                         const std::vector<std::uint64_t>& prefix, std::uint32_t threads,
                         const std::vector<bool>* table) {
    std::atomic<std::uint64_t> next_chunk{0};
    std::atomic<std::uint64_t> best{kNoPosition};

    auto worker = [&]() {
        VanishTester tester(f, table);
        Matrix basis(f.field, dim, f.nvars);
        for (;;) {
            const std::uint64_t chunk = next_chunk.fetch_add(1);
            if (chunk > round_total / kChunk) return;
            const std::uint64_t start = chunk * kChunk;
            if (start >= round_total || start >= best.load(std::memory_order_relaxed)) return;
            const std::uint64_t end = std::min(start + kChunk, round_total);
            auto [bi, off] = locate_position(prefix, start);
            for (std::uint64_t pos = start; pos < end; ++pos) {
                if (pos >= best.load(std::memory_order_relaxed)) break;
                fill_subspace_basis(blocks[bi], off, basis);
                if (tester.vanishes_on(basis)) {
                    std::uint64_t cur = best.load(std::memory_order_relaxed);
                    while (pos < cur && !best.compare_exchange_weak(cur, pos)) {
                    }
                    break;
                }
                if (++off == blocks[bi].size) {
                    ++bi;
                    off = 0;
                }
            }
        }
    };

    const std::uint32_t nthreads = std::max<std::uint32_t>(1, threads);
    if (nthreads == 1 || round_total <= kChunk) {
        worker();
    } else {
        std::vector<std::thread> pool;
        const std::uint64_t chunks = (round_total + kChunk - 1) / kChunk;
        const std::uint32_t spawn =
            static_cast<std::uint32_t>(std::min<std::uint64_t>(nthreads, chunks));
        pool.reserve(spawn);
        for (std::uint32_t i = 0; i < spawn; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return best.load();
}

void check_budget(const BigInt& planned, std::uint64_t budget, const char* who) {
    if (planned > budget)
        throw budget_exceeded_error(std::string(who) + ": planned enumeration exceeds budget",
                                    planned.str(), budget);
}

const std::vector<bool>* maybe_zero_table(const CubicForm& f, std::vector<bool>& storage) {
    const std::uint64_t q = f.field->q();
    std::uint64_t space = 1;
    for (std::uint32_t i = 0; i < f.nvars; ++i) {
        if (space > kZeroTableCap / q) return nullptr;
        space *= q;
    }
    storage = build_zero_table(f, space);
    return &storage;
}

}  // namespace

QrankResult qrank_oracle(const CubicForm& f, const QrankOptions& opt) {
    if (!f.field) throw std::invalid_argument("qrank_oracle: form has no field");
    const FieldPtr& K = f.field;
    const std::uint32_t n = f.nvars;
    const std::uint32_t cap = opt.max_r ? std::min<std::uint32_t>(*opt.max_r, n) : n;

    BigInt planned = 1;  // round 0: the whole space
    check_budget(planned, opt.budget, "qrank_oracle");
    if (f.is_zero()) return {0, true, Subspace::whole(K, n), 1};
    std::uint64_t counted = 1;
    if (cap == 0) return {1, false, std::nullopt, counted};

    std::vector<bool> table_storage;
    const std::vector<bool>* table = maybe_zero_table(f, table_storage);

    for (std::uint32_t r = 1; r <= cap; ++r) {
        const std::uint32_t dim = n - r;
        const BigInt round_big = subspace_count(n, dim, K->q());
        planned += round_big;
        check_budget(planned, opt.budget, "qrank_oracle");
        const std::uint64_t round_total = round_big.convert_to<std::uint64_t>();

        const std::vector<PivotBlock> blocks = subspace_blocks(n, dim, K->q());
        std::vector<std::uint64_t> prefix(blocks.size() + 1, 0);
        for (std::size_t i = 0; i < blocks.size(); ++i) prefix[i + 1] = prefix[i] + blocks[i].size;

        const std::uint64_t found = scan_round(f, dim, round_total, blocks, prefix, opt.threads, table);
        if (found != kNoPosition) {
            counted += found + 1;
            auto [bi, off] = locate_position(prefix, found);
            Matrix basis(K, dim, n);
            fill_subspace_basis(blocks[bi], off, basis);
            std::vector<std::size_t> pivots(blocks[bi].pivots.begin(), blocks[bi].pivots.end());
            return {r, true, make_subspace_prechecked(std::move(basis), std::move(pivots)), counted};
        }
        counted += round_total;
    }
    // Round n always succeeds (the zero subspace vanishes), so reaching here
    // means the cap cut the search short: only qrank >= cap + 1 is known.
    return {cap + 1, false, std::nullopt, counted};
}

namespace {

// Column of the unknown coefficient of x_u x_v (u <= v) inside one quadric's
// block: pairs ordered (0,0),(0,1),...,(0,n-1),(1,1),...
std::size_t pair_index(std::uint32_t u, std::uint32_t v, std::uint32_t n) {
    return static_cast<std::size_t>(u) * n - (static_cast<std::size_t>(u) * (u - 1)) / 2 + (v - u);
}

}  // namespace

LinearSolveResult qrank_linear_solve_oracle(const CubicForm& f, const QrankOptions& opt) {
    if (!f.field) throw std::invalid_argument("qrank_linear_solve_oracle: form has no field");
    const FieldPtr& K = f.field;
    const Field& F = *K;
    const std::uint32_t n = f.nvars;
    const std::uint32_t cap = opt.max_r ? std::min<std::uint32_t>(*opt.max_r, n) : n;

    BigInt planned = 1;
    check_budget(planned, opt.budget, "qrank_linear_solve_oracle");
    if (f.is_zero()) return {0, true, LQDecomposition{K, n, {}}, 1};
    std::uint64_t counted = 1;
    if (cap == 0) return {1, false, std::nullopt, counted};

    std::vector<std::array<std::uint32_t, 3>> monos;
    for (std::uint32_t a = 0; a < n; ++a)
        for (std::uint32_t b = a; b < n; ++b)
            for (std::uint32_t c = b; c < n; ++c) monos.push_back({a, b, c});
    std::vector<std::uint32_t> rhs(monos.size());
    for (std::size_t i = 0; i < monos.size(); ++i)
        rhs[i] = f.coeff(monos[i][0], monos[i][1], monos[i][2]);

    const std::size_t npairs = static_cast<std::size_t>(n) * (n + 1) / 2;

    for (std::uint32_t r = 1; r <= cap; ++r) {
        const BigInt round_big = subspace_count(n, r, K->q());
        planned += round_big;
        check_budget(planned, opt.budget, "qrank_linear_solve_oracle");
        const std::uint64_t round_total = round_big.convert_to<std::uint64_t>();

        // Spans of linear forms: a dim-r subspace of the dual, identified with
        // row spans of RREF matrices. Solvability of sum l_i q_i = f depends
        // only on the span, so one representative basis per span suffices.
        SubspaceEnumerator spans(K, n, n - r, opt.budget);
        std::uint64_t pos = 0;
        while (auto L = spans.next()) {
            ++pos;
            const Matrix& ells = L->basis();
            Matrix A(K, monos.size(), static_cast<std::size_t>(r) * npairs);
            for (std::size_t mi = 0; mi < monos.size(); ++mi) {
                const auto [a, b, c] = monos[mi];
                // coefficient of x_a x_b x_c in l_i * q_i: sum over the distinct
                // variables of the monomial of l_i[that variable] times the
                // unknown on the remaining pair
                std::array<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>, 3> ways{};
                std::size_t nways = 0;
                ways[nways++] = {a, b, c};
                if (b != a) ways[nways++] = {b, a, c};
                if (c != b && c != a) ways[nways++] = {c, a, b};
                for (std::uint32_t i = 0; i < r; ++i) {
                    for (std::size_t wi = 0; wi < nways; ++wi) {
                        const auto [d, u, v] = ways[wi];
                        const std::uint32_t li = ells.at(i, d);
                        if (!li) continue;
                        std::uint32_t& cell = A.at(mi, i * npairs + pair_index(u, v, n));
                        cell = F.add(cell, li);
                    }
                }
            }
            if (auto x = solve(A, rhs)) {
                LQDecomposition dec{K, n, {}};
                for (std::uint32_t i = 0; i < r; ++i) {
                    LinearForm li(K, ells.row_vec(i));
                    std::vector<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>> qm;
                    for (std::uint32_t u = 0; u < n; ++u)
                        for (std::uint32_t v = u; v < n; ++v) {
                            const std::uint32_t cc = (*x)[i * npairs + pair_index(u, v, n)];
                            if (cc) qm.emplace_back(u, v, cc);
                        }
                    dec.pairs.emplace_back(std::move(li), QuadraticForm::from_monomials(K, n, qm));
                }
                counted += pos;
                return {r, true, std::move(dec), counted};
            }
        }
        counted += round_total;
    }
    return {cap + 1, false, std::nullopt, counted};
}

LQDecomposition decompose_via_subspace(const CubicForm& f, const Subspace& w) {
    require_same_field(f.field, w.field(), "decompose_via_subspace");
    if (w.ambient() != f.nvars)
        throw std::invalid_argument("decompose_via_subspace: subspace ambient dimension mismatch");
    const FieldPtr& K = f.field;
    const std::uint32_t n = f.nvars;
    const std::uint32_t r = static_cast<std::uint32_t>(w.codim());

    // In the completed basis the last dim(w) coordinates sweep w, so f|_w = 0
    // exactly when every term of the rewritten form carries one of the first
    // r coordinates; that first coordinate indexes the term's quadric.
    const Matrix Ct = complete_basis(w).transpose();
    const CubicForm g = substitute(f, Ct);
    for (const auto& t : g.terms)
        if (t.v[0] >= r)
            throw std::invalid_argument("decompose_via_subspace: f does not vanish on w");

    std::vector<std::vector<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>>> qmonos(r);
    for (const auto& t : g.terms) qmonos[t.v[0]].emplace_back(t.v[1], t.v[2], t.c);

    const Matrix back = *inverse(Ct);
    LQDecomposition out{K, n, {}};
    out.pairs.reserve(r);
    for (std::uint32_t i = 0; i < r; ++i) {
        LinearForm li(K, back.row_vec(i));
        QuadraticForm qi = substitute(QuadraticForm::from_monomials(K, n, qmonos[i]), back);
        out.pairs.emplace_back(std::move(li), std::move(qi));
    }
    return out;
}

std::uint64_t xi(std::uint64_t d) {
    if (d <= (std::numeric_limits<std::uint64_t>::max() - 17) / 8)
        return (isqrt_u64(8 * d + 17) - 3) / 2;
    const BigInt s = isqrt(BigInt(8) * d + 17);
    return ((s - 3) / 2).convert_to<std::uint64_t>();
}

std::uint64_t xi_combinatorial(std::uint64_t d) {
    // largest k with C(k+1,2) + k - 1 <= d, i.e. k^2 + 3k <= 2d + 2
    const auto holds = [d](std::uint64_t k) {
        const unsigned __int128 lhs =
            static_cast<unsigned __int128>(k) * k + static_cast<unsigned __int128>(3) * k;
        return lhs <= static_cast<unsigned __int128>(2) * d + 2;
    };
    std::uint64_t lo = 0, hi = 1;
    while (holds(hi)) {
        lo = hi;
        hi *= 2;
    }
    while (hi - lo > 1) {
        const std::uint64_t mid = lo + (hi - lo) / 2;
        (holds(mid) ? lo : hi) = mid;
    }
    return lo;
}

BigInt surjection_min_qrank(std::uint32_t d) {
    if (d < 1) throw std::invalid_argument("surjection_min_qrank: d must be >= 1");
    const BigInt pow2 = BigInt(1) << d;
    const BigInt s = BigInt(d) * d * pow2 + BigInt(2) * (BigInt(d) + 1) * d;
    const BigInt lhs = (pow2 - 1) * (s - 1) + d;
    // Need lhs <= xi(r) / 2, i.e. xi(r) >= M := 2 lhs; by the combinatorial
    // definition the smallest such r is C(M+1,2) + M - 1.
    const BigInt M = 2 * lhs;
    return choose2(M + 1) + M - 1;
}

bool mainthm3_check(const BigInt& r, std::uint64_t d) {
    if (r < 1) throw std::invalid_argument("mainthm3_check: r must be >= 1");
    if (r < exp_ceiling(240)) return false;
    if (d == 0) return true;
    // r must exceed e^(3d) > 2^(3d); reject by bit length before committing to
    // the exact threshold (also keeps huge d from materializing e^(3d)).
    const std::uint64_t bits = boost::multiprecision::msb(r) + 1;
    if (BigInt(bits) <= BigInt(3) * d) return false;
    return r >= exp_ceiling(3 * d);
}

}  // namespace strengthlab
