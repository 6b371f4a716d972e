#include "strengthlab/suites.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "json.hpp"
#include "strengthlab/degeneration.hpp"
#include "strengthlab/errors.hpp"
#include "strengthlab/forms.hpp"
#include "strengthlab/qrank.hpp"
#include "strengthlab/quadspace.hpp"
#include "strengthlab/rng.hpp"
#include "strengthlab/witness.hpp"

namespace strengthlab {

namespace {

FieldPtr suite_field(const SuiteConfig& cfg) { return cfg.field ? cfg.field : Field::prime(5); }

QrankOptions oracle_options(const SuiteConfig& cfg) {
    QrankOptions opt;
    opt.budget = cfg.budget;
    opt.threads = cfg.threads;
    return opt;
}

std::uint32_t random_scalar(const FieldPtr& K, SplitMix64& rng) {
    return static_cast<std::uint32_t>(rng.below(K->q()));
}

LinearForm random_linear(const FieldPtr& K, std::uint32_t n, SplitMix64& rng) {
    std::vector<std::uint32_t> c(n);
    for (auto& x : c) x = random_scalar(K, rng);
    return LinearForm(K, std::move(c));
}

QuadraticForm random_quadratic(const FieldPtr& K, std::uint32_t n, SplitMix64& rng) {
    QuadraticForm q(K, n);
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = i; j < n; ++j) {
            const std::uint32_t v = random_scalar(K, rng);
            q.g(i, j) = v;
            q.g(j, i) = v;
        }
    return q;
}

CubicForm random_cubic(const FieldPtr& K, std::uint32_t n, SplitMix64& rng) {
    std::vector<std::pair<std::array<std::uint32_t, 3>, std::uint32_t>> terms;
    const std::size_t m = 1 + rng.below(2 * n + 2);
    for (std::size_t i = 0; i < m; ++i) {
        std::array<std::uint32_t, 3> v{};
        for (auto& x : v) x = static_cast<std::uint32_t>(rng.below(n));
        terms.push_back({v, random_scalar(K, rng)});
    }
    return CubicForm::from_terms(K, n, terms);
}

CubicForm random_nonzero_cubic(const FieldPtr& K, std::uint32_t n, SplitMix64& rng) {
    for (;;) {
        CubicForm f = random_cubic(K, n, rng);
        if (!f.is_zero()) return f;
    }
}

Matrix random_matrix(const FieldPtr& K, std::size_t rows, std::size_t cols, SplitMix64& rng) {
    Matrix m(K, rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = random_scalar(K, rng);
    return m;
}

Matrix random_invertible(const FieldPtr& K, std::size_t n, SplitMix64& rng) {
    for (;;) {
        Matrix m = random_matrix(K, n, n, rng);
        if (rank(m) == n) return m;
    }
}

Subspace random_codim(const FieldPtr& K, std::uint32_t n, std::uint32_t d, SplitMix64& rng) {
    for (;;) {
        Matrix constraints = random_matrix(K, d, n, rng);
        if (rank(constraints) == d) return kernel(constraints);
    }
}

// ---- the ten suites ---------------------------------------------------------
//
// Each returns the violation count; any exception inside a sample counts as a
// violation of that sample (these propositions never throw when the code is
// right, except that a budget refusal passes through untouched).

template <typename Fn>
std::uint64_t count_violations(std::uint64_t samples, std::uint64_t seed, Fn&& sample_ok) {
    SplitMix64 rng(seed);
    std::uint64_t violations = 0;
    for (std::uint64_t i = 0; i < samples; ++i) {
        try {
            if (!sample_ok(rng)) ++violations;
        } catch (const budget_exceeded_error&) {
            throw;
        } catch (const std::exception&) {
            ++violations;
        }
    }
    return violations;
}

// q-rank is subadditive: qrank(f + g) <= qrank(f) + qrank(g).
std::uint64_t suite_subadd(const SuiteConfig& cfg, std::uint64_t seed, std::uint64_t samples) {
    const FieldPtr K = suite_field(cfg);
    const QrankOptions opt = oracle_options(cfg);
    return count_violations(samples, seed, [&](SplitMix64& rng) {
        const auto n = static_cast<std::uint32_t>(1 + rng.below(4));
        const CubicForm f = random_cubic(K, n, rng);
        const CubicForm g = random_cubic(K, n, rng);
        const std::uint32_t rf = qrank_oracle(f, opt).r;
        const std::uint32_t rg = qrank_oracle(g, opt).r;
        const std::uint32_t rs = qrank_oracle(add(f, g), opt).r;
        return rs <= rf + rg;
    });
}

// Restriction to a codimension-d subspace moves q-rank by at most d, and
// never up; both halves are checked again one level down the chain.
std::uint64_t suite_qsubsp(const SuiteConfig& cfg, std::uint64_t seed, std::uint64_t samples) {
    const FieldPtr K = suite_field(cfg);
    const QrankOptions opt = oracle_options(cfg);
    return count_violations(samples, seed, [&](SplitMix64& rng) {
        const auto n = static_cast<std::uint32_t>(2 + rng.below(3));
        const CubicForm f = random_cubic(K, n, rng);
        const auto d1 = static_cast<std::uint32_t>(rng.below(n + 1));
        const Subspace w = random_codim(K, n, d1, rng);
        const CubicForm f1 = restrict_form(f, w);
        const std::uint32_t r = qrank_oracle(f, opt).r;
        const std::uint32_t r1 = qrank_oracle(f1, opt).r;
        if (r1 > r || r > d1 + r1) return false;
        const auto m = static_cast<std::uint32_t>(f1.n());
        if (m == 0) return true;
        const auto d2 = static_cast<std::uint32_t>(rng.below(m + 1));
        const CubicForm f2 = restrict_form(f1, random_codim(K, m, d2, rng));
        const std::uint32_t r2 = qrank_oracle(f2, opt).r;
        return r2 <= r1 && r1 <= d2 + r2;
    });
}

// The geometric search and the linear-solve search agree, and each one's
// certificate checks out against f itself.
std::uint64_t suite_geom_equiv(const SuiteConfig& cfg, std::uint64_t seed, std::uint64_t samples) {
    const FieldPtr K = suite_field(cfg);
    QrankOptions opt = oracle_options(cfg);
    opt.max_r = 2;
    return count_violations(samples, seed, [&](SplitMix64& rng) {
        const auto n = static_cast<std::uint32_t>(1 + rng.below(3));
        const CubicForm f = random_cubic(K, n, rng);
        const QrankResult a = qrank_oracle(f, opt);
        const LinearSolveResult b = qrank_linear_solve_oracle(f, opt);
        if (a.r != b.r || a.exact != b.exact) return false;
        if (a.witness && !restrict_form(f, *a.witness).is_zero()) return false;
        if (b.decomposition) {
            if (b.decomposition->length() != b.r) return false;
            if (!(assemble(*b.decomposition) == f)) return false;
        }
        return true;
    });
}

// q-rank is a GL-invariant: substituting an invertible change of variables
// never moves it.
std::uint64_t suite_gl_invariance(const SuiteConfig& cfg, std::uint64_t seed,
                                  std::uint64_t samples) {
    const FieldPtr K = suite_field(cfg);
    const QrankOptions opt = oracle_options(cfg);
    return count_violations(samples, seed, [&](SplitMix64& rng) {
        const auto n = static_cast<std::uint32_t>(1 + rng.below(4));
        const CubicForm f = random_cubic(K, n, rng);
        const Matrix g = random_invertible(K, n, rng);
        const QrankResult before = qrank_oracle(f, opt);
        const QrankResult after = qrank_oracle(substitute(f, g), opt);
        return before.r == after.r && before.exact && after.exact;
    });
}

// For any decomposition f = sum l_i q_i and any subspace Q' of the span of
// the q_i: codim + maxrank >= qrank(f).
std::uint64_t suite_maxrank(const SuiteConfig& cfg, std::uint64_t seed, std::uint64_t samples) {
    const FieldPtr K = suite_field(cfg);
    const QrankOptions opt = oracle_options(cfg);
    return count_violations(samples, seed, [&](SplitMix64& rng) {
        const auto n = static_cast<std::uint32_t>(2 + rng.below(3));
        const CubicForm f = random_nonzero_cubic(K, n, rng);
        const QrankResult res = qrank_oracle(f, opt);
        const LQDecomposition d = decompose_via_subspace(f, *res.witness);
        std::vector<QuadraticForm> qs;
        for (const auto& [l, q] : d.pairs) qs.push_back(q);
        const QuadricSubspace Q = QuadricSubspace::from_span(K, n, qs);
        std::vector<QuadraticForm> picks;
        const std::size_t want = rng.below(Q.dim() + 1);
        for (std::size_t i = 0; i < want; ++i) {
            std::vector<std::uint32_t> coeffs(Q.dim());
            for (auto& c : coeffs) c = random_scalar(K, rng);
            picks.push_back(Q.element(coeffs));
        }
        const QuadricSubspace qprime = QuadricSubspace::from_span(K, n, picks);
        return verify_maxrank_inequality(f, d, qprime, opt);
    });
}

// Forms of rank < s with some combination of rank >= t admit a combination
// in the window [t, t + s - 2].
std::uint64_t suite_minrank_lemma(const SuiteConfig& cfg, std::uint64_t seed,
                                  std::uint64_t samples) {
    const FieldPtr K = suite_field(cfg);
    return count_violations(samples, seed, [&](SplitMix64& rng) {
        const auto n = static_cast<std::uint32_t>(3 + rng.below(2));
        const auto s = static_cast<std::uint32_t>(2 + rng.below(2));
        const auto count = static_cast<std::size_t>(3 + rng.below(3));
        std::vector<QuadraticForm> qs;
        for (std::size_t i = 0; i < count; ++i) {
            // Pull a quadric back through an (s-1)-row map: rank <= s - 1.
            const QuadraticForm small = random_quadratic(K, s - 1, rng);
            qs.push_back(substitute(small, random_matrix(K, s - 1, n, rng)));
        }
        const QuadricSubspace span = QuadricSubspace::from_span(K, n, qs);
        if (span.dim() == 0) return true;
        const std::uint32_t t = minmax_rank(span, cfg.budget).second;
        if (t == 0) return true;
        const QuadraticForm pick = bounded_rank_combination(qs, t, s, cfg.budget);
        const std::uint32_t got = quadratic_rank(pick);
        return t <= got && got <= t + s - 2;
    });
}

// extract_high_minrank on the span of a genuine decomposition must succeed
// whenever its entry inequality holds, with dimension k and minrank >= s.
std::uint64_t suite_minrank_extract(const SuiteConfig& cfg, std::uint64_t seed,
                                    std::uint64_t samples) {
    const FieldPtr K = suite_field(cfg);
    const QrankOptions opt = oracle_options(cfg);
    return count_violations(samples, seed, [&](SplitMix64& rng) {
        const auto n = static_cast<std::uint32_t>(2 + rng.below(3));
        const CubicForm f = random_nonzero_cubic(K, n, rng);
        const QrankResult res = qrank_oracle(f, opt);
        const LQDecomposition d = decompose_via_subspace(f, *res.witness);
        std::vector<QuadraticForm> qs;
        for (const auto& [l, q] : d.pairs) qs.push_back(q);
        const QuadricSubspace Q = QuadricSubspace::from_span(K, n, qs);
        if (Q.dim() == 0) return true;

        // The largest feasible s, then the largest k at that s.
        std::uint32_t best_k = 0, best_s = 0;
        for (std::uint32_t k = 1; k <= Q.dim(); ++k) {
            if (res.r < k) break;
            const std::uint64_t denom = (1ull << k) - 1;
            const auto s = static_cast<std::uint32_t>(1 + (res.r - k) / denom);
            if (s > best_s || (s == best_s && k > best_k)) {
                best_k = k;
                best_s = s;
            }
        }
        if (best_k == 0) return true;
        const QuadricSubspace got = extract_high_minrank(Q, best_k, best_s, res.r, cfg.budget);
        if (got.dim() != best_k) return false;
        if (minmax_rank(got, cfg.budget).first < best_s) return false;
        for (const auto& q : got.basis)
            if (!Q.contains(q)) return false;
        return true;
    });
}

// separable_degenerate: the certificate replays, the result is separable
// across its split block, and its q-rank clears the advertised bound.
std::uint64_t suite_srk(const SuiteConfig& cfg, std::uint64_t seed, std::uint64_t samples) {
    const FieldPtr K = suite_field(cfg);
    const QrankOptions opt = oracle_options(cfg);
    return count_violations(samples, seed, [&](SplitMix64& rng) {
        const auto n = static_cast<std::uint32_t>(3 + rng.below(4));
        CubicForm f(K, n);
        do {
            f = CubicForm(K, n);
            for (int i = 0; i < 3; ++i)
                f = add(f, mul(random_linear(K, n, rng), random_quadratic(K, n, rng)));
        } while (f.is_zero());

        const SeparableResult sep = separable_degenerate(f, opt);
        if (!(sep.cert.start == f) || !(sep.cert.end == sep.g)) return false;
        if (!verify_certificate(sep.cert).ok) return false;
        for (const auto& term : sep.g.terms) {
            int hits = 0;
            for (const auto v : term.v)
                hits += std::count(sep.split_block.begin(), sep.split_block.end(), v) ? 1 : 0;
            if (hits != 1) return false;
        }
        return qrank_oracle(sep.g, opt).r >= sep.bound;
    });
}

// Over a degree-6 extension a binary cubic has q-rank <= 1, and a ternary
// cubic picks up a projective zero within a degree-3 step, so q-rank <= 2.
std::uint64_t suite_qbd_ext(const SuiteConfig& cfg, std::uint64_t seed, std::uint64_t samples) {
    const FieldPtr K = suite_field(cfg);
    const std::uint64_t binary = samples / 2;

    auto lift = [](const CubicForm& f, const FieldExtension& ext) {
        std::vector<std::pair<std::array<std::uint32_t, 3>, std::uint32_t>> terms;
        for (const auto& t : f.terms)
            terms.push_back({{t.v[0], t.v[1], t.v[2]}, ext.embedding.map(t.c)});
        return CubicForm::from_terms(ext.field, f.nvars, terms);
    };

    return count_violations(samples, seed, [&, next = std::uint64_t{0}](SplitMix64& rng) mutable {
        const std::uint64_t i = next++;
        if (i < binary) {
            // A binary cubic splits into linear factors over GF(q^6), since
            // every irreducible factor has degree 1, 2, or 3.
            const CubicForm f = random_nonzero_cubic(K, 2, rng);
            const FieldExtension ext = field_extend(K, 6);
            QrankOptions opt = oracle_options(cfg);
            opt.max_r = 1;
            const QrankResult res = qrank_oracle(lift(f, ext), opt);
            return res.exact && res.r <= 1;
        }
        // A plane cubic acquires a projective zero by degree 3 (rational
        // point of a curve, or a field of definition of a component), and a
        // zero gives a vanishing line, i.e. q-rank <= 2.
        const CubicForm f = random_nonzero_cubic(K, 3, rng);
        for (std::uint32_t k = 1; k <= 3; ++k) {
            const FieldExtension ext = field_extend(K, k);
            const CubicForm fk = lift(f, ext);
            const std::uint64_t q = ext.field->q();
            bool found = false;
            std::vector<std::uint32_t> pt(3, 0);
            for (std::uint32_t lead = 0; lead < 3 && !found; ++lead) {
                std::fill(pt.begin(), pt.end(), 0u);
                pt[lead] = 1;
                // Odometer over the coordinates after the leading 1.
                for (;;) {
                    if (evaluate(fk, pt) == 0) {
                        found = true;
                        break;
                    }
                    std::uint32_t j = lead + 1;
                    while (j < 3 && ++pt[j] == q) pt[j++] = 0;
                    if (j == 3) break;
                }
            }
            if (!found) continue;
            QrankOptions opt = oracle_options(cfg);
            opt.max_r = 2;
            const QrankResult res = qrank_oracle(fk, opt);
            return res.exact && res.r <= 2;
        }
        return false;  // no zero by degree 3: impossible
    });
}

// Diagonal cubics never vanish on a codimension n-1 subspace, and the pivot
// certificate agrees with direct restriction.
std::uint64_t suite_witness(const SuiteConfig& cfg, std::uint64_t seed, std::uint64_t samples) {
    const FieldPtr K = suite_field(cfg);
    const std::uint32_t n = 3;
    return count_violations(samples, seed, [&](SplitMix64& rng) {
        const Subspace w = random_codim(K, 3 * n, n - 1, rng);
        const NonvanishingCertificate cert = certify_diagonal_qrank(n, w);
        if (cert.phase.pivot_coefficient != 1) return false;
        return !restrict_form(diagonal_cubic(K, n), w).is_zero();
    });
}

struct SuiteSpec {
    const char* name;
    std::uint64_t default_samples;
    std::uint64_t (*run)(const SuiteConfig&, std::uint64_t, std::uint64_t);
};

constexpr std::array<SuiteSpec, 10> kSuites{{
    {"subadd", 500, suite_subadd},
    {"qsubsp", 500, suite_qsubsp},
    {"geom-equiv", 200, suite_geom_equiv},
    {"gl-invariance", 200, suite_gl_invariance},
    {"maxrank", 300, suite_maxrank},
    {"minrank-lemma", 100, suite_minrank_lemma},
    {"minrank-extract", 100, suite_minrank_extract},
    {"srk", 100, suite_srk},
    {"qbd-ext", 100, suite_qbd_ext},
    {"witness", 200, suite_witness},
}};

// The per-suite seed is position i+1 in the SplitMix stream of the master
// seed, so a suite draws the same samples whether it runs alone or in "all".
std::uint64_t seed_for(std::uint64_t master, std::size_t index) {
    SplitMix64 g(master);
    std::uint64_t s = 0;
    for (std::size_t i = 0; i <= index; ++i) s = g.next();
    return s;
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& s : kSuites) v.emplace_back(s.name);
        return v;
    }();
    return names;
}

SuiteResult run_suite(const std::string& name, const SuiteConfig& cfg) {
    for (std::size_t i = 0; i < kSuites.size(); ++i) {
        if (name != kSuites[i].name) continue;
        const std::uint64_t samples = cfg.samples ? cfg.samples : kSuites[i].default_samples;
        const auto t0 = std::chrono::steady_clock::now();
        SuiteResult res;
        res.name = name;
        res.samples = samples;
        res.violations = kSuites[i].run(cfg, seed_for(cfg.seed, i), samples);
        res.elapsed_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return res;
    }
    throw std::invalid_argument("unknown suite '" + name + "'");
}

std::vector<SuiteResult> run_suites(const std::string& which, const SuiteConfig& cfg) {
    std::vector<SuiteResult> out;
    if (which == "all") {
        for (const auto& s : kSuites) out.push_back(run_suite(s.name, cfg));
        return out;
    }
    out.push_back(run_suite(which, cfg));
    return out;
}

std::string suite_report_json(const std::vector<SuiteResult>& results, std::uint64_t seed,
                              const FieldPtr& field) {
    const FieldPtr K = field ? field : Field::prime(5);
    nlohmann::json j;
    j["kind"] = "suite_report";
    j["seed"] = seed;
    nlohmann::json fj;
    fj["p"] = K->p();
    fj["e"] = K->e();
    if (K->e() > 1) fj["modulus"] = K->modulus();
    j["field"] = std::move(fj);
    std::uint64_t total = 0;
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : results) {
        nlohmann::json row;
        row["name"] = r.name;
        row["samples"] = r.samples;
        row["violations"] = r.violations;
        arr.push_back(std::move(row));
        total += r.violations;
    }
    j["results"] = std::move(arr);
    j["total_violations"] = total;
    return j.dump(2) + "\n";
}

}  // namespace strengthlab
