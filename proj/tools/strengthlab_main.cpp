// strengthlab: q-rank computation and certification for cubic forms over
// GF(p^e). Subcommands drive the library modules and emit deterministic JSON
// (no timestamps or timing), so identical (input, seed, field, budget) give
// byte-identical reports regardless of --threads. Human-readable progress,
// including elapsed time, goes to stderr; paper-check additionally prints a
// summary table (with runtime) to stdout.
//
// Exit codes: 0 ok, 1 usage or parse error, 2 enumeration budget exceeded,
// 3 property violation (a produced certificate failed its verifier, or a
// property suite counted violations).

#include <array>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "strengthlab/degeneration.hpp"
#include "strengthlab/errors.hpp"
#include "strengthlab/field.hpp"
#include "strengthlab/forms.hpp"
#include "strengthlab/json_io.hpp"
#include "strengthlab/polyio.hpp"
#include "strengthlab/qrank.hpp"
#include "strengthlab/quadspace.hpp"
#include "strengthlab/suites.hpp"
#include "strengthlab/witness.hpp"

using namespace strengthlab;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitBudget = 2;
constexpr int kExitViolation = 3;

// A produced certificate failed its verifier, or a theorem the output relies
// on did not hold. Mapped to exit code 3.
class violation_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string field_spec;  // empty: use the input's header / the GF(5) default
    std::uint64_t seed = 42;
    std::uint64_t budget = kDefaultBudget;
    std::uint32_t threads = 1;
    std::optional<std::uint32_t> max_r;
    std::string out;  // empty: stdout
};

void add_common_flags(CLI::App& cmd, RunConfig& cfg) {
    cmd.add_option("--field", cfg.field_spec, "field spec, e.g. p=5 or p=7,e=2");
    cmd.add_option("--seed", cfg.seed, "seed for randomized runs")->capture_default_str();
    cmd.add_option("--budget", cfg.budget, "enumeration budget")
        ->envname("STRENGTHLAB_BUDGET")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd.add_option("--threads", cfg.threads, "worker thread count")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd.add_option("--max-r", cfg.max_r, "cap the q-rank search at this r");
    cmd.add_option("--out", cfg.out, "write the JSON report to this file instead of stdout");
}

std::optional<FieldSpec> fallback_spec(const RunConfig& cfg) {
    if (cfg.field_spec.empty()) return std::nullopt;
    return FieldSpec::parse(cfg.field_spec);
}

FieldPtr field_or_default(const RunConfig& cfg) {
    if (cfg.field_spec.empty()) return Field::prime(5);
    return Field::make(FieldSpec::parse(cfg.field_spec));
}

QrankOptions oracle_options(const RunConfig& cfg) {
    return {cfg.max_r, cfg.budget, cfg.threads};
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void emit(const RunConfig& cfg, const std::string& json) {
    if (cfg.out.empty()) {
        std::cout << json;
        return;
    }
    std::ofstream out(cfg.out, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + cfg.out);
    out << json;
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + cfg.out);
}

class Timer {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
    }

private:
    std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

std::string format_seconds(double s) {
    std::ostringstream ss;
    ss << std::fixed << std::setprecision(2) << s << "s";
    return ss.str();
}

// Labels failures of a multi-step command with the step that failed, keeping
// the types that drive exit codes (budget -> 2, violations -> 3) intact.
template <typename Fn>
auto staged(const char* stage, Fn&& fn) -> decltype(fn()) {
    try {
        return fn();
    } catch (const budget_exceeded_error&) {
        throw;
    } catch (const construction_failed_error&) {
        throw;
    } catch (const violation_error&) {
        throw;
    } catch (const stage_error&) {
        throw;
    } catch (const std::exception& e) {
        throw stage_error(stage, e.what());
    }
}

PolyDocument parse_input(const RunConfig& cfg, const std::string& path) {
    return staged("parse-input",
                  [&] { return parse_poly_text(read_file(path), fallback_spec(cfg)); });
}

// ---- qrank ------------------------------------------------------------------

int cmd_qrank(const RunConfig& cfg, const std::string& input) {
    const Timer timer;
    const PolyDocument doc = parse_input(cfg, input);
    const QrankResult res = qrank_oracle(doc.f, oracle_options(cfg));

    std::optional<LQDecomposition> dec;
    if (res.witness) {
        if (!restrict_form(doc.f, *res.witness).is_zero())
            throw violation_error("q-rank witness does not annihilate the form");
        dec = decompose_via_subspace(doc.f, *res.witness);
        if (!(assemble(*dec) == doc.f))
            throw violation_error("extracted decomposition does not assemble back to the form");
    }

    emit(cfg, qrank_report_to_json(doc.f, res, dec ? &*dec : nullptr));
    std::cerr << "qrank: r " << (res.exact ? "= " : ">= ") << res.r << " over "
              << doc.field->spec().format() << ", " << res.enumeration_count << " candidates, "
              << format_seconds(timer.seconds()) << "\n";
    return kExitOk;
}

// ---- degenerate --------------------------------------------------------------

int cmd_degenerate(const RunConfig& cfg, const std::string& input) {
    const Timer timer;
    const PolyDocument doc = parse_input(cfg, input);
    const SeparableResult res =
        staged("degenerate", [&] { return separable_degenerate(doc.f, oracle_options(cfg)); });

    const VerifyOutcome check = verify_certificate(res.cert);
    if (!check.ok)
        throw violation_error("degeneration certificate failed replay at step " +
                              std::to_string(check.failing_step));

    emit(cfg, separable_result_to_json(res));
    std::cerr << "degenerate: " << res.cert.steps.size() << " steps, k' = " << res.k_prime
              << ", q-rank bound " << res.bound << ", " << format_seconds(timer.seconds()) << "\n";
    return kExitOk;
}

// ---- minrank-extract ----------------------------------------------------------

int cmd_minrank_extract(const RunConfig& cfg, std::uint32_t k, std::uint32_t s,
                        std::optional<std::uint32_t> r_flag, const std::string& input) {
    const Timer timer;
    if (k < 1 || s < 1) throw std::invalid_argument("minrank-extract: k and s must be positive");
    if (k >= 32) throw std::invalid_argument("minrank-extract: k is out of range");

    // Build the ambient span: the quadrics of a length-r decomposition, either
    // read off an input cubic's oracle witness or the diagonal x_i^3 = x_i *
    // x_i^2 span in r variables.
    FieldPtr K;
    std::uint32_t r = 0;
    std::vector<QuadraticForm> span;
    if (!input.empty()) {
        const PolyDocument doc = parse_input(cfg, input);
        QrankOptions opt = oracle_options(cfg);
        opt.max_r.reset();
        const QrankResult res = staged("qrank-oracle", [&] { return qrank_oracle(doc.f, opt); });
        if (!res.witness) throw std::runtime_error("minrank-extract: no q-rank witness found");
        const LQDecomposition dec = decompose_via_subspace(doc.f, *res.witness);
        K = doc.field;
        r = res.r;
        if (r_flag && *r_flag != r)
            throw std::invalid_argument("minrank-extract: --r " + std::to_string(*r_flag) +
                                        " disagrees with the computed q-rank " + std::to_string(r));
        for (const auto& pr : dec.pairs) span.push_back(pr.second);
    } else {
        if (!r_flag) throw std::invalid_argument("minrank-extract: --r is required without --input");
        K = field_or_default(cfg);
        r = *r_flag;
        if (r < 1) throw std::invalid_argument("minrank-extract: r must be positive");
        for (std::uint32_t i = 0; i < r; ++i)
            span.push_back(QuadraticForm::from_monomials(K, r, {{i, i, 1}}));
    }

    const std::uint64_t entry = ((std::uint64_t{1} << k) - 1) * (s - 1) + k;
    if (entry > r)
        throw std::invalid_argument("minrank-extract: need (2^k - 1)(s - 1) + k <= r, got " +
                                    std::to_string(entry) + " > " + std::to_string(r));

    const QuadricSubspace Q = staged("span", [&] {
        return QuadricSubspace::from_basis(K, span.empty() ? r : span.front().n(), span);
    });
    const QuadricSubspace sub =
        staged("extract", [&] { return extract_high_minrank(Q, k, s, r, cfg.budget); });

    if (sub.dim() != k)
        throw violation_error("extracted subspace has dimension " + std::to_string(sub.dim()) +
                              ", expected " + std::to_string(k));
    const auto mm = minmax_rank(sub, cfg.budget);
    if (mm.first < s)
        throw violation_error("extracted subspace has minrank " + std::to_string(mm.first) +
                              " < " + std::to_string(s));
    for (const auto& q : sub.basis)
        if (!Q.contains(q)) throw violation_error("extracted subspace escapes the ambient span");

    emit(cfg, quadric_subspace_to_json(sub));
    std::cerr << "minrank-extract: dim " << sub.dim() << " subspace, minrank " << mm.first
              << ", maxrank " << mm.second << ", " << format_seconds(timer.seconds()) << "\n";
    return kExitOk;
}

// ---- witness -------------------------------------------------------------------

// Replays the trace against the starting arrangement and checks the basis
// read-off and the pivot coefficient independently of the module's own
// bookkeeping.
void verify_phase_certificate(const TripleMatrix& start, const PhaseCertificate& cert) {
    if (std::uint64_t{cert.r} + cert.s + cert.t != cert.ambient)
        throw violation_error("phase certificate: r + s + t != ambient");

    const TripleMatrix fin = apply_trace(start, cert.trace);
    std::size_t at = 0;
    for (std::uint32_t col = 0; col < 3; ++col) {
        const std::uint32_t count = col == 0 ? cert.r : col == 1 ? cert.s : cert.t;
        for (std::uint32_t i = 0; i < count; ++i, ++at)
            if (cert.basis.row_vec(at) != fin.rows[i][col].coeffs)
                throw violation_error("phase certificate: basis row disagrees with trace replay");
    }

    if (cert.t >= 1) {
        if (cert.pivot_coefficient != 1)
            throw violation_error("phase certificate: pivot coefficient is not 1");
        const auto inv = inverse(cert.basis);
        if (!inv) throw violation_error("phase certificate: basis is singular");
        const CubicForm rewritten = substitute(fin.row_product_sum(), *inv);
        if (rewritten.coeff(0, cert.r, cert.r + cert.s) != cert.pivot_coefficient)
            throw violation_error("phase certificate: pivot coefficient does not recompute");
    }
}

int cmd_witness(const RunConfig& cfg, std::uint32_t n, const std::string& subspace_path) {
    const Timer timer;
    if (n < 1) throw std::invalid_argument("witness: need n >= 1");

    if (subspace_path.empty()) {
        // Identity arrangement: row i is (x_{3i}, x_{3i+1}, x_{3i+2}).
        const FieldPtr K = field_or_default(cfg);
        const std::uint32_t m = 3 * n;
        std::vector<std::array<LinearForm, 3>> rows;
        for (std::uint32_t i = 0; i < n; ++i)
            rows.push_back({LinearForm::coordinate(K, m, 3 * i),
                            LinearForm::coordinate(K, m, 3 * i + 1),
                            LinearForm::coordinate(K, m, 3 * i + 2)});
        const TripleMatrix tm = TripleMatrix::from_rows(K, m, std::move(rows));
        const PhaseCertificate cert =
            staged("three-phase", [&] { return three_phase_basis(tm); });
        verify_phase_certificate(tm, cert);

        const std::string json = phase_certificate_to_json(cert);
        const PhaseCertificate back = phase_certificate_from_json(json);
        if (back.r != cert.r || back.s != cert.s || back.t != cert.t ||
            back.trace != cert.trace || back.pivot_coefficient != cert.pivot_coefficient)
            throw violation_error("phase certificate does not survive a serialization round trip");

        emit(cfg, json);
        std::cerr << "witness: n=" << n << ", split r=" << cert.r << " s=" << cert.s
                  << " t=" << cert.t << ", pivot " << cert.pivot_coefficient << ", "
                  << format_seconds(timer.seconds()) << "\n";
        return kExitOk;
    }

    const Subspace w =
        staged("parse-subspace", [&] { return subspace_from_json(read_file(subspace_path)); });
    if (!cfg.field_spec.empty() &&
        !same_field(w.field(), Field::make(FieldSpec::parse(cfg.field_spec))))
        throw std::invalid_argument("witness: --field disagrees with the subspace's field");

    const NonvanishingCertificate cert = [&] {
        try {
            return certify_diagonal_qrank(n, w);
        } catch (const std::invalid_argument&) {
            throw;
        } catch (const std::logic_error& e) {
            // The three-phase theorems failed on valid input: a library bug.
            throw violation_error(e.what());
        }
    }();

    // Independent cross-checks before writing: replay the trace against the
    // restricted-functional arrangement and restrict the cubic directly.
    const Matrix& basis = w.basis();
    std::vector<std::array<LinearForm, 3>> rows;
    for (std::uint32_t i = 0; i < n; ++i) {
        std::array<LinearForm, 3> row;
        for (std::uint32_t c = 0; c < 3; ++c) {
            std::vector<std::uint32_t> coeffs(w.dim());
            for (std::size_t j = 0; j < w.dim(); ++j) coeffs[j] = basis.at(j, 3 * i + c);
            row[c] = LinearForm(w.field(), std::move(coeffs));
        }
        rows.push_back(std::move(row));
    }
    verify_phase_certificate(
        TripleMatrix::from_rows(w.field(), static_cast<std::uint32_t>(w.dim()), std::move(rows)),
        cert.phase);
    if (restrict_form(diagonal_cubic(w.field(), n), w).is_zero())
        throw violation_error("witness: the cubic vanishes on the subspace after all");

    emit(cfg, nonvanishing_certificate_to_json(cert));
    std::cerr << "witness: n=" << n << " on a codim " << w.codim() << " subspace, split r="
              << cert.phase.r << " s=" << cert.phase.s << " t=" << cert.phase.t << ", pivot "
              << cert.phase.pivot_coefficient << ", " << format_seconds(timer.seconds()) << "\n";
    return kExitOk;
}

// ---- paper-check ----------------------------------------------------------------

int cmd_paper_check(const RunConfig& cfg, const std::string& suite, std::uint32_t samples) {
    SuiteConfig scfg;
    scfg.field = cfg.field_spec.empty() ? nullptr : Field::make(FieldSpec::parse(cfg.field_spec));
    scfg.seed = cfg.seed;
    scfg.samples = samples;
    scfg.budget = cfg.budget;
    scfg.threads = cfg.threads;

    const std::vector<SuiteResult> results = run_suites(suite, scfg);

    std::uint64_t total_samples = 0, total_violations = 0;
    double total_elapsed = 0.0;
    std::cout << std::left << std::setw(18) << "proposition" << std::right << std::setw(9)
              << "samples" << std::setw(12) << "violations" << std::setw(10) << "runtime"
              << "\n";
    for (const auto& r : results) {
        std::cout << std::left << std::setw(18) << r.name << std::right << std::setw(9)
                  << r.samples << std::setw(12) << r.violations << std::setw(10)
                  << format_seconds(r.elapsed_s) << "\n";
        total_samples += r.samples;
        total_violations += r.violations;
        total_elapsed += r.elapsed_s;
    }
    std::cout << std::left << std::setw(18) << "total" << std::right << std::setw(9)
              << total_samples << std::setw(12) << total_violations << std::setw(10)
              << format_seconds(total_elapsed) << "\n";

    if (!cfg.out.empty()) {
        RunConfig out_cfg = cfg;
        emit(out_cfg, suite_report_json(results, scfg.seed, scfg.field));
    }
    return total_violations > 0 ? kExitViolation : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"q-rank computation and certification for cubic forms over GF(p^e)"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string input;
    std::uint32_t k = 0, s = 0;
    std::optional<std::uint32_t> r_flag;
    std::string extract_input;
    std::uint32_t n = 0;
    std::string subspace_path;
    std::string suite = "all";
    std::uint32_t samples = 0;

    CLI::App* q = app.add_subcommand(
        "qrank", "compute the q-rank of a cubic, with witness and decomposition");
    q->add_option("input,--input", input, "polynomial text file")->required();
    add_common_flags(*q, cfg);

    CLI::App* d = app.add_subcommand(
        "degenerate", "degenerate a cubic to separable form with a replayable certificate");
    d->add_option("input,--input", input, "polynomial text file")->required();
    add_common_flags(*d, cfg);

    CLI::App* m = app.add_subcommand(
        "minrank-extract", "extract a high-minrank subspace from a decomposition span");
    m->add_option("--k", k, "dimension of the extracted subspace")->required();
    m->add_option("--s", s, "minrank the extracted subspace must reach")->required();
    m->add_option("--r", r_flag,
                  "q-rank of the decomposition (span size; required without --input)");
    m->add_option("--input", extract_input, "cubic whose oracle decomposition supplies the span");
    add_common_flags(*m, cfg);

    CLI::App* w = app.add_subcommand(
        "witness", "three-phase nonvanishing certificate for the triple-product cubic");
    w->add_option("--n", n, "number of rows; the ambient space has dimension 3n")->required();
    w->add_option("--subspace", subspace_path,
                  "subspace JSON file: certify q-rank n across this codim n-1 subspace");
    add_common_flags(*w, cfg);

    CLI::App* p = app.add_subcommand("paper-check", "run the seeded property suites");
    p->add_option("--suite", suite, "suite name, or 'all'")->capture_default_str();
    p->add_option("--samples", samples, "override the per-suite sample count");
    add_common_flags(*p, cfg);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (q->parsed()) return cmd_qrank(cfg, input);
        if (d->parsed()) return cmd_degenerate(cfg, input);
        if (m->parsed()) return cmd_minrank_extract(cfg, k, s, r_flag, extract_input);
        if (w->parsed()) return cmd_witness(cfg, n, subspace_path);
        if (p->parsed()) return cmd_paper_check(cfg, suite, samples);
    } catch (const budget_exceeded_error& e) {
        std::cerr << "budget exceeded: " << e.what() << " (planned " << e.planned_count
                  << ", budget " << e.budget_limit << ")\n";
        return kExitBudget;
    } catch (const violation_error& e) {
        std::cerr << "property violation: " << e.what() << "\n";
        return kExitViolation;
    } catch (const construction_failed_error& e) {
        std::cerr << "property violation: " << e.what() << "\nrefuting span: " << e.refuting_span
                  << "\n";
        return kExitViolation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
