#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "strengthlab/field.hpp"
#include "strengthlab/subspace.hpp"

namespace strengthlab {

// Seeded property suites: each samples random instances with a deterministic
// generator and counts violations of one proposition. A nonzero violation
// count means an implementation bug (every property is a theorem at these
// sizes). Results are independent of the thread count.
struct SuiteConfig {
    FieldPtr field;                          // defaults to GF(5) when null
    std::uint64_t seed = 42;
    std::uint32_t samples = 0;               // 0 = per-suite default
    std::uint64_t budget = kDefaultBudget;
    std::uint32_t threads = 1;
};

struct SuiteResult {
    std::string name;
    std::uint64_t samples = 0;
    std::uint64_t violations = 0;
    double elapsed_s = 0.0;  // stdout display only; never serialized
};

// Canonical suite order: subadd, qsubsp, geom-equiv, gl-invariance, maxrank,
// minrank-lemma, minrank-extract, srk, qbd-ext, witness.
const std::vector<std::string>& suite_names();

SuiteResult run_suite(const std::string& name, const SuiteConfig& cfg);

// which = "all" or a single suite name; throws std::invalid_argument on an
// unknown name.
std::vector<SuiteResult> run_suites(const std::string& which, const SuiteConfig& cfg);

// The deterministic report written by the CLI (no timing fields).
std::string suite_report_json(const std::vector<SuiteResult>& results, std::uint64_t seed,
                              const FieldPtr& field);

}  // namespace strengthlab
