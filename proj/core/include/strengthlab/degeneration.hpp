#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "strengthlab/forms.hpp"
#include "strengthlab/qrank.hpp"

namespace strengthlab {

// One step of an orbit-closure degeneration: either an invertible coordinate
// change (applied as change_of_variables) or a one-parameter limit t -> 0
// under x_i -> t^{w_i} x_i (applied as cocharacter_limit, which requires all
// nonzero graded components to sit at weight >= 0).
struct CoordinateChange {
    Matrix g;
};
struct CocharacterLimit {
    Cocharacter c;
};
using DegenerationStep = std::variant<CoordinateChange, CocharacterLimit>;

// Replayable witness that `end` lies in the orbit-closure of `start`.
struct DegenerationCertificate {
    CubicForm start;
    std::vector<DegenerationStep> steps;
    CubicForm end;
};

struct VerifyOutcome {
    bool ok = false;
    // Index of the first failing step; steps.size() means every step replayed
    // but the final form differs from `end`. Unset when ok.
    std::size_t failing_step = 0;
};

// Replays the steps from `start`: coordinate changes must be invertible,
// limits must exist (no negative-weight component), and the result must equal
// `end`.
VerifyOutcome verify_certificate(const DegenerationCertificate& cert);

struct SeparableResult {
    CubicForm g;                  // separable form in the orbit-closure of f
    DegenerationCertificate cert; // replays f to g
    std::uint32_t k_prime = 0;    // r - qrank(degree-3-in-x part)
    std::uint32_t bound = 0;      // ceil(k_prime / 2) <= qrank(g)
    // Block of variable indices meeting every monomial of g exactly once
    // (the linear block of the separable structure).
    std::vector<std::uint32_t> split_block;
};

// Degenerates f != 0 to a separable cubic while keeping q-rank at least
// ceil(k'/2): write f = sum_{i=1}^r x_i q_i via the oracle witness, split off
// the part of degree 3 in the x-block, change x-coordinates so that part dies
// on the first k' of them, kill the rest by a weight-(0,1) limit, and keep
// whichever of the two remaining graded pieces has larger q-rank via the
// weight-(+2,-1) limit (ties to the degree-1 piece). Every move is recorded
// in the certificate. k' is computed from the exact q-rank of the degree-3
// part over the working field.
SeparableResult separable_degenerate(const CubicForm& f, const QrankOptions& opt = {});

// Outcome of the reduction toward a rank-condition report: whether the span
// of the d retained quadrics reaches the minrank demanded by the downstream
// surjection machinery (s = d^2 2^d + 2(d+1)d with both of its dimension
// parameters equal to d). The surjection itself is out of scope.
struct ReductionReport {
    CubicForm g;
    std::vector<std::uint32_t> split_block;
    LQDecomposition chosen_pairs;  // the d retained (l_i, q_i)
    std::uint32_t minrank_achieved = 0;
    BigInt required_minrank;
    bool ells_independent = false;
    bool deg2_hypothesis_met = false;  // minrank_achieved >= required and ells independent
    DegenerationCertificate cert;      // f down to the d-pair form
};

// Runs separable_degenerate, reads off the (l_i, q_i) pairs of the separable
// form, attempts the high-minrank extraction when its entry inequality
// (2^d - 1)(s - 1) + d <= bound permits (at desk scales it rarely does; the
// first d pairs are kept otherwise), kills the remaining l_i by a certified
// limit, and reports the achieved vs required minrank. Sub-step failures are
// wrapped in stage_error with the stage name.
ReductionReport surjection_pipeline(const CubicForm& f, std::uint32_t d,
                                    const QrankOptions& opt = {});

}  // namespace strengthlab
