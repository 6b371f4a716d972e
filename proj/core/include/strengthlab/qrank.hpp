#pragma once

#include <cstdint>
#include <optional>

#include "strengthlab/forms.hpp"
#include "strengthlab/integers.hpp"
#include "strengthlab/subspace.hpp"

namespace strengthlab {

struct QrankOptions {
    std::optional<std::uint32_t> max_r;     // cap the search; absent = up to nvars
    std::uint64_t budget = kDefaultBudget;  // total candidate cap across rounds
    std::uint32_t threads = 1;
};

// Verdict of a q-rank search. exact = true means r is the q-rank over the
// working field and witness is the first vanishing subspace in canonical
// enumeration order. exact = false means the search was capped at max_r and
// only "q-rank >= r" is known (witness empty). enumeration_count is the
// number of candidates inspected in canonical order (full rounds plus the
// witness's position in its round) and is independent of the thread count.
struct QrankResult {
    std::uint32_t r = 0;
    bool exact = true;
    std::optional<Subspace> witness;
    std::uint64_t enumeration_count = 0;
};

// Geometric oracle: smallest r such that some codimension-r subspace W has
// restrict(f, W) = 0. Equivalently the minimal length of a decomposition
// f = sum l_i q_i; r = 0 iff f = 0, and r <= nvars always (the zero subspace
// vanishes). The vanishing test checks every projective point of each
// candidate, which decides "f|_W = 0" exactly because deg 3 < |field|.
QrankResult qrank_oracle(const CubicForm& f, const QrankOptions& opt = {});

struct LinearSolveResult {
    std::uint32_t r = 0;
    bool exact = true;
    std::optional<LQDecomposition> decomposition;
    std::uint64_t enumeration_count = 0;
};

// Algebraic oracle: for r = 0, 1, 2, ... enumerate r-dimensional spans of
// linear forms (the span determines solvability, so tuples are searched up to
// scalar and basis change) and decide by exact linear algebra whether
// quadrics q_i exist with sum l_i q_i = f. Practical only for small n and r;
// agrees with qrank_oracle everywhere both complete.
LinearSolveResult qrank_linear_solve_oracle(const CubicForm& f, const QrankOptions& opt = {});

// Extracts a decomposition of length codim(w) from a vanishing subspace:
// complete w to a basis, rewrite f in those coordinates (every term then
// carries one of the first codim(w) coordinates), and collect terms by their
// first such coordinate. Throws std::invalid_argument if restrict(f, w) != 0.
LQDecomposition decompose_via_subspace(const CubicForm& f, const Subspace& w);

// Largest k with C(k+1,2) + k - 1 <= d, as a closed form using the exact
// integer square root: floor((sqrt(8d+17) - 3) / 2).
std::uint64_t xi(std::uint64_t d);

// The same quantity by direct search over k (binary search on the monotone
// predicate). Independent of xi; the two are cross-checked in tests.
std::uint64_t xi_combinatorial(std::uint64_t d);

// Smallest r such that (2^d - 1)(d^2 2^d + 2(d+1)d - 1) + d <= xi(r) / 2,
// computed exactly: with M twice the left side, the answer is
// C(M+1,2) + M - 1 (the smallest r whose xi reaches M).
BigInt surjection_min_qrank(std::uint32_t d);

// True iff r exceeds the e^240 threshold and d <= floor(log(r) / 3), both
// decided with exact integer brackets of e^k (no floating point): the second
// condition is r >= exp_ceiling(3d), vacuous at d = 0.
bool mainthm3_check(const BigInt& r, std::uint64_t d);

}  // namespace strengthlab
