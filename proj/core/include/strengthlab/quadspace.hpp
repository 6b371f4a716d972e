#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "strengthlab/forms.hpp"
#include "strengthlab/qrank.hpp"

namespace strengthlab {

// A linear subspace of the space of quadratic forms in nvars variables, held
// by a linearly independent basis. Independence is checked by flattening the
// Gram matrices to vectors.
struct QuadricSubspace {
    FieldPtr field;
    std::uint32_t nvars = 0;
    std::vector<QuadraticForm> basis;

    // Throws if the given forms are dependent.
    static QuadricSubspace from_basis(FieldPtr f, std::uint32_t nvars,
                                      std::vector<QuadraticForm> basis);
    // Reduces an arbitrary spanning set to a canonical independent basis
    // (row reduction of the flattened Gram vectors).
    static QuadricSubspace from_span(FieldPtr f, std::uint32_t nvars,
                                     const std::vector<QuadraticForm>& span);

    std::size_t dim() const { return basis.size(); }
    QuadraticForm element(const std::vector<std::uint32_t>& coeffs) const;
    bool contains(const QuadraticForm& q) const;
};

// Rank of the Gram matrix; in odd characteristic this is the rank of the form.
std::uint32_t quadratic_rank(const QuadraticForm& q);

// Exact (minrank, maxrank): minimum rank over the nonzero elements and
// maximum over all elements, by enumerating the (q^dim - 1)/(q - 1)
// projective points of the subspace. (0, 0) for the zero subspace.
std::pair<std::uint32_t, std::uint32_t> minmax_rank(const QuadricSubspace& Q,
                                                    std::uint64_t budget = kDefaultBudget);

// Given forms all of rank < s, some combination of which has rank >= t,
// returns a combination q' with t <= rank(q') <= t + s - 2. Faithful to the
// support-minimality argument: combinations are searched by support size
// (then lexicographically), and the first of rank >= t is support-minimal, so
// dropping its last form bounds its rank above. Throws std::invalid_argument
// if no combination reaches rank t, or if some input has rank >= s.
QuadraticForm bounded_rank_combination(const std::vector<QuadraticForm>& qs, std::uint32_t t,
                                       std::uint32_t s, std::uint64_t budget = kDefaultBudget);

// A basis whose rank profile (rank(q_1), ..., rank(q_n)) is lexicographically
// minimal, built greedily: each step takes the first minimal-rank element
// outside the span of the previous picks. The profile is non-decreasing.
std::vector<QuadraticForm> lex_minimal_rank_basis(const QuadricSubspace& Q,
                                                  std::uint64_t budget = kDefaultBudget);

// A k-dimensional subspace Q' of Q with minrank(Q') >= s, assuming
// (2^k - 1)(s - 1) + k <= r and that codim(Q:Q') + maxrank(Q') >= r holds for
// every subspace Q' of Q. The hypothesis is not enumerated up front: the
// construction is attempted (top of the lex-minimal basis, else the staged
// combination build with thresholds m_i = (2^i - 1)(s - 1) + 1), and
// exhaustion produces a construction_failed_error naming a concrete subspace
// that refutes the hypothesis. The result is re-verified by enumeration.
QuadricSubspace extract_high_minrank(const QuadricSubspace& Q, std::uint32_t k, std::uint32_t s,
                                     std::uint32_t r, std::uint64_t budget = kDefaultBudget);

// Checks codim(Q:Q') + maxrank(Q') >= qrank(f) for Q the span of d's
// quadrics. This inequality is a theorem whenever assemble(d) = f, so a false
// return indicates a bug; the preconditions (assemble(d) = f, Q' inside Q)
// are validated and throw.
bool verify_maxrank_inequality(const CubicForm& f, const LQDecomposition& d,
                               const QuadricSubspace& qprime, const QrankOptions& opt = {});

}  // namespace strengthlab
