#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "strengthlab/integers.hpp"
#include "strengthlab/matrix.hpp"

namespace strengthlab {

inline constexpr std::uint64_t kDefaultBudget = 100'000'000;

// A linear subspace of F^n, stored by its unique reduced-row-echelon basis.
// Two Subspace values are equal iff they are the same subspace.
class Subspace {
public:
    Subspace() = default;

    // Canonicalizes arbitrary spanning rows (RREF, zero rows dropped).
    static Subspace from_spanning_rows(const Matrix& rows);
    static Subspace zero(FieldPtr field, std::size_t ambient);
    static Subspace whole(FieldPtr field, std::size_t ambient);

    const FieldPtr& field() const { return basis_.field(); }
    std::size_t ambient() const { return ambient_; }
    std::size_t dim() const { return basis_.rows(); }
    std::size_t codim() const { return ambient_ - dim(); }
    const Matrix& basis() const { return basis_; }
    const std::vector<std::size_t>& pivots() const { return pivots_; }

    bool contains(const std::vector<std::uint32_t>& v) const;
    bool contains(const Subspace& other) const;

    bool operator==(const Subspace& o) const {
        return ambient_ == o.ambient_ && basis_ == o.basis_;
    }

private:
    friend Subspace make_subspace_prechecked(Matrix basis, std::vector<std::size_t> pivots);
    std::size_t ambient_ = 0;
    Matrix basis_;  // dim x ambient, RREF
    std::vector<std::size_t> pivots_;
};

// Wraps a matrix already known to be in RREF with the given pivot columns.
// No validation: callers produce the data from canonical enumeration.
Subspace make_subspace_prechecked(Matrix basis, std::vector<std::size_t> pivots);

// Right kernel of m: { v : m v = 0 }, as a canonical Subspace of F^cols.
Subspace kernel(const Matrix& m);

// Invertible ambient x ambient matrix whose last dim(w) rows are w's RREF
// basis and whose first codim(w) rows are the standard basis vectors on w's
// non-pivot columns, in ascending column order.
Matrix complete_basis(const Subspace& w);

// ---- canonical enumeration ---------------------------------------------
//
// Subspaces of a fixed dimension are enumerated in a canonical order: RREF
// pivot column sets in lexicographic order, then the free entries of the RREF
// pattern in row-major lexicographic order (first free position varies
// slowest). The enumeration is split into one block per pivot set so scans
// can be chunked; identities of subspaces depend only on (block, offset).

struct PivotBlock {
    std::vector<std::uint32_t> pivots;                            // ascending
    std::vector<std::pair<std::uint32_t, std::uint32_t>> frees;   // (row, col), row-major
    std::uint64_t size = 1;                                       // q^frees.size()
};

// All pivot blocks for dim-k subspaces of F^n, lexicographic. Sizes are only
// well-defined below the budget gate; call subspace_count first.
std::vector<PivotBlock> subspace_blocks(std::uint32_t n, std::uint32_t k, std::uint64_t q);

// Number of dim-k subspaces of F^n (exact).
BigInt subspace_count(std::uint32_t n, std::uint32_t k, std::uint64_t q);

// Writes the RREF basis for the subspace at `offset` within `block` into
// `out` (must be k x n, it is fully overwritten).
void fill_subspace_basis(const PivotBlock& block, std::uint64_t offset, Matrix& out);

// Stream of all codimension-r subspaces of F^n in canonical order. The
// constructor refuses (budget_exceeded_error) if the total count exceeds the
// budget: an exceeded budget is an explicit error, never a silent truncation.
class SubspaceEnumerator {
public:
    SubspaceEnumerator(FieldPtr field, std::uint32_t n, std::uint32_t codim,
                       std::uint64_t budget = kDefaultBudget);

    std::optional<Subspace> next();

    const BigInt& total() const { return total_; }

private:
    FieldPtr field_;
    std::uint32_t n_, dim_;
    std::vector<PivotBlock> blocks_;
    std::size_t block_idx_ = 0;
    std::uint64_t offset_ = 0;
    BigInt total_;
    Matrix scratch_;
};

}  // namespace strengthlab
