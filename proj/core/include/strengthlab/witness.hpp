#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "strengthlab/forms.hpp"
#include "strengthlab/matrix.hpp"
#include "strengthlab/subspace.hpp"

namespace strengthlab {

// An n-row, 3-column grid of linear forms over a common m-dimensional
// ambient space: the (x_i, y_i, z_i) arrangement the basis-selection
// procedure walks over. Row swaps and within-row column swaps both preserve
// the cubic sum of row products.
struct TripleMatrix {
    FieldPtr field;
    std::uint32_t ambient = 0;
    std::vector<std::array<LinearForm, 3>> rows;

    static TripleMatrix from_rows(FieldPtr field, std::uint32_t ambient,
                                  std::vector<std::array<LinearForm, 3>> rows);
    std::size_t n() const { return rows.size(); }

    // The cubic sum of row products x_i y_i z_i, a form in ambient variables.
    CubicForm row_product_sum() const;
};

struct TraceMove {
    enum Kind : std::uint8_t { RowSwap, ColSwap };
    Kind kind = RowSwap;
    std::uint32_t row = 0;  // ColSwap only: the row operated on
    std::uint32_t a = 0;    // RowSwap: rows swapped; ColSwap: columns swapped
    std::uint32_t b = 0;

    bool operator==(const TraceMove&) const = default;
};

TripleMatrix apply_trace(const TripleMatrix& tm, const std::vector<TraceMove>& trace);

// Result of the three-phase basis selection. The trace replays the swaps that
// were applied (each preserving the row-product cubic); r, s, t count the
// basis elements drawn from columns 1, 2, 3; basis holds them as rows
// X_1..X_r, Y_1..Y_s, Z_1..Z_t; and pivot_coefficient is the coefficient of
// the monomial X_1 Y_1 Z_1 in the row-product cubic rewritten in that basis
// (equal to 1 whenever t >= 1, which certifies the cubic is nonzero).
struct PhaseCertificate {
    FieldPtr field;
    std::uint32_t n = 0;
    std::uint32_t ambient = 0;
    std::vector<TraceMove> trace;
    std::uint32_t r = 0, s = 0, t = 0;
    Matrix basis;
    std::uint32_t pivot_coefficient = 0;
};

// The cubic x_1 y_1 z_1 + ... + x_n y_n z_n in 3n variables, ordered
// x_1, y_1, z_1, x_2, y_2, z_2, ...
CubicForm diagonal_cubic(const FieldPtr& field, std::uint32_t n);

// Runs the three phases with the deterministic choice (lowest row first, then
// column order) and full bookkeeping asserts: after phase 1 every entry of
// the unused rows lies in the span of the X's, and after phase 2 the
// column-2/3 entries of rows s+1..r lie in the span of the X's and Y's.
// Throws std::invalid_argument if the 3n forms do not span the ambient space.
PhaseCertificate three_phase_basis(const TripleMatrix& tm);

// Certifies restrict(diagonal_cubic(n), w) != 0 for a codimension-(n-1)
// subspace w of the 3n-space: the 3n coordinate functionals restricted to w
// span its (2n+1)-dimensional dual, so the three-phase procedure applies with
// t >= 1 and pivot coefficient 1. With the vanishing-subspace
// characterization this certifies q-rank > n - 1, hence exactly n.
struct NonvanishingCertificate {
    std::uint32_t n = 0;
    Subspace w;
    PhaseCertificate phase;
};

NonvanishingCertificate certify_diagonal_qrank(std::uint32_t n, const Subspace& w);

}  // namespace strengthlab
