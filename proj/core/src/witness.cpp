#include "strengthlab/witness.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace strengthlab {

TripleMatrix TripleMatrix::from_rows(FieldPtr field, std::uint32_t ambient,
                                     std::vector<std::array<LinearForm, 3>> rows) {
    for (const auto& row : rows)
        for (const auto& l : row) {
            require_same_field(field, l.field, "TripleMatrix::from_rows");
            if (l.n() != ambient)
                throw std::invalid_argument("TripleMatrix::from_rows: form length mismatch");
        }
    return {std::move(field), ambient, std::move(rows)};
}

CubicForm TripleMatrix::row_product_sum() const {
    CubicForm acc(field, ambient);
    for (const auto& row : rows) acc = add(acc, product3(row[0], row[1], row[2]));
    return acc;
}

TripleMatrix apply_trace(const TripleMatrix& tm, const std::vector<TraceMove>& trace) {
    TripleMatrix out = tm;
    for (const auto& mv : trace) {
        if (mv.kind == TraceMove::RowSwap) {
            if (mv.a >= out.n() || mv.b >= out.n())
                throw std::invalid_argument("apply_trace: row index out of range");
            std::swap(out.rows[mv.a], out.rows[mv.b]);
        } else {
            if (mv.row >= out.n() || mv.a >= 3 || mv.b >= 3)
                throw std::invalid_argument("apply_trace: column index out of range");
            std::swap(out.rows[mv.row][mv.a], out.rows[mv.row][mv.b]);
        }
    }
    return out;
}

CubicForm diagonal_cubic(const FieldPtr& field, std::uint32_t n) {
    std::vector<std::pair<std::array<std::uint32_t, 3>, std::uint32_t>> terms;
    for (std::uint32_t i = 0; i < n; ++i) terms.push_back({{3 * i, 3 * i + 1, 3 * i + 2}, 1});
    return CubicForm::from_terms(field, 3 * n, terms);
}

namespace {

// Membership of l in the span of the first k selected forms, by one rank
// computation. The selected forms are independent by construction, so the
// prefix has rank exactly k. Everything here is small.
bool in_span(const FieldPtr& f, const std::vector<std::vector<std::uint32_t>>& sel, std::size_t k,
             const LinearForm& l) {
    Matrix m(f, k + 1, l.n());
    for (std::size_t i = 0; i < k; ++i) std::copy(sel[i].begin(), sel[i].end(), m.row(i));
    std::copy(l.coeffs.begin(), l.coeffs.end(), m.row(k));
    return rank(m) == k;
}

}  // namespace

PhaseCertificate three_phase_basis(const TripleMatrix& tm) {
    const FieldPtr& K = tm.field;
    const std::uint32_t m = tm.ambient;
    const auto n = static_cast<std::uint32_t>(tm.n());

    TripleMatrix cur = tm;
    std::vector<TraceMove> trace;
    std::vector<std::vector<std::uint32_t>> sel;  // the selected forms, pick order

    auto outside = [&](const LinearForm& l) { return !in_span(K, sel, sel.size(), l); };

    // Phase 1: pull an independent form into column 1 of each leading row.
    std::uint32_t r = 0;
    for (std::uint32_t pos = 0; pos < n; ++pos) {
        bool found = false;
        for (std::uint32_t i = pos; i < n && !found; ++i)
            for (std::uint32_t c = 0; c < 3 && !found; ++c)
                if (outside(cur.rows[i][c])) {
                    if (i != pos) {
                        trace.push_back({TraceMove::RowSwap, 0, pos, i});
                        std::swap(cur.rows[pos], cur.rows[i]);
                    }
                    if (c != 0) {
                        trace.push_back({TraceMove::ColSwap, pos, 0, c});
                        std::swap(cur.rows[pos][0], cur.rows[pos][c]);
                    }
                    sel.push_back(cur.rows[pos][0].coeffs);
                    found = true;
                }
        if (!found) break;
        ++r;
    }

    // Phase 2: same again in columns 2..3 of the rows that fed phase 1; row
    // swaps stay below r so the X set survives as a set.
    std::uint32_t s = 0;
    for (std::uint32_t pos = 0; pos < r; ++pos) {
        bool found = false;
        for (std::uint32_t i = pos; i < r && !found; ++i)
            for (std::uint32_t c = 1; c < 3 && !found; ++c)
                if (outside(cur.rows[i][c])) {
                    if (i != pos) {
                        trace.push_back({TraceMove::RowSwap, 0, pos, i});
                        std::swap(cur.rows[pos], cur.rows[i]);
                    }
                    if (c != 1) {
                        trace.push_back({TraceMove::ColSwap, pos, 1, c});
                        std::swap(cur.rows[pos][1], cur.rows[pos][c]);
                    }
                    sel.push_back(cur.rows[pos][1].coeffs);
                    found = true;
                }
        if (!found) break;
        ++s;
    }

    // Phase 3: column 3 among the rows that fed phase 2.
    std::uint32_t t = 0;
    for (std::uint32_t pos = 0; pos < s; ++pos) {
        bool found = false;
        for (std::uint32_t i = pos; i < s && !found; ++i)
            if (outside(cur.rows[i][2])) {
                if (i != pos) {
                    trace.push_back({TraceMove::RowSwap, 0, pos, i});
                    std::swap(cur.rows[pos], cur.rows[i]);
                }
                sel.push_back(cur.rows[pos][2].coeffs);
                found = true;
            }
        if (!found) break;
        ++t;
    }

    // Bookkeeping invariants of the three scans, on the final arrangement.
    for (std::uint32_t i = r; i < n; ++i)
        for (std::uint32_t c = 0; c < 3; ++c)
            if (!in_span(K, sel, r, cur.rows[i][c]))
                throw std::logic_error("three_phase_basis: a leftover row escapes the X span");
    for (std::uint32_t i = s; i < r; ++i)
        for (std::uint32_t c = 1; c < 3; ++c)
            if (!in_span(K, sel, static_cast<std::size_t>(r) + s, cur.rows[i][c]))
                throw std::logic_error("three_phase_basis: a phase-2 leftover escapes the XY span");
    for (std::uint32_t i = t; i < s; ++i)
        if (!in_span(K, sel, sel.size(), cur.rows[i][2]))
            throw std::logic_error("three_phase_basis: a phase-3 leftover escapes the full span");

    if (static_cast<std::uint64_t>(r) + s + t != m)
        throw std::invalid_argument("three_phase_basis: the forms do not span the ambient space");

    Matrix basis(K, m, m);
    for (std::uint32_t i = 0; i < r; ++i)
        std::copy(cur.rows[i][0].coeffs.begin(), cur.rows[i][0].coeffs.end(), basis.row(i));
    for (std::uint32_t i = 0; i < s; ++i)
        std::copy(cur.rows[i][1].coeffs.begin(), cur.rows[i][1].coeffs.end(), basis.row(r + i));
    for (std::uint32_t i = 0; i < t; ++i)
        std::copy(cur.rows[i][2].coeffs.begin(), cur.rows[i][2].coeffs.end(),
                  basis.row(static_cast<std::size_t>(r) + s + i));

    // Rewrite the row-product cubic in the selected basis and read off the
    // X_1 Y_1 Z_1 coefficient; this recomputes the coordinates of every row,
    // so it independently cross-checks the bookkeeping above.
    std::uint32_t pivot = 0;
    if (t >= 1) {
        const auto inv = inverse(basis);
        if (!inv) throw std::logic_error("three_phase_basis: selected basis is singular");
        const CubicForm rewritten = substitute(cur.row_product_sum(), *inv);
        pivot = rewritten.coeff(0, r, static_cast<std::uint32_t>(r) + s);
    }

    return {K, n, m, std::move(trace), r, s, t, std::move(basis), pivot};
}

NonvanishingCertificate certify_diagonal_qrank(std::uint32_t n, const Subspace& w) {
    if (n == 0) throw std::invalid_argument("certify_diagonal_qrank: n must be positive");
    if (w.ambient() != 3ull * n)
        throw std::invalid_argument("certify_diagonal_qrank: ambient dimension is not 3n");
    if (w.codim() != n - 1)
        throw std::invalid_argument("certify_diagonal_qrank: subspace codimension is not n - 1");

    const FieldPtr& K = w.field();
    const auto m = static_cast<std::uint32_t>(w.dim());  // 2n + 1
    const Matrix& b = w.basis();

    // Coordinate functional j restricted to w, in w's basis coordinates, is
    // column j of the basis matrix.
    auto functional = [&](std::uint32_t j) {
        std::vector<std::uint32_t> col(m);
        for (std::uint32_t i = 0; i < m; ++i) col[i] = b.at(i, j);
        return LinearForm(K, std::move(col));
    };
    std::vector<std::array<LinearForm, 3>> rows;
    rows.reserve(n);
    for (std::uint32_t i = 0; i < n; ++i)
        rows.push_back({functional(3 * i), functional(3 * i + 1), functional(3 * i + 2)});

    PhaseCertificate phase = three_phase_basis(TripleMatrix::from_rows(K, m, rows));
    // r <= n and s <= r give r + s <= 2n < 2n + 1, so phase 3 is nonempty and
    // the pivot theorem applies.
    if (phase.t == 0)
        throw std::logic_error("certify_diagonal_qrank: phase 3 selected nothing");
    if (phase.pivot_coefficient != 1)
        throw std::logic_error("certify_diagonal_qrank: pivot coefficient is not 1");
    return {n, w, std::move(phase)};
}

}  // namespace strengthlab
