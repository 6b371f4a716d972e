#include "strengthlab/matrix.hpp"

#include <stdexcept>

namespace strengthlab {

Matrix::Matrix(FieldPtr field, std::size_t rows, std::size_t cols, std::vector<std::uint32_t> data)
    : field_(std::move(field)), rows_(rows), cols_(cols), a_(std::move(data)) {
    if (a_.size() != rows_ * cols_) throw std::invalid_argument("matrix: data size mismatch");
}

Matrix Matrix::identity(FieldPtr field, std::size_t n) {
    Matrix m(std::move(field), n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

Matrix Matrix::from_rows(FieldPtr field, const std::vector<std::vector<std::uint32_t>>& rows) {
    std::size_t r = rows.size();
    std::size_t c = r ? rows[0].size() : 0;
    Matrix m(std::move(field), r, c);
    for (std::size_t i = 0; i < r; ++i) {
        if (rows[i].size() != c) throw std::invalid_argument("matrix: ragged rows");
        for (std::size_t j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

Matrix Matrix::transpose() const {
    Matrix t(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
}

std::size_t rref_in_place(Matrix& m, std::vector<std::size_t>* pivots) {
    const Field& F = *m.field();
    std::size_t r = 0;
    for (std::size_t col = 0; col < m.cols() && r < m.rows(); ++col) {
        std::size_t piv = r;
        while (piv < m.rows() && m.at(piv, col) == 0) ++piv;
        if (piv == m.rows()) continue;
        if (piv != r)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(piv, j), m.at(r, j));
        std::uint32_t s = F.inv(m.at(r, col));
        for (std::size_t j = col; j < m.cols(); ++j) m.at(r, j) = F.mul(m.at(r, j), s);
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r) continue;
            std::uint32_t c = m.at(i, col);
            if (!c) continue;
            for (std::size_t j = col; j < m.cols(); ++j)
                m.at(i, j) = F.sub(m.at(i, j), F.mul(c, m.at(r, j)));
        }
        if (pivots) pivots->push_back(col);
        ++r;
    }
    return r;
}

Matrix rref(const Matrix& m, std::vector<std::size_t>* pivots) {
    Matrix c = m;
    rref_in_place(c, pivots);
    return c;
}

std::size_t rank(const Matrix& m) {
    Matrix c = m;
    return rref_in_place(c);
}

Matrix mat_mul(const Matrix& a, const Matrix& b) {
    require_same_field(a.field(), b.field(), "mat_mul");
    if (a.cols() != b.rows()) throw std::invalid_argument("mat_mul: shape mismatch");
    const Field& F = *a.field();
    Matrix c(a.field(), a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            std::uint32_t v = a.at(i, k);
            if (!v) continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                c.at(i, j) = F.add(c.at(i, j), F.mul(v, b.at(k, j)));
        }
    return c;
}

std::vector<std::uint32_t> mat_vec(const Matrix& a, const std::vector<std::uint32_t>& v) {
    if (a.cols() != v.size()) throw std::invalid_argument("mat_vec: shape mismatch");
    const Field& F = *a.field();
    std::vector<std::uint32_t> out(a.rows(), 0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        std::uint32_t acc = 0;
        for (std::size_t j = 0; j < a.cols(); ++j) acc = F.add(acc, F.mul(a.at(i, j), v[j]));
        out[i] = acc;
    }
    return out;
}

std::optional<Matrix> inverse(const Matrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("inverse: matrix not square");
    std::size_t n = m.rows();
    const Field& F = *m.field();
    Matrix aug(m.field(), n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, n + i) = 1;
    }
    if (rref_in_place(aug) != n) return std::nullopt;
    // rref of [m | I] is [I | m^-1] exactly when m is invertible
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (aug.at(i, j) != (i == j ? 1u : 0u)) return std::nullopt;
    Matrix inv(m.field(), n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv.at(i, j) = aug.at(i, n + j);
    (void)F;
    return inv;
}

std::optional<std::vector<std::uint32_t>> solve(const Matrix& a, const std::vector<std::uint32_t>& b) {
    if (a.rows() != b.size()) throw std::invalid_argument("solve: shape mismatch");
    Matrix aug(a.field(), a.rows(), a.cols() + 1);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) aug.at(i, j) = a.at(i, j);
        aug.at(i, a.cols()) = b[i];
    }
    std::vector<std::size_t> pivots;
    std::size_t r = rref_in_place(aug, &pivots);
    for (std::size_t k = 0; k < r; ++k)
        if (pivots[k] == a.cols()) return std::nullopt;  // pivot in the rhs column
    std::vector<std::uint32_t> x(a.cols(), 0);
    for (std::size_t k = 0; k < r; ++k) x[pivots[k]] = aug.at(k, a.cols());
    return x;
}

std::optional<std::vector<std::uint32_t>> solve_row(const Matrix& m, const std::vector<std::uint32_t>& rhs) {
    // x * m = rhs  <=>  m^T x^T = rhs^T
    return solve(m.transpose(), rhs);
}

}  // namespace strengthlab
