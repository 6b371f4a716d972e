#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "strengthlab/field.hpp"

namespace strengthlab {

// Dense row-major matrix of field element codes.
class Matrix {
public:
    Matrix() = default;
    Matrix(FieldPtr field, std::size_t rows, std::size_t cols)
        : field_(std::move(field)), rows_(rows), cols_(cols), a_(rows * cols, 0) {}
    Matrix(FieldPtr field, std::size_t rows, std::size_t cols, std::vector<std::uint32_t> data);

    static Matrix identity(FieldPtr field, std::size_t n);
    static Matrix from_rows(FieldPtr field, const std::vector<std::vector<std::uint32_t>>& rows);

    const FieldPtr& field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    std::uint32_t& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    std::uint32_t at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
    const std::uint32_t* row(std::size_t i) const { return a_.data() + i * cols_; }
    std::uint32_t* row(std::size_t i) { return a_.data() + i * cols_; }
    const std::vector<std::uint32_t>& data() const { return a_; }

    std::vector<std::uint32_t> row_vec(std::size_t i) const {
        return std::vector<std::uint32_t>(row(i), row(i) + cols_);
    }

    Matrix transpose() const;

    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_ && same_field(field_, o.field_);
    }

private:
    FieldPtr field_;
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<std::uint32_t> a_;
};

// Reduced row echelon form. Keeps zero rows (the shape is unchanged); the
// pivot columns, in order, are appended to *pivots if given. Returns the rank.
std::size_t rref_in_place(Matrix& m, std::vector<std::size_t>* pivots = nullptr);
Matrix rref(const Matrix& m, std::vector<std::size_t>* pivots = nullptr);

std::size_t rank(const Matrix& m);

Matrix mat_mul(const Matrix& a, const Matrix& b);
std::vector<std::uint32_t> mat_vec(const Matrix& a, const std::vector<std::uint32_t>& v);

// Inverse of a square matrix, or nullopt if singular.
std::optional<Matrix> inverse(const Matrix& m);

// Solves x * m = rhs for a single row vector x (m square invertible treated
// row-wise); used to express forms in a new row basis. Returns nullopt if the
// system has no solution.
std::optional<std::vector<std::uint32_t>> solve_row(const Matrix& m, const std::vector<std::uint32_t>& rhs);

// Solves the linear system a * x = b over the field. Returns the canonical
// particular solution (free variables set to 0) or nullopt if inconsistent.
std::optional<std::vector<std::uint32_t>> solve(const Matrix& a, const std::vector<std::uint32_t>& b);

}  // namespace strengthlab
