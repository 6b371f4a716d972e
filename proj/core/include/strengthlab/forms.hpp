#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <vector>

#include "strengthlab/field.hpp"
#include "strengthlab/matrix.hpp"
#include "strengthlab/subspace.hpp"

namespace strengthlab {

// All form types require characteristic >= 5: quadratic forms are stored as
// symmetric Gram matrices (needs 1/2) and the cubic theory divides by 3.

struct LinearForm {
    FieldPtr field;
    std::vector<std::uint32_t> coeffs;

    LinearForm() = default;
    LinearForm(FieldPtr f, std::vector<std::uint32_t> c);
    static LinearForm coordinate(FieldPtr f, std::size_t n, std::size_t i);

    std::size_t n() const { return coeffs.size(); }
    bool is_zero() const;
    bool operator==(const LinearForm& o) const {
        return coeffs == o.coeffs && same_field(field, o.field);
    }
};

// Quadratic form as its symmetric Gram matrix: q(v) = v^T G v, so the
// polynomial coefficient of x_u x_v (u != v) is 2 G[u][v] and of x_u^2 is
// G[u][u]. Rank of the form = rank of G (char != 2).
struct QuadraticForm {
    FieldPtr field;
    std::uint32_t nvars = 0;
    std::vector<std::uint32_t> gram;  // nvars x nvars, row-major, symmetric

    QuadraticForm() = default;
    QuadraticForm(FieldPtr f, std::uint32_t n);

    static QuadraticForm from_monomials(
        FieldPtr f, std::uint32_t n,
        const std::vector<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>>& monos);

    std::uint32_t n() const { return nvars; }
    std::uint32_t& g(std::size_t i, std::size_t j) { return gram[i * nvars + j]; }
    std::uint32_t g(std::size_t i, std::size_t j) const { return gram[i * nvars + j]; }
    // Coefficient of the monomial x_u x_v in the polynomial (u <= v).
    std::uint32_t poly_coeff(std::size_t u, std::size_t v) const;
    Matrix gram_matrix() const;

    bool is_zero() const;
    bool operator==(const QuadraticForm& o) const {
        return nvars == o.nvars && gram == o.gram && same_field(field, o.field);
    }
};

// Cubic form as a sorted sparse list of monomials. Index triples are sorted
// ascending inside a term, terms are sorted lexicographically, and zero
// coefficients are never stored, so equality of forms is equality of
// representations.
struct CubicTerm {
    std::array<std::uint16_t, 3> v;  // ascending
    std::uint32_t c;                 // nonzero
    bool operator==(const CubicTerm&) const = default;
};

struct CubicForm {
    FieldPtr field;
    std::uint32_t nvars = 0;
    std::vector<CubicTerm> terms;

    CubicForm() = default;
    CubicForm(FieldPtr f, std::uint32_t n);  // zero form

    // Normalizes arbitrary (triple, coeff) pairs: sorts triples, merges
    // duplicates, prunes zeros.
    static CubicForm from_terms(
        FieldPtr f, std::uint32_t n,
        const std::vector<std::pair<std::array<std::uint32_t, 3>, std::uint32_t>>& raw);

    std::uint32_t n() const { return nvars; }
    bool is_zero() const { return terms.empty(); }
    std::uint32_t coeff(std::uint32_t a, std::uint32_t b, std::uint32_t c) const;

    bool operator==(const CubicForm& o) const {
        return nvars == o.nvars && terms == o.terms && same_field(field, o.field);
    }
};

CubicForm add(const CubicForm& a, const CubicForm& b);
CubicForm sub(const CubicForm& a, const CubicForm& b);
CubicForm scale(const CubicForm& a, std::uint32_t s);

// One-parameter diagonal subgroup x_i -> t^{w_i} x_i.
struct Cocharacter {
    std::vector<std::int32_t> weights;
    std::size_t n() const { return weights.size(); }
};

struct LQDecomposition {
    FieldPtr field;
    std::uint32_t nvars = 0;
    std::vector<std::pair<LinearForm, QuadraticForm>> pairs;

    std::size_t length() const { return pairs.size(); }
};

// ---- evaluation -----------------------------------------------------------

std::uint32_t evaluate(const LinearForm& f, const std::vector<std::uint32_t>& point);
std::uint32_t evaluate(const QuadraticForm& f, const std::vector<std::uint32_t>& point);
std::uint32_t evaluate(const CubicForm& f, const std::vector<std::uint32_t>& point);

// ---- substitution and friends ----------------------------------------------
//
// substitute(f, M) is the pullback along the linear map M: the result, a form
// in M.cols() variables, satisfies result(u) = f(M u). Everything else is a
// special case: change_of_variables(f, g) = substitute(f, g^{-1}) (the left
// GL action), restrict(f, w) = substitute(f, w.basis()^T).

LinearForm substitute(const LinearForm& f, const Matrix& m);
QuadraticForm substitute(const QuadraticForm& f, const Matrix& m);
CubicForm substitute(const CubicForm& f, const Matrix& m);

LinearForm change_of_variables(const LinearForm& f, const Matrix& g);
QuadraticForm change_of_variables(const QuadraticForm& f, const Matrix& g);
CubicForm change_of_variables(const CubicForm& f, const Matrix& g);

LinearForm restrict_form(const LinearForm& f, const Subspace& w);
QuadraticForm restrict_form(const QuadraticForm& f, const Subspace& w);
CubicForm restrict_form(const CubicForm& f, const Subspace& w);

// ---- grading along a cocharacter -------------------------------------------

// Splits f into graded components: monomial x_a x_b x_c sits at weight
// w_a + w_b + w_c. Only nonzero components appear in the map.
std::map<std::int64_t, CubicForm> grade_by_weight(const CubicForm& f, const Cocharacter& c);

// Limit of t . f as t -> 0 under x_i -> t^{w_i} x_i: exists iff every nonzero
// component has weight >= 0, and then equals the weight-0 component. Throws
// negative_weight_error otherwise.
CubicForm cocharacter_limit(const CubicForm& f, const Cocharacter& c);

// ---- products and decompositions -------------------------------------------

QuadraticForm mul(const LinearForm& a, const LinearForm& b);
CubicForm mul(const LinearForm& l, const QuadraticForm& q);
CubicForm product3(const LinearForm& a, const LinearForm& b, const LinearForm& c);

CubicForm assemble(const LQDecomposition& d);

// True iff every monomial of f has exactly one variable (with multiplicity)
// in block1 and two in its complement. block1 is a set of variable indices.
bool is_separable_witness(const CubicForm& f, const std::vector<std::uint32_t>& block1);

}  // namespace strengthlab
