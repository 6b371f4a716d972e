#include "strengthlab/forms.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <tuple>

#include "strengthlab/errors.hpp"

namespace strengthlab {

namespace {

void require_forms_field(const FieldPtr& f, const char* where) {
    if (!f) throw std::invalid_argument(std::string(where) + ": null field");
    if (!f->forms_permitted())
        throw std::invalid_argument(std::string(where) + ": forms require characteristic >= 5");
}

std::array<std::uint16_t, 3> sorted_triple(std::uint32_t a, std::uint32_t b, std::uint32_t c) {
    std::array<std::uint32_t, 3> t{a, b, c};
    std::sort(t.begin(), t.end());
    return {static_cast<std::uint16_t>(t[0]), static_cast<std::uint16_t>(t[1]),
            static_cast<std::uint16_t>(t[2])};
}

// Sorted accumulation buffer for building cubic forms.
struct CubicAcc {
    const Field& F;
    std::map<std::array<std::uint16_t, 3>, std::uint32_t> m;

    void add(std::array<std::uint16_t, 3> key, std::uint32_t val) {
        if (!val) return;
        auto [it, inserted] = m.emplace(key, val);
        if (!inserted) {
            it->second = F.add(it->second, val);
            if (!it->second) m.erase(it);
        }
    }

    std::vector<CubicTerm> take() {
        std::vector<CubicTerm> out;
        out.reserve(m.size());
        for (auto& [k, v] : m) out.push_back({k, v});
        return out;
    }
};

}  // namespace

LinearForm::LinearForm(FieldPtr f, std::vector<std::uint32_t> c) : field(std::move(f)), coeffs(std::move(c)) {
    require_forms_field(field, "LinearForm");
}

LinearForm LinearForm::coordinate(FieldPtr f, std::size_t n, std::size_t i) {
    std::vector<std::uint32_t> c(n, 0);
    c.at(i) = 1;
    return LinearForm(std::move(f), std::move(c));
}

bool LinearForm::is_zero() const {
    return std::all_of(coeffs.begin(), coeffs.end(), [](std::uint32_t c) { return c == 0; });
}

QuadraticForm::QuadraticForm(FieldPtr f, std::uint32_t n)
    : field(std::move(f)), nvars(n), gram(static_cast<std::size_t>(n) * n, 0) {
    require_forms_field(field, "QuadraticForm");
}

QuadraticForm QuadraticForm::from_monomials(
    FieldPtr f, std::uint32_t n,
    const std::vector<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>>& monos) {
    QuadraticForm q(std::move(f), n);
    const Field& F = *q.field;
    std::uint32_t half = F.inv(F.from_int(2));
    for (auto [u, v, c] : monos) {
        if (u >= n || v >= n) throw std::invalid_argument("QuadraticForm: variable index out of range");
        if (u == v) {
            q.g(u, u) = F.add(q.g(u, u), c);
        } else {
            std::uint32_t h = F.mul(c, half);
            q.g(u, v) = F.add(q.g(u, v), h);
            q.g(v, u) = F.add(q.g(v, u), h);
        }
    }
    return q;
}

std::uint32_t QuadraticForm::poly_coeff(std::size_t u, std::size_t v) const {
    if (u == v) return g(u, u);
    return field->mul(field->from_int(2), g(u, v));
}

Matrix QuadraticForm::gram_matrix() const { return Matrix(field, nvars, nvars, gram); }

bool QuadraticForm::is_zero() const {
    return std::all_of(gram.begin(), gram.end(), [](std::uint32_t c) { return c == 0; });
}

CubicForm::CubicForm(FieldPtr f, std::uint32_t n) : field(std::move(f)), nvars(n) {
    require_forms_field(field, "CubicForm");
}

CubicForm CubicForm::from_terms(
    FieldPtr f, std::uint32_t n,
    const std::vector<std::pair<std::array<std::uint32_t, 3>, std::uint32_t>>& raw) {
    CubicForm out(std::move(f), n);
    CubicAcc acc{*out.field, {}};
    for (auto& [t, c] : raw) {
        if (t[0] >= n || t[1] >= n || t[2] >= n)
            throw std::invalid_argument("CubicForm: variable index out of range");
        if (c >= out.field->q()) throw std::invalid_argument("CubicForm: coefficient code out of range");
        acc.add(sorted_triple(t[0], t[1], t[2]), c);
    }
    out.terms = acc.take();
    return out;
}

std::uint32_t CubicForm::coeff(std::uint32_t a, std::uint32_t b, std::uint32_t c) const {
    auto key = sorted_triple(a, b, c);
    auto it = std::lower_bound(terms.begin(), terms.end(), key,
                               [](const CubicTerm& t, const std::array<std::uint16_t, 3>& k) { return t.v < k; });
    if (it != terms.end() && it->v == key) return it->c;
    return 0;
}

CubicForm add(const CubicForm& a, const CubicForm& b) {
    require_same_field(a.field, b.field, "cubic add");
    if (a.nvars != b.nvars) throw std::invalid_argument("cubic add: variable count mismatch");
    CubicForm out(a.field, a.nvars);
    CubicAcc acc{*a.field, {}};
    for (auto& t : a.terms) acc.add(t.v, t.c);
    for (auto& t : b.terms) acc.add(t.v, t.c);
    out.terms = acc.take();
    return out;
}

CubicForm scale(const CubicForm& a, std::uint32_t s) {
    CubicForm out(a.field, a.nvars);
    if (!s) return out;
    out.terms = a.terms;
    for (auto& t : out.terms) t.c = a.field->mul(t.c, s);
    return out;
}

CubicForm sub(const CubicForm& a, const CubicForm& b) { return add(a, scale(b, b.field->neg(1))); }

std::uint32_t evaluate(const LinearForm& f, const std::vector<std::uint32_t>& point) {
    if (point.size() != f.n()) throw std::invalid_argument("evaluate: point dimension mismatch");
    const Field& F = *f.field;
    std::uint32_t acc = 0;
    for (std::size_t i = 0; i < f.coeffs.size(); ++i) acc = F.add(acc, F.mul(f.coeffs[i], point[i]));
    return acc;
}

std::uint32_t evaluate(const QuadraticForm& f, const std::vector<std::uint32_t>& point) {
    if (point.size() != f.nvars) throw std::invalid_argument("evaluate: point dimension mismatch");
    const Field& F = *f.field;
    std::uint32_t acc = 0;
    for (std::uint32_t i = 0; i < f.nvars; ++i) {
        if (!point[i]) continue;
        std::uint32_t rowsum = 0;
        for (std::uint32_t j = 0; j < f.nvars; ++j) rowsum = F.add(rowsum, F.mul(f.g(i, j), point[j]));
        acc = F.add(acc, F.mul(point[i], rowsum));
    }
    return acc;
}

std::uint32_t evaluate(const CubicForm& f, const std::vector<std::uint32_t>& point) {
    if (point.size() != f.nvars) throw std::invalid_argument("evaluate: point dimension mismatch");
    const Field& F = *f.field;
    std::uint32_t acc = 0;
    for (auto& t : f.terms)
        acc = F.add(acc, F.mul(F.mul(t.c, point[t.v[0]]), F.mul(point[t.v[1]], point[t.v[2]])));
    return acc;
}

LinearForm substitute(const LinearForm& f, const Matrix& m) {
    require_same_field(f.field, m.field(), "substitute");
    if (m.rows() != f.n()) throw std::invalid_argument("substitute: matrix rows must match variable count");
    const Field& F = *f.field;
    std::vector<std::uint32_t> out(m.cols(), 0);
    for (std::size_t i = 0; i < f.n(); ++i) {
        std::uint32_t c = f.coeffs[i];
        if (!c) continue;
        for (std::size_t j = 0; j < m.cols(); ++j) out[j] = F.add(out[j], F.mul(c, m.at(i, j)));
    }
    return LinearForm(f.field, std::move(out));
}

QuadraticForm substitute(const QuadraticForm& f, const Matrix& m) {
    require_same_field(f.field, m.field(), "substitute");
    if (m.rows() != f.nvars) throw std::invalid_argument("substitute: matrix rows must match variable count");
    Matrix g = mat_mul(mat_mul(m.transpose(), f.gram_matrix()), m);
    QuadraticForm out(f.field, static_cast<std::uint32_t>(m.cols()));
    out.gram = g.data();
    return out;
}

CubicForm substitute(const CubicForm& f, const Matrix& m) {
    require_same_field(f.field, m.field(), "substitute");
    if (m.rows() != f.nvars) throw std::invalid_argument("substitute: matrix rows must match variable count");
    const Field& F = *f.field;
    std::size_t mm = m.cols();
    CubicForm out(f.field, static_cast<std::uint32_t>(mm));
    CubicAcc acc{F, {}};
    for (auto& t : f.terms) {
        const std::uint32_t* A = m.row(t.v[0]);
        const std::uint32_t* B = m.row(t.v[1]);
        const std::uint32_t* C = m.row(t.v[2]);
        for (std::size_t i = 0; i < mm; ++i) {
            if (!A[i]) continue;
            std::uint32_t ca = F.mul(t.c, A[i]);
            for (std::size_t j = 0; j < mm; ++j) {
                if (!B[j]) continue;
                std::uint32_t cab = F.mul(ca, B[j]);
                for (std::size_t k = 0; k < mm; ++k) {
                    if (!C[k]) continue;
                    acc.add(sorted_triple(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j),
                                          static_cast<std::uint32_t>(k)),
                            F.mul(cab, C[k]));
                }
            }
        }
    }
    out.terms = acc.take();
    return out;
}

namespace {

Matrix inverse_or_throw(const Matrix& g) {
    if (g.rows() != g.cols()) throw std::invalid_argument("change_of_variables: matrix not square");
    auto inv = inverse(g);
    if (!inv) throw std::invalid_argument("change_of_variables: matrix is singular");
    return *inv;
}

}  // namespace

LinearForm change_of_variables(const LinearForm& f, const Matrix& g) {
    return substitute(f, inverse_or_throw(g));
}
QuadraticForm change_of_variables(const QuadraticForm& f, const Matrix& g) {
    return substitute(f, inverse_or_throw(g));
}
CubicForm change_of_variables(const CubicForm& f, const Matrix& g) {
    return substitute(f, inverse_or_throw(g));
}

LinearForm restrict_form(const LinearForm& f, const Subspace& w) {
    return substitute(f, w.basis().transpose());
}
QuadraticForm restrict_form(const QuadraticForm& f, const Subspace& w) {
    return substitute(f, w.basis().transpose());
}
CubicForm restrict_form(const CubicForm& f, const Subspace& w) {
    return substitute(f, w.basis().transpose());
}

std::map<std::int64_t, CubicForm> grade_by_weight(const CubicForm& f, const Cocharacter& c) {
    if (c.n() != f.nvars) throw std::invalid_argument("grade_by_weight: weight count mismatch");
    std::map<std::int64_t, CubicForm> out;
    for (auto& t : f.terms) {
        std::int64_t w = static_cast<std::int64_t>(c.weights[t.v[0]]) + c.weights[t.v[1]] + c.weights[t.v[2]];
        auto it = out.find(w);
        if (it == out.end()) it = out.emplace(w, CubicForm(f.field, f.nvars)).first;
        it->second.terms.push_back(t);  // source order is already sorted
    }
    return out;
}

CubicForm cocharacter_limit(const CubicForm& f, const Cocharacter& c) {
    auto graded = grade_by_weight(f, c);
    if (!graded.empty() && graded.begin()->first < 0) {
        auto& t = graded.begin()->second.terms.front();
        throw negative_weight_error(
            "cocharacter_limit: monomial (" + std::to_string(t.v[0]) + "," + std::to_string(t.v[1]) + "," +
                std::to_string(t.v[2]) + ") has negative weight " + std::to_string(graded.begin()->first) +
                ", the limit does not exist",
            graded.begin()->first);
    }
    auto it = graded.find(0);
    if (it == graded.end()) return CubicForm(f.field, f.nvars);
    return it->second;
}

QuadraticForm mul(const LinearForm& a, const LinearForm& b) {
    require_same_field(a.field, b.field, "mul");
    if (a.n() != b.n()) throw std::invalid_argument("mul: variable count mismatch");
    const Field& F = *a.field;
    QuadraticForm q(a.field, static_cast<std::uint32_t>(a.n()));
    std::uint32_t half = F.inv(F.from_int(2));
    for (std::uint32_t i = 0; i < q.nvars; ++i)
        for (std::uint32_t j = 0; j < q.nvars; ++j) {
            std::uint32_t s = F.add(F.mul(a.coeffs[i], b.coeffs[j]), F.mul(a.coeffs[j], b.coeffs[i]));
            q.g(i, j) = F.mul(half, s);
        }
    return q;
}

CubicForm mul(const LinearForm& l, const QuadraticForm& q) {
    require_same_field(l.field, q.field, "mul");
    if (l.n() != q.nvars) throw std::invalid_argument("mul: variable count mismatch");
    const Field& F = *l.field;
    CubicForm out(l.field, q.nvars);
    CubicAcc acc{F, {}};
    for (std::uint32_t u = 0; u < q.nvars; ++u)
        for (std::uint32_t v = u; v < q.nvars; ++v) {
            std::uint32_t cq = q.poly_coeff(u, v);
            if (!cq) continue;
            for (std::uint32_t w = 0; w < q.nvars; ++w) {
                if (!l.coeffs[w]) continue;
                acc.add(sorted_triple(u, v, w), F.mul(cq, l.coeffs[w]));
            }
        }
    out.terms = acc.take();
    return out;
}

CubicForm product3(const LinearForm& a, const LinearForm& b, const LinearForm& c) {
    return mul(a, mul(b, c));
}

CubicForm assemble(const LQDecomposition& d) {
    CubicForm out(d.field, d.nvars);
    for (auto& [l, q] : d.pairs) out = add(out, mul(l, q));
    return out;
}

bool is_separable_witness(const CubicForm& f, const std::vector<std::uint32_t>& block1) {
    std::vector<bool> in1(f.nvars, false);
    for (auto i : block1) {
        if (i >= f.nvars) throw std::invalid_argument("is_separable_witness: block index out of range");
        in1[i] = true;
    }
    for (auto& t : f.terms) {
        int cnt = (in1[t.v[0]] ? 1 : 0) + (in1[t.v[1]] ? 1 : 0) + (in1[t.v[2]] ? 1 : 0);
        if (cnt != 1) return false;
    }
    return true;
}

}  // namespace strengthlab
