#include "strengthlab/json_io.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "strengthlab/integers.hpp"

namespace strengthlab {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& what) { throw std::runtime_error("json: " + what); }

json parse_root(const std::string& text, const char* kind) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        bad(std::string("parse failure: ") + e.what());
    }
    if (!j.is_object()) bad("top level is not an object");
    if (!j.contains("kind") || !j["kind"].is_string() || j["kind"].get<std::string>() != kind)
        bad(std::string("expected kind '") + kind + "'");
    return j;
}

const json& field_of(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) bad(std::string("missing key '") + key + "'");
    return j[key];
}

std::uint64_t get_u64(const json& j, const char* key) {
    const json& v = field_of(j, key);
    if (!v.is_number_unsigned()) bad(std::string("key '") + key + "' is not an unsigned integer");
    return v.get<std::uint64_t>();
}

std::uint32_t get_u32(const json& j, const char* key) {
    const std::uint64_t v = get_u64(j, key);
    if (v > UINT32_MAX) bad(std::string("key '") + key + "' out of range");
    return static_cast<std::uint32_t>(v);
}

bool get_bool(const json& j, const char* key) {
    const json& v = field_of(j, key);
    if (!v.is_boolean()) bad(std::string("key '") + key + "' is not a boolean");
    return v.get<bool>();
}

const json& get_array(const json& j, const char* key) {
    const json& v = field_of(j, key);
    if (!v.is_array()) bad(std::string("key '") + key + "' is not an array");
    return v;
}

std::string get_string(const json& j, const char* key) {
    const json& v = field_of(j, key);
    if (!v.is_string()) bad(std::string("key '") + key + "' is not a string");
    return v.get<std::string>();
}

std::uint32_t scalar_code(const json& v, const FieldPtr& K) {
    if (!v.is_number_unsigned()) bad("scalar is not an unsigned integer");
    const std::uint64_t c = v.get<std::uint64_t>();
    if (c >= K->q()) bad("scalar code " + std::to_string(c) + " out of field range");
    return static_cast<std::uint32_t>(c);
}

// ---- field ------------------------------------------------------------

json field_json(const FieldPtr& K) {
    json j;
    j["p"] = K->p();
    j["e"] = K->e();
    if (K->e() > 1) j["modulus"] = K->modulus();
    return j;
}

FieldPtr field_from(const json& root) {
    const json& j = field_of(root, "field");
    FieldSpec spec;
    spec.p = get_u64(j, "p");
    spec.e = get_u32(j, "e");
    if (j.contains("modulus")) {
        for (const auto& d : get_array(j, "modulus")) {
            if (!d.is_number_unsigned()) bad("modulus digit is not an unsigned integer");
            spec.modulus.push_back(static_cast<std::uint32_t>(d.get<std::uint64_t>()));
        }
    }
    try {
        return Field::make(spec);
    } catch (const std::exception& e) {
        bad(std::string("bad field: ") + e.what());
    }
}

// ---- vectors and matrices ----------------------------------------------

json coeff_row(const std::uint32_t* p, std::size_t n) {
    json row = json::array();
    for (std::size_t i = 0; i < n; ++i) row.push_back(p[i]);
    return row;
}

json matrix_entries(const Matrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(coeff_row(m.row(i), m.cols()));
    return rows;
}

std::vector<std::uint32_t> coeffs_from(const json& v, const FieldPtr& K, std::size_t want) {
    if (!v.is_array() || v.size() != want) bad("coefficient row has the wrong length");
    std::vector<std::uint32_t> out;
    out.reserve(want);
    for (const auto& c : v) out.push_back(scalar_code(c, K));
    return out;
}

Matrix matrix_from(const json& v, const FieldPtr& K, std::size_t rows, std::size_t cols) {
    if (!v.is_array() || v.size() != rows) bad("matrix has the wrong row count");
    Matrix m(K, rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        const auto row = coeffs_from(v[static_cast<int>(i)], K, cols);
        std::copy(row.begin(), row.end(), m.row(i));
    }
    return m;
}

// ---- forms ---------------------------------------------------------------

json cubic_json(const CubicForm& f) {
    json j;
    j["n"] = f.nvars;
    json terms = json::array();
    for (const auto& t : f.terms) {
        json term;
        term["c"] = t.c;
        term["v"] = {t.v[0], t.v[1], t.v[2]};
        terms.push_back(std::move(term));
    }
    j["terms"] = std::move(terms);
    return j;
}

CubicForm cubic_from(const json& j, const FieldPtr& K) {
    if (!j.is_object()) bad("cubic form is not an object");
    const std::uint32_t n = get_u32(j, "n");
    std::vector<std::pair<std::array<std::uint32_t, 3>, std::uint32_t>> raw;
    for (const auto& t : get_array(j, "terms")) {
        const json& v = get_array(t, "v");
        if (v.size() != 3) bad("cubic term does not have three variable indices");
        std::array<std::uint32_t, 3> idx{};
        for (int k = 0; k < 3; ++k) {
            if (!v[k].is_number_unsigned()) bad("variable index is not an unsigned integer");
            const std::uint64_t i = v[k].get<std::uint64_t>();
            if (i >= n) bad("variable index out of range");
            idx[static_cast<std::size_t>(k)] = static_cast<std::uint32_t>(i);
        }
        raw.push_back({idx, scalar_code(field_of(t, "c"), K)});
    }
    return CubicForm::from_terms(K, n, raw);
}

json quadratic_json(const QuadraticForm& q) { return matrix_entries(q.gram_matrix()); }

QuadraticForm quadratic_from(const json& v, const FieldPtr& K, std::uint32_t n) {
    const Matrix g = matrix_from(v, K, n, n);
    QuadraticForm q(K, n);
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = 0; j < n; ++j) {
            if (g.at(i, j) != g.at(j, i)) bad("Gram matrix is not symmetric");
            q.g(i, j) = g.at(i, j);
        }
    return q;
}

json pairs_json(const LQDecomposition& d) {
    json pairs = json::array();
    for (const auto& [l, q] : d.pairs) {
        json p;
        p["l"] = coeff_row(l.coeffs.data(), l.coeffs.size());
        p["q"] = quadratic_json(q);
        pairs.push_back(std::move(p));
    }
    return pairs;
}

LQDecomposition pairs_from(const json& v, const FieldPtr& K, std::uint32_t n) {
    LQDecomposition d;
    d.field = K;
    d.nvars = n;
    for (const auto& p : v) {
        LinearForm l(K, coeffs_from(field_of(p, "l"), K, n));
        d.pairs.emplace_back(std::move(l), quadratic_from(field_of(p, "q"), K, n));
    }
    return d;
}

// ---- subspaces -------------------------------------------------------------

json subspace_json(const Subspace& w) {
    json j;
    j["kind"] = "subspace";
    j["field"] = field_json(w.field());
    j["ambient"] = w.ambient();
    j["basis"] = matrix_entries(w.basis());
    return j;
}

Subspace subspace_from(const json& j) {
    if (!j.is_object()) bad("subspace is not an object");
    if (get_string(j, "kind") != "subspace") bad("expected kind 'subspace'");
    const FieldPtr K = field_from(j);
    const std::uint64_t ambient = get_u64(j, "ambient");
    const json& rows = get_array(j, "basis");
    return Subspace::from_spanning_rows(matrix_from(rows, K, rows.size(), ambient));
}

// ---- degeneration steps ------------------------------------------------------

json steps_json(const std::vector<DegenerationStep>& steps) {
    json arr = json::array();
    for (const auto& step : steps) {
        json s;
        if (const auto* cc = std::get_if<CoordinateChange>(&step)) {
            s["type"] = "coordinate_change";
            s["g"] = matrix_entries(cc->g);
        } else {
            s["type"] = "cocharacter_limit";
            s["weights"] = std::get<CocharacterLimit>(step).c.weights;
        }
        arr.push_back(std::move(s));
    }
    return arr;
}

std::vector<DegenerationStep> steps_from(const json& arr, const FieldPtr& K, std::uint32_t n) {
    std::vector<DegenerationStep> steps;
    for (const auto& s : arr) {
        const std::string type = get_string(s, "type");
        if (type == "coordinate_change") {
            steps.push_back(CoordinateChange{matrix_from(field_of(s, "g"), K, n, n)});
        } else if (type == "cocharacter_limit") {
            Cocharacter c;
            for (const auto& w : get_array(s, "weights")) {
                if (!w.is_number_integer()) bad("cocharacter weight is not an integer");
                c.weights.push_back(w.get<std::int32_t>());
            }
            if (c.weights.size() != n) bad("cocharacter weight count does not match n");
            steps.push_back(CocharacterLimit{std::move(c)});
        } else {
            bad("unknown step type '" + type + "'");
        }
    }
    return steps;
}

json degeneration_json(const DegenerationCertificate& cert) {
    json j;
    j["kind"] = "degeneration_certificate";
    j["field"] = field_json(cert.start.field);
    j["n"] = cert.start.nvars;
    j["start"] = cubic_json(cert.start);
    j["steps"] = steps_json(cert.steps);
    j["end"] = cubic_json(cert.end);
    return j;
}

DegenerationCertificate degeneration_from(const json& j) {
    if (!j.is_object()) bad("certificate is not an object");
    if (get_string(j, "kind") != "degeneration_certificate")
        bad("expected kind 'degeneration_certificate'");
    const FieldPtr K = field_from(j);
    const std::uint32_t n = get_u32(j, "n");
    DegenerationCertificate cert;
    cert.start = cubic_from(field_of(j, "start"), K);
    cert.end = cubic_from(field_of(j, "end"), K);
    if (cert.start.nvars != n || cert.end.nvars != n) bad("certificate form sizes disagree with n");
    cert.steps = steps_from(get_array(j, "steps"), K, n);
    return cert;
}

// ---- phase certificates -------------------------------------------------------

json phase_json(const PhaseCertificate& cert) {
    json j;
    j["kind"] = "phase_certificate";
    j["field"] = field_json(cert.field);
    j["n"] = cert.n;
    j["ambient"] = cert.ambient;
    json trace = json::array();
    for (const auto& mv : cert.trace) {
        json m;
        if (mv.kind == TraceMove::RowSwap) {
            m["type"] = "row_swap";
        } else {
            m["type"] = "col_swap";
            m["row"] = mv.row;
        }
        m["a"] = mv.a;
        m["b"] = mv.b;
        trace.push_back(std::move(m));
    }
    j["trace"] = std::move(trace);
    j["r"] = cert.r;
    j["s"] = cert.s;
    j["t"] = cert.t;
    j["basis"] = matrix_entries(cert.basis);
    j["pivot_coefficient"] = cert.pivot_coefficient;
    return j;
}

PhaseCertificate phase_from(const json& j) {
    if (!j.is_object()) bad("certificate is not an object");
    if (get_string(j, "kind") != "phase_certificate")
        bad("expected kind 'phase_certificate'");
    PhaseCertificate cert;
    cert.field = field_from(j);
    cert.n = get_u32(j, "n");
    cert.ambient = get_u32(j, "ambient");
    for (const auto& m : get_array(j, "trace")) {
        const std::string ty = get_string(m, "type");
        TraceMove mv;
        if (ty == "row_swap") {
            mv.kind = TraceMove::RowSwap;
        } else if (ty == "col_swap") {
            mv.kind = TraceMove::ColSwap;
            mv.row = get_u32(m, "row");
        } else {
            bad("unknown trace move type");
        }
        mv.a = get_u32(m, "a");
        mv.b = get_u32(m, "b");
        cert.trace.push_back(mv);
    }
    cert.r = get_u32(j, "r");
    cert.s = get_u32(j, "s");
    cert.t = get_u32(j, "t");
    if (static_cast<std::uint64_t>(cert.r) + cert.s + cert.t != cert.ambient)
        bad("r + s + t does not equal the ambient dimension");
    cert.basis = matrix_from(get_array(j, "basis"), cert.field, cert.ambient, cert.ambient);
    cert.pivot_coefficient = get_u32(j, "pivot_coefficient");
    return cert;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

// ---- public entry points -------------------------------------------------

std::string qrank_report_to_json(const CubicForm& f, const QrankResult& res,
                                 const LQDecomposition* decomposition) {
    json j;
    j["kind"] = "qrank_report";
    j["field"] = field_json(f.field);
    j["n"] = f.nvars;
    j["f"] = cubic_json(f);
    j["r"] = res.r;
    j["exact"] = res.exact;
    j["enumeration_count"] = res.enumeration_count;
    j["witness"] = res.witness ? subspace_json(*res.witness) : json(nullptr);
    j["decomposition"] = decomposition ? pairs_json(*decomposition) : json(nullptr);
    return dump(j);
}

std::string decomposition_to_json(const LQDecomposition& d) {
    json j;
    j["kind"] = "decomposition";
    j["field"] = field_json(d.field);
    j["n"] = d.nvars;
    j["pairs"] = pairs_json(d);
    return dump(j);
}

LQDecomposition decomposition_from_json(const std::string& text) {
    const json j = parse_root(text, "decomposition");
    const FieldPtr K = field_from(j);
    return pairs_from(get_array(j, "pairs"), K, get_u32(j, "n"));
}

std::string degeneration_certificate_to_json(const DegenerationCertificate& cert) {
    return dump(degeneration_json(cert));
}

DegenerationCertificate degeneration_certificate_from_json(const std::string& text) {
    return degeneration_from(parse_root(text, "degeneration_certificate"));
}

std::string separable_result_to_json(const SeparableResult& res) {
    json j;
    j["kind"] = "separable_result";
    j["field"] = field_json(res.g.field);
    j["g"] = cubic_json(res.g);
    j["k_prime"] = res.k_prime;
    j["bound"] = res.bound;
    j["split_block"] = res.split_block;
    j["certificate"] = degeneration_json(res.cert);
    return dump(j);
}

std::string reduction_report_to_json(const ReductionReport& rep) {
    json j;
    j["kind"] = "reduction_report";
    j["field"] = field_json(rep.g.field);
    j["g"] = cubic_json(rep.g);
    j["split_block"] = rep.split_block;
    j["chosen_pairs"] = pairs_json(rep.chosen_pairs);
    j["minrank_achieved"] = rep.minrank_achieved;
    j["required_minrank"] = rep.required_minrank.str();
    j["ells_independent"] = rep.ells_independent;
    j["deg2_hypothesis_met"] = rep.deg2_hypothesis_met;
    j["certificate"] = degeneration_json(rep.cert);
    return dump(j);
}

std::string phase_certificate_to_json(const PhaseCertificate& cert) {
    return dump(phase_json(cert));
}

PhaseCertificate phase_certificate_from_json(const std::string& text) {
    return phase_from(parse_root(text, "phase_certificate"));
}

std::string nonvanishing_certificate_to_json(const NonvanishingCertificate& cert) {
    json j;
    j["kind"] = "nonvanishing_certificate";
    j["n"] = cert.n;
    j["w"] = subspace_json(cert.w);
    j["phase"] = phase_json(cert.phase);
    return dump(j);
}

std::string quadric_subspace_to_json(const QuadricSubspace& q) {
    json j;
    j["kind"] = "quadric_subspace";
    j["field"] = field_json(q.field);
    j["n"] = q.nvars;
    json basis = json::array();
    for (const auto& b : q.basis) basis.push_back(quadratic_json(b));
    j["basis"] = std::move(basis);
    return dump(j);
}

QuadricSubspace quadric_subspace_from_json(const std::string& text) {
    const json j = parse_root(text, "quadric_subspace");
    const FieldPtr K = field_from(j);
    const std::uint32_t n = get_u32(j, "n");
    std::vector<QuadraticForm> basis;
    for (const auto& b : get_array(j, "basis")) basis.push_back(quadratic_from(b, K, n));
    try {
        return QuadricSubspace::from_basis(K, n, std::move(basis));
    } catch (const std::exception& e) {
        bad(std::string("bad quadric subspace: ") + e.what());
    }
}

std::string subspace_to_json(const Subspace& w) { return dump(subspace_json(w)); }

Subspace subspace_from_json(const std::string& text) {
    return subspace_from(parse_root(text, "subspace"));
}

}  // namespace strengthlab
