#include "strengthlab/polyio.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace strengthlab {

namespace {

std::string strip(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

bool valid_ident(const std::string& s) {
    if (s.empty() || !is_ident_start(s[0])) return false;
    return std::all_of(s.begin(), s.end(), is_ident_char);
}

// One token of the f-expression: a sign, '*', an integer, a digit list, or a
// variable name.
struct Token {
    enum Kind { Plus, Minus, Star, Int, Digits, Ident, End } kind = End;
    std::uint64_t value = 0;               // Int
    std::vector<std::uint64_t> digits;     // Digits
    std::string name;                      // Ident
};

class Lexer {
public:
    explicit Lexer(const std::string& text) : s_(text) {}

    Token next() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (pos_ >= s_.size()) return {};
        const char c = s_[pos_];
        if (c == '+') return ++pos_, Token{Token::Plus};
        if (c == '-') return ++pos_, Token{Token::Minus};
        if (c == '*') return ++pos_, Token{Token::Star};
        if (std::isdigit(static_cast<unsigned char>(c))) return integer();
        if (c == '[') return digit_list();
        if (is_ident_start(c)) return ident();
        throw std::invalid_argument(std::string("poly: unexpected character '") + c + "'");
    }

private:
    Token integer() {
        Token t{Token::Int};
        t.value = read_uint();
        return t;
    }

    std::uint64_t read_uint() {
        std::uint64_t v = 0;
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            const std::uint64_t d = static_cast<std::uint64_t>(s_[pos_] - '0');
            if (v > (UINT64_MAX - d) / 10) throw std::invalid_argument("poly: integer literal too large");
            v = v * 10 + d;
            ++pos_;
        }
        if (pos_ == start) throw std::invalid_argument("poly: expected a digit");
        return v;
    }

    Token digit_list() {
        ++pos_;  // '['
        Token t{Token::Digits};
        for (;;) {
            while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            t.digits.push_back(read_uint());
            while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (pos_ >= s_.size()) throw std::invalid_argument("poly: unterminated digit list");
            if (s_[pos_] == ',') {
                ++pos_;
                continue;
            }
            if (s_[pos_] == ']') {
                ++pos_;
                return t;
            }
            throw std::invalid_argument("poly: expected ',' or ']' in digit list");
        }
    }

    Token ident() {
        Token t{Token::Ident};
        while (pos_ < s_.size() && is_ident_char(s_[pos_])) t.name.push_back(s_[pos_++]);
        return t;
    }

    const std::string& s_;
    std::size_t pos_ = 0;
};

std::uint32_t embed_integer(const Field& K, std::uint64_t v) {
    // Plain integers land in the prime subfield.
    return K.from_int(static_cast<std::int64_t>(v % K.p()));
}

std::uint32_t embed_digits(const Field& K, const std::vector<std::uint64_t>& digits) {
    if (digits.size() > K.e())
        throw std::invalid_argument("poly: digit list longer than the field degree");
    std::vector<std::uint32_t> d(K.e(), 0);
    for (std::size_t i = 0; i < digits.size(); ++i)
        d[i] = static_cast<std::uint32_t>(digits[i] % K.p());
    return K.compose(d);
}

}  // namespace

std::vector<std::string> default_var_names(std::size_t n) {
    std::vector<std::string> names;
    names.reserve(n);
    for (std::size_t i = 0; i < n; ++i) names.push_back("x" + std::to_string(i + 1));
    return names;
}

PolyDocument parse_poly_text(const std::string& text, const std::optional<FieldSpec>& fallback_field) {
    std::optional<std::string> header;
    std::optional<std::vector<std::string>> declared;
    std::string expr;
    bool in_expr = false;

    std::istringstream lines(text);
    std::string raw;
    while (std::getline(lines, raw)) {
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        const std::string line = strip(raw);
        if (line.empty()) continue;
        if (in_expr) {
            expr += ' ';
            expr += line;
            continue;
        }
        if (line.rfind("field", 0) == 0 && (line.size() == 5 || !is_ident_char(line[5]))) {
            if (header) throw std::invalid_argument("poly: duplicate field line");
            std::string spec = strip(line.substr(5));
            spec.erase(std::remove_if(spec.begin(), spec.end(),
                                      [](char c) { return std::isspace(static_cast<unsigned char>(c)); }),
                       spec.end());
            if (spec.empty()) throw std::invalid_argument("poly: empty field line");
            header = spec;
            continue;
        }
        if (line.rfind("vars", 0) == 0 && (line.size() == 4 || !is_ident_char(line[4]))) {
            if (declared) throw std::invalid_argument("poly: duplicate vars line");
            std::vector<std::string> names;
            std::istringstream ws(line.substr(4));
            std::string name;
            while (ws >> name) {
                if (!valid_ident(name))
                    throw std::invalid_argument("poly: bad variable name '" + name + "'");
                if (std::find(names.begin(), names.end(), name) != names.end())
                    throw std::invalid_argument("poly: duplicate variable '" + name + "'");
                names.push_back(name);
            }
            declared = std::move(names);
            continue;
        }
        if (line.rfind("f", 0) == 0) {
            const std::string rest = strip(line.substr(1));
            if (!rest.empty() && rest[0] == '=') {
                expr = rest.substr(1);
                in_expr = true;
                continue;
            }
        }
        throw std::invalid_argument("poly: unexpected line '" + line + "'");
    }
    if (!in_expr) throw std::invalid_argument("poly: missing 'f = ...' line");

    FieldSpec spec;
    if (header) {
        spec = FieldSpec::parse(*header);
        if (fallback_field && (fallback_field->p != spec.p || fallback_field->e != spec.e))
            throw std::invalid_argument("poly: field header '" + spec.format() +
                                        "' conflicts with expected '" + fallback_field->format() + "'");
        // An agreeing fallback may still carry an explicit modulus.
        if (fallback_field) spec = *fallback_field;
    } else if (fallback_field) {
        spec = *fallback_field;
    } else {
        throw std::invalid_argument("poly: no field line and no fallback field");
    }
    const FieldPtr K = Field::make(spec);

    // Terms, with variables by name; names are resolved to indices afterwards.
    struct RawTerm {
        std::uint32_t coeff;
        std::vector<std::string> vars;
    };
    std::vector<RawTerm> parsed;

    Lexer lex(expr);
    Token tok = lex.next();
    if (tok.kind == Token::End) throw std::invalid_argument("poly: empty expression");
    for (;;) {
        bool negate = false;
        while (tok.kind == Token::Plus || tok.kind == Token::Minus) {
            if (tok.kind == Token::Minus) negate = !negate;
            tok = lex.next();
        }
        RawTerm term{1, {}};
        bool any_coeff = false;
        for (;;) {
            switch (tok.kind) {
                case Token::Int:
                    term.coeff = K->mul(term.coeff, embed_integer(*K, tok.value));
                    any_coeff = true;
                    break;
                case Token::Digits:
                    term.coeff = K->mul(term.coeff, embed_digits(*K, tok.digits));
                    any_coeff = true;
                    break;
                case Token::Ident:
                    term.vars.push_back(tok.name);
                    break;
                default:
                    throw std::invalid_argument("poly: expected a coefficient or variable");
            }
            tok = lex.next();
            if (tok.kind != Token::Star) break;
            tok = lex.next();
        }
        if (negate) term.coeff = K->neg(term.coeff);
        if (term.vars.empty()) {
            // Only the bare literal 0 may stand without variables, and only
            // as the entire expression: it denotes the zero form.
            if (parsed.empty() && !negate && any_coeff && term.coeff == 0 &&
                tok.kind == Token::End)
                break;
            throw std::invalid_argument("poly: monomial without variables");
        }
        if (term.vars.size() != 3)
            throw std::invalid_argument("poly: monomial of degree " +
                                        std::to_string(term.vars.size()) + ", need degree 3");
        parsed.push_back(std::move(term));
        if (tok.kind == Token::End) break;
        if (tok.kind != Token::Plus && tok.kind != Token::Minus)
            throw std::invalid_argument("poly: expected '+' or '-' between terms");
    }

    // Resolve names: declared order if a vars line was given, otherwise first
    // appearance.
    std::vector<std::string> names;
    std::map<std::string, std::uint32_t> index;
    if (declared) {
        names = *declared;
        for (std::uint32_t i = 0; i < names.size(); ++i) index[names[i]] = i;
    }
    std::vector<std::pair<std::array<std::uint32_t, 3>, std::uint32_t>> terms;
    for (const auto& term : parsed) {
        std::array<std::uint32_t, 3> v{};
        for (std::size_t k = 0; k < 3; ++k) {
            auto it = index.find(term.vars[k]);
            if (it == index.end()) {
                if (declared)
                    throw std::invalid_argument("poly: variable '" + term.vars[k] +
                                                "' not in the vars line");
                const auto fresh = static_cast<std::uint32_t>(names.size());
                names.push_back(term.vars[k]);
                it = index.emplace(term.vars[k], fresh).first;
            }
            v[k] = it->second;
        }
        terms.push_back({v, term.coeff});
    }

    const auto nvars = static_cast<std::uint32_t>(names.size());
    return {K, std::move(names), CubicForm::from_terms(K, nvars, terms)};
}

std::string write_poly_text(const CubicForm& f, const std::vector<std::string>& vars) {
    const FieldPtr& K = f.field;
    if (!K) throw std::invalid_argument("write_poly_text: form has no field");
    // The header carries only p and e, so a field with a nonstandard modulus
    // would not survive a round trip.
    if (!same_field(K, Field::make(FieldSpec::parse(K->spec().format()))))
        throw std::invalid_argument("write_poly_text: field is not expressible as a text header");

    std::vector<std::string> names = vars.empty() ? default_var_names(f.n()) : vars;
    if (names.size() != f.n())
        throw std::invalid_argument("write_poly_text: variable name count mismatch");
    for (const auto& name : names)
        if (!valid_ident(name))
            throw std::invalid_argument("write_poly_text: bad variable name '" + name + "'");
    for (std::size_t i = 0; i < names.size(); ++i)
        for (std::size_t j = i + 1; j < names.size(); ++j)
            if (names[i] == names[j])
                throw std::invalid_argument("write_poly_text: duplicate variable name '" + names[i] + "'");

    std::string out = "field " + K->spec().format() + "\n";
    if (!names.empty()) {
        out += "vars";
        for (const auto& name : names) out += " " + name;
        out += "\n";
    }

    out += "f = ";
    if (f.is_zero()) {
        out += "0";
    } else {
        for (std::size_t i = 0; i < f.terms.size(); ++i) {
            const auto& t = f.terms[i];
            if (i) out += " + ";
            out += K->format_scalar(t.c);
            for (const auto v : t.v) out += "*" + names[v];
        }
    }
    out += "\n";
    return out;
}

}  // namespace strengthlab
