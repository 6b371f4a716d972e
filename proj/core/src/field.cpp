#include "strengthlab/field.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace strengthlab {

namespace {

constexpr std::uint64_t kTableCap = 1u << 20;  // build log tables below this q

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> fs;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            fs.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) fs.push_back(n);
    return fs;
}

using Poly = std::vector<std::uint32_t>;  // dense, low degree first, coeffs in [0, p)

// Arithmetic in GF(p)[t] modulo a monic polynomial `mod` of degree e.
struct PolyCtx {
    std::uint64_t p;
    const Poly& mod;  // length e+1, mod[e] == 1
    std::uint32_t e;

    Poly mulmod(const Poly& a, const Poly& b) const {
        std::vector<std::uint64_t> t(2 * e - 1, 0);
        for (std::uint32_t i = 0; i < e; ++i) {
            if (!a[i]) continue;
            for (std::uint32_t j = 0; j < e; ++j)
                t[i + j] = (t[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % p;
        }
        for (std::uint32_t i = 2 * e - 2; i >= e; --i) {
            std::uint64_t c = t[i];
            if (c) {
                for (std::uint32_t j = 0; j < e; ++j)
                    t[i - e + j] = (t[i - e + j] + (p - 1) * c % p * mod[j]) % p;
                t[i] = 0;
            }
            if (i == e) break;
        }
        Poly r(e);
        for (std::uint32_t i = 0; i < e; ++i) r[i] = static_cast<std::uint32_t>(t[i]);
        return r;
    }

    Poly powmod(Poly a, std::uint64_t k) const {
        Poly r(e, 0);
        r[0] = 1;
        while (k) {
            if (k & 1) r = mulmod(r, a);
            a = mulmod(a, a);
            k >>= 1;
        }
        return r;
    }
};

std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t k, std::uint64_t p) {
    std::uint64_t r = 1 % p;
    a %= p;
    while (k) {
        if (k & 1) r = r * a % p;
        a = a * a % p;
        k >>= 1;
    }
    return r;
}

// gcd of two polynomials over GF(p) (low degree first, any length).
Poly poly_gcd(Poly a, Poly b, std::uint64_t p) {
    auto deg = [](const Poly& f) -> int {
        for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i)
            if (f[i]) return i;
        return -1;
    };
    while (deg(b) >= 0) {
        int da = deg(a), db = deg(b);
        if (da < db) {
            std::swap(a, b);
            continue;
        }
        // a -= lead(a)/lead(b) * t^{da-db} * b
        std::uint64_t c = a[da] % p * powmod_u64(b[db], p - 2, p) % p;
        for (int i = 0; i <= db; ++i) {
            std::uint64_t sub = c * b[i] % p;
            auto& t = a[i + da - db];
            t = static_cast<std::uint32_t>((t + p - sub) % p);
        }
    }
    return a;
}

bool is_irreducible(const Poly& mod, std::uint64_t p, std::uint32_t e) {
    PolyCtx ctx{p, mod, e};
    Poly x(e, 0);
    if (e == 1) return true;
    x[1] = 1;
    // x^(p^m) by m successive p-th powers
    auto frob = [&](Poly f, std::uint32_t m) {
        for (std::uint32_t i = 0; i < m; ++i) f = ctx.powmod(f, p);
        return f;
    };
    Poly xq = frob(x, e);
    if (xq != x) return false;
    for (std::uint64_t ell : prime_factors(e)) {
        Poly xm = frob(x, static_cast<std::uint32_t>(e / ell));
        // gcd(x^(p^(e/ell)) - x, mod) must be 1
        Poly diff = xm;
        diff[1] = static_cast<std::uint32_t>((diff[1] + p - 1) % p);
        Poly g = poly_gcd(Poly(mod), diff, p);
        int dg = -1;
        for (int i = static_cast<int>(g.size()) - 1; i >= 0; --i)
            if (g[i]) {
                dg = i;
                break;
            }
        if (dg != 0) return false;
    }
    return true;
}

}  // namespace

FieldSpec FieldSpec::parse(const std::string& text) {
    FieldSpec spec;
    spec.p = 0;
    spec.e = 1;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("field spec: expected key=value, got '" + item + "'");
        std::string key = item.substr(0, eq);
        std::string val = item.substr(eq + 1);
        if (key == "p")
            spec.p = std::stoull(val);
        else if (key == "e")
            spec.e = static_cast<std::uint32_t>(std::stoul(val));
        else
            throw std::invalid_argument("field spec: unknown key '" + key + "'");
    }
    if (spec.p == 0) throw std::invalid_argument("field spec: missing p");
    if (spec.e == 0) throw std::invalid_argument("field spec: e must be >= 1");
    return spec;
}

std::string FieldSpec::format() const {
    std::string s = "p=" + std::to_string(p);
    if (e > 1) s += ",e=" + std::to_string(e);
    return s;
}

FieldPtr Field::build(std::uint64_t p, std::uint32_t e, std::vector<std::uint32_t> modulus,
                      bool allow_small_prime) {
    if (!is_prime_u64(p)) throw std::invalid_argument("field: p = " + std::to_string(p) + " is not prime");
    if (!allow_small_prime && (p == 2 || p == 3))
        throw std::invalid_argument("field: characteristic 2 and 3 are not supported for form arithmetic");
    if (e == 0) throw std::invalid_argument("field: e must be >= 1");
    if (p >= (1u << 31)) throw std::invalid_argument("field: p too large");

    auto f = std::shared_ptr<Field>(new Field());
    f->p_ = p;
    f->e_ = e;

    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < e; ++i) {
        q *= p;
        if (q >= (1u << 31)) throw std::invalid_argument("field: p^e too large for dense codes");
    }
    f->q_ = q;

    if (e > 1) {
        if (modulus.empty()) {
            // Deterministic modulus: scan the non-leading coefficient codes in
            // ascending order and take the first irreducible monic polynomial.
            for (std::uint64_t c = 0;; ++c) {
                if (c >= q) throw std::logic_error("field: no irreducible modulus found");
                Poly cand(e + 1, 0);
                std::uint64_t rest = c;
                for (std::uint32_t i = 0; i < e; ++i) {
                    cand[i] = static_cast<std::uint32_t>(rest % p);
                    rest /= p;
                }
                cand[e] = 1;
                if (is_irreducible(cand, p, e)) {
                    modulus = cand;
                    break;
                }
            }
        } else {
            if (modulus.size() != e + 1 || modulus[e] != 1)
                throw std::invalid_argument("field: modulus must be monic of degree e, low degree first");
            for (auto c : modulus)
                if (c >= p) throw std::invalid_argument("field: modulus coefficient out of range");
            if (!is_irreducible(modulus, p, e)) throw std::invalid_argument("field: modulus is reducible");
        }
        f->modulus_ = std::move(modulus);

        if (q <= kTableCap) {
            // Multiplication tables: find a generator of the unit group, then
            // tabulate exp/log. exp_ has length 2(q-1) so that
            // exp_[log a + log b] needs no reduction.
            PolyCtx ctx{p, f->modulus_, e};
            auto decode = [&](std::uint64_t code) {
                Poly d(e);
                for (std::uint32_t i = 0; i < e; ++i) {
                    d[i] = static_cast<std::uint32_t>(code % p);
                    code /= p;
                }
                return d;
            };
            auto encode = [&](const Poly& d) {
                std::uint64_t code = 0;
                for (std::uint32_t i = e; i-- > 0;) code = code * p + d[i];
                return static_cast<std::uint32_t>(code);
            };
            auto factors = prime_factors(q - 1);
            std::uint64_t gen = 0;
            for (std::uint64_t g = 2; g < q; ++g) {
                Poly gp = decode(g);
                bool ok = true;
                for (auto ell : factors) {
                    Poly gw = ctx.powmod(gp, (q - 1) / ell);
                    if (encode(gw) == 1) {
                        ok = false;
                        break;
                    }
                }
                if (ok) {
                    gen = g;
                    break;
                }
            }
            if (!gen) throw std::logic_error("field: no generator found");
            f->exp_.assign(2 * (q - 1), 0);
            f->log_.assign(q, 0);
            Poly cur(e, 0);
            cur[0] = 1;
            Poly gp = decode(gen);
            for (std::uint64_t i = 0; i < q - 1; ++i) {
                std::uint32_t code = encode(cur);
                f->exp_[i] = code;
                f->exp_[i + (q - 1)] = code;
                f->log_[code] = static_cast<std::uint32_t>(i);
                cur = ctx.mulmod(cur, gp);
            }
            f->has_tables_ = true;
        }
    }
    return f;
}

FieldPtr Field::prime(std::uint64_t p) { return build(p, 1, {}, false); }

FieldPtr Field::extension(std::uint64_t p, std::uint32_t e) { return build(p, e, {}, false); }

FieldPtr Field::extension(std::uint64_t p, std::uint32_t e, std::vector<std::uint32_t> modulus) {
    return build(p, e, std::move(modulus), false);
}

FieldPtr Field::make(const FieldSpec& spec) { return build(spec.p, spec.e, spec.modulus, false); }

FieldPtr Field::counting_prime(std::uint64_t p) { return build(p, 1, {}, true); }

FieldSpec Field::spec() const {
    FieldSpec s;
    s.p = p_;
    s.e = e_;
    s.modulus = modulus_;
    return s;
}

std::uint32_t Field::add(std::uint32_t a, std::uint32_t b) const {
    if (e_ == 1) {
        std::uint64_t s = static_cast<std::uint64_t>(a) + b;
        return static_cast<std::uint32_t>(s >= p_ ? s - p_ : s);
    }
    std::uint32_t out = 0, mult = 1;
    for (std::uint32_t i = 0; i < e_; ++i) {
        std::uint32_t da = a % p_, db = b % p_;
        a /= static_cast<std::uint32_t>(p_);
        b /= static_cast<std::uint32_t>(p_);
        std::uint32_t d = da + db;
        if (d >= p_) d -= static_cast<std::uint32_t>(p_);
        out += d * mult;
        mult *= static_cast<std::uint32_t>(p_);
    }
    return out;
}

std::uint32_t Field::neg(std::uint32_t a) const {
    if (e_ == 1) return a ? static_cast<std::uint32_t>(p_ - a) : 0;
    std::uint32_t out = 0, mult = 1;
    for (std::uint32_t i = 0; i < e_; ++i) {
        std::uint32_t d = a % p_;
        a /= static_cast<std::uint32_t>(p_);
        out += (d ? static_cast<std::uint32_t>(p_) - d : 0) * mult;
        mult *= static_cast<std::uint32_t>(p_);
    }
    return out;
}

std::uint32_t Field::sub(std::uint32_t a, std::uint32_t b) const { return add(a, neg(b)); }

std::uint32_t Field::mul_poly(std::uint32_t a, std::uint32_t b) const {
    PolyCtx ctx{p_, modulus_, e_};
    return compose(ctx.mulmod(decompose(a), decompose(b)));
}

std::uint32_t Field::mul(std::uint32_t a, std::uint32_t b) const {
    if (e_ == 1) return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % p_);
    if (!a || !b) return 0;
    if (has_tables_) return exp_[log_[a] + log_[b]];
    return mul_poly(a, b);
}

std::uint32_t Field::inv_poly(std::uint32_t a) const {
    // Fermat: a^(q-2)
    PolyCtx ctx{p_, modulus_, e_};
    return compose(ctx.powmod(decompose(a), q_ - 2));
}

std::uint32_t Field::inv(std::uint32_t a) const {
    if (!a) throw std::domain_error("field: division by zero");
    if (e_ == 1) return static_cast<std::uint32_t>(powmod_u64(a, p_ - 2, p_));
    if (has_tables_) return exp_[(q_ - 1) - log_[a]];
    return inv_poly(a);
}

std::uint32_t Field::div(std::uint32_t a, std::uint32_t b) const { return mul(a, inv(b)); }

std::uint32_t Field::pow(std::uint32_t a, std::uint64_t k) const {
    std::uint32_t r = 1;
    while (k) {
        if (k & 1) r = mul(r, a);
        a = mul(a, a);
        k >>= 1;
    }
    return r;
}

std::uint32_t Field::from_int(std::int64_t v) const {
    std::int64_t m = v % static_cast<std::int64_t>(p_);
    if (m < 0) m += static_cast<std::int64_t>(p_);
    return static_cast<std::uint32_t>(m);
}

std::vector<std::uint32_t> Field::decompose(std::uint32_t code) const {
    std::vector<std::uint32_t> d(e_);
    for (std::uint32_t i = 0; i < e_; ++i) {
        d[i] = static_cast<std::uint32_t>(code % p_);
        code /= static_cast<std::uint32_t>(p_);
    }
    return d;
}

std::uint32_t Field::compose(const std::vector<std::uint32_t>& digits) const {
    if (digits.size() != e_) throw std::invalid_argument("field: wrong digit count");
    std::uint64_t code = 0;
    for (std::uint32_t i = e_; i-- > 0;) {
        if (digits[i] >= p_) throw std::invalid_argument("field: digit out of range");
        code = code * p_ + digits[i];
    }
    return static_cast<std::uint32_t>(code);
}

std::string Field::format_scalar(std::uint32_t code) const {
    if (e_ == 1) return std::to_string(code);
    auto d = decompose(code);
    std::string s = "[";
    for (std::uint32_t i = 0; i < e_; ++i) {
        if (i) s += ",";
        s += std::to_string(d[i]);
    }
    return s + "]";
}

bool same_field(const Field& a, const Field& b) { return a == b; }

bool same_field(const FieldPtr& a, const FieldPtr& b) {
    if (a.get() == b.get()) return true;
    if (!a || !b) return false;
    return *a == *b;
}

void require_same_field(const FieldPtr& a, const FieldPtr& b, const char* where) {
    if (!same_field(a, b))
        throw std::invalid_argument(std::string(where) + ": operands live over different fields");
}

Scalar operator+(const Scalar& a, const Scalar& b) {
    require_same_field(a.field, b.field, "scalar +");
    return {a.field, a.field->add(a.code, b.code)};
}
Scalar operator-(const Scalar& a, const Scalar& b) {
    require_same_field(a.field, b.field, "scalar -");
    return {a.field, a.field->sub(a.code, b.code)};
}
Scalar operator*(const Scalar& a, const Scalar& b) {
    require_same_field(a.field, b.field, "scalar *");
    return {a.field, a.field->mul(a.code, b.code)};
}
Scalar operator/(const Scalar& a, const Scalar& b) {
    require_same_field(a.field, b.field, "scalar /");
    return {a.field, a.field->div(a.code, b.code)};
}
Scalar operator-(const Scalar& a) { return {a.field, a.field->neg(a.code)}; }
bool operator==(const Scalar& a, const Scalar& b) {
    return same_field(a.field, b.field) && a.code == b.code;
}

std::uint32_t Embedding::map(std::uint32_t code) const {
    if (from->is_prime_field()) return code;  // constant polynomial, same digit
    auto digits = from->decompose(code);
    // Horner at the generator image
    std::uint32_t acc = 0;
    for (std::uint32_t i = from->e(); i-- > 0;)
        acc = to->add(to->mul(acc, generator_image), digits[i]);
    return acc;
}

FieldExtension field_extend(const FieldPtr& base, std::uint32_t k) {
    if (k == 0) throw std::invalid_argument("field_extend: k must be >= 1");
    if (k == 1) return {base, Embedding{base, base, 0}};
    if (base->p() < 5) throw std::invalid_argument("field_extend: extension arithmetic requires p >= 5");
    FieldPtr big = Field::extension(base->p(), base->e() * k);
    Embedding emb{base, big, 0};
    if (!base->is_prime_field()) {
        if (big->q() > (1u << 22))
            throw std::invalid_argument("field_extend: embedding search cap exceeded for this base/degree");
        // First root (in code order) of the base modulus inside the big field.
        const auto& m = base->modulus();
        std::uint32_t root = 0;
        bool found = false;
        for (std::uint64_t c = 1; c < big->q(); ++c) {
            std::uint32_t acc = 0;
            for (std::uint32_t i = static_cast<std::uint32_t>(m.size()); i-- > 0;)
                acc = big->add(big->mul(acc, static_cast<std::uint32_t>(c)), m[i]);
            if (acc == 0) {
                root = static_cast<std::uint32_t>(c);
                found = true;
                break;
            }
        }
        if (!found) throw std::logic_error("field_extend: no root of base modulus in extension");
        emb.generator_image = root;
    }
    return {big, emb};
}

}  // namespace strengthlab
