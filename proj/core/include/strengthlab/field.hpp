#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace strengthlab {

class Field;
using FieldPtr = std::shared_ptr<const Field>;

// Parsed form of a field description ("p=5" or "p=5,e=2"). The modulus is
// monic of degree e, coefficients listed low degree first including the
// leading 1; empty for prime fields.
struct FieldSpec {
    std::uint64_t p = 5;
    std::uint32_t e = 1;
    std::vector<std::uint32_t> modulus;

    static FieldSpec parse(const std::string& text);
    std::string format() const;  // "p=5" / "p=5,e=2"
};

// An exact finite field GF(p^e). Elements are handled as canonical codes:
//   e == 1: the residue in [0, p)
//   e >  1: sum c_i * p^i for the coefficient vector (c_0, ..., c_{e-1})
// Codes are dense in [0, q), so equality of elements is equality of codes.
//
// Fields are immutable and shared through FieldPtr. Construction picks the
// modulus deterministically (the monic irreducible of degree e whose
// non-leading coefficient code is smallest), so two runs always agree on
// what GF(p^e) means.
class Field {
public:
    // Prime field GF(p), p prime and not 2 or 3 (quadratic and cubic form
    // arithmetic needs 2 and 3 invertible).
    static FieldPtr prime(std::uint64_t p);

    // GF(p^e) with the deterministic modulus (e >= 1).
    static FieldPtr extension(std::uint64_t p, std::uint32_t e);

    // GF(p^e) with an explicit monic irreducible modulus, low degree first,
    // length e+1. Validated.
    static FieldPtr extension(std::uint64_t p, std::uint32_t e, std::vector<std::uint32_t> modulus);

    static FieldPtr make(const FieldSpec& spec);

    // Prime field without the p >= 5 restriction. Exists only so subspace
    // enumeration can be cross-checked against q-binomial counts over GF(2);
    // form types refuse to live over such a field.
    static FieldPtr counting_prime(std::uint64_t p);

    std::uint64_t p() const { return p_; }
    std::uint32_t e() const { return e_; }
    std::uint64_t q() const { return q_; }
    bool is_prime_field() const { return e_ == 1; }
    bool forms_permitted() const { return p_ >= 5; }
    const std::vector<std::uint32_t>& modulus() const { return modulus_; }
    FieldSpec spec() const;

    std::uint32_t zero() const { return 0; }
    std::uint32_t one() const { return 1; }

    std::uint32_t add(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t neg(std::uint32_t a) const;
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t inv(std::uint32_t a) const;  // throws std::domain_error on 0
    std::uint32_t div(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t pow(std::uint32_t a, std::uint64_t k) const;

    // Embeds an integer along Z -> GF(p) -> GF(p^e).
    std::uint32_t from_int(std::int64_t v) const;

    // Coefficient vector (c_0, ..., c_{e-1}) of a code; length e.
    std::vector<std::uint32_t> decompose(std::uint32_t code) const;
    std::uint32_t compose(const std::vector<std::uint32_t>& digits) const;

    std::string format_scalar(std::uint32_t code) const;  // "3" or "[3,1]"

    bool operator==(const Field& other) const {
        return p_ == other.p_ && e_ == other.e_ && modulus_ == other.modulus_;
    }

private:
    Field() = default;
    static FieldPtr build(std::uint64_t p, std::uint32_t e, std::vector<std::uint32_t> modulus,
                          bool allow_small_prime);

    std::uint64_t p_ = 0;
    std::uint32_t e_ = 1;
    std::uint64_t q_ = 0;
    std::vector<std::uint32_t> modulus_;  // low degree first, length e+1; empty when e == 1

    // Discrete log/antilog tables for extension fields with small q.
    std::vector<std::uint32_t> exp_;  // length 2(q-1)
    std::vector<std::uint32_t> log_;  // length q, log_[0] unused
    bool has_tables_ = false;

    std::uint32_t mul_poly(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t inv_poly(std::uint32_t a) const;
};

bool same_field(const Field& a, const Field& b);
bool same_field(const FieldPtr& a, const FieldPtr& b);
void require_same_field(const FieldPtr& a, const FieldPtr& b, const char* where);

// A field element paired with its field, for the checked public surface.
// Internal kernels work on raw codes instead.
struct Scalar {
    FieldPtr field;
    std::uint32_t code = 0;

    Scalar() = default;
    Scalar(FieldPtr f, std::uint32_t c) : field(std::move(f)), code(c) {}

    bool is_zero() const { return code == 0; }
    std::string str() const { return field->format_scalar(code); }

    friend Scalar operator+(const Scalar& a, const Scalar& b);
    friend Scalar operator-(const Scalar& a, const Scalar& b);
    friend Scalar operator*(const Scalar& a, const Scalar& b);
    friend Scalar operator/(const Scalar& a, const Scalar& b);
    friend Scalar operator-(const Scalar& a);
    friend bool operator==(const Scalar& a, const Scalar& b);
};

// Degree-k extension of an existing field together with the embedding map.
// The embedding is a ring homomorphism; for a prime base it is the constant
// embedding, otherwise it sends the base generator to the first root of the
// base modulus in the big field (first in code order).
struct Embedding {
    FieldPtr from;
    FieldPtr to;
    std::uint32_t generator_image = 0;  // unused when from is prime

    std::uint32_t map(std::uint32_t code) const;
};

struct FieldExtension {
    FieldPtr field;
    Embedding embedding;
};

FieldExtension field_extend(const FieldPtr& base, std::uint32_t k);

}  // namespace strengthlab
