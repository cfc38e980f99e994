#pragma once

// Exact coefficient fields: arbitrary-precision rationals and prime fields.

#include <cstdint>
#include <ostream>
#include <string>

#include <gmpxx.h>

#include "grasscy/errors.hpp"

namespace grasscy {

using Integer = mpz_class;
using Rational = mpq_class;

// Identifies the coefficient field of a computation. A zero modulus means Q.
struct FieldTag {
    std::uint64_t modulus = 0;

    static constexpr FieldTag rationals() { return {0}; }
    static constexpr FieldTag prime(std::uint64_t p) { return {p}; }

    bool is_rational() const { return modulus == 0; }
    std::string name() const { return is_rational() ? "Q" : "F_" + std::to_string(modulus); }

    friend bool operator==(const FieldTag&, const FieldTag&) = default;
};

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t p);
bool is_prime(std::uint64_t n);

// Residue in F_p. The modulus must be a prime below 2^32 so that products fit
// in 64 bits.
class Fp {
public:
    Fp() = default;
    Fp(std::int64_t v, std::uint64_t p) : modulus_(p) {
        if (p < 2 || p >= (std::uint64_t{1} << 32)) throw DomainError("F_p modulus out of range");
        const auto sp = static_cast<std::int64_t>(p);
        std::int64_t r = v % sp;
        if (r < 0) r += sp;
        value_ = static_cast<std::uint64_t>(r);
    }
    static Fp from_residue(std::uint64_t v, std::uint64_t p) {
        Fp x;
        x.value_ = v % p;
        x.modulus_ = p;
        return x;
    }

    std::uint64_t value() const { return value_; }
    std::uint64_t modulus() const { return modulus_; }

    Fp inverse() const {
        if (value_ == 0) throw DomainError("inverse of zero in F_" + std::to_string(modulus_));
        return from_residue(pow_mod(value_, modulus_ - 2, modulus_), modulus_);
    }
    Fp pow(std::uint64_t e) const { return from_residue(pow_mod(value_, e, modulus_), modulus_); }

    Fp& operator+=(const Fp& o) {
        check(o);
        value_ += o.value_;
        if (value_ >= modulus_) value_ -= modulus_;
        return *this;
    }
    Fp& operator-=(const Fp& o) {
        check(o);
        value_ = value_ >= o.value_ ? value_ - o.value_ : value_ + modulus_ - o.value_;
        return *this;
    }
    Fp& operator*=(const Fp& o) {
        check(o);
        value_ = value_ * o.value_ % modulus_;
        return *this;
    }
    Fp& operator/=(const Fp& o) { return *this *= o.inverse(); }

    friend Fp operator+(Fp a, const Fp& b) { return a += b; }
    friend Fp operator-(Fp a, const Fp& b) { return a -= b; }
    friend Fp operator*(Fp a, const Fp& b) { return a *= b; }
    friend Fp operator/(Fp a, const Fp& b) { return a /= b; }
    Fp operator-() const { return from_residue(value_ == 0 ? 0 : modulus_ - value_, modulus_); }

    friend bool operator==(const Fp&, const Fp&) = default;
    friend std::ostream& operator<<(std::ostream& os, const Fp& x) { return os << x.value_; }

private:
    void check(const Fp& o) const {
        if (modulus_ != o.modulus_) throw ContextError("F_p operands with different moduli");
    }

    std::uint64_t value_ = 0;
    std::uint64_t modulus_ = 0;
};

inline bool is_zero(const Rational& x) { return sgn(x) == 0; }
inline bool is_zero(const Fp& x) { return x.value() == 0; }

inline FieldTag field_of(const Rational&) { return FieldTag::rationals(); }
inline FieldTag field_of(const Fp& x) { return FieldTag::prime(x.modulus()); }

inline std::string to_string(const Rational& x) { return x.get_str(); }
inline std::string to_string(const Fp& x) { return std::to_string(x.value()); }

// Image of a rational number in the scalar type S over `field`.
template <class S>
S scalar_from(const FieldTag& field, const Rational& q);

template <>
inline Rational scalar_from<Rational>(const FieldTag& field, const Rational& q) {
    if (!field.is_rational()) throw ContextError("expected the rational field");
    return q;
}

template <>
inline Fp scalar_from<Fp>(const FieldTag& field, const Rational& q) {
    if (field.is_rational()) throw ContextError("expected a prime field");
    const std::uint64_t p = field.modulus;
    const Integer pz(static_cast<unsigned long>(p));
    Integer num = q.get_num() % pz;
    if (num < 0) num += pz;
    Integer den = q.get_den() % pz;
    if (den == 0) throw DomainError("denominator of " + q.get_str() + " vanishes mod " + std::to_string(p));
    return Fp::from_residue(num.get_ui(), p) / Fp::from_residue(den.get_ui(), p);
}

template <class S>
S scalar_from(const FieldTag& field, long v) {
    return scalar_from<S>(field, Rational(v));
}

}  // namespace grasscy
