#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "specseq/errors.hpp"

namespace specseq {

class Scalar;

/// The coefficient field of a computation: the rationals, or integers modulo
/// a prime. Every value carries its field and arithmetic across fields throws.
class Field {
public:
    constexpr Field() = default;

    static constexpr Field rationals() { return Field{}; }
    static Field prime(std::uint32_t p);

    /// Accepts "Q" or "Fp:N" (also "F_N", "FN" and a bare prime).
    static Field parse(std::string_view text);

    constexpr bool is_rational() const { return modulus_ == 0; }
    constexpr std::uint32_t modulus() const { return modulus_; }

    Scalar zero() const;
    Scalar one() const;
    Scalar from_int(long long v) const;
    Scalar from_ratio(long long num, long long den) const;

    /// Parses "a", "a/b" (rationals) or an integer (reduced mod p).
    Scalar parse_scalar(std::string_view text) const;

    std::string name() const;

    friend constexpr bool operator==(Field, Field) = default;

private:
    std::uint32_t modulus_ = 0;
};

class Scalar {
public:
    Scalar() = default;

    Field field() const { return field_; }

    bool is_zero() const;
    bool is_one() const;

    Scalar operator-() const;
    Scalar inverse() const;

    Scalar& operator+=(const Scalar& rhs);
    Scalar& operator-=(const Scalar& rhs);
    Scalar& operator*=(const Scalar& rhs);
    Scalar& operator/=(const Scalar& rhs);

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

    friend bool operator==(const Scalar& a, const Scalar& b);

    /// Canonical text: "a" or "a/b" with b > 0 and gcd 1; residues as "k".
    std::string to_string() const;

    /// Exact rational value (rationals only).
    const mpq_class& rational() const;
    /// Residue in [0, p) (prime fields only).
    std::uint64_t residue() const;

private:
    friend class Field;

    void require_same_field(const Scalar& other) const;

    Field field_{};
    mpq_class q_{0};
    std::uint64_t r_ = 0;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

}  // namespace specseq
