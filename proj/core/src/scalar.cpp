#include "specseq/scalar.hpp"

#include <charconv>
#include <ostream>

namespace specseq {

namespace {

bool is_prime(std::uint32_t p) {
    if (p < 2) return false;
    for (std::uint32_t d = 2; static_cast<std::uint64_t>(d) * d <= p; ++d) {
        if (p % d == 0) return false;
    }
    return true;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

bool is_integer_literal(std::string_view s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') return false;
    }
    return true;
}

std::uint64_t reduce_mod(const mpz_class& z, std::uint32_t p) {
    mpz_class r = z % p;
    if (r < 0) r += p;
    return r.get_ui();
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t p) {
    std::uint64_t result = 1 % p;
    base %= p;
    while (exp) {
        if (exp & 1) result = result * base % p;
        base = base * base % p;
        exp >>= 1;
    }
    return result;
}

}  // namespace

Field Field::prime(std::uint32_t p) {
    if (!is_prime(p)) throw PreconditionError("field modulus " + std::to_string(p) + " is not prime");
    Field f;
    f.modulus_ = p;
    return f;
}

Field Field::parse(std::string_view text) {
    text = trim(text);
    if (text == "Q" || text == "q" || text == "QQ") return rationals();
    std::string_view digits = text;
    for (std::string_view prefix : {"Fp:", "fp:", "F_", "GF", "F"}) {
        if (digits.substr(0, prefix.size()) == prefix) {
            digits.remove_prefix(prefix.size());
            break;
        }
    }
    std::uint32_t p = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), p);
    if (ec != std::errc{} || ptr != digits.data() + digits.size() || digits.empty()) {
        throw ParseError("unrecognised field '" + std::string(text) + "' (expected Q or Fp:N)");
    }
    return prime(p);
}

Scalar Field::zero() const { return from_int(0); }
Scalar Field::one() const { return from_int(1); }

Scalar Field::from_int(long long v) const {
    Scalar s;
    s.field_ = *this;
    if (is_rational()) {
        s.q_ = mpq_class(mpz_class(static_cast<long>(v)));
    } else {
        long long m = v % static_cast<long long>(modulus_);
        if (m < 0) m += modulus_;
        s.r_ = static_cast<std::uint64_t>(m);
    }
    return s;
}

Scalar Field::from_ratio(long long num, long long den) const {
    if (den == 0) throw PreconditionError("zero denominator");
    return from_int(num) / from_int(den);
}

Scalar Field::parse_scalar(std::string_view text) const {
    text = trim(text);
    auto slash = text.find('/');
    std::string_view num = slash == std::string_view::npos ? text : text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : text.substr(slash + 1);
    if (!is_integer_literal(num) || !is_integer_literal(den)) {
        throw ParseError("malformed scalar '" + std::string(text) + "'");
    }
    mpz_class n(std::string(num[0] == '+' ? num.substr(1) : num));
    mpz_class d(std::string(den[0] == '+' ? den.substr(1) : den));
    if (d == 0) throw ParseError("zero denominator in scalar '" + std::string(text) + "'");
    Scalar s;
    s.field_ = *this;
    if (is_rational()) {
        s.q_ = mpq_class(n, d);
        s.q_.canonicalize();
    } else {
        std::uint64_t dr = reduce_mod(d, modulus_);
        if (dr == 0) throw ParseError("denominator vanishes mod " + std::to_string(modulus_));
        s.r_ = reduce_mod(n, modulus_) * pow_mod(dr, modulus_ - 2, modulus_) % modulus_;
    }
    return s;
}

std::string Field::name() const {
    return is_rational() ? std::string("Q") : "Fp:" + std::to_string(modulus_);
}

void Scalar::require_same_field(const Scalar& other) const {
    if (field_ != other.field_) {
        throw FieldMismatch("arithmetic mixes fields " + field_.name() + " and " + other.field_.name());
    }
}

bool Scalar::is_zero() const { return field_.is_rational() ? sgn(q_) == 0 : r_ == 0; }

bool Scalar::is_one() const { return field_.is_rational() ? q_ == 1 : r_ == 1; }

Scalar Scalar::operator-() const {
    Scalar s = *this;
    if (field_.is_rational()) {
        s.q_ = -q_;
    } else if (r_ != 0) {
        s.r_ = field_.modulus() - r_;
    }
    return s;
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw PreconditionError("division by zero");
    Scalar s = *this;
    if (field_.is_rational()) {
        s.q_ = 1 / q_;
    } else {
        s.r_ = pow_mod(r_, field_.modulus() - 2, field_.modulus());
    }
    return s;
}

Scalar& Scalar::operator+=(const Scalar& rhs) {
    require_same_field(rhs);
    if (field_.is_rational()) {
        q_ += rhs.q_;
    } else {
        r_ = (r_ + rhs.r_) % field_.modulus();
    }
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& rhs) {
    require_same_field(rhs);
    if (field_.is_rational()) {
        q_ -= rhs.q_;
    } else {
        r_ = (r_ + field_.modulus() - rhs.r_) % field_.modulus();
    }
    return *this;
}

Scalar& Scalar::operator*=(const Scalar& rhs) {
    require_same_field(rhs);
    if (field_.is_rational()) {
        q_ *= rhs.q_;
    } else {
        r_ = r_ * rhs.r_ % field_.modulus();
    }
    return *this;
}

Scalar& Scalar::operator/=(const Scalar& rhs) {
    require_same_field(rhs);
    return *this *= rhs.inverse();
}

bool operator==(const Scalar& a, const Scalar& b) {
    if (a.field_ != b.field_) return false;
    return a.field_.is_rational() ? a.q_ == b.q_ : a.r_ == b.r_;
}

std::string Scalar::to_string() const {
    if (!field_.is_rational()) return std::to_string(r_);
    if (q_.get_den() == 1) return q_.get_num().get_str();
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

const mpq_class& Scalar::rational() const {
    if (!field_.is_rational()) throw FieldMismatch("rational() on a prime-field scalar");
    return q_;
}

std::uint64_t Scalar::residue() const {
    if (field_.is_rational()) throw FieldMismatch("residue() on a rational scalar");
    return r_;
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

}  // namespace specseq
