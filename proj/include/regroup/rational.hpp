#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

#include "regroup/errors.hpp"

namespace regroup {

using Int = boost::multiprecision::cpp_int;

/// Floor division with b > 0.
inline Int floor_div(const Int& a, const Int& b) {
    Int q = a / b;
    if (a % b != 0 && a < 0) --q;
    return q;
}

/// Ceiling division with b > 0.
inline Int ceil_div(const Int& a, const Int& b) {
    Int q = a / b;
    if (a % b != 0 && a > 0) ++q;
    return q;
}

/// True iff q >= 1 divides m^k for some k >= 0, i.e. every prime factor
/// of q divides m.
inline bool divides_some_power(Int q, const Int& m) {
    if (q < 0) q = -q;
    if (q == 0) return false;
    while (q > 1) {
        Int g = boost::multiprecision::gcd(q, m);
        if (g == 1) return false;
        while (q % g == 0) q /= g;
    }
    return true;
}

/// Exact arbitrary-precision rational number, always in canonical form:
/// denominator > 0 and gcd(|numerator|, denominator) = 1. Equality is
/// structural, so Rational is usable as an ordered map/set key.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(Int n) : num_(std::move(n)), den_(1) {} // NOLINT(google-explicit-constructor)
    Rational(int n) : num_(n), den_(1) {}            // NOLINT(google-explicit-constructor)
    Rational(long n) : num_(n), den_(1) {}           // NOLINT(google-explicit-constructor)

    Rational(Int n, Int d) : num_(std::move(n)), den_(std::move(d)) {
        if (den_ == 0) throw ParseError("rational with zero denominator");
        canonicalize();
    }

    const Int& num() const { return num_; }
    const Int& den() const { return den_; }

    bool is_integer() const { return den_ == 1; }
    bool is_zero() const { return num_ == 0; }
    int sign() const { return num_ == 0 ? 0 : (num_ < 0 ? -1 : 1); }

    Rational operator-() const { return Rational(unchecked{}, -num_, den_); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw Error("division by zero rational");
        return Rational(a.num_ * b.den_, a.den_ * b.num_);
    }

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        Int lhs = a.num_ * b.den_;
        Int rhs = b.num_ * a.den_;
        if (lhs < rhs) return std::strong_ordering::less;
        if (lhs > rhs) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    Rational abs() const { return num_ < 0 ? -*this : *this; }

    /// Largest integer <= value.
    Int floor() const { return floor_div(num_, den_); }
    /// Smallest integer >= value.
    Int ceil() const { return ceil_div(num_, den_); }

    /// Textual form "p/q", or "p" when the denominator is 1.
    std::string str() const {
        if (den_ == 1) return num_.str();
        return num_.str() + "/" + den_.str();
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
        return os << r.str();
    }

private:
    struct unchecked {};
    Rational(unchecked, Int n, Int d) : num_(std::move(n)), den_(std::move(d)) {}

    void canonicalize() {
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        if (num_ == 0) {
            den_ = 1;
            return;
        }
        Int g = boost::multiprecision::gcd(num_ < 0 ? Int(-num_) : num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    Int num_;
    Int den_;
};

namespace detail {
inline Int parse_int(std::string_view s, std::string_view context) {
    if (s.empty()) throw ParseError(std::string("empty integer in ") + std::string(context));
    std::size_t i = 0;
    if (s[0] == '-' || s[0] == '+') i = 1;
    if (i == s.size()) throw ParseError(std::string("bare sign in ") + std::string(context));
    for (std::size_t j = i; j < s.size(); ++j) {
        if (s[j] < '0' || s[j] > '9')
            throw ParseError("invalid integer '" + std::string(s) + "' in " + std::string(context));
    }
    return Int(std::string(s));
}
} // namespace detail

/// Parses "p/q" or "p". Rejects q = 0 and any other malformed input.
inline Rational parse_rational(std::string_view s) {
    auto slash = s.find('/');
    if (slash == std::string_view::npos) {
        return Rational(detail::parse_int(s, "rational"));
    }
    Int n = detail::parse_int(s.substr(0, slash), "rational numerator");
    Int d = detail::parse_int(s.substr(slash + 1), "rational denominator");
    if (d == 0) throw ParseError("rational '" + std::string(s) + "' has zero denominator");
    return Rational(std::move(n), std::move(d));
}

/// m-adic valuation result: either a finite exponent or the distinguished
/// infinity assigned to 0. Never silently a number when infinite.
class Valuation {
public:
    static Valuation infinity() { return Valuation(true, 0); }
    static Valuation finite(std::int64_t k) { return Valuation(false, k); }

    bool is_infinite() const { return infinite_; }
    std::int64_t finite_value() const {
        if (infinite_) throw Error("valuation of 0 is infinite, not a number");
        return value_;
    }

    friend bool operator==(const Valuation&, const Valuation&) = default;

    std::string str() const { return infinite_ ? "inf" : std::to_string(value_); }

private:
    Valuation(bool inf, std::int64_t v) : infinite_(inf), value_(v) {}
    bool infinite_;
    std::int64_t value_;
};

/// Largest k with base^k dividing a, for integer-valued a; infinity for 0.
/// base must be >= 2 and a must be an integer value.
inline Valuation madic_valuation(const Rational& a, const Int& base) {
    if (base < 2) throw PreconditionError("valuation base must be >= 2");
    if (!a.is_integer())
        throw PreconditionError("valuation requires an integer value, got " + a.str());
    if (a.is_zero()) return Valuation::infinity();
    Int n = a.num() < 0 ? Int(-a.num()) : a.num();
    std::int64_t k = 0;
    while (n % base == 0) {
        n /= base;
        ++k;
    }
    return Valuation::finite(k);
}

} // namespace regroup
