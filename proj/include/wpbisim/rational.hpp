#pragma once

#include <compare>
#include <ostream>
#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

namespace wpb {

using BigInt = boost::multiprecision::mpz_int;

/// Exact fraction kept in lowest terms with a positive denominator.
class Rational {
public:
    Rational() = default;
    Rational(long long value) : value_(value) {}  // NOLINT: implicit by design of arithmetic use
    Rational(const BigInt& numerator, const BigInt& denominator);

    /// Accepts `INT`, `INT/INT` and `INT.DIGITS`; decimals convert exactly.
    static Rational parse(std::string_view text);

    /// `n` when the denominator is 1, `n/d` otherwise.
    std::string str() const;

    BigInt numerator() const;
    BigInt denominator() const;

    bool is_zero() const { return value_.sign() == 0; }
    int sign() const { return value_.sign(); }

    Rational& operator+=(const Rational& rhs);
    Rational& operator-=(const Rational& rhs);
    Rational& operator*=(const Rational& rhs);
    Rational& operator/=(const Rational& rhs);

    friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
    friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
    friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
    friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }
    Rational operator-() const;

    friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    explicit Rational(boost::multiprecision::mpq_rational value) : value_(std::move(value)) {}

    boost::multiprecision::mpq_rational value_;
};

}  // namespace wpb
