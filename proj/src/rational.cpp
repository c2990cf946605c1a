#include "wpbisim/rational.hpp"

#include <cctype>

#include "wpbisim/errors.hpp"

namespace wpb {

namespace {

bool is_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

bool is_integer(std::string_view s) {
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
    return is_digits(s);
}

BigInt to_bigint(std::string_view s) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    return BigInt(std::string(s));
}

}  // namespace

Rational::Rational(const BigInt& numerator, const BigInt& denominator) {
    if (denominator == 0) throw ArithmeticError("zero denominator");
    value_ = boost::multiprecision::mpq_rational(numerator, denominator);
}

Rational Rational::parse(std::string_view text) {
    const std::string token(text);
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        auto num = text.substr(0, slash);
        auto den = text.substr(slash + 1);
        if (!is_integer(num) || !is_integer(den))
            throw ParseError("malformed rational '" + token + "'");
        BigInt d = to_bigint(den);
        if (d == 0) throw ParseError("zero denominator in '" + token + "'");
        return Rational(to_bigint(num), d);
    }
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
        auto whole = text.substr(0, dot);
        auto frac = text.substr(dot + 1);
        if (!is_integer(whole) || !is_digits(frac))
            throw ParseError("malformed rational '" + token + "'");
        const bool negative = whole.front() == '-';
        BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(frac.size()));
        BigInt magnitude = abs(to_bigint(whole)) * scale + to_bigint(frac);
        return Rational(negative ? BigInt(-magnitude) : magnitude, scale);
    }
    if (!is_integer(text)) throw ParseError("malformed rational '" + token + "'");
    return Rational(to_bigint(text), BigInt(1));
}

std::string Rational::str() const {
    if (boost::multiprecision::denominator(value_) == 1)
        return boost::multiprecision::numerator(value_).str();
    return value_.str();
}

BigInt Rational::numerator() const { return boost::multiprecision::numerator(value_); }
BigInt Rational::denominator() const { return boost::multiprecision::denominator(value_); }

Rational& Rational::operator+=(const Rational& rhs) {
    value_ += rhs.value_;
    return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
    value_ -= rhs.value_;
    return *this;
}

Rational& Rational::operator*=(const Rational& rhs) {
    value_ *= rhs.value_;
    return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
    if (rhs.is_zero()) throw ArithmeticError("division by zero");
    value_ /= rhs.value_;
    return *this;
}

Rational Rational::operator-() const { return Rational(boost::multiprecision::mpq_rational(-value_)); }

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = a.value_.compare(b.value_);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

}  // namespace wpb
