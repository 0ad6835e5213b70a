#pragma once

#include <string>

#include "detcalc/bigint.hpp"

namespace detcalc {

/// Exact rational number. Always reduced, denominator always positive;
/// zero is canonically 0/1.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(std::int64_t value) : num_(value), den_(1) {} // NOLINT
    Rational(BigInt numerator, BigInt denominator);

    /// Parses a plain decimal literal: digits with at most one '.', e.g.
    /// "21" or "2.54". Throws std::invalid_argument on anything else.
    static Rational from_decimal(const std::string& literal);

    const BigInt& numerator() const { return num_; }
    const BigInt& denominator() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_negative() const { return num_.is_negative(); }

    Rational operator-() const;
    Rational operator+(const Rational& other) const;
    Rational operator-(const Rational& other) const;
    Rational operator*(const Rational& other) const;
    /// Throws std::domain_error on a zero divisor.
    Rational operator/(const Rational& other) const;

    bool operator==(const Rational& other) const {
        return num_ == other.num_ && den_ == other.den_;
    }
    bool operator!=(const Rational& other) const { return !(*this == other); }
    bool operator<(const Rational& other) const;

    /// "num/den", e.g. "-5/7".
    std::string to_fraction_string() const;

    /// Decimal rendering with at most `max_frac` fractional digits,
    /// round-half-even, trailing zeros trimmed. -5/7 renders "-0.714286".
    std::string to_decimal_string(unsigned max_frac = 6) const;

    /// Whether the value has a finite decimal expansion (denominator has
    /// only factors 2 and 5).
    bool has_finite_decimal() const;

    /// Exact decimal rendering; requires has_finite_decimal().
    std::string to_exact_decimal_string() const;

private:
    BigInt num_;
    BigInt den_;

    void reduce();
};

} // namespace detcalc
