#include "detcalc/rational.hpp"

#include <stdexcept>

namespace detcalc {

Rational::Rational(BigInt numerator, BigInt denominator)
    : num_(std::move(numerator)), den_(std::move(denominator)) {
    if (den_.is_zero()) throw std::domain_error("zero denominator");
    reduce();
}

void Rational::reduce() {
    if (den_.is_negative()) {
        num_ = -num_;
        den_ = -den_;
    }
    if (num_.is_zero()) {
        den_ = BigInt(1);
        return;
    }
    const BigInt g = BigInt::gcd(num_, den_);
    num_ = num_ / g;
    den_ = den_ / g;
}

Rational Rational::from_decimal(const std::string& literal) {
    const auto dot = literal.find('.');
    if (dot == std::string::npos) {
        return Rational(BigInt::from_decimal(literal), BigInt(1));
    }
    const std::string integral = literal.substr(0, dot);
    const std::string fractional = literal.substr(dot + 1);
    if (integral.empty() || fractional.empty() ||
        fractional.find('.') != std::string::npos) {
        throw std::invalid_argument("malformed decimal literal `" + literal + "`");
    }
    const BigInt scale = BigInt::pow10(static_cast<unsigned>(fractional.size()));
    const BigInt whole = BigInt::from_decimal(integral);
    const BigInt frac = BigInt::from_decimal(fractional);
    if (frac.is_negative()) throw std::invalid_argument("sign inside decimal literal");
    BigInt numerator = whole * scale;
    numerator = whole.is_negative() ? numerator - frac : numerator + frac;
    return Rational(std::move(numerator), scale);
}

Rational Rational::operator-() const {
    Rational out = *this;
    out.num_ = -out.num_;
    return out;
}

Rational Rational::operator+(const Rational& other) const {
    return Rational(num_ * other.den_ + other.num_ * den_, den_ * other.den_);
}

Rational Rational::operator-(const Rational& other) const {
    return Rational(num_ * other.den_ - other.num_ * den_, den_ * other.den_);
}

Rational Rational::operator*(const Rational& other) const {
    return Rational(num_ * other.num_, den_ * other.den_);
}

Rational Rational::operator/(const Rational& other) const {
    if (other.is_zero()) throw std::domain_error("rational division by zero");
    return Rational(num_ * other.den_, den_ * other.num_);
}

bool Rational::operator<(const Rational& other) const {
    return num_ * other.den_ < other.num_ * den_;
}

std::string Rational::to_fraction_string() const {
    return num_.to_string() + "/" + den_.to_string();
}

std::string Rational::to_decimal_string(unsigned max_frac) const {
    const bool negative = num_.is_negative();
    BigInt magnitude = negative ? -num_ : num_;

    // Scale to max_frac digits, then round half-even on the remainder.
    const BigInt scale = BigInt::pow10(max_frac);
    BigInt scaled, rem;
    BigInt::divmod(magnitude * scale, den_, scaled, rem);
    const BigInt twice_rem = rem + rem;
    if (twice_rem > den_ || (twice_rem == den_ && scaled.is_odd())) {
        scaled = scaled + BigInt(1);
    }

    std::string digits = scaled.to_string();
    if (digits.size() <= max_frac) digits.insert(0, max_frac + 1 - digits.size(), '0');
    std::string integral = digits.substr(0, digits.size() - max_frac);
    std::string fractional = digits.substr(digits.size() - max_frac);
    while (!fractional.empty() && fractional.back() == '0') fractional.pop_back();

    std::string out = integral;
    if (!fractional.empty()) out += "." + fractional;
    if (negative && out != "0") out.insert(0, 1, '-');
    return out;
}

bool Rational::has_finite_decimal() const {
    BigInt d = den_;
    d.remove_factor(2);
    d.remove_factor(5);
    return d == BigInt(1);
}

std::string Rational::to_exact_decimal_string() const {
    BigInt d = den_;
    const unsigned twos = d.remove_factor(2);
    const unsigned fives = d.remove_factor(5);
    if (d != BigInt(1)) throw std::logic_error("value has no finite decimal expansion");
    const unsigned frac_digits = twos > fives ? twos : fives;
    if (frac_digits == 0) return num_.to_string();
    return to_decimal_string(frac_digits);
}

} // namespace detcalc
