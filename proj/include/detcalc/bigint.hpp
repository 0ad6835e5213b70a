#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace detcalc {

/// Arbitrary-precision signed integer. Magnitude is little-endian base
/// 2^32 with no leading zero limbs; zero has an empty magnitude and
/// non-negative sign.
class BigInt {
public:
    BigInt() = default;
    BigInt(std::int64_t value); // NOLINT(google-explicit-constructor)

    static BigInt from_decimal(const std::string& digits);

    bool is_zero() const { return limbs_.empty(); }
    bool is_negative() const { return negative_; }
    bool is_odd() const { return !limbs_.empty() && (limbs_[0] & 1u); }

    BigInt operator-() const;
    BigInt operator+(const BigInt& other) const;
    BigInt operator-(const BigInt& other) const;
    BigInt operator*(const BigInt& other) const;

    /// Truncating division; remainder carries the dividend's sign.
    /// Throws std::domain_error on zero divisor.
    static void divmod(const BigInt& a, const BigInt& b, BigInt& quotient, BigInt& remainder);
    BigInt operator/(const BigInt& other) const;
    BigInt operator%(const BigInt& other) const;

    bool operator==(const BigInt& other) const;
    bool operator!=(const BigInt& other) const { return !(*this == other); }
    bool operator<(const BigInt& other) const;
    bool operator<=(const BigInt& other) const { return *this < other || *this == other; }
    bool operator>(const BigInt& other) const { return other < *this; }
    bool operator>=(const BigInt& other) const { return other <= *this; }

    std::string to_string() const;

    /// Greatest common divisor of the magnitudes; never negative.
    static BigInt gcd(BigInt a, BigInt b);

    static BigInt pow10(unsigned exponent);

    /// Factors out all powers of `p` (2 or 5), returning the count.
    unsigned remove_factor(std::uint32_t p);

private:
    bool negative_ = false;
    std::vector<std::uint32_t> limbs_;

    void trim();
    static int compare_magnitude(const BigInt& a, const BigInt& b);
    static std::vector<std::uint32_t> add_magnitude(const std::vector<std::uint32_t>& a,
                                                    const std::vector<std::uint32_t>& b);
    /// Requires |a| >= |b|.
    static std::vector<std::uint32_t> sub_magnitude(const std::vector<std::uint32_t>& a,
                                                    const std::vector<std::uint32_t>& b);
    void shift_left_one();
    std::size_t bit_length() const;
    bool bit(std::size_t index) const;
};

} // namespace detcalc
