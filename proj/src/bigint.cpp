#include "detcalc/bigint.hpp"

#include <algorithm>
#include <stdexcept>

namespace detcalc {

namespace {
constexpr std::uint64_t kBase = 1ULL << 32;
}

BigInt::BigInt(std::int64_t value) {
    negative_ = value < 0;
    // Avoids overflow on INT64_MIN.
    std::uint64_t mag = negative_ ? ~static_cast<std::uint64_t>(value) + 1
                                  : static_cast<std::uint64_t>(value);
    while (mag != 0) {
        limbs_.push_back(static_cast<std::uint32_t>(mag & 0xFFFFFFFFu));
        mag >>= 32;
    }
    if (limbs_.empty()) negative_ = false;
}

BigInt BigInt::from_decimal(const std::string& digits) {
    BigInt out;
    std::size_t at = 0;
    bool negative = false;
    if (at < digits.size() && (digits[at] == '+' || digits[at] == '-')) {
        negative = digits[at] == '-';
        ++at;
    }
    if (at == digits.size()) throw std::invalid_argument("empty integer literal");
    const BigInt ten(10);
    for (; at < digits.size(); ++at) {
        if (digits[at] < '0' || digits[at] > '9') {
            throw std::invalid_argument("non-digit in integer literal");
        }
        out = out * ten + BigInt(digits[at] - '0');
    }
    if (!out.is_zero()) out.negative_ = negative;
    return out;
}

void BigInt::trim() {
    while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
    if (limbs_.empty()) negative_ = false;
}

int BigInt::compare_magnitude(const BigInt& a, const BigInt& b) {
    if (a.limbs_.size() != b.limbs_.size()) {
        return a.limbs_.size() < b.limbs_.size() ? -1 : 1;
    }
    for (std::size_t i = a.limbs_.size(); i-- > 0;) {
        if (a.limbs_[i] != b.limbs_[i]) return a.limbs_[i] < b.limbs_[i] ? -1 : 1;
    }
    return 0;
}

std::vector<std::uint32_t> BigInt::add_magnitude(const std::vector<std::uint32_t>& a,
                                                 const std::vector<std::uint32_t>& b) {
    std::vector<std::uint32_t> out;
    out.reserve(std::max(a.size(), b.size()) + 1);
    std::uint64_t carry = 0;
    for (std::size_t i = 0; i < std::max(a.size(), b.size()); ++i) {
        std::uint64_t sum = carry;
        if (i < a.size()) sum += a[i];
        if (i < b.size()) sum += b[i];
        out.push_back(static_cast<std::uint32_t>(sum & 0xFFFFFFFFu));
        carry = sum >> 32;
    }
    if (carry != 0) out.push_back(static_cast<std::uint32_t>(carry));
    return out;
}

std::vector<std::uint32_t> BigInt::sub_magnitude(const std::vector<std::uint32_t>& a,
                                                 const std::vector<std::uint32_t>& b) {
    std::vector<std::uint32_t> out;
    out.reserve(a.size());
    std::int64_t borrow = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        std::int64_t diff = static_cast<std::int64_t>(a[i]) - borrow;
        if (i < b.size()) diff -= static_cast<std::int64_t>(b[i]);
        if (diff < 0) {
            diff += static_cast<std::int64_t>(kBase);
            borrow = 1;
        } else {
            borrow = 0;
        }
        out.push_back(static_cast<std::uint32_t>(diff));
    }
    while (!out.empty() && out.back() == 0) out.pop_back();
    return out;
}

BigInt BigInt::operator-() const {
    BigInt out = *this;
    if (!out.is_zero()) out.negative_ = !out.negative_;
    return out;
}

BigInt BigInt::operator+(const BigInt& other) const {
    BigInt out;
    if (negative_ == other.negative_) {
        out.limbs_ = add_magnitude(limbs_, other.limbs_);
        out.negative_ = negative_;
    } else {
        const int cmp = compare_magnitude(*this, other);
        if (cmp == 0) return BigInt();
        if (cmp > 0) {
            out.limbs_ = sub_magnitude(limbs_, other.limbs_);
            out.negative_ = negative_;
        } else {
            out.limbs_ = sub_magnitude(other.limbs_, limbs_);
            out.negative_ = other.negative_;
        }
    }
    out.trim();
    return out;
}

BigInt BigInt::operator-(const BigInt& other) const { return *this + (-other); }

BigInt BigInt::operator*(const BigInt& other) const {
    if (is_zero() || other.is_zero()) return BigInt();
    BigInt out;
    out.limbs_.assign(limbs_.size() + other.limbs_.size(), 0);
    for (std::size_t i = 0; i < limbs_.size(); ++i) {
        std::uint64_t carry = 0;
        for (std::size_t j = 0; j < other.limbs_.size(); ++j) {
            std::uint64_t cur = static_cast<std::uint64_t>(limbs_[i]) * other.limbs_[j] +
                                out.limbs_[i + j] + carry;
            out.limbs_[i + j] = static_cast<std::uint32_t>(cur & 0xFFFFFFFFu);
            carry = cur >> 32;
        }
        std::size_t k = i + other.limbs_.size();
        while (carry != 0) {
            std::uint64_t cur = out.limbs_[k] + carry;
            out.limbs_[k] = static_cast<std::uint32_t>(cur & 0xFFFFFFFFu);
            carry = cur >> 32;
            ++k;
        }
    }
    out.negative_ = negative_ != other.negative_;
    out.trim();
    return out;
}

void BigInt::shift_left_one() {
    std::uint32_t carry = 0;
    for (auto& limb : limbs_) {
        const std::uint32_t next_carry = limb >> 31;
        limb = (limb << 1) | carry;
        carry = next_carry;
    }
    if (carry != 0) limbs_.push_back(carry);
}

std::size_t BigInt::bit_length() const {
    if (limbs_.empty()) return 0;
    std::size_t bits = (limbs_.size() - 1) * 32;
    std::uint32_t top = limbs_.back();
    while (top != 0) {
        ++bits;
        top >>= 1;
    }
    return bits;
}

bool BigInt::bit(std::size_t index) const {
    const std::size_t limb = index / 32;
    if (limb >= limbs_.size()) return false;
    return (limbs_[limb] >> (index % 32)) & 1u;
}

void BigInt::divmod(const BigInt& a, const BigInt& b, BigInt& quotient, BigInt& remainder) {
    if (b.is_zero()) throw std::domain_error("BigInt division by zero");

    // Binary long division on magnitudes.
    BigInt q;
    BigInt r;
    const std::size_t bits = a.bit_length();
    if (bits > 0) {
        q.limbs_.assign((bits + 31) / 32, 0);
        for (std::size_t i = bits; i-- > 0;) {
            r.shift_left_one();
            if (r.limbs_.empty()) {
                if (a.bit(i)) r.limbs_.push_back(1);
            } else if (a.bit(i)) {
                r.limbs_[0] |= 1u;
            }
            if (compare_magnitude(r, b) >= 0) {
                r.limbs_ = sub_magnitude(r.limbs_, b.limbs_);
                q.limbs_[i / 32] |= (1u << (i % 32));
            }
        }
    }
    q.trim();
    r.trim();
    if (!q.is_zero()) q.negative_ = a.negative_ != b.negative_;
    if (!r.is_zero()) r.negative_ = a.negative_;
    quotient = std::move(q);
    remainder = std::move(r);
}

BigInt BigInt::operator/(const BigInt& other) const {
    BigInt q, r;
    divmod(*this, other, q, r);
    return q;
}

BigInt BigInt::operator%(const BigInt& other) const {
    BigInt q, r;
    divmod(*this, other, q, r);
    return r;
}

bool BigInt::operator==(const BigInt& other) const {
    return negative_ == other.negative_ && limbs_ == other.limbs_;
}

bool BigInt::operator<(const BigInt& other) const {
    if (negative_ != other.negative_) return negative_;
    const int cmp = compare_magnitude(*this, other);
    return negative_ ? cmp > 0 : cmp < 0;
}

std::string BigInt::to_string() const {
    if (is_zero()) return "0";
    // Peel 9 decimal digits at a time.
    const BigInt chunk(1000000000);
    BigInt value = *this;
    value.negative_ = false;
    std::string out;
    while (!value.is_zero()) {
        BigInt q, r;
        divmod(value, chunk, q, r);
        std::uint64_t part = 0;
        for (std::size_t i = r.limbs_.size(); i-- > 0;) {
            part = (part << 32) | r.limbs_[i];
        }
        std::string digits = std::to_string(part);
        if (!q.is_zero()) digits.insert(0, 9 - digits.size(), '0');
        out.insert(0, digits);
        value = std::move(q);
    }
    if (negative_) out.insert(0, 1, '-');
    return out;
}

BigInt BigInt::gcd(BigInt a, BigInt b) {
    a.negative_ = false;
    b.negative_ = false;
    while (!b.is_zero()) {
        BigInt q, r;
        divmod(a, b, q, r);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

BigInt BigInt::pow10(unsigned exponent) {
    BigInt out(1);
    const BigInt ten(10);
    for (unsigned i = 0; i < exponent; ++i) out = out * ten;
    return out;
}

unsigned BigInt::remove_factor(std::uint32_t p) {
    unsigned count = 0;
    if (is_zero()) return 0;
    const BigInt factor(static_cast<std::int64_t>(p));
    while (true) {
        BigInt q, r;
        divmod(*this, factor, q, r);
        if (!r.is_zero()) break;
        *this = std::move(q);
        ++count;
    }
    return count;
}

} // namespace detcalc
