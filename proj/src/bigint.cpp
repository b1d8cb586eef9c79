#include "sntree/bigint.hpp"

#include <algorithm>
#include <cmath>

#include "sntree/error.hpp"

namespace snt {

BigUint::BigUint(std::uint64_t value) {
    while (value) {
        limbs_.push_back(static_cast<std::uint32_t>(value & 0xffffffffULL));
        value >>= 32;
    }
}

void BigUint::trim() {
    while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
}

BigUint& BigUint::operator+=(const BigUint& other) {
    std::size_t n = std::max(limbs_.size(), other.limbs_.size());
    limbs_.resize(n, 0);
    std::uint64_t carry = 0;
    for (std::size_t i = 0; i < n; ++i) {
        std::uint64_t sum = carry + limbs_[i] + (i < other.limbs_.size() ? other.limbs_[i] : 0);
        limbs_[i] = static_cast<std::uint32_t>(sum & 0xffffffffULL);
        carry = sum >> 32;
    }
    if (carry) limbs_.push_back(static_cast<std::uint32_t>(carry));
    return *this;
}

BigUint& BigUint::operator-=(std::uint64_t value) {
    std::uint64_t borrow = value;
    for (std::size_t i = 0; i < limbs_.size() && borrow; ++i) {
        std::uint64_t take = borrow & 0xffffffffULL;
        borrow >>= 32;
        if (limbs_[i] >= take) {
            limbs_[i] -= static_cast<std::uint32_t>(take);
        } else {
            limbs_[i] = static_cast<std::uint32_t>((0x100000000ULL + limbs_[i]) - take);
            ++borrow;
        }
    }
    if (borrow) throw ContractError("BigUint: subtraction underflow");
    trim();
    return *this;
}

BigUint BigUint::operator*(const BigUint& other) const {
    if (is_zero() || other.is_zero()) return BigUint();
    BigUint out;
    out.limbs_.assign(limbs_.size() + other.limbs_.size(), 0);
    for (std::size_t i = 0; i < limbs_.size(); ++i) {
        std::uint64_t carry = 0;
        for (std::size_t j = 0; j < other.limbs_.size(); ++j) {
            std::uint64_t cur = out.limbs_[i + j] +
                                static_cast<std::uint64_t>(limbs_[i]) * other.limbs_[j] + carry;
            out.limbs_[i + j] = static_cast<std::uint32_t>(cur & 0xffffffffULL);
            carry = cur >> 32;
        }
        std::size_t k = i + other.limbs_.size();
        while (carry) {
            std::uint64_t cur = out.limbs_[k] + carry;
            out.limbs_[k] = static_cast<std::uint32_t>(cur & 0xffffffffULL);
            carry = cur >> 32;
            ++k;
        }
    }
    out.trim();
    return out;
}

BigUint& BigUint::operator*=(std::uint64_t value) {
    *this = *this * BigUint(value);
    return *this;
}

BigUint& BigUint::divide_exact(std::uint64_t divisor) {
    if (divisor == 0) throw ContractError("BigUint: division by zero");
    // long division, most significant limb first; divisor fits in 64 bits so
    // the running remainder stays below 2^96 and needs 128-bit arithmetic
    unsigned __int128 rem = 0;
    for (std::size_t i = limbs_.size(); i-- > 0;) {
        unsigned __int128 cur = (rem << 32) | limbs_[i];
        limbs_[i] = static_cast<std::uint32_t>(static_cast<std::uint64_t>(cur / divisor));
        rem = cur % divisor;
    }
    if (rem != 0) throw ContractError("BigUint: division is not exact");
    trim();
    return *this;
}

int BigUint::compare(const BigUint& other) const noexcept {
    if (limbs_.size() != other.limbs_.size())
        return limbs_.size() < other.limbs_.size() ? -1 : 1;
    for (std::size_t i = limbs_.size(); i-- > 0;) {
        if (limbs_[i] != other.limbs_[i]) return limbs_[i] < other.limbs_[i] ? -1 : 1;
    }
    return 0;
}

std::string BigUint::to_string() const {
    if (is_zero()) return "0";
    std::vector<std::uint32_t> work = limbs_;
    std::string digits;
    while (!work.empty()) {
        // divide the limb array by 10^9, emit the remainder
        std::uint64_t rem = 0;
        for (std::size_t i = work.size(); i-- > 0;) {
            std::uint64_t cur = (rem << 32) | work[i];
            work[i] = static_cast<std::uint32_t>(cur / 1000000000ULL);
            rem = cur % 1000000000ULL;
        }
        while (!work.empty() && work.back() == 0) work.pop_back();
        for (int k = 0; k < 9; ++k) {
            digits.push_back(static_cast<char>('0' + rem % 10));
            rem /= 10;
        }
    }
    while (digits.size() > 1 && digits.back() == '0') digits.pop_back();
    std::reverse(digits.begin(), digits.end());
    return digits;
}

double BigUint::log_natural() const {
    if (is_zero()) throw ContractError("BigUint: log of zero");
    // mantissa from the top 64 bits plus the scale of the discarded ones
    std::size_t top = limbs_.size() - 1;
    double mantissa = 0;
    double scale_bits = 0;
    if (limbs_.size() <= 2) {
        std::uint64_t v = limbs_[top];
        if (top == 1) v = (v << 32) | limbs_[0];
        mantissa = static_cast<double>(v);
    } else {
        std::uint64_t v = (static_cast<std::uint64_t>(limbs_[top]) << 32) | limbs_[top - 1];
        mantissa = static_cast<double>(v) + static_cast<double>(limbs_[top - 2]) * 0x1.0p-32;
        scale_bits = 32.0 * static_cast<double>(top - 1);
    }
    return std::log(mantissa) + scale_bits * std::log(2.0);
}

double BigUint::to_double() const {
    if (is_zero()) return 0.0;
    double value = 0;
    for (std::size_t i = limbs_.size(); i-- > 0;) {
        value = value * 0x1.0p32 + static_cast<double>(limbs_[i]);
        if (std::isinf(value)) return value;
    }
    return value;
}

BigUint BigUint::binomial(const BigUint& n, std::uint64_t k) {
    if (k == 0) return BigUint(1);
    if (n < BigUint(k)) return BigUint();
    // multiply (n-k+1)..(n) in ascending order, dividing by 1..k as we go;
    // every intermediate value is an exact binomial coefficient
    BigUint result(1);
    BigUint factor = n;
    factor -= k - 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        result = result * factor;
        result.divide_exact(i);
        factor += BigUint(1);
    }
    return result;
}

BigUint BigUint::binomial(std::uint64_t n, std::uint64_t k) { return binomial(BigUint(n), k); }

}  // namespace snt
