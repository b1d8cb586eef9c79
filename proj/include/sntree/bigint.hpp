#ifndef SNTREE_BIGINT_HPP
#define SNTREE_BIGINT_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace snt {

// Arbitrary-precision nonnegative integer, base 2^32 limbs, little-endian.
// Covers what the counting module needs: the counts involved reach well past
// a hundred decimal digits.
class BigUint {
public:
    BigUint() = default;  // zero
    BigUint(std::uint64_t value);

    bool is_zero() const noexcept { return limbs_.empty(); }

    BigUint& operator+=(const BigUint& other);
    BigUint& operator-=(std::uint64_t value);  // requires *this >= value
    BigUint operator*(const BigUint& other) const;
    BigUint& operator*=(std::uint64_t value);

    // Exact division; remainder must be zero (checked).
    BigUint& divide_exact(std::uint64_t divisor);

    // Three-way compare.
    int compare(const BigUint& other) const noexcept;
    friend bool operator==(const BigUint& a, const BigUint& b) { return a.compare(b) == 0; }
    friend bool operator<(const BigUint& a, const BigUint& b) { return a.compare(b) < 0; }
    friend bool operator<=(const BigUint& a, const BigUint& b) { return a.compare(b) <= 0; }

    std::string to_string() const;

    // Natural logarithm (requires nonzero); exact to double rounding.
    double log_natural() const;

    // value as double; +inf when it does not fit.
    double to_double() const;

    // C(n, k) where n may be huge and k is small.
    static BigUint binomial(const BigUint& n, std::uint64_t k);
    static BigUint binomial(std::uint64_t n, std::uint64_t k);

private:
    void trim();
    std::vector<std::uint32_t> limbs_;
};

}  // namespace snt

#endif
