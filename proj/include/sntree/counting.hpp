#ifndef SNTREE_COUNTING_HPP
#define SNTREE_COUNTING_HPP

#include <cstdint>

#include "sntree/bigint.hpp"

namespace snt {

// Number of self-nested trees of height exactly H and outdegree <= d:
// the product over i = 1..H of C(d+H-i, H-i+1).
BigUint count_self_nested_eq(std::uint32_t height, std::uint64_t degree);

// Number of unordered trees of height <= H and outdegree <= d, excluding the
// single-vertex tree: u_H(d) - 1 with u_0 = 1 and u_H = C(u_{H-1} + d, d).
BigUint count_unordered_le(std::uint32_t height, std::uint64_t degree);

// Exact fraction of self-nested trees among unordered trees under the same
// height/outdegree caps (single-vertex tree excluded on both sides).
struct FrequencyCell {
    std::uint32_t height = 0;
    std::uint64_t degree = 0;
    BigUint numerator;
    BigUint denominator;
    double value = 0.0;
};

FrequencyCell self_nested_frequency(std::uint32_t height, std::uint64_t degree);

// log of count_self_nested_eq evaluated in floating point:
// -H*lgamma(d) + sum over 0<=j<H, 2<=k<=d of log(j+k).
double log_count_self_nested(std::uint32_t height, std::uint64_t degree);

// Closed-form equivalent of the log-count as height and outdegree both grow.
double asymptotic_equivalent(std::uint32_t height, std::uint64_t degree);

}  // namespace snt

#endif
