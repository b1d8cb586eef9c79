#include "sntree/counting.hpp"

#include <cmath>

#include "sntree/error.hpp"

namespace snt {

BigUint count_self_nested_eq(std::uint32_t height, std::uint64_t degree) {
    if (height < 1 || degree < 1)
        throw ContractError("count_self_nested_eq: height and degree must be >= 1");
    BigUint product(1);
    for (std::uint32_t i = 1; i <= height; ++i)
        product = product * BigUint::binomial(degree + height - i, height - i + 1ULL);
    return product;
}

BigUint count_unordered_le(std::uint32_t height, std::uint64_t degree) {
    if (height < 1 || degree < 1)
        throw ContractError("count_unordered_le: height and degree must be >= 1");
    BigUint u(1);
    for (std::uint32_t h = 1; h <= height; ++h) {
        BigUint n = u;
        n += BigUint(degree);
        u = BigUint::binomial(n, degree);
    }
    u -= 1;
    return u;
}

FrequencyCell self_nested_frequency(std::uint32_t height, std::uint64_t degree) {
    FrequencyCell cell;
    cell.height = height;
    cell.degree = degree;
    cell.numerator = BigUint(0);
    for (std::uint32_t h = 1; h <= height; ++h)
        cell.numerator += count_self_nested_eq(h, degree);
    cell.denominator = count_unordered_le(height, degree);
    // counts with hundreds of digits: take the ratio through logarithms
    cell.value = cell.numerator.is_zero()
                     ? 0.0
                     : std::exp(cell.numerator.log_natural() - cell.denominator.log_natural());
    return cell;
}

double log_count_self_nested(std::uint32_t height, std::uint64_t degree) {
    if (height < 1 || degree < 1)
        throw ContractError("log_count_self_nested: height and degree must be >= 1");
    double total = -static_cast<double>(height) * std::lgamma(static_cast<double>(degree));
    for (std::uint32_t j = 0; j < height; ++j)
        for (std::uint64_t k = 2; k <= degree; ++k)
            total += std::log(static_cast<double>(j + k));
    return total;
}

double asymptotic_equivalent(std::uint32_t height, std::uint64_t degree) {
    if (height < 1 || degree < 1)
        throw ContractError("asymptotic_equivalent: height and degree must be >= 1");
    double h = static_cast<double>(height);
    double d = static_cast<double>(degree);
    double s = d + h;
    return s * s / 2.0 * std::log(s) - h * h / 2.0 * std::log(h) - d * d / 2.0 * std::log(d) -
           h * d * std::log(d);
}

}  // namespace snt
