#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "sntree/bigint.hpp"
#include "sntree/counting.hpp"
#include "sntree/dag.hpp"
#include "sntree/error.hpp"
#include "sntree/tree.hpp"

using namespace snt;

namespace {

// Independent count of admissible linear DAGs of height exactly H: per row
// h1, vectors with N(h1,h1-1) >= 1, the others >= 0 and row sum <= d.
std::uint64_t enumerate_rows(std::uint32_t row_length, std::uint64_t degree) {
    std::vector<std::uint64_t> v(row_length, 0);
    v[0] = 1;
    std::uint64_t count = 0;
    for (;;) {
        std::uint64_t sum = 0;
        for (std::uint64_t x : v) sum += x;
        if (sum <= degree) ++count;
        std::size_t pos = 0;
        for (;;) {
            if (pos == v.size()) return count;
            if (++v[pos] <= degree) break;
            v[pos] = pos == 0 ? 1 : 0;
            ++pos;
        }
    }
}

std::uint64_t enumerate_self_nested(std::uint32_t height, std::uint64_t degree) {
    std::uint64_t product = 1;
    for (std::uint32_t h1 = 1; h1 <= height; ++h1) product *= enumerate_rows(h1, degree);
    return product;
}

// All canonical keys of trees with height in [1, H] and outdegree <= d,
// built by stacking multisets of lower strata.
std::set<std::string> enumerate_trees(std::uint32_t height, std::uint64_t degree) {
    std::vector<std::string> pool{"()"};
    std::set<std::string> out;
    for (std::uint32_t h = 1; h <= height; ++h) {
        std::set<std::string> fresh;
        // multisets of size 1..d over the pool, chosen in nondecreasing order
        std::vector<std::size_t> choice;
        auto emit = [&]() {
            std::string key = "(";
            for (std::size_t idx : choice) key += pool[idx];
            key += ")";
            fresh.insert(key);
        };
        std::function<void(std::size_t)> rec = [&](std::size_t from) {
            if (!choice.empty()) emit();
            if (choice.size() == degree) return;
            for (std::size_t i = from; i < pool.size(); ++i) {
                choice.push_back(i);
                rec(i);
                choice.pop_back();
            }
        };
        rec(0);
        for (const std::string& key : fresh) out.insert(key);
        pool.assign(out.begin(), out.end());
        pool.push_back("()");
        std::sort(pool.begin(), pool.end());
    }
    return out;
}

}  // namespace

TEST_CASE("big integer basics") {
    CHECK(BigUint(0).to_string() == "0");
    CHECK(BigUint(123456789012345ULL).to_string() == "123456789012345");
    CHECK(BigUint::binomial(5ULL, 2).to_string() == "10");
    CHECK(BigUint::binomial(23ULL, 12).to_string() == "1352078");
    CHECK(BigUint::binomial(10ULL, 0).to_string() == "1");
    CHECK(BigUint::binomial(3ULL, 7).to_string() == "0");

    // multiplication against a known long value: 2^128
    BigUint two_pow(1);
    for (int i = 0; i < 128; ++i) two_pow *= 2;
    CHECK(two_pow.to_string() == "340282366920938463463374607431768211456");
    CHECK(two_pow.log_natural() == doctest::Approx(128.0 * std::log(2.0)).epsilon(1e-12));

    BigUint copy = two_pow;
    copy.divide_exact(1ULL << 32);
    copy.divide_exact(1ULL << 32);
    copy.divide_exact(1ULL << 32);
    CHECK(copy.to_string() == "4294967296");
    CHECK(BigUint(7) < BigUint(8));
    CHECK(BigUint(100000000000ULL) <= BigUint(100000000000ULL));
}

TEST_CASE("self-nested counts match the closed form") {
    CHECK(count_self_nested_eq(1, 2).to_string() == "2");
    CHECK(count_self_nested_eq(2, 2).to_string() == "6");
    CHECK(count_self_nested_eq(3, 3).to_string() == "180");
    CHECK_THROWS_AS(count_self_nested_eq(0, 2), ContractError);
}

TEST_CASE("self-nested counts match exhaustive enumeration") {
    for (std::uint32_t h = 1; h <= 4; ++h)
        for (std::uint64_t d = 1; d <= 4; ++d)
            CHECK(count_self_nested_eq(h, d).to_string() ==
                  std::to_string(enumerate_self_nested(h, d)));
}

TEST_CASE("admissible linear DAGs of height 2, degree 2 expand to 6 distinct trees") {
    std::set<std::string> keys;
    for (std::uint64_t n10 = 1; n10 <= 2; ++n10)
        for (std::uint64_t n21 = 1; n21 <= 2; ++n21)
            for (std::uint64_t n20 = 0; n20 <= 2; ++n20) {
                if (n21 + n20 > 2) continue;
                Tree t = expand_linear(LinearDag(2, {n10, n21, n20}));
                CHECK(t.height() == 2);
                CHECK(outdegree(t) <= 2);
                keys.insert(canonical_key(t));
            }
    CHECK(keys.size() == 6);
}

TEST_CASE("unordered counts match the recursion examples") {
    CHECK(count_unordered_le(1, 2).to_string() == "2");
    CHECK(count_unordered_le(2, 2).to_string() == "9");
    CHECK(count_unordered_le(3, 3).to_string() == "8435");
    for (std::uint64_t d = 1; d <= 6; ++d)
        CHECK(count_unordered_le(1, d).to_string() == std::to_string(d));
}

TEST_CASE("unordered counts match exhaustive tree enumeration") {
    struct Cell {
        std::uint32_t h;
        std::uint64_t d;
    };
    for (Cell cell : {Cell{1, 1}, Cell{1, 3}, Cell{2, 2}, Cell{2, 3}}) {
        std::set<std::string> trees = enumerate_trees(cell.h, cell.d);
        for (const std::string& key : trees) {
            Tree t = parse(key);
            CHECK(t.height() >= 1);
            CHECK(t.height() <= cell.h);
            CHECK(outdegree(t) <= cell.d);
        }
        CHECK(count_unordered_le(cell.h, cell.d).to_string() == std::to_string(trees.size()));
    }
}

TEST_CASE("frequency cells") {
    FrequencyCell c22 = self_nested_frequency(2, 2);
    CHECK(c22.numerator.to_string() == "8");
    CHECK(c22.denominator.to_string() == "9");
    CHECK(c22.value == doctest::Approx(8.0 / 9.0).epsilon(1e-9));

    FrequencyCell c33 = self_nested_frequency(3, 3);
    CHECK(c33.numerator.to_string() == "201");
    CHECK(c33.denominator.to_string() == "8435");

    FrequencyCell c52 = self_nested_frequency(5, 2);
    CHECK(c52.numerator.to_string() == "872");
    CHECK(c52.denominator.to_string() == "2598059");

    // the largest table cell needs more than 100 decimal digits
    FrequencyCell c54 = self_nested_frequency(5, 4);
    CHECK(c54.denominator.to_string().size() > 100);
    CHECK(c54.value == doctest::Approx(1.66e-100).epsilon(0.01));
}

TEST_CASE("frequencies decrease in height and stay below one") {
    for (std::uint64_t d = 2; d <= 4; ++d) {
        double prev = 1.0;
        for (std::uint32_t h = 2; h <= 5; ++h) {
            FrequencyCell cell = self_nested_frequency(h, d);
            CHECK(cell.numerator <= cell.denominator);
            CHECK(cell.value < prev);
            prev = cell.value;
        }
    }
}

TEST_CASE("log-count identity") {
    for (std::uint64_t d = 1; d <= 9; ++d)
        CHECK(log_count_self_nested(1, d) ==
              doctest::Approx(std::log(static_cast<double>(d))).epsilon(1e-12));

    double exact = count_self_nested_eq(8, 8).log_natural();
    CHECK(log_count_self_nested(8, 8) == doctest::Approx(exact).epsilon(1e-6));
}

TEST_CASE("asymptotic equivalent tightens as height and degree grow") {
    double near = std::fabs(log_count_self_nested(16, 16) / asymptotic_equivalent(16, 16) - 1.0);
    double far = std::fabs(log_count_self_nested(64, 64) / asymptotic_equivalent(64, 64) - 1.0);
    CHECK(far < near);
}
