#include "sntree/bottomup.hpp"

#include <algorithm>

namespace snt {

BottomUpSpec<std::uint64_t> vertex_count_spec() {
    return {1, [](const std::vector<WeightedValue<std::uint64_t>>& kids) {
                std::uint64_t total = 1;
                for (const auto& [v, n] : kids) total += v * n;
                return total;
            }};
}

BottomUpSpec<std::uint64_t> leaf_count_spec() {
    return {1, [](const std::vector<WeightedValue<std::uint64_t>>& kids) {
                std::uint64_t total = 0;
                for (const auto& [v, n] : kids) total += v * n;
                return total;
            }};
}

BottomUpSpec<std::uint64_t> height_spec() {
    return {0, [](const std::vector<WeightedValue<std::uint64_t>>& kids) {
                std::uint64_t best = 0;
                for (const auto& [v, n] : kids) best = std::max(best, v);
                return best + 1;
            }};
}

BottomUpSpec<std::uint64_t> strahler_spec() {
    return {0, [](const std::vector<WeightedValue<std::uint64_t>>& kids) {
                std::uint64_t best = 0;
                std::uint64_t hits = 0;
                for (const auto& [v, n] : kids) {
                    if (v > best) {
                        best = v;
                        hits = n;
                    } else if (v == best) {
                        hits += n;
                    }
                }
                return best + (hits >= 2 ? 1 : 0);
            }};
}

std::uint64_t strahler(const Tree& t) { return eval_tree(strahler_spec(), t); }

}  // namespace snt
