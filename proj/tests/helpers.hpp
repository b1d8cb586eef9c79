#ifndef SNTREE_TESTS_HELPERS_HPP
#define SNTREE_TESTS_HELPERS_HPP

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "sntree/rng.hpp"
#include "sntree/tree.hpp"

namespace testutil {

// Rebuilds the tree with children permuted at every vertex; isomorphic to
// the input by construction.
inline snt::Tree shuffled(const snt::Tree& t, snt::Rng& rng) {
    std::vector<snt::Tree> kids;
    kids.reserve(t.children().size());
    for (const snt::Tree& c : t.children()) kids.push_back(shuffled(c, rng));
    for (std::size_t i = kids.size(); i > 1; --i)
        std::swap(kids[i - 1], kids[rng.below(i)]);
    return snt::Tree(std::move(kids));
}

// Independent recursive definitions, used as oracles against the library.
inline std::uint64_t naive_size(const snt::Tree& t) {
    std::uint64_t n = 1;
    for (const auto& c : t.children()) n += naive_size(c);
    return n;
}

inline std::uint64_t naive_height(const snt::Tree& t) {
    std::uint64_t h = 0;
    for (const auto& c : t.children()) h = std::max(h, naive_height(c) + 1);
    return h;
}

inline std::uint64_t naive_outdegree(const snt::Tree& t) {
    std::uint64_t d = t.children().size();
    for (const auto& c : t.children()) d = std::max(d, naive_outdegree(c));
    return d;
}

inline std::uint64_t naive_leaves(const snt::Tree& t) {
    if (t.children().empty()) return 1;
    std::uint64_t n = 0;
    for (const auto& c : t.children()) n += naive_leaves(c);
    return n;
}

// All subtree canonical keys (one entry per vertex).
inline void collect_subtree_keys(const snt::Tree& t, std::vector<std::string>& out) {
    out.push_back(snt::canonical_key(t));
    for (const auto& c : t.children()) collect_subtree_keys(c, out);
}

}  // namespace testutil

#endif
