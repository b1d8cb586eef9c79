#ifndef SNTREE_BOTTOMUP_HPP
#define SNTREE_BOTTOMUP_HPP

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "sntree/dag.hpp"
#include "sntree/error.hpp"
#include "sntree/tree.hpp"

namespace snt {

// One multiset element handed to a combiner: a child value and how many
// children carry it. DAG evaluation passes repetition counts instead of
// materializing label-many copies.
template <class X>
struct WeightedValue {
    X value;
    std::uint64_t count;
};

// A bottom-up recursive function: a leaf value and a combiner over the
// multiset of children's values. The combiner must be invariant under
// permutation of its argument list and must treat {v, k} exactly like k
// entries {v, 1}; it is never called with an empty list.
template <class X>
struct BottomUpSpec {
    X leaf_value;
    std::function<X(const std::vector<WeightedValue<X>>&)> combine;
};

// Single post-order traversal of the tree.
template <class X>
X eval_tree(const BottomUpSpec<X>& spec, const Tree& t) {
    struct Frame {
        const Tree* node;
        std::size_t next;
        std::vector<WeightedValue<X>> kids;
    };
    std::vector<Frame> stack;
    stack.push_back({&t, 0, {}});
    X result = spec.leaf_value;
    while (!stack.empty()) {
        Frame& f = stack.back();
        if (f.next < f.node->children().size()) {
            const Tree* child = &f.node->children()[f.next++];
            stack.push_back({child, 0, {}});
            continue;
        }
        X value = f.kids.empty() ? spec.leaf_value : spec.combine(f.kids);
        stack.pop_back();
        if (stack.empty())
            result = std::move(value);
        else
            stack.back().kids.push_back({std::move(value), 1});
    }
    return result;
}

// One pass over the DAG classes in increasing height; each class value is
// combined from child-class values weighted by the edge labels. Equals
// eval_tree on the expansion.
template <class X>
X eval_dag(const BottomUpSpec<X>& spec, const DagReduction& d) {
    if (d.class_count(d.height()) != 1)
        throw ContractError("eval_dag: reduction must have a unique root");
    std::vector<std::vector<X>> value(d.height() + 1);
    for (std::uint32_t h = 0; h <= d.height(); ++h) {
        value[h].resize(d.class_count(h));
        for (std::uint32_t i = 1; i <= d.class_count(h); ++i) {
            const auto& kids = d.children({h, i});
            if (kids.empty()) {
                value[h][i - 1] = spec.leaf_value;
                continue;
            }
            std::vector<WeightedValue<X>> args;
            args.reserve(kids.size());
            for (const auto& [kid, n] : kids)
                args.push_back({value[kid.height][kid.index - 1], n});
            value[h][i - 1] = spec.combine(args);
        }
    }
    return value[d.height()][0];
}

// The four built-in functions.
BottomUpSpec<std::uint64_t> vertex_count_spec();
BottomUpSpec<std::uint64_t> leaf_count_spec();
BottomUpSpec<std::uint64_t> height_spec();
// Leaves have order 0; an internal vertex takes the maximum child order,
// plus one when that maximum is attained by at least two children.
BottomUpSpec<std::uint64_t> strahler_spec();

std::uint64_t strahler(const Tree& t);

}  // namespace snt

#endif
