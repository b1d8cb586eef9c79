#ifndef SNTREE_EDIT_DISTANCE_HPP
#define SNTREE_EDIT_DISTANCE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>

#include "sntree/dag.hpp"
#include "sntree/tree.hpp"

namespace snt {

// A tree or the designated empty value. Only the distance operations accept
// the empty value; its size is 0.
class TreeOrEmpty {
public:
    TreeOrEmpty() = default;  // empty
    TreeOrEmpty(Tree t) : tree_(std::move(t)) {}

    static TreeOrEmpty empty() { return TreeOrEmpty(); }

    bool is_empty() const noexcept { return !tree_.has_value(); }
    const Tree& tree() const;
    std::uint64_t size() const noexcept { return tree_ ? tree_->size() : 0; }

private:
    std::optional<Tree> tree_;
};

// Cache of computed distances, keyed by unordered canonical-key pairs (the
// distance is symmetric). One memo belongs to one computation.
class DistanceMemo {
public:
    std::optional<std::uint64_t> find(const std::string& a, const std::string& b) const;
    void store(const std::string& a, const std::string& b, std::uint64_t value);
    std::size_t entries() const noexcept { return map_.size(); }

private:
    std::unordered_map<std::string, std::uint64_t> map_;
};

// Minimum number of leaf insertions/deletions turning one tree into a tree
// isomorphic to the other. Each recursion step over the child forests is
// solved as a min-cost max-flow assignment; subproblems are memoized on
// canonical-key pairs.
std::uint64_t edit_distance(const Tree& a, const Tree& b);
std::uint64_t edit_distance(const TreeOrEmpty& a, const TreeOrEmpty& b);

// Same distance computed on the DAG reductions: a dynamic program over all
// pairs of classes in increasing height order, each step an assignment
// network whose capacities are the child multiplicities.
std::uint64_t edit_distance_dag(const DagReduction& a, const DagReduction& b);

// Reference implementation by explicit enumeration of child subsets and
// permutations of the recursion. Refuses (GuardError) when any vertex of
// either tree has more than 6 children.
std::uint64_t brute_force_distance(const Tree& a, const Tree& b);
std::uint64_t brute_force_distance(const TreeOrEmpty& a, const TreeOrEmpty& b);

}  // namespace snt

#endif
