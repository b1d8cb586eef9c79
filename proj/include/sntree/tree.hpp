#ifndef SNTREE_TREE_HPP
#define SNTREE_TREE_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace snt {

// Unordered rooted tree. A node is just its multiset of child subtrees; the
// stored child order is the construction order and carries no meaning.
// Values are immutable after construction, which makes size/height cacheable
// and lets isomorphism be decided by comparing canonical keys.
class Tree {
public:
    Tree() : size_(1), height_(0) {}
    explicit Tree(std::vector<Tree> children);

    const std::vector<Tree>& children() const noexcept { return children_; }
    std::uint64_t size() const noexcept { return size_; }
    std::uint32_t height() const noexcept { return height_; }
    bool is_leaf() const noexcept { return children_.empty(); }

private:
    std::vector<Tree> children_;
    std::uint64_t size_;
    std::uint32_t height_;
};

// Grammar: Tree := "(" Tree* ")". ASCII whitespace between tokens is
// ignored; anything else, unbalanced input or trailing text raises
// ParseError with the offending byte offset.
Tree parse(std::string_view text);

// Serialization in the same grammar, children in stored order.
std::string to_text(const Tree& t);

// Canonical encoding: leaf -> "()", internal node -> "(" + child keys sorted
// ascending (byte order, so '(' < ')') + ")". Equal keys <=> isomorphic.
std::string canonical_key(const Tree& t);

bool is_isomorphic(const Tree& a, const Tree& b);

std::uint64_t size(const Tree& t);
std::uint32_t height(const Tree& t);
std::uint64_t outdegree(const Tree& t);
std::uint64_t leaf_count(const Tree& t);

// Subtrees rooted at the children of the root, sorted by canonical key.
std::vector<Tree> child_forest(const Tree& t);

// Uniform-attachment growth: start from a single vertex and n-1 times attach
// a fresh leaf under a vertex chosen uniformly among the existing ones.
Tree random_tree(std::uint64_t n, std::uint64_t seed);

// One tree per line; blank lines are skipped.
std::vector<Tree> read_tree_file(const std::string& path);
Tree read_single_tree(const std::string& path);

}  // namespace snt

#endif
