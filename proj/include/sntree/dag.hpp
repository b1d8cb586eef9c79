#ifndef SNTREE_DAG_HPP
#define SNTREE_DAG_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sntree/tree.hpp"

namespace snt {

// Vertex of a DAG reduction: the index-th isomorphism class of height h.
// Indices are 1-based within a height, matching the text format "h.i".
struct DagVertex {
    std::uint32_t height = 0;
    std::uint32_t index = 1;

    friend bool operator==(DagVertex a, DagVertex b) {
        return a.height == b.height && a.index == b.index;
    }
};

// Quotient of a tree by subtree isomorphism. Edges carry the number of
// occurrences of the child class among the children of the source class's
// root, and always point from higher to strictly lower height. Exactly one
// class exists at the top height (the whole tree) and at height 0 (a leaf).
class DagReduction {
public:
    std::uint32_t height() const noexcept { return static_cast<std::uint32_t>(counts_.size()) - 1; }
    std::uint32_t class_count(std::uint32_t h) const { return counts_.at(h); }
    std::uint64_t vertex_count() const noexcept;
    std::uint64_t edge_count() const noexcept;
    DagVertex root() const noexcept { return {height(), 1}; }

    // Child classes with labels, in canonical-key order of the child class.
    const std::vector<std::pair<DagVertex, std::uint64_t>>& children(DagVertex v) const;

    // 0 when the edge is absent.
    std::uint64_t label(DagVertex from, DagVertex to) const;

    bool contains(DagVertex v) const noexcept;

    // Validates all structural invariants, including pairwise distinctness of
    // classes at equal height. Throws ContractError on violation.
    static DagReduction create(std::vector<std::uint32_t> class_counts,
                               std::vector<std::pair<std::pair<DagVertex, DagVertex>,
                                                     std::uint64_t>> edges);

private:
    std::vector<std::uint32_t> counts_;
    // adj_[h][i-1] = children of (h, i)
    std::vector<std::vector<std::vector<std::pair<DagVertex, std::uint64_t>>>> adj_;
};

// Linear DAG of a self-nested tree: one class per height, fully described by
// the triangular label array N(h1,h2), 0 <= h2 < h1 <= H, with
// N(h,h-1) >= 1. Labels are stored row-major, h2 descending inside a row.
class LinearDag {
public:
    LinearDag() = default;  // single vertex, H = 0
    LinearDag(std::uint32_t height, std::vector<std::uint64_t> labels);

    std::uint32_t height() const noexcept { return height_; }
    std::uint64_t label(std::uint32_t h1, std::uint32_t h2) const;
    const std::vector<std::uint64_t>& labels() const noexcept { return labels_; }

    friend bool operator==(const LinearDag& a, const LinearDag& b) {
        return a.height_ == b.height_ && a.labels_ == b.labels_;
    }

private:
    std::uint32_t height_ = 0;
    std::vector<std::uint64_t> labels_;
};

// Occurrence count of each class's subtree within the whole tree.
struct MultiplicityMap {
    std::vector<std::vector<std::uint64_t>> by_height;
    std::uint64_t at(DagVertex v) const { return by_height.at(v.height).at(v.index - 1); }
};

// nu(v, h2) = number of height-h2 subtrees hanging under one root of class v.
struct HeightProfile {
    std::vector<std::vector<std::vector<std::uint64_t>>> by_height;
    std::uint64_t at(DagVertex v, std::uint32_t h2) const {
        return by_height.at(v.height).at(v.index - 1).at(h2);
    }
};

DagReduction reduce(const Tree& t);

Tree expand(const DagReduction& d, DagVertex v);
Tree expand_root(const DagReduction& d);

// mu(root) = 1; mu(u) = sum over in-edges (w -> u) of N(w,u) * mu(w).
MultiplicityMap multiplicities(const DagReduction& d);

HeightProfile height_profile(const DagReduction& d);

bool is_linear(const DagReduction& d);
bool is_self_nested_profile(const DagReduction& d);
bool is_self_nested_naive(const Tree& t);

LinearDag to_linear(const DagReduction& d);
DagReduction from_linear(const LinearDag& l);

// Number of vertices of the expansion, without expanding.
std::uint64_t linear_size(const LinearDag& l);

Tree expand_linear(const LinearDag& l);

// Per row h1, labels are uniform over { N >= 0 : sum <= d, N(h1,h1-1) >= 1 },
// drawn by rejection; more than 10^4 consecutive rejections in one row raise
// GuardError.
LinearDag random_linear_dag(std::uint32_t height, std::uint64_t degree, std::uint64_t seed);

// Text format, line based:
//   dag H=<H>
//   m <h> <M_h>           (one line per height)
//   e <h1>.<i1> <h2>.<i2> <N>   (one line per edge)
std::string dag_to_text(const DagReduction& d);
DagReduction dag_parse(std::string_view text);
DagReduction read_dag_file(const std::string& path);

}  // namespace snt

#endif
