#ifndef SNTREE_APPROXIMATION_HPP
#define SNTREE_APPROXIMATION_HPP

#include <cstdint>
#include <utility>

#include "sntree/dag.hpp"
#include "sntree/tree.hpp"

namespace snt {

struct AveragingStats {
    std::uint64_t edge_visits = 0;  // how many DAG edges the pass touched
};

// Self-nested approximation of the reduction: every label row is replaced by
// the multiplicity-weighted mean of the height profile, projected to the
// nearest nonnegative integer (half away from zero). The weighted mean is
// formed in exact integer arithmetic. Single pass over the DAG edges.
LinearDag average_to_linear(const DagReduction& d, AveragingStats* stats = nullptr);

// expand_linear(average_to_linear(reduce(t))): self-nested, same height.
Tree approximate_tree(const Tree& t);

struct ApproximationReport {
    std::uint64_t size_in = 0;
    std::uint64_t size_out = 0;
    std::uint64_t delta = 0;
    std::uint32_t height = 0;  // heights of input and output coincide
};

ApproximationReport approximation_report(const Tree& t);

// floor(d/2) * ceil(d/2) * d^(H-2): the largest distance from any tree of
// height <= H and outdegree <= d to the self-nested family.
std::uint64_t worst_case_bound(std::uint32_t height, std::uint64_t degree);

// The extremal tree: ceil(d/2) copies of pattern A and floor(d/2) copies of
// pattern B under the root; both patterns have height H-1 with d children at
// every internal vertex except the deepest internal level, which carries
// floor(d/2) leaves in A and d leaves in B.
Tree build_worst_case_tree(std::uint32_t height, std::uint64_t degree);

// Bounded exhaustive search over every linear DAG with height <= max_height
// and every label <= max_label: returns the minimum distance to t and the
// argmin (lexicographically smallest label array among minimizers, lower
// heights first). Refuses (GuardError) beyond 10^6 candidates.
std::pair<std::uint64_t, LinearDag> min_self_nested_distance(const Tree& t,
                                                             std::uint32_t max_height,
                                                             std::uint64_t max_label);

// Serial reference for the parallel search above; identical results.
std::pair<std::uint64_t, LinearDag> min_self_nested_distance_serial(const Tree& t,
                                                                    std::uint32_t max_height,
                                                                    std::uint64_t max_label);

}  // namespace snt

#endif
