#ifndef SNTREE_FLOW_HPP
#define SNTREE_FLOW_HPP

#include <cstdint>
#include <vector>

namespace snt {

// Integer-capacity, nonnegative-integer-cost directed network. Builders keep
// arcs out of the sink and into the source absent; the solver does not rely
// on that but the oracle's state space does stay smaller for it.
struct FlowNetwork {
    struct Arc {
        int from = 0;
        int to = 0;
        std::int64_t capacity = 0;
        std::int64_t cost = 0;
    };

    int node_count = 0;
    int source = 0;
    int sink = 0;
    std::vector<Arc> arcs;
};

struct FlowResult {
    std::int64_t flow = 0;
    std::int64_t cost = 0;
    std::vector<std::int64_t> arc_flow;  // parallel to FlowNetwork::arcs
};

// Successive shortest augmenting paths with node potentials; exact integer
// arithmetic throughout. Ties in the shortest-path search break on the lower
// node index, so per-arc flows are reproducible. Malformed networks raise
// ContractError.
FlowResult min_cost_max_flow(const FlowNetwork& net);

// Exhaustive reference: enumerates every reachable unit-augmentation state
// and returns the minimum cost among maximum flows. Refuses (GuardError)
// when the total capacity out of the source exceeds 10.
std::int64_t assignment_oracle(const FlowNetwork& net);

// Checks for FlowResult validity, used by tests.
bool flow_conserved(const FlowNetwork& net, const FlowResult& result);
bool flow_within_capacity(const FlowNetwork& net, const FlowResult& result);
// True when the residual network holds no negative-cost cycle, i.e. the
// returned flow is cost-optimal for its value.
bool no_negative_residual_cycle(const FlowNetwork& net, const FlowResult& result);

}  // namespace snt

#endif
