#include "sntree/flow.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <queue>
#include <set>

#include "sntree/error.hpp"

namespace snt {

namespace {

constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;

void validate(const FlowNetwork& net) {
    if (net.node_count <= 0) throw ContractError("flow: empty network");
    auto in_range = [&](int v) { return v >= 0 && v < net.node_count; };
    if (!in_range(net.source) || !in_range(net.sink))
        throw ContractError("flow: source or sink out of range");
    if (net.source == net.sink) throw ContractError("flow: source equals sink");
    for (const auto& arc : net.arcs) {
        if (!in_range(arc.from) || !in_range(arc.to))
            throw ContractError("flow: arc references unknown node");
        if (arc.from == arc.to) throw ContractError("flow: self-loop arc");
        if (arc.capacity < 0) throw ContractError("flow: negative capacity");
        if (arc.cost < 0) throw ContractError("flow: negative cost");
    }
}

// Residual adjacency built once; forward entries at even slots, their
// reverses at odd slots (rev = idx ^ 1).
struct Residual {
    struct Edge {
        int to;
        std::int64_t remaining;
        std::int64_t cost;
        int original;  // index into net.arcs, -1 for reverse edges
    };
    std::vector<Edge> edges;
    std::vector<std::vector<int>> out;

    explicit Residual(const FlowNetwork& net) : out(net.node_count) {
        edges.reserve(net.arcs.size() * 2);
        for (std::size_t a = 0; a < net.arcs.size(); ++a) {
            const auto& arc = net.arcs[a];
            out[arc.from].push_back(static_cast<int>(edges.size()));
            edges.push_back({arc.to, arc.capacity, arc.cost, static_cast<int>(a)});
            out[arc.to].push_back(static_cast<int>(edges.size()));
            edges.push_back({arc.from, 0, -arc.cost, -1});
        }
    }
};

}  // namespace

FlowResult min_cost_max_flow(const FlowNetwork& net) {
    validate(net);
    Residual res(net);
    const int n = net.node_count;
    std::vector<std::int64_t> potential(n, 0);  // valid: all costs nonnegative
    std::vector<std::int64_t> dist(n);
    std::vector<int> parent_edge(n);

    FlowResult result;
    result.arc_flow.assign(net.arcs.size(), 0);

    for (;;) {
        std::fill(dist.begin(), dist.end(), kInf);
        std::fill(parent_edge.begin(), parent_edge.end(), -1);
        dist[net.source] = 0;
        // (reduced distance, node): the node index breaks ties, keeping the
        // chosen augmenting path deterministic.
        std::priority_queue<std::pair<std::int64_t, int>, std::vector<std::pair<std::int64_t, int>>,
                            std::greater<>>
            heap;
        heap.emplace(0, net.source);
        while (!heap.empty()) {
            auto [du, u] = heap.top();
            heap.pop();
            if (du > dist[u]) continue;
            for (int e : res.out[u]) {
                const auto& edge = res.edges[e];
                if (edge.remaining <= 0) continue;
                std::int64_t nd = du + edge.cost + potential[u] - potential[edge.to];
                if (nd < dist[edge.to]) {
                    dist[edge.to] = nd;
                    parent_edge[edge.to] = e;
                    heap.emplace(nd, edge.to);
                }
            }
        }
        if (dist[net.sink] >= kInf) break;

        for (int v = 0; v < n; ++v)
            if (dist[v] < kInf) potential[v] += dist[v];

        std::int64_t bottleneck = kInf;
        for (int v = net.sink; v != net.source;) {
            int e = parent_edge[v];
            bottleneck = std::min(bottleneck, res.edges[e].remaining);
            v = res.edges[e ^ 1].to;
        }
        for (int v = net.sink; v != net.source;) {
            int e = parent_edge[v];
            res.edges[e].remaining -= bottleneck;
            res.edges[e ^ 1].remaining += bottleneck;
            v = res.edges[e ^ 1].to;
        }
        result.flow += bottleneck;
    }

    for (std::size_t e = 0; e < res.edges.size(); e += 2) {
        int a = res.edges[e].original;
        std::int64_t f = net.arcs[a].capacity - res.edges[e].remaining;
        result.arc_flow[a] = f;
        result.cost += f * net.arcs[a].cost;
    }
    return result;
}

std::int64_t assignment_oracle(const FlowNetwork& net) {
    validate(net);
    std::int64_t source_capacity = 0;
    for (const auto& arc : net.arcs)
        if (arc.from == net.source) source_capacity += arc.capacity;
    if (source_capacity > 10)
        throw GuardError("assignment_oracle: total source capacity exceeds 10");

    // State = per-arc flows. Every unit augmentation raises the flow value by
    // one, so state exploration is a DAG and a visited set suffices. Terminal
    // states (no residual path) are exactly the maximum flows, and every
    // cycle-free maximum flow is reachable, so the minimum terminal cost is
    // the minimum cost over maximum flows.
    const int n = net.node_count;
    std::vector<std::int64_t> state(net.arcs.size(), 0);
    std::set<std::vector<std::int64_t>> visited;
    std::int64_t best = kInf;
    bool any_terminal = false;

    // residual out-edges for the current state
    auto residual_targets = [&](int u, const std::vector<std::int64_t>& flows) {
        std::vector<std::pair<int, int>> targets;  // (arc index, direction +1/-1)
        for (std::size_t a = 0; a < net.arcs.size(); ++a) {
            if (net.arcs[a].from == u && flows[a] < net.arcs[a].capacity)
                targets.emplace_back(static_cast<int>(a), +1);
            if (net.arcs[a].to == u && flows[a] > 0)
                targets.emplace_back(static_cast<int>(a), -1);
        }
        return targets;
    };

    std::vector<std::vector<std::int64_t>> stack{state};
    while (!stack.empty()) {
        std::vector<std::int64_t> flows = std::move(stack.back());
        stack.pop_back();
        if (!visited.insert(flows).second) continue;

        // enumerate all simple residual source->sink paths
        bool has_path = false;
        std::vector<char> on_path(n, 0);
        std::vector<std::pair<int, int>> path;
        std::function<void(int)> dfs = [&](int u) {
            if (u == net.sink) {
                has_path = true;
                std::vector<std::int64_t> next = flows;
                for (auto [a, dir] : path) next[a] += dir;
                if (!visited.count(next)) stack.push_back(std::move(next));
                return;
            }
            on_path[u] = 1;
            for (auto [a, dir] : residual_targets(u, flows)) {
                int v = dir > 0 ? net.arcs[a].to : net.arcs[a].from;
                if (on_path[v]) continue;
                path.emplace_back(a, dir);
                dfs(v);
                path.pop_back();
            }
            on_path[u] = 0;
        };
        dfs(net.source);

        if (!has_path) {
            any_terminal = true;
            std::int64_t cost = 0;
            for (std::size_t a = 0; a < net.arcs.size(); ++a)
                cost += flows[a] * net.arcs[a].cost;
            best = std::min(best, cost);
        }
    }
    return any_terminal ? best : 0;
}

bool flow_conserved(const FlowNetwork& net, const FlowResult& result) {
    std::vector<std::int64_t> balance(net.node_count, 0);
    for (std::size_t a = 0; a < net.arcs.size(); ++a) {
        balance[net.arcs[a].from] -= result.arc_flow[a];
        balance[net.arcs[a].to] += result.arc_flow[a];
    }
    for (int v = 0; v < net.node_count; ++v) {
        if (v == net.source || v == net.sink) continue;
        if (balance[v] != 0) return false;
    }
    return balance[net.sink] == result.flow && balance[net.source] == -result.flow;
}

bool flow_within_capacity(const FlowNetwork& net, const FlowResult& result) {
    for (std::size_t a = 0; a < net.arcs.size(); ++a)
        if (result.arc_flow[a] < 0 || result.arc_flow[a] > net.arcs[a].capacity) return false;
    return true;
}

bool no_negative_residual_cycle(const FlowNetwork& net, const FlowResult& result) {
    // Bellman-Ford over the residual arcs; any further relaxation after
    // node_count-1 rounds certifies a negative cycle.
    struct Edge {
        int from, to;
        std::int64_t cost;
    };
    std::vector<Edge> edges;
    for (std::size_t a = 0; a < net.arcs.size(); ++a) {
        if (result.arc_flow[a] < net.arcs[a].capacity)
            edges.push_back({net.arcs[a].from, net.arcs[a].to, net.arcs[a].cost});
        if (result.arc_flow[a] > 0)
            edges.push_back({net.arcs[a].to, net.arcs[a].from, -net.arcs[a].cost});
    }
    std::vector<std::int64_t> dist(net.node_count, 0);
    for (int round = 0; round < net.node_count - 1; ++round) {
        bool changed = false;
        for (const auto& e : edges) {
            if (dist[e.from] + e.cost < dist[e.to]) {
                dist[e.to] = dist[e.from] + e.cost;
                changed = true;
            }
        }
        if (!changed) return true;
    }
    for (const auto& e : edges)
        if (dist[e.from] + e.cost < dist[e.to]) return false;
    return true;
}

}  // namespace snt
