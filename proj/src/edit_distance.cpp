#include "sntree/edit_distance.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

#include "sntree/error.hpp"
#include "sntree/flow.hpp"

namespace snt {

const Tree& TreeOrEmpty::tree() const {
    if (!tree_) throw ContractError("TreeOrEmpty: no tree present");
    return *tree_;
}

std::optional<std::uint64_t> DistanceMemo::find(const std::string& a, const std::string& b) const {
    const std::string& lo = a <= b ? a : b;
    const std::string& hi = a <= b ? b : a;
    auto it = map_.find(lo + "|" + hi);
    if (it == map_.end()) return std::nullopt;
    return it->second;
}

void DistanceMemo::store(const std::string& a, const std::string& b, std::uint64_t value) {
    const std::string& lo = a <= b ? a : b;
    const std::string& hi = a <= b ? b : a;
    map_.emplace(lo + "|" + hi, value);
}

namespace {

// One child-forest assignment step, shared by the tree and the DAG method.
// Side 1 items may be matched to side 2 items (cross cost), deleted (their
// size), or side 2 items inserted (their size); the two surplus arcs absorb
// exactly the difference between the forest cardinalities, so every child of
// both roots is accounted for.
struct ForestItem {
    std::uint64_t multiplicity;
    std::uint64_t whole_cost;  // size of the subtree = delete/insert cost
};

template <class CrossCost>
std::uint64_t forest_assignment_cost(const std::vector<ForestItem>& left,
                                     const std::vector<ForestItem>& right,
                                     CrossCost&& cross) {
    std::uint64_t eta1 = 0, eta2 = 0;
    for (const auto& item : left) eta1 += item.multiplicity;
    for (const auto& item : right) eta2 += item.multiplicity;
    if (eta1 == 0 && eta2 == 0) return 0;
    const std::uint64_t matched = std::min(eta1, eta2);

    FlowNetwork net;
    const int k1 = static_cast<int>(left.size());
    const int k2 = static_cast<int>(right.size());
    net.node_count = 2 + k1 + 1 + k2 + 1;
    net.source = 0;
    net.sink = 1;
    const int base1 = 2;
    const int blank1 = base1 + k1;
    const int base2 = blank1 + 1;
    const int blank2 = base2 + k2;

    auto cap = [](std::uint64_t v) { return static_cast<std::int64_t>(v); };
    for (int i = 0; i < k1; ++i)
        net.arcs.push_back({net.source, base1 + i, cap(left[i].multiplicity), 0});
    net.arcs.push_back({net.source, blank1, cap(eta2 - matched), 0});
    for (int i = 0; i < k1; ++i) {
        for (int j = 0; j < k2; ++j)
            net.arcs.push_back({base1 + i, base2 + j, cap(left[i].multiplicity),
                                static_cast<std::int64_t>(cross(i, j))});
        net.arcs.push_back({base1 + i, blank2, cap(left[i].multiplicity),
                            static_cast<std::int64_t>(left[i].whole_cost)});
    }
    for (int j = 0; j < k2; ++j) {
        net.arcs.push_back({blank1, base2 + j, cap(right[j].multiplicity),
                            static_cast<std::int64_t>(right[j].whole_cost)});
        net.arcs.push_back({base2 + j, net.sink, cap(right[j].multiplicity), 0});
    }
    net.arcs.push_back({blank2, net.sink, cap(eta1 - matched), 0});

    return static_cast<std::uint64_t>(min_cost_max_flow(net).cost);
}

// Canonical key of every subtree, computed in one pass.
void collect_keys(const Tree& t, std::unordered_map<const Tree*, std::string>& keys) {
    struct Frame {
        const Tree* node;
        std::size_t next;
        std::vector<std::string> child_keys;
    };
    std::vector<Frame> stack;
    stack.push_back({&t, 0, {}});
    while (!stack.empty()) {
        Frame& f = stack.back();
        if (f.next < f.node->children().size()) {
            const Tree* child = &f.node->children()[f.next++];
            stack.push_back({child, 0, {}});
            continue;
        }
        std::sort(f.child_keys.begin(), f.child_keys.end());
        std::string key;
        key.push_back('(');
        for (const auto& k : f.child_keys) key += k;
        key.push_back(')');
        keys.emplace(f.node, key);
        stack.pop_back();
        if (!stack.empty()) stack.back().child_keys.push_back(std::move(key));
    }
}

class TreeDistance {
public:
    TreeDistance(const Tree& a, const Tree& b) {
        collect_keys(a, keys_);
        collect_keys(b, keys_);
    }

    std::uint64_t dist(const Tree* x, const Tree* y) {
        const std::string& kx = keys_.at(x);
        const std::string& ky = keys_.at(y);
        if (kx == ky) return 0;
        if (auto hit = memo_.find(kx, ky)) return *hit;

        const auto& f1 = x->children();
        const auto& f2 = y->children();
        std::vector<ForestItem> left, right;
        left.reserve(f1.size());
        right.reserve(f2.size());
        for (const Tree& c : f1) left.push_back({1, c.size()});
        for (const Tree& c : f2) right.push_back({1, c.size()});
        std::uint64_t value = forest_assignment_cost(
            left, right, [&](int i, int j) { return dist(&f1[i], &f2[j]); });
        memo_.store(kx, ky, value);
        return value;
    }

private:
    std::unordered_map<const Tree*, std::string> keys_;
    DistanceMemo memo_;
};

}  // namespace

std::uint64_t edit_distance(const Tree& a, const Tree& b) {
    TreeDistance ctx(a, b);
    return ctx.dist(&a, &b);
}

std::uint64_t edit_distance(const TreeOrEmpty& a, const TreeOrEmpty& b) {
    if (a.is_empty() && b.is_empty()) return 0;
    if (a.is_empty()) return b.size();
    if (b.is_empty()) return a.size();
    return edit_distance(a.tree(), b.tree());
}

std::uint64_t edit_distance_dag(const DagReduction& a, const DagReduction& b) {
    // Subtree sizes per class; overflow-checked because DAGs can describe
    // expansions far larger than memory.
    auto class_sizes = [](const DagReduction& d) {
        constexpr unsigned __int128 kLimit = 1000000000000000ULL;  // 1e15
        std::vector<std::vector<std::uint64_t>> s(d.height() + 1);
        for (std::uint32_t h = 0; h <= d.height(); ++h) {
            s[h].resize(d.class_count(h));
            for (std::uint32_t i = 1; i <= d.class_count(h); ++i) {
                unsigned __int128 acc = 1;
                for (const auto& [kid, n] : d.children({h, i})) {
                    acc += static_cast<unsigned __int128>(n) * s[kid.height][kid.index - 1];
                    if (acc > kLimit)
                        throw ContractError("edit_distance_dag: expansion too large");
                }
                s[h][i - 1] = static_cast<std::uint64_t>(acc);
            }
        }
        return s;
    };
    std::vector<std::vector<std::uint64_t>> size1 = class_sizes(a);
    std::vector<std::vector<std::uint64_t>> size2 = class_sizes(b);

    // dist[(h1,i)][(h2,j)] in increasing height order on both sides; every
    // child pair lies strictly below in both coordinates.
    std::vector<std::uint32_t> off1(a.height() + 2, 0), off2(b.height() + 2, 0);
    for (std::uint32_t h = 0; h <= a.height(); ++h) off1[h + 1] = off1[h] + a.class_count(h);
    for (std::uint32_t h = 0; h <= b.height(); ++h) off2[h + 1] = off2[h] + b.class_count(h);
    auto id1 = [&](DagVertex v) { return off1[v.height] + v.index - 1; };
    auto id2 = [&](DagVertex v) { return off2[v.height] + v.index - 1; };

    std::vector<std::vector<std::uint64_t>> dist(off1.back(),
                                                 std::vector<std::uint64_t>(off2.back(), 0));

    for (std::uint32_t h1 = 0; h1 <= a.height(); ++h1) {
        for (std::uint32_t i = 1; i <= a.class_count(h1); ++i) {
            const auto& kids1 = a.children({h1, i});
            std::vector<ForestItem> left;
            left.reserve(kids1.size());
            for (const auto& [kid, n] : kids1)
                left.push_back({n, size1[kid.height][kid.index - 1]});
            for (std::uint32_t h2 = 0; h2 <= b.height(); ++h2) {
                for (std::uint32_t j = 1; j <= b.class_count(h2); ++j) {
                    const auto& kids2 = b.children({h2, j});
                    std::vector<ForestItem> right;
                    right.reserve(kids2.size());
                    for (const auto& [kid, n] : kids2)
                        right.push_back({n, size2[kid.height][kid.index - 1]});
                    dist[id1({h1, i})][id2({h2, j})] = forest_assignment_cost(
                        left, right, [&](int x, int y) {
                            return dist[id1(kids1[x].first)][id2(kids2[y].first)];
                        });
                }
            }
        }
    }
    return dist[id1(a.root())][id2(b.root())];
}

namespace {

class BruteForce {
public:
    BruteForce(const Tree& a, const Tree& b) {
        check_degree(a);
        check_degree(b);
        collect_keys(a, keys_);
        collect_keys(b, keys_);
    }

    std::uint64_t dist(const Tree* x, const Tree* y) {
        const std::string& kx = keys_.at(x);
        const std::string& ky = keys_.at(y);
        if (auto hit = memo_.find(kx, ky)) return *hit;

        const auto& f1 = x->children();
        const auto& f2 = y->children();
        const std::size_t n1 = f1.size();
        const std::size_t n2 = f2.size();
        const std::size_t n = std::min(n1, n2);

        std::uint64_t whole1 = 0, whole2 = 0;
        for (const Tree& c : f1) whole1 += c.size();
        for (const Tree& c : f2) whole2 += c.size();

        std::uint64_t best = UINT64_MAX;
        // all n-subsets of each forest, all bijections between them
        std::vector<char> pick1(n1, 0), pick2(n2, 0);
        std::fill(pick1.begin(), pick1.begin() + n, 1);
        std::sort(pick1.begin(), pick1.end());
        do {
            std::vector<std::size_t> s1;
            std::uint64_t deleted = 0;
            for (std::size_t i = 0; i < n1; ++i)
                if (pick1[i])
                    s1.push_back(i);
                else
                    deleted += f1[i].size();

            std::fill(pick2.begin(), pick2.end(), 0);
            std::fill(pick2.begin(), pick2.begin() + n, 1);
            std::sort(pick2.begin(), pick2.end());
            do {
                std::vector<std::size_t> s2;
                std::uint64_t inserted = 0;
                for (std::size_t j = 0; j < n2; ++j)
                    if (pick2[j])
                        s2.push_back(j);
                    else
                        inserted += f2[j].size();

                std::vector<std::size_t> perm(n);
                std::iota(perm.begin(), perm.end(), 0);
                do {
                    std::uint64_t cost = deleted + inserted;
                    for (std::size_t k = 0; k < n && cost < best; ++k)
                        cost += dist(&f1[s1[k]], &f2[s2[perm[k]]]);
                    best = std::min(best, cost);
                } while (std::next_permutation(perm.begin(), perm.end()));
            } while (std::next_permutation(pick2.begin(), pick2.end()));
        } while (std::next_permutation(pick1.begin(), pick1.end()));

        if (n == 0) best = whole1 + whole2;  // nothing to match, loops cover it once
        memo_.store(kx, ky, best);
        return best;
    }

private:
    static void check_degree(const Tree& t) {
        std::vector<const Tree*> stack{&t};
        while (!stack.empty()) {
            const Tree* node = stack.back();
            stack.pop_back();
            if (node->children().size() > 6)
                throw GuardError("brute_force_distance: a vertex has more than 6 children");
            for (const Tree& c : node->children()) stack.push_back(&c);
        }
    }

    std::unordered_map<const Tree*, std::string> keys_;
    DistanceMemo memo_;
};

}  // namespace

std::uint64_t brute_force_distance(const Tree& a, const Tree& b) {
    BruteForce ctx(a, b);
    return ctx.dist(&a, &b);
}

std::uint64_t brute_force_distance(const TreeOrEmpty& a, const TreeOrEmpty& b) {
    if (a.is_empty() && b.is_empty()) return 0;
    if (a.is_empty()) return b.size();
    if (b.is_empty()) return a.size();
    return brute_force_distance(a.tree(), b.tree());
}

}  // namespace snt
