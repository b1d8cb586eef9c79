#include "sntree/approximation.hpp"

#include <algorithm>
#include <atomic>
#include <vector>

#include "sntree/edit_distance.hpp"
#include "sntree/error.hpp"

namespace snt {

LinearDag average_to_linear(const DagReduction& d, AveragingStats* stats) {
    const std::uint32_t top = d.height();
    std::uint64_t visits = 0;

    // Fused pass: multiplicities propagate downward while the weighted sums
    // of the height profile accumulate, so each edge is touched exactly once.
    // Sources run in decreasing height order, which makes every multiplicity
    // final before its out-edges fire.
    std::vector<std::vector<std::uint64_t>> mu(top + 1);
    for (std::uint32_t h = 0; h <= top; ++h) mu[h].assign(d.class_count(h), 0);
    mu[top][0] = 1;

    std::vector<std::vector<std::uint64_t>> weighted(top + 1);  // weighted[h1][h2]
    std::vector<std::uint64_t> weight_total(top + 1, 0);        // sum of mu at h1
    for (std::uint32_t h = 1; h <= top; ++h) weighted[h].assign(h, 0);

    for (std::uint32_t h1 = top; h1 >= 1; --h1) {
        for (std::uint32_t i = 1; i <= d.class_count(h1); ++i) {
            std::uint64_t m = mu[h1][i - 1];
            weight_total[h1] += m;
            for (const auto& [kid, n] : d.children({h1, i})) {
                ++visits;
                mu[kid.height][kid.index - 1] += n * m;
                weighted[h1][kid.height] += m * n;
            }
        }
    }
    if (stats) stats->edge_visits = visits;

    std::vector<std::uint64_t> labels;
    labels.reserve(static_cast<std::size_t>(top) * (top + 1) / 2);
    for (std::uint32_t h1 = 1; h1 <= top; ++h1) {
        for (std::uint32_t h2 = h1; h2-- > 0;) {
            // nearest integer with ties toward zero: ceil(p/q - 1/2); on an
            // exact half both integers minimize the weighted squared error
            // and the smaller one is taken
            std::uint64_t p = weighted[h1][h2];
            std::uint64_t q = weight_total[h1];
            labels.push_back((2 * p + q - 1) / (2 * q));
        }
    }
    return LinearDag(top, std::move(labels));
}

Tree approximate_tree(const Tree& t) { return expand_linear(average_to_linear(reduce(t))); }

ApproximationReport approximation_report(const Tree& t) {
    DagReduction d = reduce(t);
    LinearDag approx = average_to_linear(d);
    ApproximationReport report;
    report.size_in = t.size();
    report.size_out = linear_size(approx);
    report.delta = edit_distance_dag(d, from_linear(approx));
    report.height = t.height();
    return report;
}

std::uint64_t worst_case_bound(std::uint32_t height, std::uint64_t degree) {
    if (height < 2) throw ContractError("worst_case_bound: height must be >= 2");
    if (degree < 1) throw ContractError("worst_case_bound: degree must be >= 1");
    unsigned __int128 value =
        static_cast<unsigned __int128>(degree / 2) * ((degree + 1) / 2);
    for (std::uint32_t h = 2; h < height; ++h) {
        value *= degree;
        if (value > static_cast<unsigned __int128>(1) << 100)
            throw ContractError("worst_case_bound: value overflows");
    }
    if (value > UINT64_MAX) throw ContractError("worst_case_bound: value overflows");
    return static_cast<std::uint64_t>(value);
}

namespace {

Tree star(std::uint64_t leaves) {
    std::vector<Tree> kids(leaves);
    return Tree(std::move(kids));
}

// Height-h tree: d children per internal vertex except the deepest internal
// level, which carries `fringe` leaves.
Tree fringe_pattern(std::uint32_t h, std::uint64_t degree, std::uint64_t fringe) {
    Tree current = star(fringe);
    for (std::uint32_t level = 2; level <= h; ++level) {
        std::vector<Tree> kids(degree, current);
        current = Tree(std::move(kids));
    }
    return current;
}

}  // namespace

Tree build_worst_case_tree(std::uint32_t height, std::uint64_t degree) {
    if (height < 2) throw ContractError("build_worst_case_tree: height must be >= 2");
    if (degree < 2) throw ContractError("build_worst_case_tree: degree must be >= 2");
    {
        unsigned __int128 size_a = 1 + degree / 2;
        unsigned __int128 size_b = 1 + degree;
        for (std::uint32_t h = 2; h < height; ++h) {
            size_a = 1 + degree * size_a;
            size_b = 1 + degree * size_b;
            if (size_b > 100000000ULL)
                throw ContractError("build_worst_case_tree: tree would be too large");
        }
        unsigned __int128 total = 1 + ((degree + 1) / 2) * size_a + (degree / 2) * size_b;
        if (total > 100000000ULL)
            throw ContractError("build_worst_case_tree: tree would be too large");
    }
    Tree a = fringe_pattern(height - 1, degree, degree / 2);
    Tree b = fringe_pattern(height - 1, degree, degree);
    std::vector<Tree> kids;
    for (std::uint64_t k = 0; k < (degree + 1) / 2; ++k) kids.push_back(a);
    for (std::uint64_t k = 0; k < degree / 2; ++k) kids.push_back(b);
    return Tree(std::move(kids));
}

namespace {

// Candidate linear DAGs with height <= max_height and labels <= max_label,
// ordered by height then by label array (the storage order, so ordinals are
// also the tie-break order). Labels decode as mixed-radix digits: the first
// label of each row is in [1, L], the others in [0, L].
struct CandidateSpace {
    std::uint32_t max_height;
    std::uint64_t max_label;
    std::vector<std::uint64_t> count_by_height;
    std::uint64_t total = 0;

    CandidateSpace(std::uint32_t h_max, std::uint64_t label_max)
        : max_height(h_max), max_label(label_max) {
        constexpr std::uint64_t kGuard = 1000000;
        for (std::uint32_t h = 0; h <= max_height; ++h) {
            unsigned __int128 count = 1;
            for (std::uint32_t h1 = 1; h1 <= h; ++h1) {
                count *= max_label;
                for (std::uint32_t k = 1; k < h1; ++k) count *= max_label + 1;
                if (count > kGuard)
                    throw GuardError("min_self_nested_distance: candidate space exceeds 10^6");
            }
            count_by_height.push_back(static_cast<std::uint64_t>(count));
            total += count_by_height.back();
            if (total > kGuard)
                throw GuardError("min_self_nested_distance: candidate space exceeds 10^6");
        }
    }

    LinearDag decode(std::uint64_t ordinal) const {
        std::uint32_t h = 0;
        while (ordinal >= count_by_height[h]) ordinal -= count_by_height[h++];
        std::vector<std::uint64_t> labels(static_cast<std::size_t>(h) * (h + 1) / 2);
        std::uint64_t rest = count_by_height[h];
        std::size_t pos = 0;
        for (std::uint32_t h1 = 1; h1 <= h; ++h1) {
            for (std::uint32_t k = 0; k < h1; ++k, ++pos) {
                std::uint64_t radix = (k == 0) ? max_label : max_label + 1;
                rest /= radix;
                std::uint64_t digit = ordinal / rest;
                ordinal %= rest;
                labels[pos] = (k == 0) ? digit + 1 : digit;
            }
        }
        return LinearDag(h, std::move(labels));
    }
};

std::pair<std::uint64_t, LinearDag> search_min_self_nested(const Tree& t,
                                                           std::uint32_t max_height,
                                                           std::uint64_t max_label,
                                                           bool parallel) {
    if (max_label < 1) throw ContractError("min_self_nested_distance: max_label must be >= 1");
    CandidateSpace space(max_height, max_label);
    DagReduction target = reduce(t);
    const std::uint64_t target_size = t.size();

    struct Best {
        std::uint64_t dist = UINT64_MAX;
        std::uint64_t ordinal = UINT64_MAX;
        LinearDag dag;
    };
    Best best;
    std::atomic<std::uint64_t> shared_bound{UINT64_MAX};

    auto evaluate = [&](std::uint64_t ordinal, Best& local) {
        LinearDag candidate = space.decode(ordinal);
        std::uint64_t csize = linear_size(candidate);
        std::uint64_t gap = csize > target_size ? csize - target_size : target_size - csize;
        // |size difference| is a distance lower bound; strictly worse
        // candidates are skipped, possible ties are still evaluated.
        std::uint64_t bound = shared_bound.load(std::memory_order_relaxed);
        if (bound != UINT64_MAX && gap > bound) return;
        std::uint64_t dist = edit_distance_dag(target, from_linear(candidate));
        if (dist < local.dist || (dist == local.dist && ordinal < local.ordinal)) {
            local.dist = dist;
            local.ordinal = ordinal;
            local.dag = std::move(candidate);
        }
        std::uint64_t seen = shared_bound.load(std::memory_order_relaxed);
        while (dist < seen &&
               !shared_bound.compare_exchange_weak(seen, dist, std::memory_order_relaxed)) {
        }
    };

    if (parallel) {
        const std::int64_t total = static_cast<std::int64_t>(space.total);
#pragma omp parallel
        {
            Best local;
#pragma omp for schedule(dynamic, 64)
            for (std::int64_t ordinal = 0; ordinal < total; ++ordinal)
                evaluate(static_cast<std::uint64_t>(ordinal), local);
#pragma omp critical
            {
                if (local.dist < best.dist ||
                    (local.dist == best.dist && local.ordinal < best.ordinal))
                    best = std::move(local);
            }
        }
    } else {
        for (std::uint64_t ordinal = 0; ordinal < space.total; ++ordinal)
            evaluate(ordinal, best);
    }
    return {best.dist, std::move(best.dag)};
}

}  // namespace

std::pair<std::uint64_t, LinearDag> min_self_nested_distance(const Tree& t,
                                                             std::uint32_t max_height,
                                                             std::uint64_t max_label) {
    return search_min_self_nested(t, max_height, max_label, true);
}

std::pair<std::uint64_t, LinearDag> min_self_nested_distance_serial(const Tree& t,
                                                                    std::uint32_t max_height,
                                                                    std::uint64_t max_label) {
    return search_min_self_nested(t, max_height, max_label, false);
}

}  // namespace snt
