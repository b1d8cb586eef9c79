#include "sntree/dag.hpp"

#include <algorithm>
#include <cassert>
#include <charconv>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <unordered_map>

#include "sntree/error.hpp"
#include "sntree/rng.hpp"

namespace snt {

namespace {

// Canonical-key comparison of two classes without materializing key strings.
// A key is "(" + concatenation of child keys sorted ascending + ")". Keys of
// distinct classes are never prefixes of one another (balanced parentheses),
// so comparing the multiplicity-expanded child sequences element-wise mirrors
// byte comparison of the keys; when one sequence is a proper prefix of the
// other, the shorter one continues with ')' and the longer with '(', hence
// the class with more children sorts first.
class ClassOrder {
public:
    // kids[v] must be sorted by this same order before v is used as a parent.
    explicit ClassOrder(const std::vector<std::vector<std::pair<std::uint32_t, std::uint64_t>>>& kids)
        : kids_(kids) {}

    // strict weak order: key(a) < key(b)
    bool less(std::uint32_t a, std::uint32_t b) { return compare(a, b) < 0; }

    int compare(std::uint32_t a, std::uint32_t b) {
        if (a == b) return 0;
        std::uint64_t memo_key = (static_cast<std::uint64_t>(a) << 32) | b;
        auto it = memo_.find(memo_key);
        if (it != memo_.end()) return it->second;

        const auto& ka = kids_[a];
        const auto& kb = kids_[b];
        std::size_t ia = 0, ib = 0;
        std::uint64_t ra = ka.empty() ? 0 : ka[0].second;
        std::uint64_t rb = kb.empty() ? 0 : kb[0].second;
        int result = 0;
        for (;;) {
            bool da = ia >= ka.size();
            bool db = ib >= kb.size();
            if (da && db) {
                // identical child multisets would be the same class
                assert(false && "distinct classes with equal keys");
                result = 0;
                break;
            }
            if (da) { result = 1; break; }   // a exhausted first: key(a) > key(b)
            if (db) { result = -1; break; }
            std::uint32_t ca = ka[ia].first;
            std::uint32_t cb = kb[ib].first;
            if (ca != cb) { result = compare(ca, cb); break; }
            std::uint64_t step = std::min(ra, rb);
            ra -= step;
            rb -= step;
            if (ra == 0 && ++ia < ka.size()) ra = ka[ia].second;
            if (rb == 0 && ++ib < kb.size()) rb = kb[ib].second;
        }
        memo_[memo_key] = result;
        memo_[(static_cast<std::uint64_t>(b) << 32) | a] = -result;
        return result;
    }

private:
    const std::vector<std::vector<std::pair<std::uint32_t, std::uint64_t>>>& kids_;
    std::unordered_map<std::uint64_t, int> memo_;
};

std::string signature_bytes(const std::vector<std::pair<std::uint32_t, std::uint64_t>>& kids) {
    std::string sig;
    sig.reserve(kids.size() * 12);
    for (const auto& [id, count] : kids) {
        for (int s = 0; s < 32; s += 8) sig.push_back(static_cast<char>((id >> s) & 0xff));
        for (int s = 0; s < 64; s += 8) sig.push_back(static_cast<char>((count >> s) & 0xff));
    }
    return sig;
}

}  // namespace

std::uint64_t DagReduction::vertex_count() const noexcept {
    std::uint64_t n = 0;
    for (std::uint32_t m : counts_) n += m;
    return n;
}

std::uint64_t DagReduction::edge_count() const noexcept {
    std::uint64_t n = 0;
    for (const auto& level : adj_)
        for (const auto& kids : level) n += kids.size();
    return n;
}

bool DagReduction::contains(DagVertex v) const noexcept {
    return v.height < counts_.size() && v.index >= 1 && v.index <= counts_[v.height];
}

const std::vector<std::pair<DagVertex, std::uint64_t>>& DagReduction::children(DagVertex v) const {
    if (!contains(v)) throw ContractError("unknown DAG vertex");
    return adj_[v.height][v.index - 1];
}

std::uint64_t DagReduction::label(DagVertex from, DagVertex to) const {
    for (const auto& [child, n] : children(from))
        if (child == to) return n;
    return 0;
}

DagReduction DagReduction::create(
    std::vector<std::uint32_t> class_counts,
    std::vector<std::pair<std::pair<DagVertex, DagVertex>, std::uint64_t>> edges) {
    if (class_counts.empty()) throw ContractError("DAG needs at least one height");
    const std::uint32_t top = static_cast<std::uint32_t>(class_counts.size()) - 1;
    if (class_counts[top] != 1) throw ContractError("DAG must have a unique root class");
    for (std::uint32_t m : class_counts)
        if (m == 0) throw ContractError("every height must have at least one class");

    std::vector<std::uint32_t> offset(class_counts.size() + 1, 0);
    for (std::size_t h = 0; h < class_counts.size(); ++h)
        offset[h + 1] = offset[h] + class_counts[h];
    const std::uint32_t total = offset.back();
    auto flat = [&](DagVertex v) { return offset[v.height] + v.index - 1; };

    std::vector<std::vector<std::pair<std::uint32_t, std::uint64_t>>> kids(total);
    std::vector<std::uint32_t> height_of(total);
    for (std::uint32_t h = 0; h <= top; ++h)
        for (std::uint32_t i = 1; i <= class_counts[h]; ++i) height_of[flat({h, i})] = h;

    for (const auto& [pair, n] : edges) {
        const auto& [from, to] = pair;
        if (from.height >= class_counts.size() || from.index < 1 ||
            from.index > class_counts[from.height] || to.height >= class_counts.size() ||
            to.index < 1 || to.index > class_counts[to.height])
            throw ContractError("edge references an unknown vertex");
        if (to.height >= from.height)
            throw ContractError("edges must go from higher to strictly lower height");
        if (n == 0) throw ContractError("edge labels must be >= 1");
        auto& list = kids[flat(from)];
        for (const auto& [kid, unused] : list)
            if (kid == flat(to)) throw ContractError("duplicate edge");
        list.emplace_back(flat(to), n);
    }

    for (std::uint32_t h = 1; h <= top; ++h) {
        for (std::uint32_t i = 1; i <= class_counts[h]; ++i) {
            bool has_step = false;
            for (const auto& [kid, n] : kids[flat({h, i})])
                if (height_of[kid] == h - 1) has_step = true;
            if (!has_step)
                throw ContractError("every non-leaf class needs a child at the height below");
        }
    }

    // Distinctness: two classes at equal height with the same child multiset
    // would expand to isomorphic trees.
    {
        std::unordered_map<std::string, std::uint32_t> seen;
        for (std::uint32_t h = 0; h <= top; ++h) {
            seen.clear();
            for (std::uint32_t i = 1; i <= class_counts[h]; ++i) {
                auto sorted = kids[flat({h, i})];
                std::sort(sorted.begin(), sorted.end());
                auto [it, fresh] = seen.emplace(signature_bytes(sorted), i);
                if (!fresh)
                    throw ContractError("classes at equal height must be non-isomorphic");
            }
        }
    }

    // Canonical numbering: order every child list and the classes of each
    // height by the canonical key of their expansions.
    ClassOrder order(kids);
    std::vector<std::uint32_t> new_index(total);
    for (std::uint32_t h = 0; h <= top; ++h) {
        for (std::uint32_t i = 1; i <= class_counts[h]; ++i) {
            auto& list = kids[flat({h, i})];
            std::sort(list.begin(), list.end(),
                      [&](const auto& a, const auto& b) { return order.less(a.first, b.first); });
        }
        std::vector<std::uint32_t> ids;
        for (std::uint32_t i = 1; i <= class_counts[h]; ++i) ids.push_back(flat({h, i}));
        std::sort(ids.begin(), ids.end(), [&](std::uint32_t a, std::uint32_t b) {
            return order.less(a, b);
        });
        for (std::uint32_t rank = 0; rank < ids.size(); ++rank) new_index[ids[rank]] = rank + 1;
    }

    DagReduction d;
    d.counts_ = std::move(class_counts);
    d.adj_.resize(d.counts_.size());
    for (std::uint32_t h = 0; h <= top; ++h) d.adj_[h].resize(d.counts_[h]);
    for (std::uint32_t h = 0; h <= top; ++h) {
        for (std::uint32_t i = 1; i <= d.counts_[h]; ++i) {
            std::uint32_t vid = flat({h, i});
            auto& out = d.adj_[h][new_index[vid] - 1];
            out.reserve(kids[vid].size());
            for (const auto& [kid, n] : kids[vid])
                out.emplace_back(DagVertex{height_of[kid], new_index[kid]}, n);
        }
    }
    return d;
}

DagReduction reduce(const Tree& t) {
    // Bottom-up hash-consing: a class is keyed by the multiset of its
    // children's class ids; height is implied by the children.
    std::unordered_map<std::string, std::uint32_t> interned;
    std::vector<std::uint32_t> class_height;
    std::vector<std::vector<std::pair<std::uint32_t, std::uint64_t>>> class_kids;

    struct Frame {
        const Tree* node;
        std::size_t next;
        std::vector<std::uint32_t> kid_classes;
    };
    std::vector<Frame> stack;
    stack.push_back({&t, 0, {}});
    std::uint32_t root_class = 0;
    while (!stack.empty()) {
        Frame& f = stack.back();
        if (f.next < f.node->children().size()) {
            const Tree* child = &f.node->children()[f.next++];
            stack.push_back({child, 0, {}});
            continue;
        }
        std::sort(f.kid_classes.begin(), f.kid_classes.end());
        std::vector<std::pair<std::uint32_t, std::uint64_t>> kids;
        for (std::uint32_t id : f.kid_classes) {
            if (!kids.empty() && kids.back().first == id)
                ++kids.back().second;
            else
                kids.emplace_back(id, 1);
        }
        std::string sig = signature_bytes(kids);
        auto [it, fresh] = interned.emplace(std::move(sig), static_cast<std::uint32_t>(class_height.size()));
        if (fresh) {
            class_height.push_back(f.node->height());
            class_kids.push_back(std::move(kids));
        }
        std::uint32_t id = it->second;
        stack.pop_back();
        if (stack.empty())
            root_class = id;
        else
            stack.back().kid_classes.push_back(id);
    }

    const std::uint32_t top = class_height[root_class];
    std::vector<std::uint32_t> counts(top + 1, 0);
    std::vector<std::uint32_t> provisional(class_height.size());
    for (std::size_t c = 0; c < class_height.size(); ++c)
        provisional[c] = ++counts[class_height[c]];

    std::vector<std::pair<std::pair<DagVertex, DagVertex>, std::uint64_t>> edges;
    for (std::size_t c = 0; c < class_height.size(); ++c) {
        DagVertex from{class_height[c], provisional[c]};
        for (const auto& [kid, n] : class_kids[c])
            edges.push_back({{from, DagVertex{class_height[kid], provisional[kid]}}, n});
    }
    return DagReduction::create(std::move(counts), std::move(edges));
}

Tree expand(const DagReduction& d, DagVertex v) {
    if (!d.contains(v)) throw ContractError("unknown DAG vertex");
    std::vector<std::vector<std::optional<Tree>>> memo(d.height() + 1);
    for (std::uint32_t h = 0; h <= d.height(); ++h) memo[h].resize(d.class_count(h));

    std::function<const Tree&(DagVertex)> build = [&](DagVertex u) -> const Tree& {
        auto& slot = memo[u.height][u.index - 1];
        if (!slot) {
            std::vector<Tree> children;
            for (const auto& [kid, n] : d.children(u)) {
                const Tree& sub = build(kid);
                for (std::uint64_t k = 0; k < n; ++k) children.push_back(sub);
            }
            slot.emplace(std::move(children));
        }
        return *slot;
    };
    return build(v);
}

Tree expand_root(const DagReduction& d) { return expand(d, d.root()); }

MultiplicityMap multiplicities(const DagReduction& d) {
    if (d.class_count(d.height()) != 1)
        throw ContractError("multiplicities: reduction must have a unique root");
    MultiplicityMap mu;
    mu.by_height.resize(d.height() + 1);
    for (std::uint32_t h = 0; h <= d.height(); ++h) mu.by_height[h].assign(d.class_count(h), 0);
    mu.by_height[d.height()][0] = 1;
    // Decreasing height: every in-edge of a vertex comes from strictly above,
    // so each mu value is final before it is propagated.
    for (std::uint32_t h = d.height(); h >= 1; --h) {
        for (std::uint32_t i = 1; i <= d.class_count(h); ++i) {
            std::uint64_t m = mu.by_height[h][i - 1];
            for (const auto& [kid, n] : d.children({h, i}))
                mu.by_height[kid.height][kid.index - 1] += n * m;
        }
    }
    return mu;
}

HeightProfile height_profile(const DagReduction& d) {
    HeightProfile p;
    p.by_height.resize(d.height() + 1);
    for (std::uint32_t h = 0; h <= d.height(); ++h) {
        p.by_height[h].resize(d.class_count(h));
        for (std::uint32_t i = 1; i <= d.class_count(h); ++i) {
            auto& row = p.by_height[h][i - 1];
            row.assign(h, 0);
            for (const auto& [kid, n] : d.children({h, i})) row[kid.height] += n;
        }
    }
    return p;
}

bool is_linear(const DagReduction& d) {
    for (std::uint32_t h = 0; h <= d.height(); ++h)
        if (d.class_count(h) != 1) return false;
    return true;
}

bool is_self_nested_profile(const DagReduction& d) {
    HeightProfile p = height_profile(d);
    for (std::uint32_t h1 = 1; h1 <= d.height(); ++h1) {
        const auto& rows = p.by_height[h1];
        for (std::uint32_t i = 1; i < rows.size(); ++i)
            if (rows[i] != rows[0]) return false;
    }
    return true;
}

bool is_self_nested_naive(const Tree& t) {
    // Definitional check, independent of the reduction machinery: all
    // subtrees of one height must share one canonical key.
    std::vector<std::string> rep(t.height() + 1);
    std::vector<bool> seen(t.height() + 1, false);

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
        std::uint32_t h = f.node->height();
        if (!seen[h]) {
            seen[h] = true;
            rep[h] = key;
        } else if (rep[h] != key) {
            return false;
        }
        stack.pop_back();
        if (!stack.empty()) stack.back().child_keys.push_back(std::move(key));
    }
    return true;
}

LinearDag::LinearDag(std::uint32_t height, std::vector<std::uint64_t> labels)
    : height_(height), labels_(std::move(labels)) {
    std::size_t expected = static_cast<std::size_t>(height) * (height + 1) / 2;
    if (labels_.size() != expected)
        throw ContractError("linear DAG label array has the wrong length");
    for (std::uint32_t h = 1; h <= height_; ++h)
        if (label(h, h - 1) == 0)
            throw ContractError("linear DAG requires N(h, h-1) >= 1");
}

std::uint64_t LinearDag::label(std::uint32_t h1, std::uint32_t h2) const {
    if (h1 > height_ || h2 >= h1) throw ContractError("label index out of range");
    // rows h1 = 1..H, inside a row h2 runs from h1-1 down to 0
    std::size_t row_start = static_cast<std::size_t>(h1 - 1) * h1 / 2;
    return labels_[row_start + (h1 - 1 - h2)];
}

LinearDag to_linear(const DagReduction& d) {
    if (!is_linear(d)) throw ContractError("to_linear: reduction is not linear");
    std::vector<std::uint64_t> labels;
    for (std::uint32_t h1 = 1; h1 <= d.height(); ++h1)
        for (std::uint32_t h2 = h1; h2-- > 0;)
            labels.push_back(d.label({h1, 1}, {h2, 1}));
    return LinearDag(d.height(), std::move(labels));
}

DagReduction from_linear(const LinearDag& l) {
    std::vector<std::uint32_t> counts(l.height() + 1, 1);
    std::vector<std::pair<std::pair<DagVertex, DagVertex>, std::uint64_t>> edges;
    for (std::uint32_t h1 = 1; h1 <= l.height(); ++h1)
        for (std::uint32_t h2 = 0; h2 < h1; ++h2)
            if (std::uint64_t n = l.label(h1, h2))
                edges.push_back({{DagVertex{h1, 1}, DagVertex{h2, 1}}, n});
    return DagReduction::create(std::move(counts), std::move(edges));
}

std::uint64_t linear_size(const LinearDag& l) {
    constexpr unsigned __int128 kLimit = static_cast<unsigned __int128>(1000000000000000000ULL);
    std::vector<unsigned __int128> s(l.height() + 1, 1);
    for (std::uint32_t h1 = 1; h1 <= l.height(); ++h1) {
        unsigned __int128 acc = 1;
        for (std::uint32_t h2 = 0; h2 < h1; ++h2) {
            acc += static_cast<unsigned __int128>(l.label(h1, h2)) * s[h2];
            if (acc > kLimit) throw ContractError("linear DAG expansion too large");
        }
        s[h1] = acc;
    }
    return static_cast<std::uint64_t>(s[l.height()]);
}

Tree expand_linear(const LinearDag& l) { return expand_root(from_linear(l)); }

LinearDag random_linear_dag(std::uint32_t height, std::uint64_t degree, std::uint64_t seed) {
    if (degree < 1) throw ContractError("random_linear_dag: degree must be >= 1");
    Rng rng(seed);
    std::vector<std::uint64_t> labels;
    labels.reserve(static_cast<std::size_t>(height) * (height + 1) / 2);
    std::vector<std::uint64_t> row;
    for (std::uint32_t h1 = 1; h1 <= height; ++h1) {
        row.assign(h1, 0);
        int attempts = 0;
        for (;;) {
            if (++attempts > 10000)
                throw GuardError("random_linear_dag: rejection cap exceeded");
            std::uint64_t sum = 0;
            row[0] = rng.between(1, degree);  // N(h1, h1-1)
            sum = row[0];
            for (std::uint32_t k = 1; k < h1; ++k) {
                row[k] = rng.between(0, degree);
                sum += row[k];
            }
            if (sum <= degree) break;
        }
        for (std::uint64_t v : row) labels.push_back(v);
    }
    return LinearDag(height, std::move(labels));
}

std::string dag_to_text(const DagReduction& d) {
    std::ostringstream out;
    out << "dag H=" << d.height() << "\n";
    for (std::uint32_t h = 0; h <= d.height(); ++h)
        out << "m " << h << " " << d.class_count(h) << "\n";
    for (std::uint32_t h = d.height(); h >= 1; --h)
        for (std::uint32_t i = 1; i <= d.class_count(h); ++i)
            for (const auto& [kid, n] : d.children({h, i}))
                out << "e " << h << "." << i << " " << kid.height << "." << kid.index << " " << n
                    << "\n";
    return out.str();
}

namespace {

struct LineScanner {
    std::string_view text;
    std::size_t pos = 0;

    // Returns the next non-blank line and its start offset, or nullopt.
    std::optional<std::pair<std::string_view, std::size_t>> next() {
        while (pos < text.size()) {
            std::size_t start = pos;
            std::size_t end = text.find('\n', pos);
            if (end == std::string_view::npos) end = text.size();
            std::string_view line = text.substr(start, end - start);
            pos = end + (end < text.size() ? 1 : 0);
            while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.remove_suffix(1);
            if (!line.empty()) return std::make_pair(line, start);
        }
        return std::nullopt;
    }
};

std::uint64_t parse_number(std::string_view token, std::size_t offset) {
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size())
        throw ParseError("expected a number", offset);
    return value;
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && line[i] == ' ') ++i;
        std::size_t start = i;
        while (i < line.size() && line[i] != ' ') ++i;
        if (i > start) fields.push_back(line.substr(start, i - start));
    }
    return fields;
}

DagVertex parse_vertex(std::string_view token, std::size_t offset) {
    std::size_t dot = token.find('.');
    if (dot == std::string_view::npos) throw ParseError("expected <h>.<i>", offset);
    std::uint64_t h = parse_number(token.substr(0, dot), offset);
    std::uint64_t i = parse_number(token.substr(dot + 1), offset);
    if (i == 0) throw ParseError("vertex index must be >= 1", offset);
    return {static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(i)};
}

}  // namespace

DagReduction dag_parse(std::string_view text) {
    LineScanner scanner{text};
    auto header = scanner.next();
    if (!header) throw ParseError("empty input", 0);
    auto [line, offset] = *header;
    if (line.substr(0, 6) != "dag H=") throw ParseError("expected 'dag H=<H>' header", offset);
    std::uint64_t h_top = parse_number(line.substr(6), offset);

    std::vector<std::uint32_t> counts(h_top + 1, 0);
    std::vector<bool> count_set(h_top + 1, false);
    std::vector<std::pair<std::pair<DagVertex, DagVertex>, std::uint64_t>> edges;

    while (auto entry = scanner.next()) {
        auto [l, off] = *entry;
        std::vector<std::string_view> f = split_fields(l);
        if (f[0] == "m") {
            if (f.size() != 3) throw ParseError("malformed m line", off);
            std::uint64_t h = parse_number(f[1], off);
            std::uint64_t m = parse_number(f[2], off);
            if (h > h_top) throw ParseError("height out of range", off);
            if (count_set[h]) throw ParseError("duplicate m line", off);
            if (m == 0) throw ParseError("class count must be >= 1", off);
            counts[h] = static_cast<std::uint32_t>(m);
            count_set[h] = true;
        } else if (f[0] == "e") {
            if (f.size() != 4) throw ParseError("malformed e line", off);
            DagVertex from = parse_vertex(f[1], off);
            DagVertex to = parse_vertex(f[2], off);
            std::uint64_t n = parse_number(f[3], off);
            edges.push_back({{from, to}, n});
        } else {
            throw ParseError("unknown line type", off);
        }
    }
    for (std::uint64_t h = 0; h <= h_top; ++h)
        if (!count_set[h]) throw ParseError("missing m line for a height", text.size());
    return DagReduction::create(std::move(counts), std::move(edges));
}

DagReduction read_dag_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ContractError("cannot open file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return dag_parse(buffer.str());
}

}  // namespace snt
