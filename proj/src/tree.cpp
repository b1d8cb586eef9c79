#include "sntree/tree.hpp"

#include <algorithm>
#include <fstream>
#include <utility>

#include "sntree/error.hpp"
#include "sntree/rng.hpp"

namespace snt {

Tree::Tree(std::vector<Tree> children) : children_(std::move(children)), size_(1), height_(0) {
    for (const Tree& c : children_) {
        size_ += c.size_;
        height_ = std::max(height_, c.height_ + 1);
    }
}

namespace {

bool is_space(char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\v' || c == '\f';
}

}  // namespace

Tree parse(std::string_view text) {
    std::size_t pos = 0;
    auto skip_ws = [&] {
        while (pos < text.size() && is_space(text[pos])) ++pos;
    };

    skip_ws();
    if (pos == text.size()) throw ParseError("empty input", pos);
    if (text[pos] != '(') throw ParseError("expected '('", pos);

    // One frame per currently open node.
    std::vector<std::vector<Tree>> stack;
    stack.emplace_back();
    ++pos;

    for (;;) {
        skip_ws();
        if (pos == text.size()) throw ParseError("unbalanced input, expected ')'", pos);
        char c = text[pos];
        if (c == '(') {
            stack.emplace_back();
            ++pos;
        } else if (c == ')') {
            Tree done(std::move(stack.back()));
            stack.pop_back();
            ++pos;
            if (stack.empty()) {
                skip_ws();
                if (pos != text.size()) throw ParseError("trailing text after tree", pos);
                return done;
            }
            stack.back().push_back(std::move(done));
        } else {
            throw ParseError("unexpected character", pos);
        }
    }
}

std::string to_text(const Tree& t) {
    std::string out;
    out.reserve(2 * t.size());
    // Explicit stack; input depth is not bounded.
    struct Frame {
        const Tree* node;
        std::size_t next;
    };
    std::vector<Frame> stack{{&t, 0}};
    out.push_back('(');
    while (!stack.empty()) {
        Frame& f = stack.back();
        if (f.next < f.node->children().size()) {
            const Tree* child = &f.node->children()[f.next++];
            out.push_back('(');
            stack.push_back({child, 0});
        } else {
            out.push_back(')');
            stack.pop_back();
        }
    }
    return out;
}

std::string canonical_key(const Tree& t) {
    // Post-order with an explicit stack. Each frame collects its children's
    // keys, sorts them and folds them into one string; child keys are freed
    // as soon as they are folded, so live memory stays linear in tree size.
    struct Frame {
        const Tree* node;
        std::size_t next;
        std::vector<std::string> child_keys;
    };
    std::vector<Frame> stack;
    stack.push_back({&t, 0, {}});
    std::string result;
    while (!stack.empty()) {
        Frame& f = stack.back();
        if (f.next < f.node->children().size()) {
            const Tree* child = &f.node->children()[f.next++];
            stack.push_back({child, 0, {}});
            continue;
        }
        std::sort(f.child_keys.begin(), f.child_keys.end());
        std::string key;
        std::size_t len = 2;
        for (const auto& k : f.child_keys) len += k.size();
        key.reserve(len);
        key.push_back('(');
        for (const auto& k : f.child_keys) key += k;
        key.push_back(')');
        stack.pop_back();
        if (stack.empty()) {
            result = std::move(key);
        } else {
            stack.back().child_keys.push_back(std::move(key));
        }
    }
    return result;
}

bool is_isomorphic(const Tree& a, const Tree& b) {
    if (a.size() != b.size() || a.height() != b.height()) return false;
    return canonical_key(a) == canonical_key(b);
}

std::uint64_t size(const Tree& t) { return t.size(); }
std::uint32_t height(const Tree& t) { return t.height(); }

std::uint64_t outdegree(const Tree& t) {
    std::uint64_t best = 0;
    std::vector<const Tree*> stack{&t};
    while (!stack.empty()) {
        const Tree* node = stack.back();
        stack.pop_back();
        best = std::max<std::uint64_t>(best, node->children().size());
        for (const Tree& c : node->children()) stack.push_back(&c);
    }
    return best;
}

std::uint64_t leaf_count(const Tree& t) {
    std::uint64_t n = 0;
    std::vector<const Tree*> stack{&t};
    while (!stack.empty()) {
        const Tree* node = stack.back();
        stack.pop_back();
        if (node->is_leaf()) ++n;
        for (const Tree& c : node->children()) stack.push_back(&c);
    }
    return n;
}

std::vector<Tree> child_forest(const Tree& t) {
    std::vector<std::pair<std::string, const Tree*>> keyed;
    keyed.reserve(t.children().size());
    for (const Tree& c : t.children()) keyed.emplace_back(canonical_key(c), &c);
    std::sort(keyed.begin(), keyed.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<Tree> out;
    out.reserve(keyed.size());
    for (const auto& [key, node] : keyed) out.push_back(*node);
    return out;
}

Tree random_tree(std::uint64_t n, std::uint64_t seed) {
    if (n == 0) throw ContractError("random_tree: size must be >= 1");
    Rng rng(seed);
    std::vector<std::uint64_t> parent(n, 0);
    for (std::uint64_t v = 1; v < n; ++v) parent[v] = rng.below(v);

    // Children always have larger indices than their parent, so assembling in
    // reverse index order finishes every subtree before it is attached.
    std::vector<std::vector<Tree>> pending(n);
    for (std::uint64_t v = n; v-- > 1;) {
        pending[parent[v]].emplace_back(std::move(pending[v]));
    }
    return Tree(std::move(pending[0]));
}

std::vector<Tree> read_tree_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ContractError("cannot open file: " + path);
    std::vector<Tree> trees;
    std::string line;
    while (std::getline(in, line)) {
        bool blank = true;
        for (char c : line)
            if (!is_space(c)) blank = false;
        if (blank) continue;
        trees.push_back(parse(line));
    }
    return trees;
}

Tree read_single_tree(const std::string& path) {
    std::vector<Tree> trees = read_tree_file(path);
    if (trees.empty()) throw ContractError("no tree found in file: " + path);
    if (trees.size() > 1) throw ContractError("expected exactly one tree in file: " + path);
    return std::move(trees.front());
}

}  // namespace snt
