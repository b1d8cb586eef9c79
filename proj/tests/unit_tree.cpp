#include <doctest.h>

#include <set>

#include "helpers.hpp"
#include "sntree/error.hpp"
#include "sntree/rng.hpp"
#include "sntree/tree.hpp"

using namespace snt;

TEST_CASE("parse basic forms") {
    CHECK(parse("()").size() == 1);
    CHECK(parse("()").height() == 0);

    Tree t = parse("(()())");
    CHECK(t.children().size() == 2);
    CHECK(t.children()[0].is_leaf());
    CHECK(t.children()[1].is_leaf());

    // whitespace carries no meaning
    CHECK(is_isomorphic(parse(" ( () ( ) )\n"), parse("(()())")));
}

TEST_CASE("parse errors name the byte offset") {
    CHECK_THROWS_AS(parse(""), ParseError);
    try {
        parse("(()");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.offset() == 3);
    }
    try {
        parse("(())x");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.offset() == 4);
    }
    try {
        parse(")");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.offset() == 0);
    }
    CHECK_THROWS_AS(parse("(()())(())"), ParseError);  // two trees on one line
}

TEST_CASE("canonical key sorts child keys ascending") {
    CHECK(canonical_key(parse("()")) == "()");
    CHECK(canonical_key(parse("(()(()))")) == "((())())");
    CHECK(canonical_key(parse("((())())")) == "((())())");  // fixed point
}

TEST_CASE("isomorphism via canonical keys") {
    Tree t = parse("(()(())())");
    CHECK(is_isomorphic(t, t));
    CHECK(is_isomorphic(parse("(()(()))"), parse("((())())")));
    CHECK_FALSE(is_isomorphic(parse("()"), parse("(())")));
}

TEST_CASE("round trip: parse of the canonical key is isomorphic") {
    Rng rng(2024);
    for (int k = 0; k < 200; ++k) {
        Tree t = random_tree(1 + rng.below(80), rng.next());
        CHECK(is_isomorphic(parse(canonical_key(t)), t));
        CHECK(is_isomorphic(parse(to_text(t)), t));
    }
}

TEST_CASE("canonical key is invariant under child permutation") {
    Rng rng(99);
    for (int k = 0; k < 100; ++k) {
        Tree t = random_tree(1 + rng.below(60), rng.next());
        Tree perm = testutil::shuffled(t, rng);
        CHECK(canonical_key(t) == canonical_key(perm));
    }
}

TEST_CASE("vertex statistics") {
    CHECK(size(parse("()")) == 1);
    CHECK(height(parse("()")) == 0);
    CHECK(outdegree(parse("()")) == 0);
    CHECK(leaf_count(parse("()")) == 1);

    CHECK(size(parse("(()())")) == 3);
    CHECK(height(parse("(()())")) == 1);
    CHECK(outdegree(parse("(()())")) == 2);
    CHECK(leaf_count(parse("(()())")) == 2);

    CHECK(size(parse("((()))")) == 3);
    CHECK(height(parse("((()))")) == 2);
    CHECK(outdegree(parse("((()))")) == 1);
    CHECK(leaf_count(parse("((()))")) == 1);
}

TEST_CASE("statistics agree with the recursive definitions") {
    Rng rng(5150);
    for (int k = 0; k < 1000; ++k) {
        Tree t = random_tree(1 + rng.below(120), rng.next());
        CHECK(size(t) == testutil::naive_size(t));
        CHECK(height(t) == testutil::naive_height(t));
        CHECK(outdegree(t) == testutil::naive_outdegree(t));
        CHECK(leaf_count(t) == testutil::naive_leaves(t));
    }
}

TEST_CASE("child forest is key-sorted") {
    CHECK(child_forest(parse("()")).empty());

    auto forest = child_forest(parse("(()())"));
    REQUIRE(forest.size() == 2);
    CHECK(canonical_key(forest[0]) == "()");
    CHECK(canonical_key(forest[1]) == "()");

    forest = child_forest(parse("(()(()))"));
    REQUIRE(forest.size() == 2);
    CHECK(canonical_key(forest[0]) == "(())");
    CHECK(canonical_key(forest[1]) == "()");

    // size identity through the forest
    Rng rng(11);
    for (int k = 0; k < 50; ++k) {
        Tree t = random_tree(1 + rng.below(60), rng.next());
        std::uint64_t total = 1;
        for (const Tree& c : child_forest(t)) total += c.size();
        CHECK(total == t.size());
    }
}

TEST_CASE("random tree growth") {
    CHECK(to_text(random_tree(1, 123)) == "()");
    CHECK(to_text(random_tree(2, 123)) == "(())");
    CHECK_THROWS_AS(random_tree(0, 5), ContractError);

    Tree t = random_tree(50, 7);
    CHECK(t.size() == 50);
    CHECK(t.height() >= 1);

    Rng rng(31337);
    for (std::uint64_t n : {3ULL, 17ULL, 256ULL, 4096ULL, 10000ULL})
        CHECK(random_tree(n, rng.next()).size() == n);

    // fixed seed, fixed tree
    CHECK(to_text(random_tree(40, 8)) == to_text(random_tree(40, 8)));
}
