#include <doctest.h>

#include <numeric>

#include "rectree/rectree.hpp"

using namespace rectree;

TEST_CASE("parent validation") {
    CHECK_THROWS_AS(RecursiveTree({1, 3}), std::invalid_argument);
    CHECK_THROWS_AS(RecursiveTree({0}), std::invalid_argument);
    CHECK(RecursiveTree({1, 2}).size() == 3);
    CHECK(RecursiveTree().size() == 1);
}

TEST_CASE("statistics on the tree of 1 6 3 8 7 2 5 4") {
    auto t = tree_from_word(parse_word("1 6 3 8 7 2 5 4"));
    CHECK(t.parents() == std::vector<node_t>{1, 1, 2, 2, 1, 3, 3});
    CHECK(leaves(t) == 5);
    CHECK(branches(t) == 3);
    CHECK(depth(t, 7) == 2);
    CHECK(distance(t, 4, 5) == 2);
    CHECK(distance(t, 4, 7) == 4);
    CHECK(height(t) == 2);
    CHECK(max_degree(t) == 3);
    CHECK(largest_branch(t) == 3);
    CHECK(nodes_with_at_least_k(t, 2) == 3);
    CHECK(nodes_with_exactly_k(t, 0) == 5);
    CHECK(branch_size_histogram(t) == std::map<node_t, node_t>{{1, 1}, {3, 2}});
}

TEST_CASE("single node and star") {
    RecursiveTree one;
    CHECK(leaves(one) == 0);
    CHECK(height(one) == 0);
    auto s = RecursiveTree::star(5);
    CHECK(leaves(s) == 4);
    CHECK(branches(s) == 4);
    auto c = RecursiveTree::chain(5);
    CHECK(leaves(c) == 1);
    CHECK(height(c) == 4);
    CHECK_THROWS(depth(c, 6));
}

TEST_CASE("text and key round trip") {
    auto t = RecursiveTree({1, 1, 2, 3, 3});
    CHECK(from_text(to_text(t)) == t);
    CHECK(RecursiveTree::from_key(t.key()) == t);
    CHECK(t.key() == "1,1,2,3,3");
    CHECK_THROWS(from_text("3\n2 1\n4 1\n"));
}

TEST_CASE("descendant counts sum to total depth") {
    RandomStream rng(5, 0);
    for (int r = 0; r < 50; ++r) {
        auto t = sample_urt(40, rng);
        auto s = descendant_counts(t);
        auto d = depths(t);
        CHECK(std::accumulate(s.begin(), s.end(), 0L) == std::accumulate(d.begin(), d.end(), 0L));
    }
}
