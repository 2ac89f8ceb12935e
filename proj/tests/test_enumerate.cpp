#include <doctest.h>

#include <cmath>

#include "rectree/rectree.hpp"

using namespace rectree;

TEST_CASE("tree counts") {
    std::size_t f = 1;
    for (node_t n = 1; n <= 8; ++n) {
        if (n > 1) f *= n - 1;
        CHECK(enumerate_trees(n).size() == f);
    }
    CHECK_THROWS_AS(enumerate_trees(10), GuardError);
}

TEST_CASE("two-pile law at n = 4") {
    auto pmf = brt_tree_pmf(ShuffleParams::uniform(2), 4);
    CHECK(pmf.size() == 5);
    CHECK(pmf["1,2,3"] == doctest::Approx(0.5).epsilon(1e-14));
    for (const char* k : {"1,1,2", "1,1,3", "1,2,1", "1,2,2"}) CHECK(pmf[k] == doctest::Approx(0.125).epsilon(1e-14));
    CHECK(pmf["1,1,1"] == 0);
    CHECK(pmf.total() == doctest::Approx(1).epsilon(1e-14));
}

TEST_CASE("digit and riffle constructions give one word law") {
    for (const auto& p : {ShuffleParams::uniform(2), ShuffleParams::uniform(3), ShuffleParams::parse("0.2,0.3,0.5")})
        for (node_t n = 1; n <= 6; ++n)
            CHECK(tv_distance(brt_word_pmf_by_digits(p, n), brt_word_pmf_by_riffle(p, n)) < 1e-12);
}

TEST_CASE("position of the maximum at a = 2, n = 3") {
    auto d = statistic_pmf(brt_tree_pmf(ShuffleParams::uniform(2), 3), Statistic::parse("position"));
    CHECK(d[2] == doctest::Approx(0.25));
    CHECK(d[3] == doctest::Approx(0.75));
}

TEST_CASE("hoppe attachment at n = 3") {
    auto pmf = wrt_tree_pmf(WeightSequence::hoppe(2), 3);
    CHECK(pmf["1,1"] == doctest::Approx(2.0 / 3));
    CHECK(pmf["1,2"] == doctest::Approx(1.0 / 3));
}

TEST_CASE("pmfs sum to one") {
    for (node_t n = 1; n <= 7; ++n) {
        CHECK(wrt_tree_pmf(WeightSequence::linear(), n).total() == doctest::Approx(1).epsilon(1e-12));
        CHECK(brt_tree_pmf(ShuffleParams::parse("0.1,0.9"), n).total() == doctest::Approx(1).epsilon(1e-12));
    }
}

TEST_CASE("one pile gives the chain") {
    auto pmf = brt_tree_pmf(ShuffleParams::uniform(1), 5);
    CHECK(pmf.size() == 1);
    CHECK(pmf[RecursiveTree::chain(5).key()] == doctest::Approx(1));
}

TEST_CASE("moments and tv") {
    ValuePmf v;
    v.add(0, 0.5);
    v.add(2, 0.5);
    auto m = moments(v);
    CHECK(m.mean == 1);
    CHECK(m.var == 1);
    TreePmf a, b;
    a.add("x", 1);
    b.add("y", 1);
    CHECK(tv_distance(a, b) == 1);
    CHECK(tv_distance(a, a) == 0);
}

TEST_CASE("digit guard") {
    EnumGuards g;
    g.max_digit_vectors = 100;
    CHECK_THROWS_AS(brt_tree_pmf(ShuffleParams::uniform(3), 7, g), GuardError);
}
