#include <doctest.h>

#include "rectree/rectree.hpp"

using namespace rectree;

TEST_CASE("kernels are probability vectors") {
    GeneralCoupling g(WeightSequence::linear());
    for (node_t j = 2; j <= 12; ++j)
        for (node_t i = 1; i < j; ++i) {
            double s = 0;
            for (auto [v, q] : g.kernel(i, j)) {
                CHECK(v >= 1);
                CHECK(v < j);
                CHECK(q >= 0);
                s += q;
            }
            CHECK(s == doctest::Approx(1).epsilon(1e-12));
        }
    CHECK_THROWS(g.kernel(3, 3));
}

TEST_CASE("theta^k relocation probability") {
    ThetaKCoupling c(2, 1);
    CHECK(c.relocation_probability(2, 3) == doctest::Approx(1.0 / 3));
    CHECK(c.relocation_probability(1, 3) == 0);
}

TEST_CASE("merge map") {
    MergeCoupling c(2, 2);
    CHECK(c.source_size(4) == 6);
    std::vector<node_t> img;
    for (node_t x = 1; x <= 6; ++x) img.push_back(c.map(x));
    CHECK(img == std::vector<node_t>{1, 1, 2, 2, 3, 4});
    CHECK(c.representative(2) == 3);
    CHECK(c.representative(4) == 6);
}

TEST_CASE("derived laws equal direct laws for n <= 5") {
    for (node_t n = 1; n <= 5; ++n) {
        CAPTURE(n);
        for (const char* w : {"linear", "recip:1", "hoppe:0.5", "thetak:2,2"}) {
            GeneralCoupling g(WeightSequence::parse(w));
            CHECK(tv_distance(coupled_pmf(g, n), wrt_tree_pmf(g.weights(), n)) < 1e-12);
        }
        for (double th : {0.5, 2.0})
            for (unsigned k : {1u, 2u}) {
                ThetaKCoupling c(th, k);
                CHECK(tv_distance(coupled_pmf(c, n), wrt_tree_pmf(WeightSequence::theta_k(th, k), n)) < 1e-12);
            }
        for (unsigned m : {2u, 3u})
            for (unsigned k : {1u, 2u}) {
                MergeCoupling c(m, k);
                if (c.source_size(n) <= 9)
                    CHECK(tv_distance(mapped_pmf(c, n), wrt_tree_pmf(WeightSequence::theta_k(m, k), n)) < 1e-12);
                InverseMergeCoupling inv(m, k);
                if (inv.source_size(n) <= 9)
                    CHECK(tv_distance(mapped_pmf(inv, n), wrt_tree_pmf(WeightSequence::theta_k(1.0 / m, k), n)) < 1e-12);
            }
        auto w = WeightSequence::parse("thetak:3,2");
        SplitCoupling s(w, 2);
        if (n >= 2) CHECK(tv_distance(split_pmf(s, w, n), wrt_tree_pmf(w, n)) < 1e-12);
    }
}

TEST_CASE("sandwich inequalities on sampled pairs") {
    MergeCoupling mc(2, 3);
    auto w = WeightSequence::parse("thetak:0.5,3");
    SplitCoupling sc(w, 3);
    for (std::size_t r = 0; r < 2000; ++r) {
        RandomStream rng(21, r);
        auto [src, der] = mc.sample(30, rng);
        long ls = leaves(src), ld = leaves(der);
        CHECK(ld >= ls - 3);
        CHECK(ld < ls + 3);
        auto [hs, hd] = sc.sample(30, rng);
        CHECK(leaves(hd) >= leaves(hs));
        CHECK(leaves(hd) <= leaves(hs) + 2);
        CHECK(height(hd) >= height(hs));
        CHECK(height(hd) <= height(hs) + 2);
    }
}

TEST_CASE("split coupling refuses a non-unit tail") {
    SplitCoupling s(WeightSequence::linear(), 2);
    CHECK_THROWS(s.check_tail(5));
}
