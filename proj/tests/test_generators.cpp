#include <doctest.h>

#include <cmath>

#include "rectree/rectree.hpp"

using namespace rectree;

namespace {

// Empirical TV of a sampler against an exact pmf.
template <class F>
double sampler_tv(const TreePmf& exact, F draw, std::size_t R, std::uint64_t seed) {
    TreePmf emp;
    for (std::size_t r = 0; r < R; ++r) {
        RandomStream rng(seed, r);
        emp.add(draw(rng).key(), 1.0 / R);
    }
    return tv_distance(emp, exact);
}

}  // namespace

TEST_CASE("random stream is a pure function of (seed, substream)") {
    RandomStream a(11, 3), b(11, 3), c(11, 4);
    std::uint64_t x = a(), y = b(), z = c();
    CHECK(x == y);
    CHECK(x != z);
    for (int i = 0; i < 1000; ++i) {
        double u = a.uniform();
        CHECK(u >= 0);
        CHECK(u < 1);
        CHECK(a.below(7) < 7);
    }
}

TEST_CASE("weight presets") {
    CHECK(WeightSequence::parse("const")(5) == 1);
    CHECK(WeightSequence::parse("hoppe:2")(1) == 2);
    CHECK(WeightSequence::parse("hoppe:2")(2) == 1);
    auto tk = WeightSequence::parse("thetak:3,2");
    CHECK(tk(2) == 3);
    CHECK(tk(3) == 1);
    CHECK(WeightSequence::parse("linear")(4) == 4);
    CHECK(WeightSequence::parse("power:2")(3) == 9);
    CHECK(WeightSequence::parse("recip:2")(2) == doctest::Approx(0.25));
    CHECK(WeightSequence::parse("log")(3) == doctest::Approx(std::log(4.0)));
    CHECK(WeightSequence::parse("geom:0.5")(3) == doctest::Approx(0.25));
    CHECK(WeightSequence::parse("linear").prefix_sum(10) == 55);
    CHECK_THROWS(WeightSequence::parse("bogus"));
    CHECK_THROWS(WeightSequence::parse("hoppe:-1"));
}

TEST_CASE("shuffle parameters") {
    auto p = ShuffleParams::parse("0.2,0,0.8");
    CHECK(p.a() == 2);
    CHECK(p.p(2) == doctest::Approx(0.8));
    CHECK(ShuffleParams::uniform(3).is_uniform());
    CHECK_FALSE(p.is_uniform());
    CHECK_THROWS(ShuffleParams::parse("0.5,0.6"));
    CHECK_THROWS(ShuffleParams::parse("-0.5,1.5"));
}

TEST_CASE("digits to word is a stable sort") {
    DigitAssignment d{{2, 1, 1, 2, 1, 2}};
    auto w = shuffle_from_digits(d, 2);
    CHECK(to_string(w) == "5 2 3 6 4 7");
    CHECK(to_string(shuffle_from_digits(DigitAssignment{{1, 2, 2, 1, 2, 1, 1}})) == "2 6 7 3 8 4 5");
}

TEST_CASE("samplers produce increasing trees of the right size") {
    RandomStream rng(3, 0);
    for (node_t n : {1u, 2u, 17u}) {
        CHECK(sample_urt(n, rng).size() == n);
        CHECK(sample_hoppe(0.5, n, rng).size() == n);
        CHECK(sample_theta_k(2, 3, n, rng).size() == n);
        CHECK(sample_wrt(WeightSequence::linear(), n, rng).size() == n);
        CHECK(sample_brt(ShuffleParams::uniform(3), n, rng).size() == n);
        CHECK(sample_shuffle_by_cut_and_riffle(ShuffleParams::uniform(3), n, rng).n == n);
    }
}

TEST_CASE("samplers match exact laws in total variation") {
    const std::size_t R = 100000;
    CHECK(sampler_tv(wrt_tree_pmf(WeightSequence::constant(), 5), [](RandomStream& r) { return sample_urt(5, r); }, R, 1) <
          0.01);
    auto hw = WeightSequence::hoppe(2);
    CHECK(sampler_tv(wrt_tree_pmf(hw, 5), [&](RandomStream& r) { return sample_weighted(hw, 5, r); }, R, 2) < 0.01);
    auto tk = WeightSequence::theta_k(0.5, 2);
    CHECK(sampler_tv(wrt_tree_pmf(tk, 5), [&](RandomStream& r) { return sample_weighted(tk, 5, r); }, R, 3) < 0.01);
    auto lin = WeightSequence::linear();
    CHECK(sampler_tv(wrt_tree_pmf(lin, 5), [&](RandomStream& r) { return sample_wrt(lin, 5, r); }, R, 4) < 0.01);
    auto p = ShuffleParams::parse("0.3,0.7");
    CHECK(sampler_tv(brt_tree_pmf(p, 5), [&](RandomStream& r) { return sample_brt(p, 5, r); }, R, 5) < 0.01);
    auto q = ShuffleParams::uniform(2);
    CHECK(sampler_tv(brt_tree_pmf(q, 4),
                     [&](RandomStream& r) { return tree_from_word(sample_shuffle_by_cut_and_riffle(q, 4, r)); }, R, 6) <
          0.01);
}

TEST_CASE("pile sizes are multinomial") {
    // a = 2, three cards: P(first pile holds one card) = 3/8
    const std::size_t R = 200000;
    std::size_t hits = 0;
    for (std::size_t r = 0; r < R; ++r) {
        RandomStream rng(9, r);
        hits += sample_pile_sizes(ShuffleParams::uniform(2), 3, rng)[0] == 1;
    }
    double f = static_cast<double>(hits) / R;
    CHECK(std::abs(f - 0.375) < 4 * std::sqrt(0.375 * 0.625 / R));
}
