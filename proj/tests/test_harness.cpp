#include <doctest.h>

#include <cmath>
#include <random>

#include "rectree/rectree.hpp"

using namespace rectree;

namespace {

ExperimentConfig config(ModelSpec m, const std::string& stat, node_t n, std::size_t R, std::uint64_t seed) {
    ExperimentConfig c;
    c.model = std::move(m);
    c.stat = Statistic::parse(stat);
    c.n = n;
    c.R = R;
    c.seed = seed;
    c.threads = 1;
    return c;
}

}  // namespace

TEST_CASE("normal cdf and kolmogorov distance") {
    CHECK(normal_cdf(0) == doctest::Approx(0.5));
    CHECK(normal_cdf(1.959963985) == doctest::Approx(0.975).epsilon(1e-9));
    CHECK(kolmogorov_distance({0.0}) == doctest::Approx(0.5));
    std::mt19937_64 eng(1);
    std::normal_distribution<double> g;
    std::vector<double> z(20000);
    for (auto& v : z) v = g(eng);
    CHECK(kolmogorov_distance(z) < 0.015);
    for (auto& v : z) v += 0.5;
    CHECK(kolmogorov_distance(z) > 0.15);
}

TEST_CASE("summaries") {
    auto s = summarize({1, 2, 3, 4});
    CHECK(s.mean == 2.5);
    CHECK(s.var == doctest::Approx(5.0 / 3));
}

TEST_CASE("results do not depend on the thread count") {
    auto c = config(ModelSpec::brt(ShuffleParams::uniform(3)), "branches", 50, 3000, 77);
    auto base = sample_statistic(c);
    for (unsigned t : {2u, 4u, 8u}) {
        c.threads = t;
        CHECK(sample_statistic(c) == base);
        CHECK(csv_row(run_moment_check(c)) == csv_row(run_moment_check(config(c.model, "branches", 50, 3000, 77))));
    }
}

TEST_CASE("moment check passes for correct samplers") {
    CHECK(run_moment_check(config(ModelSpec::urt(), "leaves", 100, 20000, 1)).pass.value());
    CHECK(run_moment_check(config(ModelSpec::brt(ShuffleParams::uniform(3)), "branches", 50, 20000, 2)).pass.value());
    CHECK(run_moment_check(config(ModelSpec::hoppe(2), "depth", 200, 20000, 3)).pass.value());
}

TEST_CASE("moment check catches a wrong oracle") {
    // a 2-pile sampler checked against the 3-pile mean must fail
    auto c = config(ModelSpec::brt(ShuffleParams::uniform(2)), "branches", 50, 20000, 4);
    auto x = summarize(sample_statistic(c));
    double z = (x.mean - brt_branches_mean(ShuffleParams::uniform(3), 50)) * std::sqrt(20000.0 / x.var);
    CHECK(std::abs(z) > 4);
}

TEST_CASE("clt check refuses zero variance") {
    CHECK_THROWS_AS(run_clt_check(config(ModelSpec::brt(ShuffleParams::uniform(1)), "leaves", 20, 100, 1)),
                    std::invalid_argument);
}

TEST_CASE("tv check") {
    auto r = run_tv_check(config(ModelSpec::brt(ShuffleParams::uniform(2)), "leaves", 4, 100000, 5));
    CHECK(r.tv.value() < 0.01);
    CHECK(r.pass.value());
}

TEST_CASE("concentration check") {
    auto c = config(ModelSpec::thetak(2, 3), "leaves", 500, 5000, 6);
    ExperimentResult s;
    auto pts = run_concentration_check(c, {0, 10, 20, 40}, &s);
    for (const auto& p : pts) CHECK(p.ok);
    CHECK(pts[0].bound >= 1);
    CHECK(s.pass.value());
    CHECK_THROWS(run_concentration_check(config(ModelSpec::urt(), "leaves", 10, 10, 1), {1}));
}

TEST_CASE("branch variance flags") {
    CHECK(wrt_branch_variance_flag(WeightSequence::linear(), 1000).bounded);
    CHECK_FALSE(wrt_branch_variance_flag(WeightSequence::constant(), 1000).bounded);
    CHECK_FALSE(wrt_branch_variance_flag(WeightSequence::parse("recip:2"), 1000).bounded);
}

TEST_CASE("csv layout") {
    CHECK(std::string(csv_header()) ==
          "model,params,n,stat,R,seed,sample_mean,sample_var,oracle_mean,oracle_var,z_mean,d_K,tv,pass");
    ExperimentResult r;
    r.model = "urt";
    r.stat = "leaves";
    r.n = 3;
    r.R = 2;
    r.seed = 9;
    r.sample_mean = 1.5;
    r.sample_var = 0.5;
    CHECK(csv_row(r) == "urt,,3,leaves,2,9,1.5,0.5,,,,,,report");
}
