#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "enumerate.hpp"
#include "generators.hpp"
#include "oracles.hpp"
#include "rng.hpp"
#include "stats.hpp"

namespace rectree {

// ---------------------------------------------------------------- models

struct ModelSpec {
    enum class Family { urt, wrt, hoppe, thetak, brt };

    Family family = Family::urt;
    std::optional<WeightSequence> weights;  // wrt/hoppe/thetak
    std::optional<ShuffleParams> params;    // brt

    static ModelSpec urt() { return {}; }
    static ModelSpec wrt(WeightSequence w) {
        ModelSpec m;
        m.family = Family::wrt;
        m.weights = std::move(w);
        return m;
    }
    static ModelSpec hoppe(double theta) {
        ModelSpec m;
        m.family = Family::hoppe;
        m.weights = WeightSequence::hoppe(theta);
        return m;
    }
    static ModelSpec thetak(double theta, unsigned k) {
        ModelSpec m;
        m.family = Family::thetak;
        m.weights = WeightSequence::theta_k(theta, k);
        return m;
    }
    static ModelSpec brt(ShuffleParams p) {
        ModelSpec m;
        m.family = Family::brt;
        m.params = std::move(p);
        return m;
    }

    std::string name() const {
        switch (family) {
            case Family::urt: return "urt";
            case Family::wrt: return "wrt";
            case Family::hoppe: return "hoppe";
            case Family::thetak: return "thetak";
            case Family::brt: return params->is_uniform() ? "art" : "brt";
        }
        return "?";
    }

    // ';'-separated so the field never needs CSV quoting
    std::string param_string() const {
        char b[64];
        switch (family) {
            case Family::urt: return "";
            case Family::wrt: return "weights=" + weights->name();
            case Family::hoppe: std::snprintf(b, sizeof b, "theta=%g", weights->theta()); return b;
            case Family::thetak: std::snprintf(b, sizeof b, "theta=%g;k=%g", weights->theta(), weights->k()); return b;
            case Family::brt:
                if (params->is_uniform()) return "a=" + std::to_string(params->a());
                return "p=" + params->name();
        }
        return "";
    }

    RecursiveTree sample(node_t n, RandomStream& rng) const {
        if (family == Family::urt) return sample_urt(n, rng);
        if (family == Family::brt) return sample_brt(*params, n, rng);
        return sample_weighted(*weights, n, rng);
    }

    WeightSequence weight_view() const { return weights ? *weights : WeightSequence::constant(); }

    TreePmf exact(node_t n, const EnumGuards& g = {}) const {
        if (family == Family::brt) return brt_tree_pmf(*params, n, g);
        return wrt_tree_pmf(weight_view(), n, g);
    }
};

struct OracleMoments {
    std::optional<double> mean, var;
    std::string id;
};

// Closed-form moments paired with (model, statistic, n), if any exist.
inline OracleMoments oracle_moments(const ModelSpec& m, const Statistic& st, node_t n) {
    using K = Statistic::Kind;
    using F = ModelSpec::Family;
    OracleMoments o;
    if (m.family == F::urt) {
        switch (st.kind) {
            case K::leaves: o = {urt_leaves_mean(n), urt_leaves_var(n), "urt.leaves"}; break;
            case K::branches: o = {urt_branches_mean(n), urt_branches_var(n), "urt.branches"}; break;
            case K::depth: o = {urt_branches_mean(n), urt_branches_var(n), "urt.depth"}; break;
            case K::distance:
                if (st.i <= n && st.j <= n) o = {urt_distance_mean(st.i, st.j), urt_distance_var(st.i, st.j), "urt.distance"};
                break;
            case K::branchsize: o = {urt_branchsize_mean(n, st.k), std::nullopt, "urt.branchsize"}; break;
            default: break;
        }
        return o;
    }
    if (m.family == F::brt) {
        const auto& p = *m.params;
        const std::string fam = p.is_uniform() ? "art" : "brt";
        switch (st.kind) {
            case K::leaves: o = {brt_leaves_mean(p, n), brt_leaves_var(p, n), fam + ".leaves"}; break;
            case K::branches: o = {brt_branches_mean(p, n), brt_branches_var(p, n), fam + ".branches"}; break;
            case K::ydesc: o = {brt_ydesc_mean(p, n, st.k), brt_ydesc_var(p, n, st.k), fam + ".ydesc"}; break;
            case K::xdesc: o = {brt_xdesc_mean(p, n, st.k), std::nullopt, fam + ".xdesc"}; break;
            case K::depth: o = {brt_depth_mean(p, n), std::nullopt, fam + ".depth"}; break;
            case K::position: {
                double e = 0, e2 = 0;
                for (node_t k = 1; k <= n; ++k) {
                    double q = n < 2 ? (k == 1) : brt_position_pmf(p, n, k);
                    e += q * k;
                    e2 += q * k * k;
                }
                o = {e, e2 - e * e, fam + ".position"};
                break;
            }
            default: break;
        }
        return o;
    }
    const auto& w = *m.weights;
    const std::string fam = m.name();
    switch (st.kind) {
        case K::branches: o = {wrt_branches_mean(w, n), wrt_branches_var(w, n), fam + ".branches"}; break;
        case K::depth: o = {wrt_depth_mean(w, n), wrt_depth_var(w, n), fam + ".depth"}; break;
        case K::leaves: {
            std::optional<double> mean;
            if (m.family == F::thetak || m.family == F::hoppe)
                mean = thetak_leaves_mean(w.theta(), static_cast<unsigned>(w.k()), n);
            else
                mean = wrt_leaves_mean(w, n);
            std::optional<double> var;
            if (n <= 400) var = wrt_leaves_var(w, n);
            o = {mean, var, fam + ".leaves"};
            break;
        }
        default: break;
    }
    return o;
}

// ---------------------------------------------------------------- parallel replicates

inline unsigned resolve_threads(unsigned threads) {
    if (threads) return threads;
    unsigned h = std::thread::hardware_concurrency();
    return h ? h : 1;
}

// Runs f(0..count-1) on a pool; chunks are claimed from an atomic counter.
inline void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& f) {
    threads = std::min<std::size_t>(resolve_threads(threads), std::max<std::size_t>(count, 1));
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) f(i);
        return;
    }
    constexpr std::size_t chunk = 64;
    std::atomic<std::size_t> next{0};
    std::exception_ptr err;
    std::atomic<bool> failed{false};
    auto work = [&] {
        try {
            while (!failed) {
                std::size_t lo = next.fetch_add(chunk);
                if (lo >= count) break;
                for (std::size_t i = lo; i < std::min(count, lo + chunk); ++i) f(i);
            }
        } catch (...) {
            if (!failed.exchange(true)) err = std::current_exception();
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

// One value per replicate, replicate r drawn from substream r.
inline std::vector<double> replicate(std::size_t R, std::uint64_t seed, unsigned threads,
                                     const std::function<double(RandomStream&)>& f) {
    std::vector<double> out(R);
    parallel_for(R, threads, [&](std::size_t r) {
        RandomStream rng(seed, r);
        out[r] = f(rng);
    });
    return out;
}

// ---------------------------------------------------------------- summaries

struct Summary {
    double mean = 0, var = 0;
};

// Ordered two-pass reduction; independent of the worker count.
inline Summary summarize(const std::vector<double>& x) {
    Summary s;
    if (x.empty()) return s;
    for (double v : x) s.mean += v;
    s.mean /= x.size();
    if (x.size() > 1) {
        for (double v : x) s.var += (v - s.mean) * (v - s.mean);
        s.var /= (x.size() - 1);
    }
    return s;
}

inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

// sup |F_R - Φ| over the standardized sample
inline double kolmogorov_distance(std::vector<double> z) {
    std::sort(z.begin(), z.end());
    const double R = static_cast<double>(z.size());
    double d = 0;
    for (std::size_t i = 0; i < z.size(); ++i) {
        double F = normal_cdf(z[i]);
        d = std::max({d, (i + 1) / R - F, F - i / R});
    }
    return d;
}

// ---------------------------------------------------------------- results

struct ExperimentResult {
    std::string model, params, stat;
    node_t n = 0;
    std::size_t R = 0;
    std::uint64_t seed = 0;
    double sample_mean = NAN, sample_var = NAN;
    std::optional<double> oracle_mean, oracle_var, z_mean, d_K, tv;
    std::optional<bool> pass;  // empty: reported only
    std::string note;
    double wall_seconds = 0;  // not part of the CSV
};

inline const char* csv_header() {
    return "model,params,n,stat,R,seed,sample_mean,sample_var,oracle_mean,oracle_var,z_mean,d_K,tv,pass";
}

inline std::string fmt_num(double v) {
    if (std::isnan(v)) return "";
    char b[40];
    std::snprintf(b, sizeof b, "%.10g", v);
    return b;
}

inline std::string fmt_opt(const std::optional<double>& v) { return v ? fmt_num(*v) : ""; }

inline std::string csv_row(const ExperimentResult& r) {
    std::string s = r.model + "," + r.params + "," + std::to_string(r.n) + "," + r.stat + "," + std::to_string(r.R) + "," +
                    std::to_string(r.seed) + "," + fmt_num(r.sample_mean) + "," + fmt_num(r.sample_var) + "," +
                    fmt_opt(r.oracle_mean) + "," + fmt_opt(r.oracle_var) + "," + fmt_opt(r.z_mean) + "," + fmt_opt(r.d_K) +
                    "," + fmt_opt(r.tv) + ",";
    s += r.pass ? (*r.pass ? "1" : "0") : "report";
    return s;
}

// ---------------------------------------------------------------- checks

struct Policy {
    double z_max = 4;
    double ci_mult = 3;
    double tv_max = 0.01;
    double dk_const = 3;  // d_K <= C / sqrt(n)
};

struct ExperimentConfig {
    ModelSpec model;
    Statistic stat;
    node_t n = 2;
    std::size_t R = 1000;
    std::uint64_t seed = 1;
    unsigned threads = 0;
    Policy policy;
};

inline ExperimentResult base_result(const ExperimentConfig& c) {
    ExperimentResult r;
    r.model = c.model.name();
    r.params = c.model.param_string();
    r.stat = c.stat.name();
    r.n = c.n;
    r.R = c.R;
    r.seed = c.seed;
    return r;
}

inline std::vector<double> sample_statistic(const ExperimentConfig& c) {
    if (c.R < 1) throw std::invalid_argument("replicate count must be >= 1");
    return replicate(c.R, c.seed, c.threads, [&](RandomStream& rng) { return c.stat(c.model.sample(c.n, rng)); });
}

inline ExperimentResult run_moment_check(const ExperimentConfig& c) {
    auto t0 = std::chrono::steady_clock::now();
    auto o = oracle_moments(c.model, c.stat, c.n);
    if (!o.mean) throw std::invalid_argument("no closed-form mean for " + c.model.name() + " / " + c.stat.name());
    auto x = sample_statistic(c);
    auto s = summarize(x);
    auto r = base_result(c);
    r.sample_mean = s.mean;
    r.sample_var = s.var;
    r.oracle_mean = o.mean;
    r.oracle_var = o.var;
    if (s.var > 0) {
        r.z_mean = (s.mean - *o.mean) * std::sqrt(static_cast<double>(c.R)) / std::sqrt(s.var);
        r.pass = std::abs(*r.z_mean) < c.policy.z_max;
    } else {
        r.pass = std::abs(s.mean - *o.mean) < 1e-9;
    }
    r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

inline ExperimentResult run_clt_check(const ExperimentConfig& c) {
    auto t0 = std::chrono::steady_clock::now();
    auto o = oracle_moments(c.model, c.stat, c.n);
    if (!o.mean || !o.var) throw std::invalid_argument("CLT check needs closed-form mean and variance");
    if (!(*o.var > 0)) throw std::invalid_argument("CLT check refused: oracle variance is 0");
    auto x = sample_statistic(c);
    auto s = summarize(x);
    const double sd = std::sqrt(*o.var);
    for (double& v : x) v = (v - *o.mean) / sd;
    auto r = base_result(c);
    r.sample_mean = s.mean;
    r.sample_var = s.var;
    r.oracle_mean = o.mean;
    r.oracle_var = o.var;
    r.d_K = kolmogorov_distance(std::move(x));
    r.pass = *r.d_K <= c.policy.dk_const / std::sqrt(static_cast<double>(c.n));
    r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

// Branch-count variance growth decides whether a normal limit is plausible:
// flagged non-convergent when Var(100n) exceeds Var(n) by less than 5%.
struct ConvergenceFlag {
    double var_n = 0, var_100n = 0;
    bool bounded = false;
};

inline ConvergenceFlag wrt_branch_variance_flag(const WeightSequence& w, node_t n) {
    ConvergenceFlag f;
    f.var_n = wrt_branches_var(w, n);
    f.var_100n = wrt_branches_var(w, static_cast<unsigned long>(n) * 100);
    f.bounded = f.var_100n < 1.05 * f.var_n;
    return f;
}

inline ExperimentResult run_tv_check(const ExperimentConfig& c, const EnumGuards& g = {}) {
    auto t0 = std::chrono::steady_clock::now();
    auto exact = c.model.exact(c.n, g);
    std::vector<std::string> keys(c.R);
    parallel_for(c.R, c.threads, [&](std::size_t r) {
        RandomStream rng(c.seed, r);
        keys[r] = c.model.sample(c.n, rng).key();
    });
    TreePmf emp;
    for (const auto& k : keys) emp.add(k, 1.0 / c.R);
    auto r = base_result(c);
    r.stat = "tree";
    r.tv = tv_distance(emp, exact);
    r.pass = *r.tv < c.policy.tv_max;
    r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

struct TailPoint {
    double t = 0, empirical = 0, bound = 0, allowance = 0;
    bool ok = true;
};

// Empirical P(|L - E L| >= t) against the closed-form bound plus a CI allowance.
inline std::vector<TailPoint> run_concentration_check(const ExperimentConfig& c, const std::vector<double>& ts,
                                                      ExperimentResult* summary = nullptr) {
    if (c.model.family != ModelSpec::Family::thetak && c.model.family != ModelSpec::Family::hoppe)
        throw std::invalid_argument("concentration check needs a theta^k or Hoppe model");
    auto t0 = std::chrono::steady_clock::now();
    const auto& w = *c.model.weights;
    const unsigned k = static_cast<unsigned>(w.k());
    const double mean = thetak_leaves_mean(w.theta(), k, c.n);
    ExperimentConfig lc = c;
    lc.stat = Statistic::parse("leaves");
    auto x = sample_statistic(lc);
    std::vector<TailPoint> out;
    bool all = true;
    for (double t : ts) {
        TailPoint tp;
        tp.t = t;
        std::size_t hits = 0;
        for (double v : x) hits += std::abs(v - mean) >= t;
        tp.empirical = static_cast<double>(hits) / x.size();
        tp.bound = c.model.family == ModelSpec::Family::hoppe ? hoppe_leaves_bound(w.theta(), c.n, t)
                                                              : thetak_leaves_bound(w.theta(), k, c.n, t);
        tp.allowance = c.policy.ci_mult * std::sqrt(tp.empirical * (1 - tp.empirical) / x.size());
        tp.ok = tp.empirical <= tp.bound + tp.allowance;
        all = all && tp.ok;
        out.push_back(tp);
    }
    if (summary) {
        auto s = summarize(x);
        *summary = base_result(lc);
        summary->stat = "leaves_tail";
        summary->sample_mean = s.mean;
        summary->sample_var = s.var;
        summary->oracle_mean = mean;
        summary->pass = all;
        summary->wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
    return out;
}

// Point estimate of a limit constant with a normal CI half-width.
struct LimitEstimate {
    double estimate = 0, half_width = 0, target = 0, tolerance = 0;
    bool ok = false;
};

inline LimitEstimate compare_limit(const std::vector<double>& x, double target, double tolerance, double ci_mult = 3) {
    auto s = summarize(x);
    LimitEstimate e;
    e.estimate = s.mean;
    e.half_width = ci_mult * std::sqrt(s.var / x.size());
    e.target = target;
    e.tolerance = tolerance;
    e.ok = std::abs(s.mean - target) <= tolerance;
    return e;
}

inline ExperimentResult limit_row(const ExperimentConfig& c, const std::string& stat, const std::vector<double>& x,
                                  const LimitEstimate& e) {
    auto r = base_result(c);
    auto s = summarize(x);
    r.stat = stat;
    r.sample_mean = s.mean;
    r.sample_var = s.var;
    r.oracle_mean = e.target;
    r.pass = e.ok;
    return r;
}

}  // namespace rectree
