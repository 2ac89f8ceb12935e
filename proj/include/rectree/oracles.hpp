#pragma once

#include <cmath>
#include <functional>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "shuffle.hpp"
#include "weights.hpp"

namespace rectree {

// H(n) and H2(n), append-only and shared between threads.
class HarmonicCache {
public:
    static HarmonicCache& instance() {
        static HarmonicCache c;
        return c;
    }
    double H(std::size_t n) {
        std::lock_guard<std::mutex> g(mu_);
        extend(n);
        return h1_[n];
    }
    double H2(std::size_t n) {
        std::lock_guard<std::mutex> g(mu_);
        extend(n);
        return h2_[n];
    }

private:
    void extend(std::size_t n) {
        while (h1_.size() <= n) {
            double i = static_cast<double>(h1_.size());
            h1_.push_back(h1_.back() + 1 / i);
            h2_.push_back(h2_.back() + 1 / (i * i));
        }
    }
    std::mutex mu_;
    std::vector<double> h1_{0.0}, h2_{0.0};
};

inline double H(std::size_t n) { return HarmonicCache::instance().H(n); }
inline double H2(std::size_t n) { return HarmonicCache::instance().H2(n); }

namespace detail {

// base^m for base in [0,1], via exp(m log base)
inline double pw(double base, double m) {
    if (m == 0) return 1.0;
    if (base <= 0) return 0.0;
    if (base == 1) return 1.0;
    return std::exp(m * std::log(base));
}

// (x^m - y^m)/(x - y) with the derivative limit at x = y
inline double diff_quotient(double x, double y, double m) {
    if (std::abs(x - y) < 1e-14) return m * pw(x, m - 1);
    return (pw(x, m) - pw(y, m)) / (x - y);
}

inline void need_n(unsigned long n, unsigned long min) {
    if (n < min) throw std::domain_error("formula needs n >= " + std::to_string(min));
}

}  // namespace detail

// ---------------------------------------------------------------- URT

inline double urt_leaves_mean(unsigned long n) { return n < 2 ? 0.0 : n / 2.0; }
inline double urt_leaves_var(unsigned long n) { return n < 3 ? 0.0 : n / 12.0; }
inline double urt_branches_mean(unsigned long n) { return n < 2 ? 0.0 : H(n - 1); }
inline double urt_branches_var(unsigned long n) { return n < 2 ? 0.0 : H(n - 1) - H2(n - 1); }

// internodal distance, i != j
inline double urt_distance_mean(unsigned long i, unsigned long j) {
    if (i > j) std::swap(i, j);
    if (i < 1 || i == j) throw std::domain_error("distance needs 1 <= i < j");
    return H(i) + H(j - 1) - 2 + 1.0 / i;
}

inline double urt_distance_var(unsigned long i, unsigned long j) {
    if (i > j) std::swap(i, j);
    if (i < 1 || i == j) throw std::domain_error("distance needs 1 <= i < j");
    const double di = static_cast<double>(i);
    return H(i) + H(j - 1) - 3 * H2(i) - H2(j - 1) + 4 - 4 * H(i) / di + 3 / di - 1 / (di * di);
}

// expected number of branches of size m (exact for 1 <= m <= n-1)
inline double urt_branchsize_mean(unsigned long n, unsigned long m) {
    if (m < 1) throw std::domain_error("branch size m must be >= 1");
    return n >= 2 && m <= n - 1 ? 1.0 / m : 0.0;
}

inline double urt_kdesc_alpha(unsigned long k) { return 1.0 / ((k + 2.0) * (k + 1.0)); }
inline double urt_kdesc_gamma(unsigned long k) { return 1.0 / ((2.0 * k + 3) * (2.0 * k + 2) * (k + 1.0)); }
inline double urt_kdesc_sigma(unsigned long k) {
    double a = urt_kdesc_alpha(k);
    return a * (1 - a) - 2 * (k + 1.0) * a * a + 2 * urt_kdesc_gamma(k);
}

// ---------------------------------------------------------------- WRT

inline double wrt_branches_mean(const WeightSequence& w, unsigned long n) {
    if (n < 2) return 0;
    auto S = w.prefix_sums(n - 1);
    double e = 0;
    for (unsigned long i = 1; i <= n - 1; ++i) e += 1 / S[i];
    return w(1) * e;
}

inline double wrt_branches_var(const WeightSequence& w, unsigned long n) {
    if (n < 3) return 0;
    auto S = w.prefix_sums(n - 1);
    const double w1 = w(1);
    double v = 0;
    for (unsigned long i = 2; i <= n - 1; ++i) v += (S[i] - w1) / (S[i] * S[i]);
    return w1 * v;
}

inline double wrt_depth_mean(const WeightSequence& w, unsigned long n) {
    if (n < 2) return 0;
    auto S = w.prefix_sums(n - 1);
    double e = 0;
    for (unsigned long i = 1; i <= n - 1; ++i) e += w(i) / S[i];
    return e;
}

inline double wrt_depth_var(const WeightSequence& w, unsigned long n) {
    if (n < 3) return 0;
    auto S = w.prefix_sums(n - 1);
    double v = 0;
    for (unsigned long i = 2; i <= n - 1; ++i) v += w(i) * S[i - 1] / (S[i] * S[i]);
    return v;
}

// P(node i is a leaf) = prod_{j=i+1}^{n} (1 - ω_i/S_{j-1})
inline double wrt_leaf_probability(const WeightSequence& w, unsigned long i, unsigned long n) {
    if (i < 1 || i > n) throw std::domain_error("leaf probability needs 1 <= i <= n");
    if (i == 1) return 0.0;  // the root counts as a leaf only for n = 1, where leaves = 0
    auto S = w.prefix_sums(n);
    const double wi = w(i);
    double p = 1;
    for (unsigned long j = i + 1; j <= n; ++j) p *= 1 - wi / S[j - 1];
    return p;
}

inline double wrt_leaves_mean(const WeightSequence& w, unsigned long n) {
    double e = 0;
    for (unsigned long i = 2; i <= n; ++i) e += wrt_leaf_probability(w, i, n);
    return e;
}

// Exact variance from pairwise leaf probabilities; O(n^3).
inline double wrt_leaves_var(const WeightSequence& w, unsigned long n) {
    if (n < 3) return 0;
    auto S = w.prefix_sums(n);
    std::vector<double> P(n + 1, 0);
    for (unsigned long i = 2; i <= n; ++i) P[i] = wrt_leaf_probability(w, i, n);
    double v = 0;
    for (unsigned long i = 2; i <= n; ++i) v += P[i] * (1 - P[i]);
    for (unsigned long i = 2; i <= n; ++i) {
        const double wi = w(i);
        double head = 1;  // nodes i+1..j avoid i
        for (unsigned long j = i + 1; j <= n; ++j) {
            head *= 1 - wi / S[j - 1];
            const double wij = wi + w(j);
            double tail = 1;
            for (unsigned long l = j + 1; l <= n; ++l) tail *= 1 - wij / S[l - 1];
            v += 2 * (head * tail - P[i] * P[j]);
        }
    }
    return v;
}

struct CltDiagnostics {
    double variance = 0;
    double poisson_tv_bound = 0;
    double wasserstein_bound = 0;
};

inline CltDiagnostics wrt_clt_diagnostics(const WeightSequence& w, unsigned long n) {
    detail::need_n(n, 3);
    auto S = w.prefix_sums(n - 1);
    const double w1 = w(1);
    double mu = 0, sq = 0;
    for (unsigned long i = 1; i <= n - 1; ++i) {
        double p = w1 / S[i];
        mu += p;
        sq += p * p;
    }
    CltDiagnostics d;
    d.variance = wrt_branches_var(w, n);
    d.poisson_tv_bound = std::min(1.0, 1.0 / mu) * sq;
    const double pi = std::acos(-1.0);
    d.wasserstein_bound = (std::sqrt(28.0) + std::sqrt(pi)) / (std::sqrt(pi) * std::sqrt(d.variance));
    return d;
}

// ---------------------------------------------------------------- Hoppe and θ^k

inline double thetak_leaves_mean(double theta, unsigned k, unsigned long n) {
    if (n < 2) return 0;
    if (n <= k) return n / 2.0;  // all present weights equal: uniform tree
    const double kt = k * theta;
    double prod = 1;
    for (unsigned long i = 1; i + k + 1 <= n; ++i) prod *= (theta * (k - 1.0) + i) / (kt + i);
    return n / 2.0 + k * (theta - 1) / 2 + kt * (1 - kt) / (2 * (k * (theta - 1) + n - 1.0)) + (k - 1.0) / 2 * prod;
}

inline double thetak_leaves_var_lead(unsigned long n) { return n / 12.0; }

inline double thetak_leaves_bound(double theta, unsigned k, unsigned long n, double t) {
    const double b = k * (theta - 1) + n + 2.0;
    const double c = k * (theta - 1) + n - 1.0;
    return 2 * std::exp(-6 * t * t / b) * std::exp(6 * t * k * theta * (k - 1.0) / (c * b));
}

inline double hoppe_leaves_bound(double theta, unsigned long n, double t) {
    return 2 * std::exp(-6 * t * t / (n + theta + 1));
}

inline double hoppe_branches_mean(double theta, unsigned long n) {
    double e = 0;
    for (unsigned long i = 0; i + 2 <= n; ++i) e += 1 / (theta + i);
    return theta * e;
}

inline double hoppe_branches_var(double theta, unsigned long n) {
    double v = 0;
    for (unsigned long i = 1; i + 2 <= n; ++i) v += i / ((theta + i) * (theta + i));
    return theta * v;
}

inline double hoppe_depth_mean(double theta, unsigned long n) { return wrt_depth_mean(WeightSequence::hoppe(theta), n); }
inline double hoppe_depth_var(double theta, unsigned long n) { return wrt_depth_var(WeightSequence::hoppe(theta), n); }
inline double hoppe_leaves_mean(double theta, unsigned long n) { return thetak_leaves_mean(theta, 1, n); }
inline double hoppe_leaves_mean_lead(double theta, unsigned long n) { return n / 2.0 + (theta - 1) / 2; }
inline double hoppe_leaves_var_lead(double theta, unsigned long n) { return n / 12.0 + (theta - 1) / 12; }

// ---------------------------------------------------------------- p-biased trees

namespace detail {
struct Cum {
    std::vector<double> p, C, G;  // C(s) = p_1+..+p_s, G(s) = p_s+..+p_a (1-based, padded)
    unsigned a;
    explicit Cum(const ShuffleParams& q) : a(q.a()) {
        p.assign(a + 2, 0);
        C.assign(a + 2, 0);
        G.assign(a + 3, 0);
        for (unsigned s = 1; s <= a; ++s) p[s] = q.p(s), C[s] = C[s - 1] + p[s];
        C[a + 1] = C[a];
        for (unsigned s = a; s >= 1; --s) G[s] = G[s + 1] + p[s];
    }
};
}  // namespace detail

inline double brt_leaves_mean(const ShuffleParams& q, unsigned long n) {
    if (n < 2) return 0;
    double sq = 0;
    for (double x : q.probs()) sq += x * x;
    return (n - 2.0) * (1 - sq) / 2 + 1;
}

inline double brt_leaves_var(const ShuffleParams& q, unsigned long n) {
    if (n < 3) return 0;
    const auto& p = q.probs();
    double sq = 0;
    for (double x : p) sq += x * x;
    const double h = (1 - sq) / 2;
    double e3 = 0;
    for (std::size_t s1 = 0; s1 < p.size(); ++s1)
        for (std::size_t s2 = s1 + 1; s2 < p.size(); ++s2)
            for (std::size_t s3 = s2 + 1; s3 < p.size(); ++s3) e3 += p[s1] * p[s2] * p[s3];
    return (n - 2.0) * (h - h * h) + 2 * (n - 3.0) * (e3 - h * h);
}

inline double brt_branches_mean(const ShuffleParams& q, unsigned long n) {
    if (n < 2) return 0;
    detail::Cum c(q);
    double e = c.p[c.a];
    for (unsigned s = 1; s < c.a; ++s) e += c.p[s] / c.C[s] * (1 - detail::pw(c.G[s + 1], n - 1.0));
    return e;
}

inline double brt_branches_mean_limit_n(const ShuffleParams& q) {
    detail::Cum c(q);
    double e = c.p[c.a];
    for (unsigned s = 1; s < c.a; ++s) e += c.p[s] / c.C[s];
    return e;
}

inline double brt_branches_var(const ShuffleParams& q, unsigned long n) {
    if (n < 3) return 0;
    using detail::pw;
    detail::Cum c(q);
    const unsigned a = c.a;
    const auto& p = c.p;
    auto C = [&](unsigned s) { return c.C[s]; };
    auto G = [&](unsigned s) { return c.G[s + 1]; };  // p_{s+1}+..+p_a
    const double N = static_cast<double>(n);
    double t = 0;
    for (unsigned s = 1; s < a; ++s) t += p[s] / C(s) * (1 - pw(G(s), N - 1)) - p[s];
    for (unsigned s = 1; s < a; ++s) {
        double g2 = G(s) * G(s);
        t -= p[s] * p[s] * g2 * (1 - pw(g2, N - 2)) / (1 - g2);
    }
    for (unsigned s = 2; s < a; ++s)
        for (unsigned r = 1; r < s; ++r) {
            double x = G(s) * G(r);
            t -= 2 * p[s] * p[r] * x * (1 - pw(x, N - 2)) / (1 - x);
        }
    for (unsigned s = 2; s < a; ++s) {
        double inner = 0;
        for (unsigned r = 1; r < s; ++r) inner += p[r] / C(r);
        t += 2 * p[s] * G(s) / C(s) * inner * (1 - pw(G(s), N - 3));
    }
    for (unsigned s = 2; s < a; ++s)
        for (unsigned r = 1; r < s; ++r)
            t -= 2 * p[s] * G(s) * p[r] * G(r) / C(r) / (C(s) - C(r)) * (pw(G(r), N - 3) - pw(G(s), N - 3));
    for (unsigned s = 1; s < a; ++s)
        for (unsigned r = 1; r < a; ++r) {
            double x = G(s) * G(r);
            t -= 2 * p[s] * G(s) * p[r] / C(r) * G(r) * G(r) * (1 - pw(x, N - 3)) / (1 - x);
        }
    for (unsigned s = 1; s < a; ++s)
        for (unsigned r = 1; r < a; ++r)
            t += 2 * p[s] / C(s) * G(s) * p[r] / C(r) * pw(G(r), N - 1) * (1 - pw(G(s), N - 3));
    return t;
}

inline double brt_branches_var_limit_n(const ShuffleParams& q) {
    detail::Cum c(q);
    const unsigned a = c.a;
    const auto& p = c.p;
    auto C = [&](unsigned s) { return c.C[s]; };
    auto G = [&](unsigned s) { return c.G[s + 1]; };
    double t = 0;
    for (unsigned s = 1; s < a; ++s) t += p[s] / C(s) - p[s] - p[s] * p[s] * G(s) * G(s) / (1 - G(s) * G(s));
    for (unsigned s = 2; s < a; ++s)
        for (unsigned r = 1; r < s; ++r) t -= 2 * p[s] * p[r] * G(s) * G(r) / (1 - G(s) * G(r));
    for (unsigned s = 2; s < a; ++s) {
        double inner = 0;
        for (unsigned r = 1; r < s; ++r) inner += p[r] / C(r);
        t += 2 * p[s] * G(s) / C(s) * inner;
    }
    for (unsigned s = 1; s < a; ++s)
        for (unsigned r = 1; r < a; ++r) t -= 2 * p[s] * G(s) * p[r] / C(r) * G(r) * G(r) / (1 - G(s) * G(r));
    return t;
}

// A_k = sum_s p_s (p_s+..+p_a)^k
inline double brt_ydesc_rate(const ShuffleParams& q, unsigned long k) {
    detail::Cum c(q);
    double A = 0;
    for (unsigned s = 1; s <= c.a; ++s) A += c.p[s] * detail::pw(c.G[s], static_cast<double>(k));
    return A;
}

inline double brt_ydesc_mean(const ShuffleParams& q, unsigned long n, unsigned long k) {
    if (k >= n) return 0;
    return (n - k - 1.0) * brt_ydesc_rate(q, k) + 1;
}

inline double brt_xdesc_mean(const ShuffleParams& q, unsigned long n, unsigned long k) {
    return brt_ydesc_mean(q, n, k) - brt_ydesc_mean(q, n, k + 1);
}

// Sum of window covariances; exact for every n.
inline double brt_ydesc_var_windows(const ShuffleParams& q, unsigned long n, unsigned long k) {
    if (n < k + 2) return 0;
    using detail::pw;
    detail::Cum c(q);
    const double m = static_cast<double>(n - k - 1);
    const double A = brt_ydesc_rate(q, k);
    double v = m * A * (1 - A);
    const unsigned long dmax = std::min<unsigned long>(k, n - k - 2);
    for (unsigned long d = 1; d <= dmax; ++d) {
        double e = 0;
        for (unsigned s = 1; s <= c.a; ++s)
            for (unsigned t = s; t <= c.a; ++t)
                e += c.p[s] * c.p[t] * pw(c.G[s], d - 1.0) * pw(c.G[t], static_cast<double>(k));
        v += 2 * (m - d) * (e - A * A);
    }
    return v;
}

// Three-block closed form; valid for n >= 2k+1.
inline double brt_ydesc_var_closed(const ShuffleParams& q, unsigned long n, unsigned long k) {
    using detail::pw;
    detail::Cum c(q);
    const double N = static_cast<double>(n), K = static_cast<double>(k);
    const double A = brt_ydesc_rate(q, k);
    double t = A * ((N - K - 1) + c.p[1] * (2 * N * K - 3 * K * (K + 1)));
    for (unsigned s = 2; s <= c.a; ++s) {
        double inner = 0;
        for (unsigned r = s; r <= c.a; ++r) inner += c.p[r] * pw(c.G[r], K);
        const double g = c.G[s];
        const double geo = g == 1 ? K : (1 - pw(g, K)) / (1 - g);
        t += 2 * c.p[s] / c.C[s - 1] * inner * (N - K - 1 - (N - 2 * K - 1) * pw(g, K) - geo);
    }
    t -= A * A * (N * (2 * K + 1) - (3 * K + 1) * (K + 1));
    return t;
}

inline double brt_ydesc_var(const ShuffleParams& q, unsigned long n, unsigned long k) {
    if (k >= 1 && n >= 2 * k + 1) return brt_ydesc_var_closed(q, n, k);
    return brt_ydesc_var_windows(q, n, k);
}

inline double brt_ydesc_var_limit_n(const ShuffleParams& q, unsigned long k) {
    using detail::pw;
    detail::Cum c(q);
    const double K = static_cast<double>(k);
    const double A = brt_ydesc_rate(q, k);
    double t = A * (2 * K * c.p[1] + 1 - (2 * K + 1) * A);
    for (unsigned s = 2; s <= c.a; ++s) {
        double inner = 0;
        for (unsigned r = s; r <= c.a; ++r) inner += c.p[r] * pw(c.G[r], K);
        t += 2 * c.p[s] / c.C[s - 1] * inner * (1 - pw(c.G[s], K));
    }
    return t;
}

// P(position of n in γ(1..n) = k), 2 <= k <= n
inline double brt_position_pmf(const ShuffleParams& q, unsigned long n, unsigned long k) {
    if (n < 2) return k == 1 ? 1.0 : 0.0;
    if (k < 2 || k > n) return 0.0;
    using detail::pw;
    detail::Cum c(q);
    double pr = 0;
    if (k < n) {
        for (unsigned s = 2; s <= c.a; ++s) pr += c.p[s] * pw(c.C[s], k - 2.0) * pw(c.C[s - 1], static_cast<double>(n - k));
    } else {
        for (unsigned s = 1; s <= c.a; ++s) pr += c.p[s] * pw(c.C[s], n - 2.0);
    }
    return pr;
}

// Conditions on the largest digit t among cards before position k: every
// digit-<=t card ahead of n is an ancestor candidate.
inline double brt_depth_mean(const ShuffleParams& q, unsigned long n) {
    if (n < 2) return 0;
    using detail::pw;
    detail::Cum c(q);
    double total = 0;
    for (unsigned t = 1; t <= c.a; ++t) {
        const double Ct = c.C[t];
        for (unsigned long k = 2; k <= n; ++k) {
            double w = c.p[t] * pw(Ct, k - 2.0) * (k < n ? pw(c.C[t - 1], static_cast<double>(n - k)) : 1.0);
            if (w == 0) continue;
            double inner = 1;
            for (unsigned s = 1; s <= t; ++s) {
                const double x = (Ct - c.C[s - 1]) / Ct;
                const double geo = x == 1 ? static_cast<double>(k - 2) : (1 - pw(x, k - 2.0)) / (1 - x);
                inner += c.p[s] / Ct * geo;
            }
            total += w * inner;
        }
    }
    return total;
}

// Five-block expression as printed; disagrees with enumeration for n >= 4.
inline double brt_depth_mean_printed(const ShuffleParams& q, unsigned long n) {
    using detail::pw;
    detail::Cum c(q);
    for (double x : q.probs())
        if (!(x > 0)) throw std::domain_error("printed depth form needs every p_s > 0");
    const double N = static_cast<double>(n);
    const unsigned a = c.a;
    auto C = [&](unsigned s) { return c.C[s]; };
    auto G = [&](unsigned s) { return c.G[s]; };
    double t = 0;
    for (unsigned s = 2; s <= a; ++s) {
        double inner = 0;
        for (unsigned sp = 2; sp <= a; ++sp) inner += pw(C(sp), N - 1) - pw(C(sp - 1), N - 1);
        t += c.p[s] / C(s - 1) * inner;
    }
    for (unsigned s = 2; s <= a; ++s) {
        double inner = 0;
        for (unsigned sp = 2; sp <= a; ++sp) inner += c.p[sp] * detail::diff_quotient(C(sp - 1), G(s) * C(sp), N - 1);
        t -= c.p[s] / C(s - 1) * inner;
    }
    for (unsigned s = 2; s <= a; ++s)
        t += c.p[1] / c.p[s] * ((N - 2) * pw(C(s), N) - (N - 1) * pw(C(s), N - 1) * C(s - 1) + C(s) * pw(C(s - 1), N - 1));
    for (unsigned s = 2; s <= a; ++s) t += pw(C(s), N - 1) - pw(C(s - 1), N - 1);
    double tail = 0;
    for (unsigned s = 2; s <= a; ++s) tail += c.p[s] * (1 - pw(G(s), N - 2)) / C(s - 1);
    t += (tail + (N - 2) * c.p[1] + 1) * pw(c.p[1], N - 1);
    return t;
}

inline double brt_depth_limit_ratio(const ShuffleParams& q) { return q.p(1); }

// ---------------------------------------------------------------- uniform a-piles

inline double art_leaves_mean(unsigned a, unsigned long n) {
    return n < 2 ? 0.0 : 1 + (n - 2.0) * (a - 1.0) / (2.0 * a);
}

inline double art_leaves_var(unsigned a, unsigned long n) {
    if (n < 3) return 0;
    const double A = a, q = (A * A - 1) / (A * A);
    return (n - 2.0) * q / 4 - (n - 3.0) * q / 6;
}

inline double art_branches_mean(unsigned a, unsigned long n) {
    if (n < 2) return 0;
    double e = 1.0 / a;
    for (unsigned s = 1; s < a; ++s) e += (1.0 / s) * (1 - detail::pw((a - s) / static_cast<double>(a), n - 1.0));
    return e;
}

inline double art_branches_mean_limit_n(unsigned a) { return H(a); }

inline double art_branches_var(unsigned a, unsigned long n) {
    if (n < 3) return 0;
    using detail::pw;
    const double A = a, N = static_cast<double>(n);
    auto g = [&](unsigned s) { return (A - s) / A; };
    double t = -(A - 1) / A;
    for (unsigned s = 1; s < a; ++s) t += (1.0 / s) * (1 - pw(g(s), N - 1));
    for (unsigned s = 1; s < a; ++s) {
        double g2 = g(s) * g(s);
        t -= g2 * (1 - pw(g2, N - 2)) / (1 - g2) / (A * A);
    }
    for (unsigned s = 2; s < a; ++s)
        for (unsigned r = 1; r < s; ++r) {
            double x = g(s) * g(r);
            t -= 2 / (A * A) * x * (1 - pw(x, N - 2)) / (1 - x);
        }
    for (unsigned s = 2; s < a; ++s) {
        double inner = 0;
        for (unsigned r = 1; r < s; ++r) inner += 1.0 / r;
        t += 2 * (A - s) / (A * s) * inner * (1 - pw(g(s), N - 3));
    }
    for (unsigned s = 2; s < a; ++s)
        for (unsigned r = 1; r < s; ++r)
            t -= 2 * (A - s) / (A * A) * (A - r) / r / (s - r) * (pw(g(r), N - 3) - pw(g(s), N - 3));
    for (unsigned s = 1; s < a; ++s)
        for (unsigned r = 1; r < a; ++r) {
            double x = g(s) * g(r);
            t -= 2 * (A - s) / (A * A) / r * g(r) * g(r) * (1 - pw(x, N - 3)) / (1 - x);
        }
    for (unsigned s = 1; s < a; ++s)
        for (unsigned r = 1; r < a; ++r) t += 2 * (A - s) / (s * A) / r * pw(g(r), N - 1) * (1 - pw(g(s), N - 3));
    return t;
}

inline double art_branches_var_limit_a(unsigned long n) { return n < 2 ? 0.0 : H(n - 1) - H2(n - 1); }

inline double art_ydesc_mean(unsigned a, unsigned long n, unsigned long k) {
    return brt_ydesc_mean(ShuffleParams::uniform(a), n, k);
}

inline double art_ydesc_mean_limit_a(unsigned long n, unsigned long k) { return n / (k + 1.0); }

// Uniform closed form; valid for n >= 2k+1, window sum otherwise.
inline double art_ydesc_var(unsigned a, unsigned long n, unsigned long k) {
    if (!(k >= 1 && n >= 2 * k + 1)) return brt_ydesc_var_windows(ShuffleParams::uniform(a), n, k);
    using detail::pw;
    const double A = a, N = static_cast<double>(n), K = static_cast<double>(k);
    const double norm = pw(1 / A, K + 1);
    double sk = 0;
    for (unsigned s = 1; s <= a; ++s) sk += std::pow(static_cast<double>(s), K);
    const double S = norm * sk;
    double t = S * ((N - K - 1) + (2 * N * K - 3 * K * (K + 1)) / A);
    for (unsigned s = 2; s <= a; ++s) {
        double inner = 0;
        for (unsigned r = 1; r <= a - s + 1; ++r) inner += std::pow(static_cast<double>(r), K);
        const double g = (A - s + 1) / A;
        t += 2 * norm / (s - 1.0) * inner * (N - K - 1 - (N - 2 * K - 1) * pw(g, K) - (1 - pw(g, K)) / (1 - g));
    }
    t -= S * S * (N * (2 * K + 1) - (3 * K + 1) * (K + 1));
    return t;
}

inline double art_depth_mean(unsigned a, unsigned long n) { return brt_depth_mean(ShuffleParams::uniform(a), n); }

// Uniform corollary as printed; NaN where s(s'+1) = a.
inline double art_depth_mean_printed(unsigned a, unsigned long n) {
    using detail::pw;
    const double A = a, N = static_cast<double>(n);
    double t = H(a - 1) + 1 + (N - 2) * pw(1 / A, N);
    double u = 0;
    for (unsigned s = 1; s < a; ++s) u += pw((A - s) / A, N - 2) / s;
    t -= u * pw(1 / A, N - 1);
    for (unsigned s = 1; s < a; ++s)
        for (unsigned sp = 1; sp < a; ++sp) {
            const double den = s * sp + s - A;
            if (den == 0) return std::nan("");
            // (sp^{n-1} - ((a-s)(sp+1))^{n-1}) / a^{n-2}, kept in ratio form
            const double r1 = std::exp((N - 1) * std::log(static_cast<double>(sp)) - (N - 2) * std::log(A));
            const double r2 = std::exp((N - 1) * std::log((A - s) * (sp + 1.0)) - (N - 2) * std::log(A));
            t -= (r1 - r2) / (s * den);
        }
    for (unsigned s = 1; s < a; ++s) {
        const double x = (s + 1) / A, y = s / A;
        t += (N - 2) * pw(x, N) - (N - 1) * pw(x, N - 1) * y + x * pw(y, N - 1);
    }
    return t;
}

inline double art_depth_limit_ratio(unsigned a) { return 1.0 / a; }
inline double art_depth_mean_limit_a(unsigned long n) { return n < 2 ? 0.0 : H(n - 1); }

// ---------------------------------------------------------------- limit constants

inline constexpr double golomb_dickman = 0.62432998854;

inline double largest_branch_cdf_limit(double c) {
    if (!(c >= 0.5 && c <= 1)) throw std::domain_error("c must lie in [1/2, 1]");
    return 1 - std::log(1 / c);
}

// ---------------------------------------------------------------- registry

struct OracleArgs {
    unsigned long n = 0, k = 1, i = 1, j = 2, m = 1;
    double theta = 1, t = 0, c = 1;
    std::optional<WeightSequence> weights;
    std::optional<ShuffleParams> params;

    const WeightSequence& w() const {
        if (!weights) throw std::invalid_argument("formula needs --weights");
        return *weights;
    }
    const ShuffleParams& p() const {
        if (!params) throw std::invalid_argument("formula needs --p or --a");
        return *params;
    }
    unsigned a() const {
        const auto& q = p();
        if (!q.is_uniform()) throw std::invalid_argument("uniform formula needs --a (or equal --p entries)");
        return q.a();
    }
};

struct Formula {
    std::string id;
    std::string args;
    std::function<double(const OracleArgs&)> eval;
};

inline const std::vector<Formula>& formula_registry() {
    using A = const OracleArgs&;
    static const std::vector<Formula> reg = {
        {"urt.leaves.mean", "n", [](A x) { return urt_leaves_mean(x.n); }},
        {"urt.leaves.var", "n", [](A x) { return urt_leaves_var(x.n); }},
        {"urt.branches.mean", "n", [](A x) { return urt_branches_mean(x.n); }},
        {"urt.branches.var", "n", [](A x) { return urt_branches_var(x.n); }},
        {"urt.depth.mean", "n", [](A x) { return urt_branches_mean(x.n); }},
        {"urt.depth.var", "n", [](A x) { return urt_branches_var(x.n); }},
        {"urt.distance.mean", "i j", [](A x) { return urt_distance_mean(x.i, x.j); }},
        {"urt.distance.var", "i j", [](A x) { return urt_distance_var(x.i, x.j); }},
        {"urt.branchsize.mean", "n m", [](A x) { return urt_branchsize_mean(x.n, x.m); }},
        {"urt.branchsize.limit", "m", [](A x) { return 1.0 / static_cast<double>(x.m); }},
        {"urt.xdesc.alpha", "k", [](A x) { return urt_kdesc_alpha(x.k); }},
        {"urt.xdesc.gamma", "k", [](A x) { return urt_kdesc_gamma(x.k); }},
        {"urt.xdesc.sigma", "k", [](A x) { return urt_kdesc_sigma(x.k); }},
        {"wrt.branches.mean", "weights n", [](A x) { return wrt_branches_mean(x.w(), x.n); }},
        {"wrt.branches.var", "weights n", [](A x) { return wrt_branches_var(x.w(), x.n); }},
        {"wrt.branches.tvbound", "weights n", [](A x) { return wrt_clt_diagnostics(x.w(), x.n).poisson_tv_bound; }},
        {"wrt.branches.wbound", "weights n", [](A x) { return wrt_clt_diagnostics(x.w(), x.n).wasserstein_bound; }},
        {"wrt.depth.mean", "weights n", [](A x) { return wrt_depth_mean(x.w(), x.n); }},
        {"wrt.depth.var", "weights n", [](A x) { return wrt_depth_var(x.w(), x.n); }},
        {"wrt.leaves.mean", "weights n", [](A x) { return wrt_leaves_mean(x.w(), x.n); }},
        {"wrt.leaves.var", "weights n", [](A x) { return wrt_leaves_var(x.w(), x.n); }},
        {"wrt.leaves.prob", "weights i n", [](A x) { return wrt_leaf_probability(x.w(), x.i, x.n); }},
        {"hoppe.branches.mean", "theta n", [](A x) { return hoppe_branches_mean(x.theta, x.n); }},
        {"hoppe.branches.var", "theta n", [](A x) { return hoppe_branches_var(x.theta, x.n); }},
        {"hoppe.depth.mean", "theta n", [](A x) { return hoppe_depth_mean(x.theta, x.n); }},
        {"hoppe.depth.var", "theta n", [](A x) { return hoppe_depth_var(x.theta, x.n); }},
        {"hoppe.leaves.mean", "theta n", [](A x) { return hoppe_leaves_mean(x.theta, x.n); }},
        {"hoppe.leaves.mean_lead", "theta n", [](A x) { return hoppe_leaves_mean_lead(x.theta, x.n); }},
        {"hoppe.leaves.var_lead", "theta n", [](A x) { return hoppe_leaves_var_lead(x.theta, x.n); }},
        {"hoppe.leaves.bound", "theta n t", [](A x) { return hoppe_leaves_bound(x.theta, x.n, x.t); }},
        {"thetak.leaves.mean", "theta k n", [](A x) { return thetak_leaves_mean(x.theta, static_cast<unsigned>(x.k), x.n); }},
        {"thetak.leaves.var_lead", "n", [](A x) { return thetak_leaves_var_lead(x.n); }},
        {"thetak.leaves.bound", "theta k n t",
         [](A x) { return thetak_leaves_bound(x.theta, static_cast<unsigned>(x.k), x.n, x.t); }},
        {"brt.leaves.mean", "p n", [](A x) { return brt_leaves_mean(x.p(), x.n); }},
        {"brt.leaves.var", "p n", [](A x) { return brt_leaves_var(x.p(), x.n); }},
        {"brt.branches.mean", "p n", [](A x) { return brt_branches_mean(x.p(), x.n); }},
        {"brt.branches.var", "p n", [](A x) { return brt_branches_var(x.p(), x.n); }},
        {"brt.branches.mean_limit_n", "p", [](A x) { return brt_branches_mean_limit_n(x.p()); }},
        {"brt.branches.var_limit_n", "p", [](A x) { return brt_branches_var_limit_n(x.p()); }},
        {"brt.ydesc.mean", "p n k", [](A x) { return brt_ydesc_mean(x.p(), x.n, x.k); }},
        {"brt.ydesc.var", "p n k", [](A x) { return brt_ydesc_var(x.p(), x.n, x.k); }},
        {"brt.ydesc.var_limit_n", "p k", [](A x) { return brt_ydesc_var_limit_n(x.p(), x.k); }},
        {"brt.xdesc.mean", "p n k", [](A x) { return brt_xdesc_mean(x.p(), x.n, x.k); }},
        {"brt.position.pmf", "p n k", [](A x) { return brt_position_pmf(x.p(), x.n, x.k); }},
        {"brt.depth.mean", "p n", [](A x) { return brt_depth_mean(x.p(), x.n); }},
        {"brt.depth.mean_printed", "p n", [](A x) { return brt_depth_mean_printed(x.p(), x.n); }},
        {"brt.depth.limit_ratio", "p", [](A x) { return brt_depth_limit_ratio(x.p()); }},
        {"art.leaves.mean", "a n", [](A x) { return art_leaves_mean(x.a(), x.n); }},
        {"art.leaves.var", "a n", [](A x) { return art_leaves_var(x.a(), x.n); }},
        {"art.branches.mean", "a n", [](A x) { return art_branches_mean(x.a(), x.n); }},
        {"art.branches.var", "a n", [](A x) { return art_branches_var(x.a(), x.n); }},
        {"art.branches.mean_limit_n", "a", [](A x) { return art_branches_mean_limit_n(x.a()); }},
        {"art.branches.var_limit_a", "n", [](A x) { return art_branches_var_limit_a(x.n); }},
        {"art.ydesc.mean", "a n k", [](A x) { return art_ydesc_mean(x.a(), x.n, x.k); }},
        {"art.ydesc.var", "a n k", [](A x) { return art_ydesc_var(x.a(), x.n, x.k); }},
        {"art.ydesc.mean_limit_a", "n k", [](A x) { return art_ydesc_mean_limit_a(x.n, x.k); }},
        {"art.depth.mean", "a n", [](A x) { return art_depth_mean(x.a(), x.n); }},
        {"art.depth.mean_printed", "a n", [](A x) { return art_depth_mean_printed(x.a(), x.n); }},
        {"art.depth.limit_ratio", "a", [](A x) { return art_depth_limit_ratio(x.a()); }},
        {"art.depth.mean_limit_a", "n", [](A x) { return art_depth_mean_limit_a(x.n); }},
        {"limit.golomb_dickman", "", [](A) { return golomb_dickman; }},
        {"limit.ln2", "", [](A) { return std::log(2.0); }},
        {"limit.largest_branch_cdf", "c", [](A x) { return largest_branch_cdf_limit(x.c); }},
    };
    return reg;
}

inline const Formula& find_formula(const std::string& id) {
    for (const auto& f : formula_registry())
        if (f.id == id) return f;
    throw std::invalid_argument("unknown formula id '" + id + "'");
}

}  // namespace rectree
