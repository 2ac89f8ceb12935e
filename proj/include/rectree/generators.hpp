#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "perm.hpp"
#include "rng.hpp"
#include "shuffle.hpp"
#include "tree.hpp"
#include "weights.hpp"

namespace rectree {

// Index i in [1, j-1] with S[i-1] <= u < S[i], for u in [0, S[j-1]).
inline node_t pick_by_prefix(const std::vector<double>& S, node_t j, double u) {
    auto first = S.begin() + 1, last = S.begin() + j;
    auto it = std::upper_bound(first, last, u);
    if (it == last) --it;  // u rounded up to S[j-1]
    node_t i = static_cast<node_t>(it - S.begin());
    // zero-weight nodes share their prefix value with the predecessor; step past them
    while (i > 1 && S[i] == S[i - 1]) --i;
    return i;
}

inline RecursiveTree sample_urt(node_t n, RandomStream& rng) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    std::vector<node_t> p(n - 1);
    for (node_t j = 2; j <= n; ++j) p[j - 2] = 1 + static_cast<node_t>(rng.below(j - 1));
    return RecursiveTree(p);
}

inline RecursiveTree sample_hoppe(double theta, node_t n, RandomStream& rng) {
    if (!(theta > 0)) throw std::invalid_argument("theta must be > 0");
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    std::vector<node_t> p(n - 1);
    for (node_t j = 2; j <= n; ++j) {
        double u = rng.uniform() * (theta + (j - 2));
        node_t i = u < theta ? 1 : 2 + static_cast<node_t>(u - theta);
        p[j - 2] = std::min(i, j - 1);
    }
    return RecursiveTree(p);
}

inline RecursiveTree sample_theta_k(double theta, unsigned k, node_t n, RandomStream& rng) {
    if (!(theta > 0)) throw std::invalid_argument("theta must be > 0");
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    std::vector<node_t> p(n - 1);
    for (node_t j = 2; j <= n; ++j) {
        node_t heavy = std::min<node_t>(k, j - 1);
        double u = rng.uniform() * (theta * heavy + (j - 1 - heavy));
        if (u < theta * heavy)
            p[j - 2] = std::min<node_t>(heavy, 1 + static_cast<node_t>(u / theta));
        else
            p[j - 2] = std::min<node_t>(j - 1, heavy + 1 + static_cast<node_t>(u - theta * heavy));
    }
    return RecursiveTree(p);
}

inline RecursiveTree sample_wrt(const WeightSequence& w, node_t n, RandomStream& rng) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    const auto S = w.prefix_sums(n > 1 ? n - 1 : 0);
    std::vector<node_t> p(n - 1);
    for (node_t j = 2; j <= n; ++j) p[j - 2] = pick_by_prefix(S, j, rng.uniform() * S[j - 1]);
    return RecursiveTree(p);
}

// Dispatches the closed-form presets to their fast paths.
inline RecursiveTree sample_weighted(const WeightSequence& w, node_t n, RandomStream& rng) {
    switch (w.kind()) {
        case WeightSequence::Kind::constant: return sample_urt(n, rng);
        case WeightSequence::Kind::hoppe: return sample_hoppe(w.theta(), n, rng);
        case WeightSequence::Kind::theta_k: return sample_theta_k(w.theta(), static_cast<unsigned>(w.k()), n, rng);
        default: return sample_wrt(w, n, rng);
    }
}

inline RecursiveTree sample_brt(const ShuffleParams& params, node_t n, RandomStream& rng) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    return tree_from_word(shuffle_from_digits(sample_digits(params, n, rng), params.a()));
}

}  // namespace rectree
