#pragma once

#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "perm.hpp"
#include "shuffle.hpp"
#include "stats.hpp"
#include "tree.hpp"
#include "weights.hpp"

namespace rectree {

// Raised when an exhaustive computation would exceed its size guard.
struct GuardError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Probability mass function over keys (tree keys, words, statistic values).
template <class Key>
struct ExactDistribution {
    std::map<Key, double> mass;

    void add(const Key& k, double p) { mass[k] += p; }
    double total() const {
        double s = 0;
        for (const auto& [k, p] : mass) s += p;
        return s;
    }
    double operator[](const Key& k) const {
        auto it = mass.find(k);
        return it == mass.end() ? 0.0 : it->second;
    }
    std::size_t size() const { return mass.size(); }
};

using TreePmf = ExactDistribution<std::string>;  // keyed by RecursiveTree::key()
using ValuePmf = ExactDistribution<double>;
using WordPmf = ExactDistribution<std::vector<node_t>>;

struct EnumGuards {
    node_t max_tree_n = 9;
    double max_digit_vectors = 1e7;
};

inline void check_tree_guard(node_t n, const EnumGuards& g = {}) {
    if (n < 1 || n > g.max_tree_n)
        throw GuardError("tree enumeration guard: n = " + std::to_string(n) + " outside [1," +
                         std::to_string(g.max_tree_n) + "]");
}

// Visit every parent vector of an increasing tree on [n] (odometer order).
inline void for_each_tree(node_t n, const std::function<void(const std::vector<node_t>&)>& f, const EnumGuards& g = {}) {
    check_tree_guard(n, g);
    std::vector<node_t> p(n - 1, 1);
    while (true) {
        f(p);
        std::size_t i = p.size();
        while (i > 0) {
            --i;
            if (p[i] < i + 1) {  // node i+2 may attach to 1..i+1
                ++p[i];
                break;
            }
            p[i] = 1;
            if (i == 0) return;
        }
        if (p.empty()) return;
    }
}

inline std::vector<RecursiveTree> enumerate_trees(node_t n, const EnumGuards& g = {}) {
    std::vector<RecursiveTree> out;
    for_each_tree(n, [&](const std::vector<node_t>& p) { out.emplace_back(p); }, g);
    return out;
}

// P(t) = prod_j ω_parent(j) / S_{j-1}
inline TreePmf wrt_tree_pmf(const WeightSequence& w, node_t n, const EnumGuards& g = {}) {
    check_tree_guard(n, g);
    const auto S = w.prefix_sums(n);
    TreePmf pmf;
    for_each_tree(n, [&](const std::vector<node_t>& p) {
        double pr = 1;
        for (node_t j = 2; j <= n; ++j) pr *= w(p[j - 2]) / S[j - 1];
        if (pr > 0) pmf.add(RecursiveTree(p).key(), pr);
    }, g);
    return pmf;
}

inline void check_digit_guard(const ShuffleParams& params, node_t n, const EnumGuards& g) {
    double count = std::pow(static_cast<double>(params.a()), n > 1 ? n - 1 : 0);
    if (count > g.max_digit_vectors)
        throw GuardError("digit enumeration guard: a^(n-1) = " + std::to_string(count) + " exceeds " +
                         std::to_string(g.max_digit_vectors));
}

// Visit every digit vector X_2..X_n with its product probability.
inline void for_each_digits(const ShuffleParams& params, node_t n,
                            const std::function<void(const DigitAssignment&, double)>& f, const EnumGuards& g = {}) {
    check_digit_guard(params, n, g);
    DigitAssignment d;
    d.x.assign(n > 1 ? n - 1 : 0, 1);
    const unsigned a = params.a();
    while (true) {
        double pr = 1;
        for (unsigned v : d.x) pr *= params.p(v);
        f(d, pr);
        std::size_t i = d.x.size();
        while (i > 0) {
            --i;
            if (d.x[i] < a) {
                ++d.x[i];
                break;
            }
            d.x[i] = 1;
            if (i == 0) return;
        }
        if (d.x.empty()) return;
    }
}

inline WordPmf brt_word_pmf_by_digits(const ShuffleParams& params, node_t n, const EnumGuards& g = {}) {
    WordPmf pmf;
    for_each_digits(params, n, [&](const DigitAssignment& d, double pr) {
        pmf.add(shuffle_from_digits(d, params.a()).word, pr);
    }, g);
    return pmf;
}

// Same law built from the cut-and-riffle description: every composition of the
// n-1 cards into piles, then every interleaving weighted by the sequential drop
// probabilities.
inline WordPmf brt_word_pmf_by_riffle(const ShuffleParams& params, node_t n, const EnumGuards& g = {}) {
    check_digit_guard(params, n, g);
    const node_t cards = n > 1 ? n - 1 : 0;
    const unsigned a = params.a();
    WordPmf pmf;
    std::vector<node_t> b(a, 0);
    std::function<void(unsigned, node_t, double)> cut = [&](unsigned s, node_t left, double pr) {
        if (s + 1 == a) {
            b[s] = left;
            pr *= std::pow(params.p(s + 1), left);
            // multinomial coefficient
            double coef = std::tgamma(cards + 1.0);
            for (node_t x : b) coef /= std::tgamma(x + 1.0);
            std::vector<node_t> next(a), rem(b), deck;
            node_t first = 2;
            for (unsigned t = 0; t < a; ++t) next[t] = first, first += b[t];
            std::function<void(node_t, double)> drop = [&](node_t remaining, double q) {
                if (remaining == 0) {
                    pmf.add(deck, pr * coef * q);
                    return;
                }
                for (unsigned t = 0; t < a; ++t) {
                    if (rem[t] == 0) continue;
                    double step = static_cast<double>(rem[t]) / remaining;
                    deck.push_back(next[t]++);
                    --rem[t];
                    drop(remaining - 1, q * step);
                    ++rem[t];
                    --next[t];
                    deck.pop_back();
                }
            };
            drop(cards, 1.0);
            return;
        }
        for (node_t x = 0; x <= left; ++x) {
            b[s] = x;
            cut(s + 1, left - x, pr * std::pow(params.p(s + 1), x));
        }
    };
    cut(0, cards, 1.0);
    return pmf;
}

inline TreePmf brt_tree_pmf(const ShuffleParams& params, node_t n, const EnumGuards& g = {}) {
    TreePmf pmf;
    for_each_digits(params, n, [&](const DigitAssignment& d, double pr) {
        pmf.add(tree_from_word(shuffle_from_digits(d, params.a())).key(), pr);
    }, g);
    return pmf;
}

inline TreePmf tree_pmf_from_words(const WordPmf& words, node_t n) {
    TreePmf pmf;
    for (const auto& [w, p] : words.mass) {
        WordPermutation wp;
        wp.n = n;
        wp.word = w;
        pmf.add(tree_from_word(wp).key(), p);
    }
    return pmf;
}

template <class F>
ValuePmf push_forward(const TreePmf& trees, F&& f) {
    ValuePmf out;
    for (const auto& [key, p] : trees.mass) out.add(static_cast<double>(f(RecursiveTree::from_key(key))), p);
    return out;
}

inline ValuePmf statistic_pmf(const TreePmf& trees, const Statistic& stat) { return push_forward(trees, stat); }

struct Moments {
    double mean = 0, var = 0;
};

inline Moments moments(const ValuePmf& d) {
    Moments m;
    for (const auto& [x, p] : d.mass) m.mean += p * x;
    for (const auto& [x, p] : d.mass) m.var += p * (x - m.mean) * (x - m.mean);
    return m;
}

template <class Key>
double tv_distance(const ExactDistribution<Key>& a, const ExactDistribution<Key>& b) {
    double s = 0;
    for (const auto& [k, p] : a.mass) s += std::abs(p - b[k]);
    for (const auto& [k, q] : b.mass)
        if (!a.mass.count(k)) s += std::abs(q);
    return s / 2;
}

}  // namespace rectree
