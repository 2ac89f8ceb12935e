#pragma once

#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "perm.hpp"
#include "rng.hpp"

namespace rectree {

// Pile probabilities p_1..p_a of a p-biased riffle shuffle. Zero entries are
// dropped on construction, so p_1 > 0 afterwards.
class ShuffleParams {
public:
    explicit ShuffleParams(const std::vector<double>& p) {
        double sum = 0;
        for (double x : p) {
            if (!(x >= 0) || !std::isfinite(x)) throw std::invalid_argument("pile probabilities must be finite and >= 0");
            sum += x;
            if (x > 0) p_.push_back(x);
        }
        if (p_.empty() || std::abs(sum - 1.0) > 1e-12)
            throw std::invalid_argument("pile probabilities must sum to 1 (got " + std::to_string(sum) + ")");
        uniform_ = true;
        for (double x : p_) uniform_ = uniform_ && x == p_[0];
        cum_.resize(p_.size() + 1, 0.0);
        for (std::size_t s = 0; s < p_.size(); ++s) cum_[s + 1] = cum_[s] + p_[s];
    }

    static ShuffleParams uniform(unsigned a) {
        if (a < 1) throw std::invalid_argument("pile count a must be >= 1");
        return ShuffleParams(std::vector<double>(a, 1.0 / a));
    }

    static ShuffleParams parse(const std::string& list) {
        std::vector<double> p;
        std::stringstream ss(list);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            std::size_t used = 0;
            double v = std::stod(tok, &used);
            if (used != tok.size()) throw std::invalid_argument("bad probability '" + tok + "'");
            p.push_back(v);
        }
        return ShuffleParams(p);
    }

    unsigned a() const { return static_cast<unsigned>(p_.size()); }
    double p(unsigned s) const { return p_.at(s - 1); }  // 1-based
    const std::vector<double>& probs() const { return p_; }
    bool is_uniform() const { return uniform_; }
    // P(digit <= s), s = 0..a
    double cdf(unsigned s) const { return cum_.at(s); }
    // P(digit >= s)
    double tail(unsigned s) const { return s <= 1 ? 1.0 : (s > a() ? 0.0 : 1.0 - cum_[s - 1]); }

    std::string name() const {
        std::string s;
        for (std::size_t i = 0; i < p_.size(); ++i) {
            char b[32];
            std::snprintf(b, sizeof b, "%g", p_[i]);
            s += (i ? ";" : "") + std::string(b);
        }
        return s;
    }

private:
    std::vector<double> p_, cum_;
    bool uniform_ = false;
};

// X_2..X_n stored at index 0..n-2, values in [1,a].
struct DigitAssignment {
    std::vector<unsigned> x;
    node_t n() const { return static_cast<node_t>(x.size() + 1); }
};

inline unsigned sample_digit(const ShuffleParams& params, RandomStream& rng) {
    const unsigned a = params.a();
    if (params.is_uniform()) return 1 + static_cast<unsigned>(rng.below(a));
    double u = rng.uniform();
    for (unsigned s = 1; s < a; ++s)
        if (u < params.cdf(s)) return s;
    return a;
}

inline DigitAssignment sample_digits(const ShuffleParams& params, node_t n, RandomStream& rng) {
    DigitAssignment d;
    d.x.resize(n > 1 ? n - 1 : 0);
    for (auto& v : d.x) v = sample_digit(params, rng);
    return d;
}

// Stable sort of cards 2..n by digit; γ(i) is the sorted position of card i.
inline WordPermutation shuffle_from_digits(const DigitAssignment& d, unsigned a = 0) {
    const node_t n = d.n();
    for (unsigned v : d.x)
        if (v < 1) throw std::invalid_argument("digits must be >= 1");
    unsigned amax = a;
    for (unsigned v : d.x) amax = std::max(amax, v);
    std::vector<node_t> start(amax + 2, 0);
    for (unsigned v : d.x) ++start[v + 1];
    for (unsigned s = 1; s <= amax + 1; ++s) start[s] += start[s - 1];
    WordPermutation w;
    w.n = n;
    w.word.resize(d.x.size());
    for (std::size_t i = 0; i < d.x.size(); ++i) w.word[i] = 2 + start[d.x[i]]++;
    return w;
}

// Multinomial cut by sequential binomials, then drop cards with probability
// proportional to the remaining pile sizes. Returns the resulting deck order.
inline std::vector<node_t> sample_pile_sizes(const ShuffleParams& params, node_t cards, RandomStream& rng) {
    std::vector<node_t> b(params.a(), 0);
    node_t left = cards;
    double mass = 1.0;
    for (unsigned s = 1; s <= params.a() && left > 0; ++s) {
        if (s == params.a()) {
            b[s - 1] = left;
            break;
        }
        double q = std::min(1.0, params.p(s) / mass);
        std::binomial_distribution<node_t> bin(left, q);
        b[s - 1] = bin(rng);
        left -= b[s - 1];
        mass -= params.p(s);
    }
    return b;
}

inline WordPermutation sample_shuffle_by_cut_and_riffle(const ShuffleParams& params, node_t n, RandomStream& rng) {
    const node_t cards = n > 1 ? n - 1 : 0;
    auto b = sample_pile_sizes(params, cards, rng);
    std::vector<node_t> next(b.size());
    node_t first = 2;
    for (std::size_t s = 0; s < b.size(); ++s) next[s] = first, first += b[s];
    WordPermutation w;
    w.n = n;
    w.word.reserve(cards);
    for (node_t remaining = cards; remaining > 0; --remaining) {
        std::uint64_t r = rng.below(remaining);
        std::size_t s = 0;
        while (r >= b[s]) r -= b[s++];
        w.word.push_back(next[s]++);
        --b[s];
    }
    return w;
}

}  // namespace rectree
