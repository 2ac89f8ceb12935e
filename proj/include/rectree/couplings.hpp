#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "enumerate.hpp"
#include "generators.hpp"
#include "rng.hpp"
#include "tree.hpp"
#include "weights.hpp"

namespace rectree {

// Law of the derived parent of node j given its source parent i.
using Kernel = std::vector<std::pair<node_t, double>>;

struct CoupledPair {
    RecursiveTree source, derived;
};

inline node_t draw(const Kernel& k, RandomStream& rng) {
    if (k.size() == 1) return k[0].first;
    double u = rng.uniform(), acc = 0;
    for (const auto& [v, p] : k) {
        acc += p;
        if (u < acc) return v;
    }
    return k.back().first;
}

// Relocation of a URT towards a WRT. The kernel sees only (i, j) and the
// weights, never the tree shape.
class GeneralCoupling {
public:
    static constexpr double tolerance = 1e-12;

    explicit GeneralCoupling(WeightSequence w) : w_(std::move(w)) {}

    Kernel kernel(node_t i, node_t j) const {
        if (i < 1 || i >= j) throw std::invalid_argument("kernel needs 1 <= i < j");
        const double S = w_.prefix_sum(j - 1);
        const double avg = S / (j - 1);
        const double wi = w_(i);
        if (!(wi < avg - tolerance * avg)) return {{i, 1.0}};
        double r = (S - (j - 1) * wi) / S;
        Kernel k{{i, 1.0 - r}};
        double total = 0;
        std::vector<std::pair<node_t, double>> up;
        for (node_t v = 1; v < j; ++v) {
            double excess = (j - 1) * w_(v) - S;
            if (w_(v) > avg + tolerance * avg) up.emplace_back(v, excess), total += excess;
        }
        if (up.empty() || !(total > 0)) throw std::logic_error("relocation without a node above the average weight");
        for (auto [v, e] : up) k.emplace_back(v, r * e / total);
        return k;
    }

    CoupledPair apply(const RecursiveTree& source, RandomStream& rng) const {
        auto p = source.parents();
        for (node_t j = 3; j <= source.size(); ++j) p[j - 2] = draw(kernel(source.parent(j), j), rng);
        return {source, RecursiveTree(p)};
    }

    CoupledPair sample(node_t n, RandomStream& rng) const { return apply(sample_urt(n, rng), rng); }

    const WeightSequence& weights() const { return w_; }

private:
    WeightSequence w_;
};

// URT -> θ^k tree; nodes up to k+1 are never moved.
class ThetaKCoupling {
public:
    ThetaKCoupling(double theta, unsigned k) : theta_(theta), k_(k) {
        if (!(theta > 0) || k < 1) throw std::invalid_argument("theta^k coupling needs theta > 0, k >= 1");
    }

    double relocation_probability(node_t i, node_t j) const {
        if (j <= k_ + 1 || theta_ == 1.0) return 0;
        const double D = k_ * theta_ + (j - k_ - 1.0);
        if (theta_ < 1) return i <= k_ ? (D - theta_ * (j - 1.0)) / D : 0.0;
        return i > k_ ? k_ * (theta_ - 1) / D : 0.0;
    }

    Kernel kernel(node_t i, node_t j) const {
        if (i < 1 || i >= j) throw std::invalid_argument("kernel needs 1 <= i < j");
        double r = relocation_probability(i, j);
        if (r == 0) return {{i, 1.0}};
        Kernel k{{i, 1.0 - r}};
        if (theta_ < 1) {
            const double q = r / (j - 1 - k_);
            for (node_t v = k_ + 1; v < j; ++v) k.emplace_back(v, q);
        } else {
            for (node_t v = 1; v <= k_; ++v) k.emplace_back(v, r / k_);
        }
        return k;
    }

    CoupledPair apply(const RecursiveTree& source, RandomStream& rng) const {
        auto p = source.parents();
        for (node_t j = 3; j <= source.size(); ++j) p[j - 2] = draw(kernel(source.parent(j), j), rng);
        return {source, RecursiveTree(p)};
    }

    CoupledPair sample(node_t n, RandomStream& rng) const { return apply(sample_urt(n, rng), rng); }

    double theta() const { return theta_; }
    unsigned k() const { return k_; }

private:
    double theta_;
    unsigned k_;
};

// Deterministic merge of a URT on mk+n-k nodes into an m^k tree on n nodes:
// blocks (i-1)m+1..im become node i for i <= k.
class MergeCoupling {
public:
    MergeCoupling(unsigned m, unsigned k) : m_(m), k_(k) {
        if (m < 1 || k < 1) throw std::invalid_argument("merge coupling needs m, k >= 1");
    }

    node_t source_size(node_t n) const { return m_ * k_ + n - k_; }

    node_t map(node_t x) const { return x <= k_ * m_ ? (x + m_ - 1) / m_ : x - k_ * (m_ - 1); }

    // source node whose parent decides the parent of derived node j
    node_t representative(node_t j) const { return j <= k_ ? (j - 1) * m_ + 1 : j + k_ * (m_ - 1); }

    RecursiveTree apply(const RecursiveTree& source, node_t n) const {
        if (source.size() != source_size(n))
            throw std::invalid_argument("merge coupling: source has " + std::to_string(source.size()) +
                                        " nodes, expected mk+n-k = " + std::to_string(source_size(n)));
        std::vector<node_t> p(n - 1);
        for (node_t j = 2; j <= n; ++j) p[j - 2] = map(source.parent(representative(j)));
        return RecursiveTree(p);
    }

    CoupledPair sample(node_t n, RandomStream& rng) const {
        auto src = sample_urt(source_size(n), rng);
        return {src, apply(src, n)};
    }

    unsigned m() const { return m_; }
    unsigned k() const { return k_; }

private:
    unsigned m_, k_;
};

// URT on nm-k(m-1) nodes -> θ^k tree with θ = 1/m: the first k nodes stay, each
// later node is a block of m source nodes. Kept for law checks only.
class InverseMergeCoupling {
public:
    InverseMergeCoupling(unsigned m, unsigned k) : m_(m), k_(k) {
        if (m < 1 || k < 1) throw std::invalid_argument("1/m coupling needs m, k >= 1");
    }

    node_t source_size(node_t n) const { return n <= k_ ? n : k_ + (n - k_) * m_; }

    node_t map(node_t x) const { return x <= k_ ? x : k_ + (x - k_ + m_ - 1) / m_; }

    node_t representative(node_t i) const { return i <= k_ ? i : k_ + (i - k_ - 1) * m_ + 1; }

    RecursiveTree apply(const RecursiveTree& source, node_t n) const {
        if (source.size() != source_size(n)) throw std::invalid_argument("1/m coupling: source size mismatch");
        std::vector<node_t> p(n - 1);
        for (node_t j = 2; j <= n; ++j) p[j - 2] = map(source.parent(representative(j)));
        return RecursiveTree(p);
    }

    CoupledPair sample(node_t n, RandomStream& rng) const {
        auto src = sample_urt(source_size(n), rng);
        return {src, apply(src, n)};
    }

private:
    unsigned m_, k_;
};

// Hoppe tree with θ = ω_1+...+ω_k on n-k+1 nodes; its root is split into a
// WRT on k nodes and former root children pick j <= k with probability ω_j/θ.
class SplitCoupling {
public:
    SplitCoupling(WeightSequence w, unsigned k) : w_(std::move(w)), k_(k) {
        if (k < 1) throw std::invalid_argument("split coupling needs k >= 1");
        theta_ = w_.prefix_sum(k);
    }

    void check_tail(node_t n) const {
        for (node_t i = k_ + 1; i <= n; ++i)
            if (std::abs(w_(i) - 1.0) > 1e-12)
                throw std::invalid_argument("split coupling needs weight 1 beyond node k (node " + std::to_string(i) + ")");
    }

    double theta() const { return theta_; }
    unsigned k() const { return k_; }
    node_t source_size(node_t n) const { return n - k_ + 1; }

    // root-child redistribution law
    Kernel root_kernel() const {
        Kernel k;
        for (node_t j = 1; j <= k_; ++j) k.emplace_back(j, w_(j) / theta_);
        return k;
    }

    RecursiveTree assemble(const RecursiveTree& hoppe, const RecursiveTree& head, const std::vector<node_t>& root_choice) const {
        const node_t n = hoppe.size() + k_ - 1;
        std::vector<node_t> p(n - 1);
        for (node_t j = 2; j <= k_; ++j) p[j - 2] = head.parent(j);
        std::size_t c = 0;
        for (node_t h = 2; h <= hoppe.size(); ++h)
            p[h + k_ - 3] = hoppe.parent(h) == 1 ? root_choice.at(c++) : hoppe.parent(h) + k_ - 1;
        return RecursiveTree(p);
    }

    CoupledPair sample(node_t n, RandomStream& rng) const {
        if (n < k_) throw std::invalid_argument("split coupling needs n >= k");
        check_tail(n);
        auto hoppe = sample_hoppe(theta_, source_size(n), rng);
        auto head = sample_wrt(w_, k_, rng);
        auto rk = root_kernel();
        std::vector<node_t> choice(branches(hoppe));
        for (auto& c : choice) c = draw(rk, rng);
        return {hoppe, assemble(hoppe, head, choice)};
    }

private:
    WeightSequence w_;
    unsigned k_;
    double theta_;
};

// Exact law of the derived tree: URT source times independent kernels.
template <class Coupling>
TreePmf coupled_pmf(const Coupling& c, node_t n, const EnumGuards& g = {}) {
    check_tree_guard(n, g);
    TreePmf pmf;
    std::vector<node_t> p(n > 1 ? n - 1 : 0);
    std::function<void(node_t, double)> rec = [&](node_t j, double pr) {
        if (j > n) {
            pmf.add(RecursiveTree(p).key(), pr);
            return;
        }
        for (node_t i = 1; i < j; ++i) {  // source parent
            const double ps = pr / (j - 1);
            if (j <= 2) {
                p[j - 2] = i;
                rec(j + 1, ps);
                continue;
            }
            for (const auto& [v, q] : c.kernel(i, j)) {
                if (q <= 0) continue;
                p[j - 2] = v;
                rec(j + 1, ps * q);
            }
        }
    };
    rec(2, 1.0);
    return pmf;
}

template <class Deterministic>
TreePmf mapped_pmf(const Deterministic& c, node_t n, const EnumGuards& g = {}) {
    const node_t N = c.source_size(n);
    check_tree_guard(N, g);
    double mass = 1;
    for (node_t j = 2; j <= N; ++j) mass /= (j - 1);
    TreePmf pmf;
    for_each_tree(N, [&](const std::vector<node_t>& p) { pmf.add(c.apply(RecursiveTree(p), n).key(), mass); }, g);
    return pmf;
}

inline TreePmf split_pmf(const SplitCoupling& c, const WeightSequence& w, node_t n, const EnumGuards& g = {}) {
    c.check_tail(n);
    auto hoppe = wrt_tree_pmf(WeightSequence::hoppe(c.theta()), c.source_size(n), g);
    auto head = wrt_tree_pmf(w, c.k(), g);
    auto rk = c.root_kernel();
    TreePmf pmf;
    for (const auto& [hk, hp] : hoppe.mass) {
        auto ht = RecursiveTree::from_key(hk);
        const node_t b = branches(ht);
        for (const auto& [sk, sp] : head.mass) {
            auto st = RecursiveTree::from_key(sk);
            std::vector<node_t> choice(b, 0);
            std::function<void(std::size_t, double)> rec = [&](std::size_t c_i, double pr) {
                if (c_i == b) {
                    pmf.add(c.assemble(ht, st, choice).key(), pr);
                    return;
                }
                for (const auto& [v, q] : rk) {
                    choice[c_i] = v;
                    rec(c_i + 1, pr * q);
                }
            };
            rec(0, hp * sp);
        }
    }
    return pmf;
}

}  // namespace rectree
