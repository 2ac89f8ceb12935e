#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace rectree {

using node_t = std::uint32_t;

// Increasing tree on [n] stored as a parent array; node 1 is the root.
class RecursiveTree {
public:
    RecursiveTree() : parent_(2, 0) {}

    // parents[j-2] = parent(j) for j = 2..n
    explicit RecursiveTree(const std::vector<node_t>& parents)
        : parent_(parents.size() + 2, 0) {
        for (std::size_t j = 2; j < parent_.size(); ++j) {
            node_t p = parents[j - 2];
            if (p < 1 || p >= j)
                throw std::invalid_argument("parent(" + std::to_string(j) + ") = " +
                                            std::to_string(p) + " violates 1 <= parent(j) < j");
            parent_[j] = p;
        }
    }

    static RecursiveTree chain(node_t n) {
        std::vector<node_t> p;
        for (node_t j = 2; j <= n; ++j) p.push_back(j - 1);
        return RecursiveTree(p);
    }

    static RecursiveTree star(node_t n) {
        return RecursiveTree(std::vector<node_t>(n > 1 ? n - 1 : 0, 1));
    }

    node_t size() const { return static_cast<node_t>(parent_.size() - 1); }
    node_t parent(node_t j) const { return parent_.at(j); }

    std::vector<node_t> parents() const {
        return std::vector<node_t>(parent_.begin() + 2, parent_.end());
    }

    bool operator==(const RecursiveTree& o) const { return parent_ == o.parent_; }
    bool operator<(const RecursiveTree& o) const { return parent_ < o.parent_; }

    // Compact key used for pmf aggregation: parents of 2..n joined by ','.
    std::string key() const {
        std::string s;
        for (std::size_t j = 2; j < parent_.size(); ++j) {
            if (j > 2) s += ',';
            s += std::to_string(parent_[j]);
        }
        return s;
    }

    static RecursiveTree from_key(const std::string& key) {
        std::vector<node_t> p;
        std::stringstream ss(key);
        std::string tok;
        while (std::getline(ss, tok, ',')) p.push_back(static_cast<node_t>(std::stoul(tok)));
        return RecursiveTree(p);
    }

private:
    std::vector<node_t> parent_;  // index 0 unused, parent_[1] = 0
};

inline void check_node(const RecursiveTree& t, node_t v) {
    if (v < 1 || v > t.size())
        throw std::domain_error("node " + std::to_string(v) + " out of range [1," +
                                std::to_string(t.size()) + "]");
}

inline std::vector<node_t> outdegrees(const RecursiveTree& t) {
    std::vector<node_t> d(t.size() + 1, 0);
    for (node_t j = 2; j <= t.size(); ++j) ++d[t.parent(j)];
    return d;
}

inline node_t leaves(const RecursiveTree& t) {
    if (t.size() == 1) return 0;
    auto d = outdegrees(t);
    return static_cast<node_t>(std::count(d.begin() + 1, d.end(), 0u));
}

inline node_t branches(const RecursiveTree& t) {
    node_t b = 0;
    for (node_t j = 2; j <= t.size(); ++j) b += t.parent(j) == 1;
    return b;
}

inline std::vector<node_t> depths(const RecursiveTree& t) {
    std::vector<node_t> d(t.size() + 1, 0);
    for (node_t j = 2; j <= t.size(); ++j) d[j] = d[t.parent(j)] + 1;
    return d;
}

inline node_t depth(const RecursiveTree& t, node_t v) {
    check_node(t, v);
    node_t d = 0;
    while (v != 1) v = t.parent(v), ++d;
    return d;
}

inline node_t distance(const RecursiveTree& t, node_t i, node_t j) {
    check_node(t, i);
    check_node(t, j);
    node_t d = 0;
    // the larger label can never be an ancestor of the smaller one
    while (i != j) {
        if (i > j) i = t.parent(i);
        else j = t.parent(j);
        ++d;
    }
    return d;
}

inline node_t height(const RecursiveTree& t) {
    auto d = depths(t);
    return *std::max_element(d.begin() + 1, d.end());
}

inline node_t degree(const RecursiveTree& t, node_t v) {
    check_node(t, v);
    return outdegrees(t)[v] + (v > 1 ? 1 : 0);
}

inline node_t max_degree(const RecursiveTree& t) {
    auto d = outdegrees(t);
    node_t m = 0;
    for (node_t v = 1; v <= t.size(); ++v) m = std::max<node_t>(m, d[v] + (v > 1));
    return m;
}

// Subtree sizes minus one, indexed by node.
inline std::vector<node_t> descendant_counts(const RecursiveTree& t) {
    std::vector<node_t> s(t.size() + 1, 0);
    for (node_t j = t.size(); j >= 2; --j) s[t.parent(j)] += s[j] + 1;
    return s;
}

inline node_t nodes_with_at_least_k(const RecursiveTree& t, node_t k) {
    auto s = descendant_counts(t);
    return static_cast<node_t>(std::count_if(s.begin() + 1, s.end(), [k](node_t x) { return x >= k; }));
}

inline node_t nodes_with_exactly_k(const RecursiveTree& t, node_t k) {
    auto s = descendant_counts(t);
    return static_cast<node_t>(std::count(s.begin() + 1, s.end(), k));
}

// m -> number of branches of size m
inline std::map<node_t, node_t> branch_size_histogram(const RecursiveTree& t) {
    auto s = descendant_counts(t);
    std::map<node_t, node_t> h;
    for (node_t j = 2; j <= t.size(); ++j)
        if (t.parent(j) == 1) ++h[s[j] + 1];
    return h;
}

inline node_t largest_branch(const RecursiveTree& t) {
    auto s = descendant_counts(t);
    node_t m = 0;
    for (node_t j = 2; j <= t.size(); ++j)
        if (t.parent(j) == 1) m = std::max(m, s[j] + 1);
    return m;
}

inline std::string to_text(const RecursiveTree& t) {
    std::string s = std::to_string(t.size()) + "\n";
    for (node_t j = 2; j <= t.size(); ++j)
        s += std::to_string(j) + " " + std::to_string(t.parent(j)) + "\n";
    return s;
}

inline RecursiveTree from_text(std::istream& in) {
    long long n;
    if (!(in >> n) || n < 1) throw std::invalid_argument("tree text: bad node count");
    std::vector<node_t> p(static_cast<std::size_t>(n - 1));
    for (long long j = 2; j <= n; ++j) {
        long long jj, pj;
        if (!(in >> jj >> pj) || jj != j)
            throw std::invalid_argument("tree text: expected line for node " + std::to_string(j));
        if (pj < 1) throw std::invalid_argument("tree text: bad parent");
        p[static_cast<std::size_t>(j - 2)] = static_cast<node_t>(pj);
    }
    return RecursiveTree(p);
}

inline RecursiveTree from_text(const std::string& s) {
    std::istringstream in(s);
    return from_text(in);
}

}  // namespace rectree
