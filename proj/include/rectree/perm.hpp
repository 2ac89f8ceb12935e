#pragma once

#include <algorithm>
#include <cctype>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "tree.hpp"

namespace rectree {

// Arrangement γ(2..n) of {2,...,n}; γ(1) = 1 is implicit.
struct WordPermutation {
    node_t n = 1;
    std::vector<node_t> word;

    WordPermutation() = default;
    explicit WordPermutation(std::vector<node_t> w) : n(static_cast<node_t>(w.size() + 1)), word(std::move(w)) {
        std::vector<char> seen(n + 1, 0);
        for (node_t v : word) {
            if (v < 2 || v > n || seen[v]) throw std::invalid_argument("word is not a permutation of {2..n}");
            seen[v] = 1;
        }
    }

    static WordPermutation identity(node_t n) {
        std::vector<node_t> w;
        for (node_t v = 2; v <= n; ++v) w.push_back(v);
        return WordPermutation(w);
    }

    bool operator==(const WordPermutation&) const = default;
};

// Each j attaches to the nearest smaller entry on its left.
inline RecursiveTree tree_from_word(const WordPermutation& w) {
    std::vector<node_t> parent(w.n > 1 ? w.n - 1 : 0);
    std::vector<node_t> stack{1};
    stack.reserve(w.n);
    for (node_t v : w.word) {
        while (stack.back() > v) stack.pop_back();
        parent[v - 2] = stack.back();
        stack.push_back(v);
    }
    return RecursiveTree(parent);
}

// Inverse: insert each i directly to the right of its parent, i.e. preorder with
// children visited in decreasing label order.
inline WordPermutation word_from_tree(const RecursiveTree& t) {
    const node_t n = t.size();
    std::vector<node_t> head(n + 1, 0), next(n + 1, 0);
    for (node_t j = 2; j <= n; ++j) {  // prepend, so lists end up decreasing
        next[j] = head[t.parent(j)];
        head[t.parent(j)] = j;
    }
    std::vector<node_t> out;
    out.reserve(n - 1);
    std::vector<node_t> stack;
    for (node_t c = head[1]; c; c = next[c]) stack.push_back(c);
    std::reverse(stack.begin(), stack.end());
    while (!stack.empty()) {
        node_t v = stack.back();
        stack.pop_back();
        out.push_back(v);
        std::size_t mark = stack.size();
        for (node_t c = head[v]; c; c = next[c]) stack.push_back(c);
        std::reverse(stack.begin() + static_cast<std::ptrdiff_t>(mark), stack.end());
    }
    WordPermutation w;
    w.n = n;
    w.word = std::move(out);
    return w;
}

// 1-based position of n in γ(1..n) (γ(1) = 1 occupies position 1).
inline node_t position_of_max(const WordPermutation& w) {
    if (w.n == 1) return 1;
    auto it = std::find(w.word.begin(), w.word.end(), w.n);
    return static_cast<node_t>(it - w.word.begin()) + 2;
}

inline node_t descents(std::span<const node_t> s) {
    node_t d = 0;
    for (std::size_t r = 0; r + 1 < s.size(); ++r) d += s[r] > s[r + 1];
    return d;
}

inline node_t records(std::span<const node_t> s) {
    node_t c = 0;
    node_t best = 0;
    for (node_t v : s)
        if (v > best) best = v, ++c;
    return c;
}

inline node_t anti_records(std::span<const node_t> s) {
    node_t c = 0;
    node_t best = ~node_t(0);
    for (node_t v : s)
        if (v < best) best = v, ++c;
    return c;
}

inline node_t descents(const WordPermutation& w) { return descents(std::span<const node_t>(w.word)); }
inline node_t records(const WordPermutation& w) { return records(std::span<const node_t>(w.word)); }
inline node_t anti_records(const WordPermutation& w) { return anti_records(std::span<const node_t>(w.word)); }

inline node_t leaf_count_from_word(const WordPermutation& w) {
    if (w.n < 2) return 0;
    return 1 + descents(w);
}

// Cycles in standard notation: smallest element first, cycles ordered by first
// element descending.
struct CycleForm {
    std::vector<std::vector<node_t>> cycles;

    CycleForm() = default;
    explicit CycleForm(std::vector<std::vector<node_t>> c) : cycles(std::move(c)) { normalize(); }

    void normalize() {
        std::vector<node_t> all;
        for (auto& c : cycles) {
            if (c.empty()) throw std::invalid_argument("empty cycle");
            std::rotate(c.begin(), std::min_element(c.begin(), c.end()), c.end());
            all.insert(all.end(), c.begin(), c.end());
        }
        std::sort(all.begin(), all.end());
        if (std::adjacent_find(all.begin(), all.end()) != all.end())
            throw std::invalid_argument("element repeated across cycles");
        std::sort(cycles.begin(), cycles.end(), [](const auto& a, const auto& b) { return a[0] > b[0]; });
    }

    std::size_t count() const { return cycles.size(); }
    bool operator==(const CycleForm&) const = default;
};

inline std::string to_string(const CycleForm& c) {
    std::string s;
    for (const auto& cy : c.cycles) {
        s += '(';
        for (std::size_t i = 0; i < cy.size(); ++i) {
            if (i) s += ' ';
            s += std::to_string(cy[i]);
        }
        s += ')';
    }
    return s;
}

// Accepts "(2 3 9 6)(1 4 7 5 8)"; single-digit entries may be written without
// separators, e.g. "(2463)".
inline CycleForm parse_cycles(const std::string& text) {
    std::vector<std::vector<node_t>> cycles;
    std::size_t i = 0;
    auto skip = [&] { while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i; };
    skip();
    while (i < text.size()) {
        if (text[i] != '(') throw std::invalid_argument("malformed cycle form: expected '('");
        std::size_t close = text.find(')', i);
        if (close == std::string::npos) throw std::invalid_argument("malformed cycle form: missing ')'");
        std::string body = text.substr(i + 1, close - i - 1);
        std::vector<node_t> cy;
        bool spaced = body.find_first_of(" ,") != std::string::npos;
        if (spaced) {
            for (char& ch : body)
                if (ch == ',') ch = ' ';
            std::istringstream in(body);
            long long v;
            while (in >> v) {
                if (v < 1) throw std::invalid_argument("malformed cycle form: bad entry");
                cy.push_back(static_cast<node_t>(v));
            }
            if (!in.eof()) throw std::invalid_argument("malformed cycle form: bad entry");
        } else {
            for (char ch : body) {
                if (!std::isdigit(static_cast<unsigned char>(ch)) || ch == '0')
                    throw std::invalid_argument("malformed cycle form: bad entry");
                cy.push_back(static_cast<node_t>(ch - '0'));
            }
        }
        cycles.push_back(std::move(cy));
        i = close + 1;
        skip();
    }
    return CycleForm(std::move(cycles));
}

// Cycles of a one-line permutation of {1..n}.
inline CycleForm cycles_of_permutation(std::span<const node_t> oneline) {
    const std::size_t n = oneline.size();
    std::vector<char> seen(n + 1, 0);
    std::vector<std::vector<node_t>> cycles;
    for (node_t s = 1; s <= n; ++s) {
        if (seen[s]) continue;
        std::vector<node_t> cy;
        for (node_t v = s; !seen[v]; v = oneline[v - 1]) {
            if (v < 1 || v > n) throw std::invalid_argument("not a permutation");
            seen[v] = 1;
            cy.push_back(v);
        }
        cycles.push_back(std::move(cy));
    }
    return CycleForm(std::move(cycles));
}

// Tree <-> cycles of {2..n}: a child of the root opens a cycle, a child of i > 1
// sits right after i. Equivalent to cutting the word at its anti-records.
inline CycleForm cycles_from_tree(const RecursiveTree& t) {
    auto w = word_from_tree(t);
    std::vector<std::vector<node_t>> cycles;
    node_t best = ~node_t(0);
    for (node_t v : w.word) {
        if (v < best) best = v, cycles.emplace_back();
        cycles.back().push_back(v);
    }
    return CycleForm(std::move(cycles));
}

// Accepts cycles over {2..n}, optionally with (1) as a fixed point.
inline RecursiveTree tree_from_cycles(const CycleForm& c) {
    std::vector<node_t> w;
    for (const auto& cy : c.cycles) {
        if (cy.size() == 1 && cy[0] == 1) continue;
        for (node_t v : cy)
            if (v == 1) throw std::invalid_argument("node 1 must be a fixed point");
        w.insert(w.end(), cy.begin(), cy.end());
    }
    return tree_from_word(WordPermutation(w));
}

inline std::string to_string(const WordPermutation& w) {
    std::string s;
    for (std::size_t i = 0; i < w.word.size(); ++i) {
        if (i) s += ' ';
        s += std::to_string(w.word[i]);
    }
    return s;
}

// Space-separated integers; an optional leading 1 is dropped.
inline WordPermutation parse_word(const std::string& text) {
    std::istringstream in(text);
    std::vector<node_t> w;
    long long v;
    while (in >> v) {
        if (v < 1) throw std::invalid_argument("word entries must be positive");
        w.push_back(static_cast<node_t>(v));
    }
    if (!in.eof()) throw std::invalid_argument("word: non-integer token");
    if (!w.empty() && w[0] == 1) w.erase(w.begin());
    return WordPermutation(w);
}

}  // namespace rectree
