#pragma once

#include <stdexcept>
#include <string>

#include "perm.hpp"
#include "tree.hpp"

namespace rectree {

// Named per-tree statistic, parsed from selectors such as "leaves",
// "ydesc:2", "branchsize:1" or "distance:2,5".
struct Statistic {
    enum class Kind { leaves, branches, depth, height, maxdeg, largest, ydesc, xdesc, branchsize, distance, position };

    Kind kind = Kind::leaves;
    node_t k = 0;  // ydesc/xdesc threshold, branchsize m
    node_t i = 0, j = 0;

    static Statistic parse(const std::string& s) {
        auto colon = s.find(':');
        std::string head = s.substr(0, colon);
        std::string arg = colon == std::string::npos ? "" : s.substr(colon + 1);
        auto uint = [&](const std::string& t) {
            std::size_t used = 0;
            unsigned long v = 0;
            try {
                v = std::stoul(t, &used);
            } catch (...) {
                used = 0;
            }
            if (t.empty() || used != t.size()) throw std::invalid_argument("statistic '" + s + "': bad integer");
            return static_cast<node_t>(v);
        };
        Statistic st;
        auto plain = [&](Kind kd) {
            if (colon != std::string::npos) throw std::invalid_argument("statistic '" + s + "' takes no parameter");
            st.kind = kd;
            return st;
        };
        if (head == "leaves") return plain(Kind::leaves);
        if (head == "branches") return plain(Kind::branches);
        if (head == "depth") return plain(Kind::depth);
        if (head == "height") return plain(Kind::height);
        if (head == "maxdeg") return plain(Kind::maxdeg);
        if (head == "largest") return plain(Kind::largest);
        if (head == "position") return plain(Kind::position);
        if (head == "ydesc" || head == "xdesc" || head == "branchsize") {
            st.kind = head == "ydesc" ? Kind::ydesc : head == "xdesc" ? Kind::xdesc : Kind::branchsize;
            st.k = uint(arg);
            if (st.kind == Kind::branchsize && st.k < 1) throw std::invalid_argument("branchsize:m needs m >= 1");
            return st;
        }
        if (head == "distance") {
            auto comma = arg.find(',');
            if (comma == std::string::npos) throw std::invalid_argument("statistic '" + s + "': expected distance:i,j");
            st.kind = Kind::distance;
            st.i = uint(arg.substr(0, comma));
            st.j = uint(arg.substr(comma + 1));
            if (st.i < 1 || st.j < 1 || st.i == st.j) throw std::invalid_argument("distance:i,j needs distinct nodes >= 1");
            return st;
        }
        throw std::invalid_argument("unknown statistic '" + s + "'");
    }

    std::string name() const {
        switch (kind) {
            case Kind::leaves: return "leaves";
            case Kind::branches: return "branches";
            case Kind::depth: return "depth";
            case Kind::height: return "height";
            case Kind::maxdeg: return "maxdeg";
            case Kind::largest: return "largest";
            case Kind::position: return "position";
            case Kind::ydesc: return "ydesc:" + std::to_string(k);
            case Kind::xdesc: return "xdesc:" + std::to_string(k);
            case Kind::branchsize: return "branchsize:" + std::to_string(k);
            case Kind::distance: return "distance:" + std::to_string(i) + "," + std::to_string(j);
        }
        return "?";
    }

    double operator()(const RecursiveTree& t) const {
        switch (kind) {
            case Kind::leaves: return leaves(t);
            case Kind::branches: return branches(t);
            case Kind::depth: return depth(t, t.size());
            case Kind::height: return height(t);
            case Kind::maxdeg: return max_degree(t);
            case Kind::largest: return largest_branch(t);
            case Kind::position: return position_of_max(word_from_tree(t));
            case Kind::ydesc: return nodes_with_at_least_k(t, k);
            case Kind::xdesc: return nodes_with_exactly_k(t, k);
            case Kind::branchsize: {
                auto h = branch_size_histogram(t);
                auto it = h.find(k);
                return it == h.end() ? 0 : it->second;
            }
            case Kind::distance: return distance(t, i, j);
        }
        return 0;
    }
};

}  // namespace rectree
