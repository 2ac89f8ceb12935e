#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

namespace rectree {

// Node weights i -> ω_i with memoized prefix sums S_i = ω_1 + ... + ω_i.
class WeightSequence {
public:
    enum class Kind { constant, hoppe, theta_k, linear, power, reciprocal, log, geometric, table };

    static WeightSequence constant() { return WeightSequence(Kind::constant, 1, 0); }
    static WeightSequence hoppe(double theta) { return WeightSequence(Kind::hoppe, theta, 1); }
    static WeightSequence theta_k(double theta, unsigned k) { return WeightSequence(Kind::theta_k, theta, k); }
    static WeightSequence linear() { return WeightSequence(Kind::linear, 1, 1); }
    static WeightSequence power(double k) { return WeightSequence(Kind::power, 1, k); }
    static WeightSequence reciprocal(double k) { return WeightSequence(Kind::reciprocal, 1, k); }
    static WeightSequence log() { return WeightSequence(Kind::log, 1, 0); }
    static WeightSequence geometric(double a) { return WeightSequence(Kind::geometric, a, 0); }
    static WeightSequence from_table(std::vector<double> w) {
        WeightSequence s(Kind::table, 1, 0);
        if (w.empty()) throw std::invalid_argument("weight table is empty");
        for (double x : w)
            if (!(x >= 0) || !std::isfinite(x)) throw std::invalid_argument("weight table entries must be finite and >= 0");
        if (!(w[0] > 0)) throw std::invalid_argument("weight table: first weight must be positive");
        s.table_ = std::make_shared<const std::vector<double>>(std::move(w));
        return s;
    }

    // const | hoppe:θ | thetak:θ,k | linear | power:k | recip:k | log | geom:a | table:file
    static WeightSequence parse(const std::string& spec) {
        auto colon = spec.find(':');
        std::string head = spec.substr(0, colon);
        std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
        auto num = [&](const std::string& s) {
            std::size_t used = 0;
            double v = 0;
            try {
                v = std::stod(s, &used);
            } catch (...) {
                used = 0;
            }
            if (used != s.size() || s.empty()) throw std::invalid_argument("weights '" + spec + "': bad number '" + s + "'");
            return v;
        };
        auto need_arg = [&] {
            if (arg.empty()) throw std::invalid_argument("weights '" + spec + "': missing parameter");
        };
        auto no_arg = [&] {
            if (colon != std::string::npos) throw std::invalid_argument("weights '" + spec + "': takes no parameter");
        };
        if (head == "const") return no_arg(), constant();
        if (head == "linear") return no_arg(), linear();
        if (head == "log") return no_arg(), log();
        if (head == "hoppe") return need_arg(), hoppe(num(arg));
        if (head == "power") return need_arg(), power(num(arg));
        if (head == "recip") return need_arg(), reciprocal(num(arg));
        if (head == "geom") return need_arg(), geometric(num(arg));
        if (head == "thetak") {
            need_arg();
            auto comma = arg.find(',');
            if (comma == std::string::npos) throw std::invalid_argument("weights '" + spec + "': expected thetak:θ,k");
            double k = num(arg.substr(comma + 1));
            if (k < 1 || k != std::floor(k)) throw std::invalid_argument("weights '" + spec + "': k must be a positive integer");
            return theta_k(num(arg.substr(0, comma)), static_cast<unsigned>(k));
        }
        if (head == "table") {
            need_arg();
            std::ifstream in(arg);
            if (!in) throw std::invalid_argument("weights table: cannot open '" + arg + "'");
            std::vector<double> w;
            std::string tok;
            while (in >> tok) w.push_back(num(tok));
            return from_table(std::move(w));
        }
        throw std::invalid_argument("unknown weight preset '" + spec + "'");
    }

    double operator()(std::size_t i) const {
        switch (kind_) {
            case Kind::constant: return 1.0;
            case Kind::hoppe: return i == 1 ? theta_ : 1.0;
            case Kind::theta_k: return i <= k_ ? theta_ : 1.0;
            case Kind::linear: return static_cast<double>(i);
            case Kind::power: return std::pow(static_cast<double>(i), k_);
            case Kind::reciprocal: return std::pow(static_cast<double>(i), -k_);
            case Kind::log: return std::log1p(static_cast<double>(i));
            case Kind::geometric: return std::pow(theta_, static_cast<double>(i) - 1.0);
            case Kind::table:
                if (i > table_->size())
                    throw std::out_of_range("weight table has " + std::to_string(table_->size()) +
                                            " entries, node " + std::to_string(i) + " requested");
                return (*table_)[i - 1];
        }
        return 1.0;
    }

    // S_i (S_0 = 0), extended on demand under a lock.
    double prefix_sum(std::size_t i) const {
        std::lock_guard<std::mutex> g(memo_->mu);
        extend(i);
        return memo_->S[i];
    }

    // Copy of S_0..S_n; the copy is what samplers read without locking.
    std::vector<double> prefix_sums(std::size_t n) const {
        std::lock_guard<std::mutex> g(memo_->mu);
        extend(n);
        return std::vector<double>(memo_->S.begin(), memo_->S.begin() + static_cast<std::ptrdiff_t>(n + 1));
    }

    Kind kind() const { return kind_; }
    double theta() const { return theta_; }
    double k() const { return k_; }

    std::string name() const {
        auto fmt = [](double v) {
            char b[32];
            std::snprintf(b, sizeof b, "%g", v);
            return std::string(b);
        };
        switch (kind_) {
            case Kind::constant: return "const";
            case Kind::hoppe: return "hoppe:" + fmt(theta_);
            case Kind::theta_k: return "thetak:" + fmt(theta_) + "," + fmt(k_);
            case Kind::linear: return "linear";
            case Kind::power: return "power:" + fmt(k_);
            case Kind::reciprocal: return "recip:" + fmt(k_);
            case Kind::log: return "log";
            case Kind::geometric: return "geom:" + fmt(theta_);
            case Kind::table: return "table";
        }
        return "?";
    }

private:
    struct Memo {
        std::mutex mu;
        std::vector<double> S{0.0};
    };

    WeightSequence(Kind kind, double theta, double k) : kind_(kind), theta_(theta), k_(k), memo_(std::make_shared<Memo>()) {
        if ((kind == Kind::hoppe || kind == Kind::theta_k || kind == Kind::geometric) && !(theta > 0))
            throw std::invalid_argument("weight parameter must be > 0");
    }

    void extend(std::size_t n) const {
        auto& S = memo_->S;
        while (S.size() <= n) {
            std::size_t i = S.size();
            double s = S.back() + (*this)(i);
            if (!std::isfinite(s))
                throw std::overflow_error("prefix sum of weights " + name() + " overflows at node " + std::to_string(i));
            if (!(s > 0)) throw std::invalid_argument("nonpositive prefix sum at node " + std::to_string(i));
            S.push_back(s);
        }
    }

    Kind kind_;
    double theta_;
    double k_;
    std::shared_ptr<const std::vector<double>> table_;
    std::shared_ptr<Memo> memo_;
};

}  // namespace rectree
