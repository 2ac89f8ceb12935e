#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "rectree/rectree.hpp"

namespace rectree::cli {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Opts {
    std::string model = "urt";
    std::string weights, p, n = "10", stat = "leaves", out = "csv", outfile, mode = "exact", kind, oracle, words, emit;
    std::string t = "10,20,40";
    std::vector<std::string> stats;
    unsigned a = 0, k = 1, m = 2, threads = 0;
    unsigned long i = 1, j = 2;
    double theta = 1, c = 1;
    std::size_t reps = 1000;
    std::optional<std::uint64_t> seed;
    bool exact = false;
};

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, sep))
        if (!tok.empty()) out.push_back(tok);
    return out;
}

std::vector<node_t> parse_n_list(const std::string& s) {
    std::vector<node_t> out;
    for (const auto& tok : split(s, ',')) {
        std::size_t used = 0;
        unsigned long v = 0;
        try {
            v = std::stoul(tok, &used);
        } catch (...) {
            used = 0;
        }
        if (used != tok.size() || v < 1) throw UsageError("--n: bad value '" + tok + "'");
        if (!out.empty() && v <= out.back()) throw UsageError("--n grid must be strictly increasing");
        out.push_back(static_cast<node_t>(v));
    }
    if (out.empty()) throw UsageError("--n is empty");
    return out;
}

node_t single_n(const Opts& o) {
    auto v = parse_n_list(o.n);
    if (v.size() != 1) throw UsageError("this command takes a single --n");
    return v[0];
}

std::vector<double> parse_doubles(const std::string& s) {
    std::vector<double> out;
    for (const auto& tok : split(s, ',')) {
        std::size_t used = 0;
        double v = 0;
        try {
            v = std::stod(tok, &used);
        } catch (...) {
            used = 0;
        }
        if (used != tok.size()) throw UsageError("bad number '" + tok + "'");
        out.push_back(v);
    }
    return out;
}

std::uint64_t master_seed(const Opts& o) {
    if (o.seed) return *o.seed;
    if (const char* env = std::getenv("RECTREE_SEED")) {
        try {
            return std::stoull(env);
        } catch (...) {
            throw UsageError("RECTREE_SEED is not an unsigned integer");
        }
    }
    return 1;
}

ShuffleParams shuffle_params(const Opts& o) {
    if (!o.p.empty() && o.a) throw UsageError("give either --p or --a, not both");
    if (!o.p.empty()) return ShuffleParams::parse(o.p);
    if (o.a) return ShuffleParams::uniform(o.a);
    throw UsageError("model needs --p or --a");
}

ModelSpec build_model(const Opts& o) {
    if (o.model == "urt") return ModelSpec::urt();
    if (o.model == "wrt") {
        if (o.weights.empty()) throw UsageError("--model wrt needs --weights");
        return ModelSpec::wrt(WeightSequence::parse(o.weights));
    }
    if (o.model == "hoppe") return ModelSpec::hoppe(o.theta);
    if (o.model == "thetak") return ModelSpec::thetak(o.theta, o.k);
    if (o.model == "brt") return ModelSpec::brt(shuffle_params(o));
    if (o.model == "art") {
        if (!o.a) throw UsageError("--model art needs --a");
        return ModelSpec::brt(ShuffleParams::uniform(o.a));
    }
    throw UsageError("unknown model '" + o.model + "'");
}

std::vector<Statistic> statistics(const Opts& o) {
    std::vector<Statistic> s;
    if (o.stats.empty()) s.push_back(Statistic::parse(o.stat));
    for (const auto& x : o.stats) s.push_back(Statistic::parse(x));
    return s;
}

void emit(const Opts& o, const std::string& text, std::ostream& out) {
    std::string body = text;
    if (body.empty() || body.back() != '\n') body += '\n';
    if (o.outfile.empty()) {
        out << body;
        return;
    }
    std::ofstream f(o.outfile, std::ios::binary);
    if (!f) throw UsageError("cannot write '" + o.outfile + "'");
    f << body;
}

nlohmann::ordered_json row_json(const ExperimentResult& r) {
    nlohmann::ordered_json j;
    auto opt = [](const std::optional<double>& v) { return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(); };
    j["model"] = r.model;
    j["params"] = r.params;
    j["n"] = r.n;
    j["stat"] = r.stat;
    j["R"] = r.R;
    j["seed"] = r.seed;
    j["sample_mean"] = std::isnan(r.sample_mean) ? nlohmann::ordered_json() : nlohmann::ordered_json(r.sample_mean);
    j["sample_var"] = std::isnan(r.sample_var) ? nlohmann::ordered_json() : nlohmann::ordered_json(r.sample_var);
    j["oracle_mean"] = opt(r.oracle_mean);
    j["oracle_var"] = opt(r.oracle_var);
    j["z_mean"] = opt(r.z_mean);
    j["d_K"] = opt(r.d_K);
    j["tv"] = opt(r.tv);
    j["pass"] = r.pass ? nlohmann::ordered_json(*r.pass) : nlohmann::ordered_json("report");
    return j;
}

std::string render(const Opts& o, const std::vector<ExperimentResult>& rows) {
    if (o.out == "json") {
        auto arr = nlohmann::ordered_json::array();
        for (const auto& r : rows) arr.push_back(row_json(r));
        return arr.dump(2);
    }
    std::string s = std::string(csv_header()) + "\n";
    for (const auto& r : rows) s += csv_row(r) + "\n";
    return s;
}

bool all_pass(const std::vector<ExperimentResult>& rows) {
    for (const auto& r : rows)
        if (r.pass && !*r.pass) return false;
    return true;
}

// ---------------------------------------------------------------- commands

int cmd_oracle(const Opts& o, std::ostream& out) {
    const auto& f = find_formula(o.oracle);
    OracleArgs a;
    a.n = single_n(o);
    a.k = o.k;
    a.i = o.i;
    a.j = o.j;
    a.m = o.m;
    a.theta = o.theta;
    a.c = o.c;
    auto ts = parse_doubles(o.t);
    a.t = ts.empty() ? 0 : ts[0];
    if (!o.weights.empty()) a.weights = WeightSequence::parse(o.weights);
    if (!o.p.empty() || o.a) a.params = shuffle_params(o);
    nlohmann::ordered_json j;
    j["value"] = f.eval(a);
    j["formula_id"] = f.id;
    nlohmann::ordered_json p;
    for (const auto& name : split(f.args, ' ')) {
        if (name == "n") p["n"] = a.n;
        if (name == "k") p["k"] = a.k;
        if (name == "i") p["i"] = a.i;
        if (name == "j") p["j"] = a.j;
        if (name == "m") p["m"] = a.m;
        if (name == "theta") p["theta"] = a.theta;
        if (name == "t") p["t"] = a.t;
        if (name == "c") p["c"] = a.c;
        if (name == "weights") p["weights"] = a.w().name();
        if (name == "p" || name == "a") p[name] = a.p().name();
    }
    j["params"] = p;
    emit(o, j.dump(), out);
    return ok;
}

int cmd_sample(const Opts& o, std::ostream& out) {
    auto model = build_model(o);
    const node_t n = single_n(o);
    const auto seed = master_seed(o);
    if (o.reps < 1) throw UsageError("--reps must be >= 1");
    std::vector<RecursiveTree> trees(o.reps);
    parallel_for(o.reps, o.threads, [&](std::size_t r) {
        RandomStream rng(seed, r);
        trees[r] = model.sample(n, rng);
    });
    if (o.emit == "tree") {
        std::string s;
        for (std::size_t r = 0; r < trees.size(); ++r) s += (r ? "\n" : "") + to_text(trees[r]);
        emit(o, s, out);
        return ok;
    }
    auto st = statistics(o);
    if (o.out == "json") {
        nlohmann::ordered_json j;
        j["model"] = model.name();
        j["params"] = model.param_string();
        j["n"] = n;
        j["seed"] = seed;
        for (const auto& s : st) {
            auto arr = nlohmann::ordered_json::array();
            for (const auto& t : trees) arr.push_back(s(t));
            j["values"][s.name()] = arr;
        }
        emit(o, j.dump(2), out);
        return ok;
    }
    std::string s = "rep";
    for (const auto& x : st) s += "," + x.name();
    s += "\n";
    for (std::size_t r = 0; r < trees.size(); ++r) {
        s += std::to_string(r);
        for (const auto& x : st) s += "," + fmt_num(x(trees[r]));
        s += "\n";
    }
    emit(o, s, out);
    return ok;
}

int cmd_enumerate(const Opts& o, std::ostream& out) {
    auto model = build_model(o);
    const node_t n = single_n(o);
    std::string s;
    if (!o.words.empty()) {
        if (model.family != ModelSpec::Family::brt) throw UsageError("--words needs a brt/art model");
        WordPmf w;
        if (o.words == "digits") w = brt_word_pmf_by_digits(*model.params, n);
        else if (o.words == "riffle") w = brt_word_pmf_by_riffle(*model.params, n);
        else throw UsageError("--words must be digits or riffle");
        s = "key,probability\n";
        for (const auto& [k, p] : w.mass) {
            std::string key;
            for (std::size_t x = 0; x < k.size(); ++x) key += (x ? " " : "") + std::to_string(k[x]);
            s += key + "," + fmt_num(p) + "\n";
        }
        emit(o, s, out);
        return ok;
    }
    auto pmf = model.exact(n);
    if (!o.stats.empty()) {
        auto st = statistics(o);
        s = "value,probability\n";
        for (const auto& [v, p] : statistic_pmf(pmf, st[0]).mass) s += fmt_num(v) + "," + fmt_num(p) + "\n";
    } else {
        s = "key,probability\n";
        for (const auto& [k, p] : pmf.mass) s += "\"" + k + "\"," + fmt_num(p) + "\n";
    }
    emit(o, s, out);
    return ok;
}

int cmd_verify(const Opts& o, std::ostream& out) {
    auto model = build_model(o);
    ExperimentConfig cfg;
    cfg.model = model;
    cfg.R = o.reps;
    cfg.seed = master_seed(o);
    cfg.threads = o.threads;
    auto ns = parse_n_list(o.n);
    std::vector<ExperimentResult> rows;
    if (o.mode == "exact") {
        std::string s = "model,params,n,stat,oracle_mean,exact_mean,oracle_var,exact_var,pass\n";
        bool good = true;
        for (node_t n : ns)
            for (const auto& st : statistics(o)) {
                auto om = oracle_moments(model, st, n);
                if (!om.mean) throw UsageError("no closed form for " + model.name() + " / " + st.name());
                auto em = moments(statistic_pmf(model.exact(n), st));
                bool pass = std::abs(*om.mean - em.mean) <= 1e-10 && (!om.var || std::abs(*om.var - em.var) <= 1e-10);
                good = good && pass;
                s += model.name() + "," + model.param_string() + "," + std::to_string(n) + "," + st.name() + "," +
                     fmt_num(*om.mean) + "," + fmt_num(em.mean) + "," + fmt_opt(om.var) + "," + fmt_num(em.var) + "," +
                     (pass ? "1" : "0") + "\n";
            }
        emit(o, s, out);
        return good ? ok : check_failed;
    }
    for (node_t n : ns) {
        cfg.n = n;
        for (const auto& st : statistics(o)) {
            cfg.stat = st;
            if (o.mode == "moments") rows.push_back(run_moment_check(cfg));
            else if (o.mode == "clt") rows.push_back(run_clt_check(cfg));
            else if (o.mode == "tv") {
                rows.push_back(run_tv_check(cfg));
                break;
            } else if (o.mode == "concentration") {
                ExperimentResult r;
                run_concentration_check(cfg, parse_doubles(o.t), &r);
                rows.push_back(r);
                break;
            } else
                throw UsageError("--mode must be exact, moments, clt, tv or concentration");
        }
    }
    emit(o, render(o, rows), out);
    return all_pass(rows) ? ok : check_failed;
}

int cmd_converge(const Opts& o, std::ostream& out, std::ostream& err) {
    auto model = build_model(o);
    ExperimentConfig cfg;
    cfg.model = model;
    cfg.R = o.reps;
    cfg.seed = master_seed(o);
    cfg.threads = o.threads;
    cfg.stat = statistics(o)[0];
    std::optional<double> limit;
    if (cfg.stat.kind == Statistic::Kind::depth && model.family == ModelSpec::Family::brt)
        limit = brt_depth_limit_ratio(*model.params);
    std::string s = "model,params,n,stat,R,seed,sample_mean,mean_over_n,oracle_mean,oracle_over_n,limit\n";
    std::vector<double> gaps;
    for (node_t n : parse_n_list(o.n)) {
        cfg.n = n;
        auto x = summarize(sample_statistic(cfg));
        auto om = oracle_moments(model, cfg.stat, n);
        std::optional<double> ratio;
        if (om.mean) ratio = *om.mean / n;
        s += model.name() + "," + model.param_string() + "," + std::to_string(n) + "," + cfg.stat.name() + "," +
             std::to_string(cfg.R) + "," + std::to_string(cfg.seed) + "," + fmt_num(x.mean) + "," + fmt_num(x.mean / n) +
             "," + fmt_opt(om.mean) + "," + fmt_opt(ratio) + "," + fmt_opt(limit) + "\n";
        if (limit && ratio) gaps.push_back(std::abs(*ratio - *limit));
    }
    emit(o, s, out);
    if (gaps.size() > 1) {
        bool mono = std::is_sorted(gaps.rbegin(), gaps.rend());
        err << "oracle gap to limit " << (mono ? "decreases monotonically" : "is not monotone") << "\n";
    }
    return ok;
}

int cmd_couple(const Opts& o, std::ostream& out) {
    const node_t n = single_n(o);
    const auto seed = master_seed(o);
    std::function<CoupledPair(RandomStream&)> draw_pair;
    std::function<TreePmf()> joint, direct;
    bool leaf_sandwich = false, height_sandwich = false;
    long lo_shift = 0, hi_shift = 0;  // derived - source in [lo, hi] (leaves)
    bool strict_hi = false;
    if (o.kind == "general") {
        if (o.weights.empty()) throw UsageError("--kind general needs --weights");
        GeneralCoupling c(WeightSequence::parse(o.weights));
        draw_pair = [c, n](RandomStream& r) { return c.sample(n, r); };
        joint = [c, n] { return coupled_pmf(c, n); };
        direct = [c, n] { return wrt_tree_pmf(c.weights(), n); };
    } else if (o.kind == "thetak") {
        ThetaKCoupling c(o.theta, o.k);
        draw_pair = [c, n](RandomStream& r) { return c.sample(n, r); };
        joint = [c, n] { return coupled_pmf(c, n); };
        direct = [&o, n] { return wrt_tree_pmf(WeightSequence::theta_k(o.theta, o.k), n); };
    } else if (o.kind == "merge") {
        MergeCoupling c(o.m, o.k);
        draw_pair = [c, n](RandomStream& r) { return c.sample(n, r); };
        joint = [c, n] { return mapped_pmf(c, n); };
        direct = [&o, n] { return wrt_tree_pmf(WeightSequence::theta_k(o.m, o.k), n); };
        leaf_sandwich = true;
        lo_shift = -static_cast<long>(o.k) * (static_cast<long>(o.m) - 1);
        hi_shift = o.k;
        strict_hi = true;
    } else if (o.kind == "inverse") {
        InverseMergeCoupling c(o.m, o.k);
        draw_pair = [c, n](RandomStream& r) { return c.sample(n, r); };
        joint = [c, n] { return mapped_pmf(c, n); };
        direct = [&o, n] { return wrt_tree_pmf(WeightSequence::theta_k(1.0 / o.m, o.k), n); };
    } else if (o.kind == "split") {
        if (o.weights.empty()) throw UsageError("--kind split needs --weights");
        auto w = WeightSequence::parse(o.weights);
        SplitCoupling c(w, o.k);
        c.check_tail(n);
        draw_pair = [c, n](RandomStream& r) { return c.sample(n, r); };
        joint = [c, w, n] { return split_pmf(c, w, n); };
        direct = [w, n] { return wrt_tree_pmf(w, n); };
        leaf_sandwich = height_sandwich = true;
        hi_shift = static_cast<long>(o.k) - 1;
    } else {
        throw UsageError("--kind must be general, thetak, merge, split or inverse");
    }

    if (o.exact) {
        double tv = tv_distance(joint(), direct());
        bool pass = tv <= 1e-12;
        emit(o, "kind,n,tv,pass\n" + o.kind + "," + std::to_string(n) + "," + fmt_num(tv) + "," + (pass ? "1" : "0"), out);
        return pass ? ok : check_failed;
    }

    std::vector<CoupledPair> pairs(o.reps);
    parallel_for(o.reps, o.threads, [&](std::size_t r) {
        RandomStream rng(seed, r);
        pairs[r] = draw_pair(rng);
    });
    std::string s = "rep,source_n,derived_n,source_leaves,derived_leaves,source_height,derived_height,sandwich\n";
    bool good = true;
    for (std::size_t r = 0; r < pairs.size(); ++r) {
        const auto& [src, der] = pairs[r];
        long ls = leaves(src), ld = leaves(der), hs = height(src), hd = height(der);
        std::string flag = "na";
        if (leaf_sandwich) {
            bool okay = ld >= ls + lo_shift && (strict_hi ? ld < ls + hi_shift : ld <= ls + hi_shift);
            if (height_sandwich) okay = okay && hd >= hs && hd <= hs + hi_shift;
            flag = okay ? "1" : "0";
            good = good && okay;
        }
        s += std::to_string(r) + "," + std::to_string(src.size()) + "," + std::to_string(der.size()) + "," +
             std::to_string(ls) + "," + std::to_string(ld) + "," + std::to_string(hs) + "," + std::to_string(hd) + "," +
             flag + "\n";
    }
    emit(o, s, out);
    return good ? ok : check_failed;
}

void add_model_options(CLI::App* app, Opts& o) {
    app->add_option("--model", o.model, "urt | wrt | hoppe | thetak | brt | art");
    app->add_option("--weights", o.weights, "const | hoppe:θ | thetak:θ,k | linear | power:k | recip:k | log | geom:a | table:file");
    app->add_option("--p", o.p, "pile probabilities, comma separated");
    app->add_option("--a", o.a, "number of equally likely piles");
    app->add_option("--theta", o.theta, "θ for hoppe / thetak");
    app->add_option("--k", o.k, "k for thetak, couplings, ydesc oracles");
    app->add_option("--n", o.n, "node count, or an increasing comma list");
    app->add_option("--reps", o.reps, "replicates");
    app->add_option("--seed", o.seed, "master seed (fallback: RECTREE_SEED, then 1)");
    app->add_option("--stat", o.stats, "statistic; repeatable")->type_name("SEL");
    app->add_option("--out", o.out, "csv | json")->check(CLI::IsMember({"csv", "json"}));
    app->add_option("--outfile", o.outfile, "write output here instead of stdout");
    app->add_option("--threads", o.threads, "worker threads (0: all cores)");
}

}  // namespace

std::string formula_list() {
    std::string s = "Formula ids (use with --oracle):\n";
    for (const auto& f : formula_registry()) s += "  " + f.id + (f.args.empty() ? "" : "  [" + f.args + "]") + "\n";
    return s;
}

namespace {

// key=value stanzas separated by blank lines
std::vector<std::vector<std::pair<std::string, std::string>>> read_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open config '" + path + "'");
    std::vector<std::vector<std::pair<std::string, std::string>>> stanzas(1);
    std::string line;
    while (std::getline(in, line)) {
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) {
            if (!stanzas.back().empty()) stanzas.emplace_back();
            continue;
        }
        if (line[first] == '#') continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) throw UsageError("config line without '=': " + line);
        auto trim = [](std::string x) {
            auto b = x.find_first_not_of(" \t\r"), e = x.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : x.substr(b, e - b + 1);
        };
        stanzas.back().emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    if (stanzas.back().empty()) stanzas.pop_back();
    return stanzas;
}

int run_one(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run_config(std::vector<std::string> args, std::size_t at, std::ostream& out, std::ostream& err) {
    if (at + 1 >= args.size()) throw UsageError("--config needs a path");
    const std::string path = args[at + 1];
    args.erase(args.begin() + static_cast<std::ptrdiff_t>(at), args.begin() + static_cast<std::ptrdiff_t>(at) + 2);
    int worst = ok;
    for (const auto& stanza : read_config(path)) {
        auto a = args;
        for (const auto& [key, value] : stanza) {
            const std::string flag = "--" + key;
            for (const auto& x : args)
                if (x == flag || x.rfind(flag + "=", 0) == 0)
                    throw UsageError("config key '" + key + "' conflicts with the command line");
            a.push_back(flag);
            if (!value.empty()) a.push_back(value);
        }
        worst = std::max(worst, run_one(a, out, err));
    }
    return worst;
}

int run_one(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Opts o;
    CLI::App app{"Random recursive trees: samplers, exact enumeration, closed-form moments, couplings."};
    app.name("rectree");
    app.footer(formula_list());
    app.set_help_all_flag("--help-all", "help for every subcommand");
    add_model_options(&app, o);
    app.add_option("--oracle", o.oracle, "evaluate a formula id and print JSON");
    app.add_option("--i", o.i, "node i");
    app.add_option("--j", o.j, "node j");
    app.add_option("--m", o.m, "branch size / merge factor");
    app.add_option("--t", o.t, "deviation t (list for concentration)");
    app.add_option("--c", o.c, "fraction c in [1/2,1]");
    app.require_subcommand(0, 1);

    auto* sample = app.add_subcommand("sample", "draw trees and print per-replicate statistics");
    add_model_options(sample, o);
    sample->add_option("--emit", o.emit, "tree: print canonical tree text instead of statistics");

    auto* enumerate = app.add_subcommand("enumerate", "exact pmf over trees, words or statistic values");
    add_model_options(enumerate, o);
    enumerate->add_option("--words", o.words, "digits | riffle: word pmf of a shuffle model");

    auto* verify = app.add_subcommand("verify", "compare samplers or enumeration with closed forms");
    add_model_options(verify, o);
    verify->add_option("--mode", o.mode, "exact | moments | clt | tv | concentration");
    verify->add_option("--t", o.t, "t grid for concentration");

    auto* converge = app.add_subcommand("converge", "sample means over an n grid next to limits");
    add_model_options(converge, o);

    auto* couple = app.add_subcommand("couple", "paired source/derived statistics of a coupling");
    add_model_options(couple, o);
    couple->add_option("--kind", o.kind, "general | thetak | merge | split | inverse")->required();
    couple->add_option("--m", o.m, "merge factor m");
    couple->add_flag("--exact", o.exact, "compare the derived law with the direct law by enumeration");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << "run with --help for usage\n";
        return usage_error;
    }
    if (!o.oracle.empty()) return cmd_oracle(o, out);
    if (*sample) return cmd_sample(o, out);
    if (*enumerate) return cmd_enumerate(o, out);
    if (*verify) return cmd_verify(o, out);
    if (*converge) return cmd_converge(o, out, err);
    if (*couple) return cmd_couple(o, out);
    out << app.help();
    return usage_error;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    try {
        for (std::size_t i = 0; i < args.size(); ++i)
            if (args[i] == "--config") return run_config(args, i, out, err);
        return run_one(args, out, err);
    } catch (const GuardError& e) {
        err << "guard violation: " << e.what() << "\n";
        return guard_violation;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return usage_error;
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << "\n";
        return usage_error;
    } catch (const std::domain_error& e) {
        err << "usage error: " << e.what() << "\n";
        return usage_error;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return check_failed;
    }
}

}  // namespace rectree::cli
