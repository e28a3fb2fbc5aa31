#include "graphonlab/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "graphonlab/core.hpp"
#include "graphonlab/counting.hpp"
#include "graphonlab/cutmetric.hpp"
#include "graphonlab/io.hpp"
#include "graphonlab/regularity.hpp"
#include "graphonlab/sampling.hpp"
#include "graphonlab/upperreg.hpp"

namespace graphonlab::cli {

using nlohmann::json;

namespace {

const std::vector<std::string> kKinds = {"h_convergence", "g_convergence", "power_law",
                                         "clique_divergence", "doubling_cauchy", "chernoff",
                                         "counting_sweep", "regularize", "upperreg_check"};

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string num(std::size_t v) { return std::to_string(v); }

double param(const json& p, const char* key, double def) {
    if (!p.contains(key)) return def;
    if (!p[key].is_number()) throw Error(ErrorKind::parse, std::string("param '") + key + "' must be a number");
    return p[key].get<double>();
}

std::vector<double> param_list(const json& p, const char* key, std::vector<double> def) {
    if (!p.contains(key)) return def;
    try {
        return p[key].get<std::vector<double>>();
    } catch (const json::exception&) {
        throw Error(ErrorKind::parse, std::string("param '") + key + "' must be a list of numbers");
    }
}

std::string param_str(const json& p, const char* key, const std::string& def) {
    if (!p.contains(key)) return def;
    if (!p[key].is_string()) throw Error(ErrorKind::parse, std::string("param '") + key + "' must be a string");
    return p[key].get<std::string>();
}

std::size_t as_count(double v, const char* what) {
    if (!(v >= 0.0) || v != std::floor(v)) throw Error(ErrorKind::parse, std::string(what) + " must be a nonnegative integer");
    return static_cast<std::size_t>(v);
}

StepGraphon two_block() { return StepGraphon({0.5, 0.5}, {0.9, 0.2, 0.2, 0.5}); }

StepGraphon param_graphon(const json& p) {
    if (!p.contains("graphon")) return two_block();
    if (p["graphon"].is_string()) {
        auto obj = io::load(p["graphon"].get<std::string>());
        if (!std::holds_alternative<StepGraphon>(obj)) throw Error(ErrorKind::parse, "param 'graphon' is not a graphon");
        return std::get<StepGraphon>(obj);
    }
    return io::graphon_from_json(p["graphon"]);
}

double median(std::vector<double> v) {
    if (v.empty()) return 0.0;
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size() / 2;
    return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

CutOptions cut_options(const Globals& g) {
    CutOptions o;
    o.seed = g.seed;
    o.threads = std::max(1u, g.threads);
    o.twin_tol = g.tolerance;
    return o;
}

// ---- experiments ----

void exp_h_convergence(const ExperimentSpec& s, const Globals&, std::vector<CsvRow>& rows) {
    const StepGraphon W = param_graphon(s.params);
    const double mu = mean(W);
    for (double nd : param_list(s.params, "ns", {100, 400, 1600})) {
        const std::size_t n = as_count(nd, "n");
        std::vector<double> d1s;
        for (auto seed : s.seeds) {
            const auto S = sample_h(n, W, seed);
            const double d1 = lp_distance(embed_graph(S.graph), W, 1.0);
            d1s.push_back(d1);
            double sum = 0.0;
            for (const auto& e : S.graph.edges()) sum += e.w;
            const double ustat = n > 1 ? 2.0 * sum / (static_cast<double>(n) * static_cast<double>(n - 1)) : 0.0;
            rows.push_back({s.kind, num(n), num(seed), "d1", d1, true});
            rows.push_back({s.kind, num(n), num(seed), "u_stat_dev", std::fabs(ustat - mu), true});
        }
        rows.push_back({s.kind, num(n), "all", "d1_median", median(d1s), true});
    }
}

void exp_g_convergence(const ExperimentSpec& s, const Globals& g, std::vector<CsvRow>& rows) {
    const StepGraphon W = param_graphon(s.params);
    const double expo = param(s.params, "rho_exponent", 0.5);
    const auto restarts = as_count(param(s.params, "restarts", 32), "restarts");
    for (double nd : param_list(s.params, "ns", {200, 800, 3200})) {
        const std::size_t n = as_count(nd, "n");
        const double rho = std::min(1.0, std::pow(static_cast<double>(n), -expo));
        std::vector<double> ds;
        for (auto seed : s.seeds) {
            const auto S = sample_g(n, W, rho, seed, true);
            GraphMinusGraphon F(S.graph, 1.0 / rho, W);
            const auto r = cut_norm_heuristic(F, restarts, seed, std::max(1u, g.threads));
            ds.push_back(r.lower);
            // Cut-off mass of H from class counts of the latent coordinates.
            std::vector<double> cnt(W.size(), 0.0);
            for (double x : S.coords) cnt[W.class_of(x)] += 1.0;
            double cut = 0.0;
            for (std::size_t a = 0; a < W.size(); ++a)
                for (std::size_t b = 0; b < W.size(); ++b) {
                    const double f = std::max(std::fabs(W.value(a, b)) - 1.0 / rho, 0.0);
                    cut += f * cnt[a] * (cnt[b] - (a == b ? 1.0 : 0.0));
                }
            rows.push_back({s.kind, num(n), num(seed), "dcut_heuristic", r.lower, false});
            rows.push_back({s.kind, num(n), num(seed), "dcut_upper_l1", r.upper, true});
            rows.push_back({s.kind, num(n), num(seed), "edges", static_cast<double>(S.graph.edges().size()), true});
            rows.push_back({s.kind, num(n), num(seed), "cutoff_mass", cut / (static_cast<double>(n) * n), true});
        }
        rows.push_back({s.kind, num(n), "all", "dcut_median", median(ds), false});
    }
}

void exp_power_law(const ExperimentSpec& s, const Globals&, std::vector<CsvRow>& rows) {
    const double alpha = param(s.params, "alpha", 0.5), beta = param(s.params, "beta", 0.5);
    std::vector<double> lx, ly;
    for (double nd : param_list(s.params, "ns", {250, 500, 1000, 2000})) {
        const std::size_t n = as_count(nd, "n");
        double total = 0.0;
        for (auto seed : s.seeds) {
            const double e = static_cast<double>(power_law_graph(n, alpha, beta, seed).edges().size());
            total += e;
            rows.push_back({s.kind, num(n), num(seed), "edges", e, true});
        }
        const double m = total / static_cast<double>(s.seeds.size());
        rows.push_back({s.kind, num(n), "all", "mean_edges", m, true});
        rows.push_back({s.kind, num(n), "all", "expected_edges", power_law_expected_edges(n, alpha, beta), true});
        lx.push_back(std::log(static_cast<double>(n)));
        ly.push_back(std::log(m));
    }
    const double k = static_cast<double>(lx.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sx += lx[i];
        sy += ly[i];
        sxx += lx[i] * lx[i];
        sxy += lx[i] * ly[i];
    }
    const double slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
    const double target = beta - 2.0 * alpha + 2.0;
    rows.push_back({s.kind, "all", "all", "slope", slope, std::fabs(slope - target) <= 0.15});
    rows.push_back({s.kind, "all", "all", "slope_target", target, true});
}

void exp_clique(const ExperimentSpec& s, const Globals&, std::vector<CsvRow>& rows) {
    auto idxs = param_list(s.params, "idx", {2, 3});
    for (std::size_t t = 0; t < idxs.size(); ++t) {
        const std::size_t idx = as_count(idxs[t], "idx");
        const auto G = clique_sequence(idx);
        const double d = static_cast<double>(idx);
        rows.push_back({s.kind, num(idx), "all", "l1", graph_lp_norm(G, 1.0), true});
        rows.push_back({s.kind, num(idx), "all", "l1_formula", std::pow(2.0, -2.0 * d) * (d - 1.0) / d, true});
        if (t + 1 < idxs.size()) {
            const auto H = clique_sequence(as_count(idxs[t + 1], "idx"));
            const double lo = delta_cut_lower_box(normalize(G), normalize(H));
            rows.push_back({s.kind, num(idx), "all", "delta_lower_next", lo, lo >= 0.5 - 1e-12});
        }
    }
}

void exp_doubling(const ExperimentSpec& s, const Globals& g, std::vector<CsvRow>& rows) {
    DoublingOptions o;
    o.steps = as_count(param(s.params, "steps", 4), "steps");
    o.h_vertices = as_count(param(s.params, "h_vertices", 32), "h_vertices");
    o.strict = param(s.params, "strict", 0) != 0.0;
    o.cut = cut_options(g);
    for (auto seed : s.seeds) {
        o.seed = seed;
        const auto seq = doubling_sequence(o);
        for (std::size_t n = 1; n < seq.steps(); ++n) {
            const double ratio = seq.l1(n + 1) / seq.l1(n);
            const double paper = 6.0 * std::pow(0.75, static_cast<double>(n));
            const bool in_window = std::fabs(ratio - 0.5) <= seq.eps[n - 1];
            rows.push_back({s.kind, num(n), num(seed), "density_ratio", ratio, in_window});
            rows.push_back({s.kind, num(n), num(seed), "eps", seq.eps[n - 1], true});
            rows.push_back({s.kind, num(n), num(seed), "h_cut_half", seq.h_cut_upper[n - 1], seq.h_cut_upper[n - 1] <= seq.eps[n - 1]});
            rows.push_back({s.kind, num(n), num(seed), "successive_bound", seq.successive_bound(n), seq.successive_bound(n) <= paper});
            rows.push_back({s.kind, num(n), num(seed), "paper_bound", paper, true});
        }
    }
}

void exp_chernoff(const ExperimentSpec& s, const Globals& g, std::vector<CsvRow>& rows) {
    const auto draws = as_count(param(s.params, "draws", 100000), "draws");
    for (double nd : param_list(s.params, "ns", {50, 200}))
        for (double p : param_list(s.params, "ps", {0.1, 0.5}))
            for (double lam : param_list(s.params, "lams", {0.2, 0.5, 1, 2})) {
                const std::size_t n = as_count(nd, "n");
                ChernoffParams c;
                c.probs.assign(n, p);
                for (std::size_t i = 0; i < n; ++i) c.signs.push_back(i % 2 ? -1 : 1);
                c.lam = lam;
                const double bound = chernoff_bound(c);
                const std::string tag = "[p=" + fmt(p) + ",lam=" + fmt(lam) + "]";
                rows.push_back({s.kind, num(n), "all", "bound" + tag, bound, true});
                rows.push_back({s.kind, num(n), "all", "exact" + tag, chernoff_exact_tail(c), chernoff_exact_tail(c) <= bound});
                for (auto seed : s.seeds) {
                    const auto e = chernoff_monte_carlo(c, draws, seed, std::max(1u, g.threads));
                    rows.push_back({s.kind, num(n), num(seed), "empirical" + tag, e.frequency(), e.frequency() <= bound});
                }
            }
}

void exp_counting(const ExperimentSpec& s, const Globals&, std::vector<CsvRow>& rows) {
    const auto F = MotifGraph::parse(param_str(s.params, "motif", "C4"));
    for (double n : param_list(s.params, "ns", {1e2, 1e4, 1e6})) {
        const auto r = counterexample_family(F, n);
        const std::string nn = fmt(n);
        rows.push_back({s.kind, nn, "all", "t_value", r.t_value, true});
        rows.push_back({s.kind, nn, "all", "t_limit", r.t_limit, true});
        rows.push_back({s.kind, nn, "all", "l1_dist", r.l1_dist, true});
        rows.push_back({s.kind, nn, "all", "ldelta_norm", r.ldelta_norm, r.ldelta_norm <= 4.0 + 1e-12});
        rows.push_back({s.kind, nn, "all", "u_delta_norm", r.u_delta_norm, std::fabs(r.u_delta_norm - 1.0) <= 1e-6});
    }
}

RegularityParams reg_params(const json& p) {
    RegularityParams rp;
    rp.C = param(p, "C", 1.0);
    rp.p = param(p, "p", 2.0);
    rp.eps = param(p, "eps", 0.3);
    rp.eta = param(p, "eta", 0.05);
    return rp;
}

void exp_regularize(const ExperimentSpec& s, const Globals& g, std::vector<CsvRow>& rows) {
    const auto G = io::load_graph(param_str(s.params, "graph", ""));
    const auto rp = reg_params(s.params);
    const auto n = num(G.size());
    try {
        const auto d = densify(G, rp, cut_options(g));
        rows.push_back({s.kind, n, "all", "parts", static_cast<double>(d.partition.classes()), true});
        rows.push_back({s.kind, n, "all", "error_cut", d.error_cut, d.certified});
        rows.push_back({s.kind, n, "all", "norm_p", d.norm_p, d.norm_p <= rp.C + 1e-9});
    } catch (const RegularityViolation& v) {
        rows.push_back({s.kind, n, "all", "violation_norm", v.stepped_norm(), true});
    }
}

void exp_upperreg(const ExperimentSpec& s, const Globals&, std::vector<CsvRow>& rows) {
    WeightedGraph G;
    if (s.params.contains("graph")) {
        G = io::load_graph(param_str(s.params, "graph", ""));
    } else {
        const auto n = as_count(param(s.params, "n", 100), "n");
        const auto k = as_count(param(s.params, "clique", 10), "clique");
        std::vector<std::pair<std::size_t, std::size_t>> e;
        for (std::size_t j = 1; j < k && j < n; ++j)
            for (std::size_t i = 0; i < j; ++i) e.emplace_back(i, j);
        G = WeightedGraph::simple(n, e);
    }
    const double C = param(s.params, "C", 1.0), eta = param(s.params, "eta", 0.1), p = param(s.params, "p", 2.0);
    const auto budget = as_count(param(s.params, "budget", 64), "budget");
    for (auto seed : s.seeds) {
        const auto v = G.size() <= 12 ? check_upper_regular_exact(G, C, eta, p)
                                      : falsify_upper_regular(G, C, eta, p, budget, seed);
        rows.push_back({s.kind, num(G.size()), num(seed), "worst_value", v.worst_value, true});
        rows.push_back({s.kind, num(G.size()), num(seed), "falsified",
                        v.status == VerdictStatus::falsified ? 1.0 : 0.0, true});
    }
}

double sort_key(const std::string& s) {
    if (s == "all") return kInf;
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    return end && *end == '\0' ? v : kInf;
}

}  // namespace

ExperimentSpec ExperimentSpec::from_json(const json& j) {
    ExperimentSpec s;
    try {
        s.kind = j.at("kind").get<std::string>();
        if (j.contains("params")) s.params = j["params"];
        if (j.contains("seeds")) s.seeds = j["seeds"].get<std::vector<std::uint64_t>>();
        if (j.contains("output_path")) s.output_path = j["output_path"].get<std::string>();
    } catch (const json::exception& e) {
        throw Error(ErrorKind::parse, std::string("experiment spec: ") + e.what());
    }
    if (s.seeds.empty())
        for (std::uint64_t k = 0; k < 10; ++k) s.seeds.push_back(k);
    s.validate();
    return s;
}

void ExperimentSpec::validate() const {
    if (std::find(kKinds.begin(), kKinds.end(), kind) == kKinds.end())
        throw Error(ErrorKind::parse, "unknown experiment kind '" + kind + "'");
    if (!params.is_object()) throw Error(ErrorKind::parse, "params must be an object");
    if (seeds.empty()) throw Error(ErrorKind::parse, "seeds must be nonempty");
    if (kind == "regularize" && !params.contains("graph"))
        throw Error(ErrorKind::parse, "regularize experiments need params.graph");
}

std::vector<CsvRow> run_experiment(const ExperimentSpec& spec, const Globals& g) {
    spec.validate();
    std::vector<CsvRow> rows;
    const auto& k = spec.kind;
    if (k == "h_convergence") exp_h_convergence(spec, g, rows);
    else if (k == "g_convergence") exp_g_convergence(spec, g, rows);
    else if (k == "power_law") exp_power_law(spec, g, rows);
    else if (k == "clique_divergence") exp_clique(spec, g, rows);
    else if (k == "doubling_cauchy") exp_doubling(spec, g, rows);
    else if (k == "chernoff") exp_chernoff(spec, g, rows);
    else if (k == "counting_sweep") exp_counting(spec, g, rows);
    else if (k == "regularize") exp_regularize(spec, g, rows);
    else exp_upperreg(spec, g, rows);
    return rows;
}

std::string to_csv(std::vector<CsvRow> rows) {
    std::stable_sort(rows.begin(), rows.end(), [](const CsvRow& a, const CsvRow& b) {
        auto ka = std::make_tuple(a.kind, sort_key(a.n), a.n, sort_key(a.seed), a.seed, a.metric);
        auto kb = std::make_tuple(b.kind, sort_key(b.n), b.n, sort_key(b.seed), b.seed, b.metric);
        return ka < kb;
    });
    std::string out = "kind,n,seed,metric,value,certified\n";
    for (const auto& r : rows)
        out += r.kind + "," + r.n + "," + r.seed + ",\"" + r.metric + "\"," + fmt(r.value) + "," +
               (r.certified ? "true" : "false") + "\n";
    return out;
}

namespace {

StepGraphon as_graphon(const io::Object& o, bool normalize_graphs) {
    if (std::holds_alternative<StepGraphon>(o)) return std::get<StepGraphon>(o);
    const auto& G = std::get<WeightedGraph>(o);
    return normalize_graphs ? normalize(G) : embed_graph(G);
}

std::size_t classes_of(const io::Object& o) {
    return std::holds_alternative<StepGraphon>(o) ? std::get<StepGraphon>(o).size()
                                                  : std::get<WeightedGraph>(o).size();
}

void guard_classes(const io::Object& o, const Globals& g, const std::string& path) {
    if (classes_of(o) > g.max_classes)
        throw Error(ErrorKind::resolution_guard, path + " has " + std::to_string(classes_of(o)) +
                                                     " classes, above the cap " + std::to_string(g.max_classes));
}

int exit_for(const Error& e) {
    switch (e.kind()) {
        case ErrorKind::parse:
        case ErrorKind::invalid_argument: return parse_error;
        case ErrorKind::resolution_guard: return guard;
        case ErrorKind::regularity_violated: return violation;
        case ErrorKind::dominant_node: return dominant;
        case ErrorKind::certification_failed: return failure;
    }
    return failure;
}

json certificate_json(const RegularityViolation& v, const RegularityParams& rp) {
    return {{"status", "falsified"},
            {"reason", v.what()},
            {"stepped_norm", v.stepped_norm()},
            {"C", rp.C},
            {"eta", rp.eta_effective()},
            {"p", rp.p},
            {"certificate", io::to_json(v.certificate())}};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"graphonlab: cut norms, weak regularity and sampling for step graphons"};
    app.require_subcommand(1);
    Globals g;
    std::size_t max_classes_flag = 0;
    app.add_option("--seed", g.seed, "Seed for every randomized step");
    app.add_option("--threads", g.threads, "Worker threads for restarts and Monte-Carlo")->check(CLI::PositiveNumber);
    app.add_option("--tolerance", g.tolerance, "Twin-merge tolerance for cut computations")->check(CLI::NonNegativeNumber);
    app.add_option("--max-classes", max_classes_flag, "Resolution guard (overrides GRAPHONLAB_MAX_CLASSES)");

    std::string a_path, b_path;
    std::size_t budget = 64, n_c = 24;
    bool normalize_graphs = false;
    auto* dist = app.add_subcommand("dist", "Cut distance between two graphs or graphons");
    dist->add_option("a", a_path)->required();
    dist->add_option("b", b_path)->required();
    dist->add_option("--budget", budget, "Random overlays tried by the delta search");
    dist->add_option("--grid", n_c, "Equipartition size for the delta search");
    dist->add_flag("--normalize", normalize_graphs, "Divide graphs by their L1 norm");

    std::vector<double> ps{1.0, 2.0};
    auto* norms = app.add_subcommand("norms", "L^p, cut and infinity-to-one norms");
    norms->add_option("input", a_path)->required();
    norms->add_option("--p", ps, "Exponents (inf always reported)");
    norms->add_flag("--normalize", normalize_graphs, "Divide graphs by their L1 norm");

    RegularityParams rp;
    rp.eta = 0.05;
    bool eta_theory = false;
    std::string out_prefix, cert_path;
    auto* reg = app.add_subcommand("regularize", "Weak regularity partition for an upper regular graph or graphon");
    reg->add_option("input", a_path)->required();
    reg->add_option("--C", rp.C);
    reg->add_option("--p", rp.p);
    reg->add_option("--eps", rp.eps);
    reg->add_option("--eta", rp.eta, "Part-size floor (default 0.05)");
    reg->add_flag("--eta-theory", eta_theory, "Use the theoretical eta instead");
    reg->add_option("--out", out_prefix, "Prefix for partition.json and graphon.json");
    reg->add_option("--certificate", cert_path, "Where to write a falsification certificate");

    double C = 1.0, eta = 0.1, p = 2.0;
    bool force_falsify = false;
    auto* chk = app.add_subcommand("check-upper", "Decide or falsify (C,eta)-upper L^p regularity");
    chk->add_option("input", a_path)->required();
    chk->add_option("--C", C);
    chk->add_option("--eta", eta);
    chk->add_option("--p", p);
    chk->add_option("--budget", budget);
    chk->add_flag("--falsify", force_falsify, "Search even when exact enumeration fits");
    chk->add_option("--certificate", cert_path);

    std::size_t n = 100;
    double rho = 1.0, alpha = 0.5, beta = 0.5;
    std::string kind = "h", out_path;
    std::size_t clique_idx = 0;
    auto* smp = app.add_subcommand("sample", "W-random graphs, power-law graphs, clique family");
    smp->add_option("input", a_path, "Graphon JSON (for --kind h or g)");
    smp->add_option("--n", n);
    smp->add_option("--rho", rho);
    smp->add_option("--kind", kind)->check(CLI::IsMember({"h", "g", "power-law", "clique"}));
    smp->add_option("--alpha", alpha);
    smp->add_option("--beta", beta);
    smp->add_option("--idx", clique_idx);
    smp->add_option("--out", out_path);

    std::string spec_path;
    auto* exp = app.add_subcommand("experiment", "Run an experiment spec and write CSV");
    exp->add_option("spec", spec_path, "Experiment spec JSON")->required();
    exp->add_option("--out", out_path, "Overrides output_path");

    std::string motif;
    auto* mot = app.add_subcommand("motif", "Homomorphism density and Holder bounds");
    mot->add_option("motif", motif, "Edge list like 1-2,2-3,3-1 or K2, K3, C4, P3, K4")->required();
    mot->add_option("input", a_path)->required();
    mot->add_option("--p", p, "Exponent for the generalized Holder bound");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return parse_error;
    }

    if (max_classes_flag) {
        g.max_classes = max_classes_flag;
    } else if (const char* env = std::getenv("GRAPHONLAB_MAX_CLASSES")) {
        try {
            g.max_classes = std::stoul(env);
        } catch (const std::exception&) {
            err << "error: GRAPHONLAB_MAX_CLASSES is not a number\n";
            return parse_error;
        }
    }
    const CutOptions copt = cut_options(g);

    try {
        if (dist->parsed()) {
            const auto A = io::load(a_path), B = io::load(b_path);
            guard_classes(A, g, a_path);
            guard_classes(B, g, b_path);
            const auto U = as_graphon(A, normalize_graphs), W = as_graphon(B, normalize_graphs);
            const auto d = d_cut(U, W, copt);
            const auto dr = delta_cut_upper(U, W, budget, g.seed, n_c, copt);
            const double lo = std::max(delta_cut_lower(U, W), delta_cut_lower_box(U, W));
            json j{{"d_cut", {{"lower", d.lower}, {"upper", d.upper}}},
                   {"delta_upper", dr.upper_original},
                   {"delta_lower", std::min(lo, dr.upper_original)},
                   {"method", d.method == CutMethod::exact ? "exact" : "alternating"},
                   {"regrid_error", {dr.regrid_error_u, dr.regrid_error_w}},
                   {"delta_exhaustive", dr.exhaustive}};
            out << j.dump(2) << '\n';
            return ok;
        }
        if (norms->parsed()) {
            const auto A = io::load(a_path);
            guard_classes(A, g, a_path);
            const auto W = as_graphon(A, normalize_graphs);
            json lp = json::object();
            for (double q : ps) lp[fmt(q)] = graphon_lp_norm(W, q);
            lp["inf"] = graphon_lp_norm(W, kInf);
            json j{{"lp", lp}, {"cut", io::to_json(cut_norm(W, copt))}, {"infty_to_one", io::to_json(infty_to_one_norm(W, copt))}};
            out << j.dump(2) << '\n';
            return ok;
        }
        if (reg->parsed()) {
            if (eta_theory) rp.eta = 0.0;
            const auto A = io::load(a_path);
            guard_classes(A, g, a_path);
            rp.graph = std::holds_alternative<WeightedGraph>(A);
            try {
                json j;
                Partition P;
                StepGraphon U;
                if (std::holds_alternative<WeightedGraph>(A)) {
                    const auto& G = std::get<WeightedGraph>(A);
                    auto d = densify(G, rp, copt);
                    P = d.partition;
                    U = d.U;
                    j = {{"parts", P.classes()},
                         {"error_cut", d.error_cut},
                         {"target", rp.C * rp.eps},
                         {"certified", d.certified},
                         {"norm_p", d.norm_p}};
                } else {
                    const auto& W = std::get<StepGraphon>(A);
                    auto r = weak_regularity_upper(W, rp, copt);
                    P = r.partition;
                    U = quotient(W, P);
                    j = io::to_json(r);
                }
                j["min_part_weight"] = P.min_measure();
                j["eta"] = rp.eta_effective();
                j["eta_theory"] = rp.eta_theory();
                j["N"] = rp.N();
                j["log4_parts_cap"] = std::ceil(rp.N());
                j["partition"] = io::to_json(P);
                if (!out_prefix.empty()) {
                    io::save_json(out_prefix + "partition.json", io::to_json(P));
                    io::save_json(out_prefix + "graphon.json", io::to_json(U));
                }
                out << j.dump(2) << '\n';
                return ok;
            } catch (const RegularityViolation& v) {
                const json c = certificate_json(v, rp);
                const std::string path = !cert_path.empty() ? cert_path
                                         : !out_prefix.empty() ? out_prefix + "certificate.json" : "";
                if (!path.empty()) io::save_json(path, c);
                out << c.dump(2) << '\n';
                err << "upper regularity violated: stepped norm " << v.stepped_norm() << " > C = " << rp.C << '\n';
                return violation;
            }
        }
        if (chk->parsed()) {
            const auto A = io::load(a_path);
            guard_classes(A, g, a_path);
            RegularityVerdict v;
            if (std::holds_alternative<WeightedGraph>(A)) {
                const auto& G = std::get<WeightedGraph>(A);
                v = G.size() <= 12 && !force_falsify ? check_upper_regular_exact(G, C, eta, p)
                                                     : falsify_upper_regular(G, C, eta, p, budget, g.seed);
            } else {
                const auto& W = std::get<StepGraphon>(A);
                v = W.size() <= 12 && !force_falsify ? check_upper_regular_exact(W, C, eta, p)
                                                     : falsify_upper_regular(W, C, eta, p, budget, g.seed);
            }
            const json j = io::to_json(v);
            out << j.dump(2) << '\n';
            if (v.reason == "dominant node") return dominant;
            if (v.status == VerdictStatus::falsified) {
                if (!cert_path.empty()) io::save_json(cert_path, j);
                return violation;
            }
            return ok;
        }
        if (smp->parsed()) {
            WeightedGraph G;
            if (kind == "power-law") {
                G = power_law_graph(n, alpha, beta, g.seed);
            } else if (kind == "clique") {
                G = clique_sequence(clique_idx);
            } else {
                if (a_path.empty()) throw Error(ErrorKind::parse, "sampling needs a graphon file");
                const auto A = io::load(a_path);
                if (!std::holds_alternative<StepGraphon>(A)) throw Error(ErrorKind::parse, a_path + " is not a graphon");
                const auto& W = std::get<StepGraphon>(A);
                G = kind == "h" ? sample_h(n, W, g.seed).graph : sample_g(n, W, rho, g.seed).graph;
            }
            if (out_path.empty()) {
                io::write_graph_tsv(out, G);
            } else {
                std::ofstream f(out_path);
                if (!f) throw Error(ErrorKind::invalid_argument, "cannot write " + out_path);
                io::write_graph_tsv(f, G);
            }
            return ok;
        }
        if (exp->parsed()) {
            std::ifstream f(spec_path);
            if (!f) throw Error(ErrorKind::parse, "cannot open " + spec_path);
            json j;
            try {
                f >> j;
            } catch (const json::exception& e) {
                throw Error(ErrorKind::parse, std::string("experiment spec: ") + e.what());
            }
            auto spec = ExperimentSpec::from_json(j);
            if (!out_path.empty()) spec.output_path = out_path;
            const std::string csv = to_csv(run_experiment(spec, g));
            if (spec.output_path.empty()) {
                out << csv;
            } else {
                std::ofstream o(spec.output_path, std::ios::binary);
                if (!o) throw Error(ErrorKind::invalid_argument, "cannot write " + spec.output_path);
                o << csv;
            }
            return ok;
        }
        if (mot->parsed()) {
            const auto F = MotifGraph::parse(motif);
            const auto A = io::load(a_path);
            guard_classes(A, g, a_path);
            const auto W = as_graphon(A, false);
            json j{{"motif", F.to_string()},
                   {"vertices", F.vertex_count()},
                   {"edges", F.edge_count()},
                   {"max_degree", F.max_degree()},
                   {"t", hom_density_graphon(F, W)},
                   {"holder_bound", holder_bound(F, W)}};
            if (p > static_cast<double>(F.max_degree())) j["generalized_holder_bound"] = generalized_holder_bound(F, W, p);
            out << j.dump(2) << '\n';
            return ok;
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_for(e);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return failure;
    }
    return parse_error;
}

int run(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(args, std::cout, std::cerr);
}

}  // namespace graphonlab::cli
