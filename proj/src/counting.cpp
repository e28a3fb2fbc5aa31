#include "graphonlab/counting.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace graphonlab {

MotifGraph::MotifGraph(std::size_t vertex_count, std::vector<std::pair<std::size_t, std::size_t>> edges)
    : n_(vertex_count), deg_(vertex_count, 0) {
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (auto [a, b] : edges) {
        if (a >= n_ || b >= n_) throw Error(ErrorKind::invalid_argument, "motif edge out of range");
        if (a == b) throw Error(ErrorKind::invalid_argument, "motif has a loop");
        if (a > b) std::swap(a, b);
        if (!seen.insert({a, b}).second) throw Error(ErrorKind::invalid_argument, "motif has a duplicate edge");
        edges_.emplace_back(a, b);
        ++deg_[a];
        ++deg_[b];
    }
    for (auto d : deg_) delta_ = std::max(delta_, d);
}

MotifGraph MotifGraph::parse(const std::string& text) {
    if (text == "K2") return MotifGraph(2, {{0, 1}});
    if (text == "K3") return MotifGraph(3, {{0, 1}, {1, 2}, {0, 2}});
    if (text == "C4") return MotifGraph(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
    if (text == "P3") return MotifGraph(3, {{0, 1}, {1, 2}});
    if (text == "K4") return MotifGraph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    std::size_t n = 0;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        const auto dash = tok.find('-');
        if (dash == std::string::npos) throw Error(ErrorKind::parse, "motif edge '" + tok + "' lacks '-'");
        std::size_t a, b;
        try {
            std::size_t pa, pb;
            a = std::stoul(tok.substr(0, dash), &pa);
            b = std::stoul(tok.substr(dash + 1), &pb);
            if (pa != dash || pb != tok.size() - dash - 1) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw Error(ErrorKind::parse, "bad motif edge '" + tok + "'");
        }
        if (a == 0 || b == 0) throw Error(ErrorKind::parse, "motif labels start at 1");
        n = std::max({n, a, b});
        edges.emplace_back(a - 1, b - 1);
    }
    if (edges.empty()) throw Error(ErrorKind::parse, "empty motif");
    return MotifGraph(n, std::move(edges));
}

MotifGraph MotifGraph::disjoint_union(const MotifGraph& a, const MotifGraph& b) {
    auto edges = a.edges();
    for (auto [u, v] : b.edges()) edges.emplace_back(u + a.vertex_count(), v + a.vertex_count());
    return MotifGraph(a.vertex_count() + b.vertex_count(), std::move(edges));
}

std::string MotifGraph::to_string() const {
    std::string s;
    for (auto [a, b] : edges_) {
        if (!s.empty()) s += ',';
        s += std::to_string(a + 1) + "-" + std::to_string(b + 1);
    }
    return s;
}

namespace {

// Dense table over an ordered scope of motif vertices; index is little-endian in scope order.
struct Factor {
    std::vector<std::size_t> scope;
    std::vector<double> data;
};

std::size_t ipow(std::size_t b, std::size_t e) {
    std::size_t r = 1;
    while (e--) r *= b;
    return r;
}

}  // namespace

double hom_density_graphon(const MotifGraph& F, const StepGraphon& W) {
    const std::size_t k = F.vertex_count();
    const std::size_t c = W.size();
    if (k > 8) throw Error(ErrorKind::resolution_guard, "motif exceeds 8 vertices");
    if (std::pow(static_cast<double>(c), static_cast<double>(k)) > 1e8)
        throw Error(ErrorKind::resolution_guard, "classes^|V(F)| exceeds 1e8");

    std::vector<Factor> factors;
    for (auto [a, b] : F.edges()) {
        Factor f{{a, b}, std::vector<double>(c * c)};
        for (std::size_t x = 0; x < c; ++x)
            for (std::size_t y = 0; y < c; ++y) f.data[x + c * y] = W.value(x, y);
        factors.push_back(std::move(f));
    }
    std::vector<char> alive(k, 1);
    double scalar = 1.0;
    for (std::size_t step = 0; step < k; ++step) {
        // Neighbors of each live vertex through shared factors.
        std::size_t best = k, best_deg = k + 1;
        std::vector<std::set<std::size_t>> nb(k);
        for (const auto& f : factors)
            for (auto u : f.scope)
                for (auto v : f.scope)
                    if (u != v) nb[u].insert(v);
        for (std::size_t v = 0; v < k; ++v)
            if (alive[v] && nb[v].size() < best_deg) {
                best = v;
                best_deg = nb[v].size();
            }
        const std::size_t v = best;
        alive[v] = 0;

        std::vector<Factor> touching, rest;
        for (auto& f : factors)
            (std::find(f.scope.begin(), f.scope.end(), v) != f.scope.end() ? touching : rest).push_back(std::move(f));
        std::vector<std::size_t> scope(nb[v].begin(), nb[v].end());
        Factor out{scope, std::vector<double>(ipow(c, scope.size()), 0.0)};

        // Position of each motif vertex in the combined assignment (scope..., v).
        std::vector<std::size_t> pos(k, k);
        for (std::size_t i = 0; i < scope.size(); ++i) pos[scope[i]] = i;
        pos[v] = scope.size();
        std::vector<std::size_t> assign(scope.size() + 1, 0);
        std::vector<std::vector<std::size_t>> fpos(touching.size());
        for (std::size_t t = 0; t < touching.size(); ++t)
            for (auto u : touching[t].scope) fpos[t].push_back(pos[u]);

        for (std::size_t idx = 0; idx < out.data.size(); ++idx) {
            std::size_t r = idx;
            for (std::size_t i = 0; i < scope.size(); ++i) {
                assign[i] = r % c;
                r /= c;
            }
            double sum = 0.0;
            for (std::size_t x = 0; x < c; ++x) {
                assign[scope.size()] = x;
                double prod = W.length(x);
                for (std::size_t t = 0; t < touching.size() && prod != 0.0; ++t) {
                    std::size_t off = 0, mul = 1;
                    for (auto p : fpos[t]) {
                        off += assign[p] * mul;
                        mul *= c;
                    }
                    prod *= touching[t].data[off];
                }
                sum += prod;
            }
            out.data[idx] = sum;
        }
        if (scope.empty())
            scalar *= out.data[0];
        else
            rest.push_back(std::move(out));
        factors = std::move(rest);
    }
    return scalar;
}

double hom_density_graph(const MotifGraph& F, const WeightedGraph& G) {
    return hom_density_graphon(F, embed_graph(G));
}

double counting_bound(const MotifGraph& F, double p, double eps) {
    const double D = static_cast<double>(F.max_degree());
    const double m = static_cast<double>(F.edge_count());
    if (!(p > D)) throw Error(ErrorKind::invalid_argument, "no counting lemma for p <= max degree");
    if (!(eps >= 0.0)) throw Error(ErrorKind::invalid_argument, "eps must be nonnegative");
    if (eps == 0.0) return 0.0;
    if (p == kInf) return 4.0 * m * eps;
    const double g = p - D;
    return 2.0 * m * (m - 1.0 + g) * std::pow(2.0 * eps / g, g / (g + m - 1.0));
}

double holder_bound(const MotifGraph& F, const StepGraphon& W) {
    const double D = static_cast<double>(std::max<std::size_t>(F.max_degree(), 1));
    return std::pow(graphon_lp_norm(W, D), static_cast<double>(F.edge_count()));
}

double generalized_holder_bound(const MotifGraph& F, const StepGraphon& W, double p) {
    const double D = static_cast<double>(F.max_degree());
    if (!(p > D)) throw Error(ErrorKind::invalid_argument, "generalized Holder bound needs p > max degree");
    const double q = p / (p - D + 1.0);
    return graphon_lp_norm(W, q) * std::pow(graphon_lp_norm(W, p), static_cast<double>(F.edge_count()) - 1.0);
}

namespace {

// int_a^b x^{-s} dx
double power_integral(double a, double b, double s) {
    if (std::fabs(s - 1.0) < 1e-15) return std::log(b / a);
    return (std::pow(b, 1.0 - s) - std::pow(a, 1.0 - s)) / (1.0 - s);
}

std::vector<double> geometric_breaks(double n) {
    const double decades = std::log10(n);
    const std::size_t cells = static_cast<std::size_t>(std::ceil(64.0 * decades - 1e-9));
    std::vector<double> br{0.0};
    for (std::size_t k = 0; k <= cells; ++k) {
        const double e = -decades + decades * static_cast<double>(k) / static_cast<double>(cells);
        br.push_back(std::pow(10.0, e));
    }
    br[1] = 1.0 / n;
    br.back() = 1.0;
    return br;
}

// ||u_n||_i^i as a sum of exact cell integrals over [1/n, 1].
double u_moment(const std::vector<double>& br, double n, std::size_t D, std::size_t i) {
    if (i == 0) return 1.0;
    const double s = static_cast<double>(i) / static_cast<double>(D);
    const double scale = std::pow(std::log(n), -s);
    double sum = 0.0;
    for (std::size_t k = 1; k + 1 < br.size(); ++k) sum += power_integral(br[k], br[k + 1], s);
    return scale * sum;
}

double binom(std::size_t n, std::size_t k) {
    double r = 1.0;
    for (std::size_t i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
    return r;
}

}  // namespace

CounterexampleResult counterexample_family(const MotifGraph& F, double n) {
    const std::size_t D = F.max_degree();
    if (!(n >= 3.0)) throw Error(ErrorKind::invalid_argument, "n must be >= 3");
    if (D < 2) throw Error(ErrorKind::invalid_argument, "motif needs maximum degree >= 2");
    const auto br = geometric_breaks(n);
    // ||w_n||_k^k = sum_i C(k,i) ||u_n||_i^i
    auto w_moment = [&](std::size_t k) {
        double s = 0.0;
        for (std::size_t i = 0; i <= k; ++i) s += binom(k, i) * u_moment(br, n, D, i);
        return s;
    };
    CounterexampleResult r;
    r.cells = br.size() - 1;
    r.t_value = 1.0;
    std::size_t top = 0;
    for (std::size_t v = 0; v < F.vertex_count(); ++v) {
        r.t_value *= w_moment(F.degree(v));
        if (F.degree(v) == D) ++top;
    }
    r.t_limit = std::ldexp(1.0, static_cast<int>(top));
    const double w1 = w_moment(1);
    r.l1_dist = w1 * w1 - 1.0;
    r.ldelta_norm = std::pow(w_moment(D), 2.0 / static_cast<double>(D));
    r.u_delta_norm = std::pow(u_moment(br, n, D, D), 1.0 / static_cast<double>(D));
    return r;
}

StepGraphon counterexample_graphon(std::size_t D, double n) {
    if (D < 2) throw Error(ErrorKind::invalid_argument, "D must be >= 2");
    const auto br = geometric_breaks(n);
    const std::size_t c = br.size() - 1;
    const double s = 1.0 / static_cast<double>(D);
    const double scale = std::pow(std::log(n), -s);
    std::vector<double> avg(c, 1.0), len(c);
    for (std::size_t k = 0; k < c; ++k) {
        len[k] = br[k + 1] - br[k];
        if (k > 0) avg[k] = 1.0 + scale * power_integral(br[k], br[k + 1], s) / len[k];
    }
    std::vector<double> vals(c * c);
    for (std::size_t a = 0; a < c; ++a)
        for (std::size_t b = 0; b < c; ++b) vals[a * c + b] = avg[a] * avg[b];
    return StepGraphon(std::move(len), std::move(vals));
}

CountingCheck counting_lemma_check(const MotifGraph& F, const StepGraphon& U, const StepGraphon& W, double p,
                                   const CutOptions& opt) {
    const double D = static_cast<double>(F.max_degree());
    if (!(p > D)) throw Error(ErrorKind::invalid_argument, "no counting lemma for p <= max degree");
    if (graphon_lp_norm(U, p) > 1.0 + 1e-12 || graphon_lp_norm(W, p) > 1.0 + 1e-12)
        throw Error(ErrorKind::invalid_argument, "counting lemma needs ||U||_p, ||W||_p <= 1");
    CountingCheck r;
    r.difference = std::fabs(hom_density_graphon(F, U) - hom_density_graphon(F, W));
    r.eps = d_cut(U, W, opt).upper;
    r.bound = counting_bound(F, p, r.eps);
    r.holds = r.difference <= r.bound + 1e-9;
    return r;
}

}  // namespace graphonlab
