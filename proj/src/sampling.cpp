#include "graphonlab/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <thread>

#include "graphonlab/rng.hpp"

namespace graphonlab {

namespace {

constexpr std::uint64_t kCoordTag = rng::tag("coord");
constexpr std::uint64_t kEdgeTag = rng::tag("edge");

// Sorted coordinates and the classes of W they fall in.
struct Latent {
    std::vector<double> x;
    std::vector<std::size_t> cls;
};

Latent draw_latent(std::size_t n, const StepGraphon& W, std::uint64_t seed) {
    std::vector<std::pair<double, std::size_t>> xs(n);
    for (std::size_t i = 0; i < n; ++i) xs[i] = {latent_coord(seed, i), i};
    std::sort(xs.begin(), xs.end());
    Latent L;
    L.x.resize(n);
    L.cls.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        L.x[k] = xs[k].first;
        L.cls[k] = W.class_of(xs[k].first);
    }
    return L;
}

bool keep_edge(std::uint64_t seed, std::size_t i, std::size_t j, double beta, double rho) {
    const double prob = std::min(rho * std::fabs(beta), 1.0);
    if (prob >= 1.0) return true;
    return rng::uniform(seed, kEdgeTag, rng::pair_index(i, j)) < prob;
}

}  // namespace

void SamplerConfig::validate() const {
    if (n == 0) throw Error(ErrorKind::invalid_argument, "n must be >= 1");
    if (!(rho > 0.0 && rho <= 1.0)) throw Error(ErrorKind::invalid_argument, "rho must lie in (0,1]");
}

double latent_coord(std::uint64_t seed, std::size_t i) { return rng::uniform(seed, kCoordTag, i); }

Sample sample_h(std::size_t n, const StepGraphon& W, std::uint64_t seed, bool keep_coords) {
    if (n == 0) throw Error(ErrorKind::invalid_argument, "n must be >= 1");
    Latent L = draw_latent(n, W, seed);
    std::vector<Edge> edges;
    for (std::size_t j = 1; j < n; ++j)
        for (std::size_t i = 0; i < j; ++i) {
            const double b = W.value(L.cls[i], L.cls[j]);
            if (b != 0.0) edges.push_back({i, j, b});
        }
    Sample s;
    s.graph = WeightedGraph(std::vector<double>(n, 1.0), std::move(edges));
    if (keep_coords) s.coords = std::move(L.x);
    return s;
}

WeightedGraph sparsify(const WeightedGraph& H, double rho, std::uint64_t seed) {
    if (!(rho > 0.0 && rho <= 1.0)) throw Error(ErrorKind::invalid_argument, "rho must lie in (0,1]");
    for (double a : H.vertex_weights())
        if (a != 1.0) throw Error(ErrorKind::invalid_argument, "sparsify needs unit vertex weights");
    std::vector<Edge> edges;
    for (const auto& e : H.edges()) {
        if (e.i == e.j) throw Error(ErrorKind::invalid_argument, "sparsify needs a loopless graph");
        if (keep_edge(seed, e.i, e.j, e.w, rho)) edges.push_back({e.i, e.j, e.w > 0.0 ? 1.0 : -1.0});
    }
    return WeightedGraph(std::vector<double>(H.size(), 1.0), std::move(edges));
}

std::uint64_t sparsify_seed(std::uint64_t seed) { return rng::derive(seed, rng::tag("sparsify"), 0); }

Sample sample_g(std::size_t n, const StepGraphon& W, double rho, std::uint64_t seed, bool keep_coords) {
    SamplerConfig cfg{n, rho, seed, keep_coords};
    cfg.validate();
    Latent L = draw_latent(n, W, seed);
    const std::uint64_t s2 = sparsify_seed(seed);
    std::vector<Edge> edges;
    for (std::size_t j = 1; j < n; ++j)
        for (std::size_t i = 0; i < j; ++i) {
            const double b = W.value(L.cls[i], L.cls[j]);
            if (b != 0.0 && keep_edge(s2, i, j, b, rho)) edges.push_back({i, j, b > 0.0 ? 1.0 : -1.0});
        }
    Sample s;
    s.graph = WeightedGraph(std::vector<double>(n, 1.0), std::move(edges));
    if (keep_coords) s.coords = std::move(L.x);
    return s;
}

Sample sample_g(const SamplerConfig& cfg, const StepGraphon& W) {
    return sample_g(cfg.n, W, cfg.rho, cfg.seed, cfg.keep_coords);
}

double cutoff_mass(const WeightedGraph& H, double rho) {
    const double n = static_cast<double>(H.size());
    double s = 0.0;
    for (const auto& e : H.edges())
        if (e.i != e.j) s += 2.0 * std::max(std::fabs(e.w) - 1.0 / rho, 0.0);
    return s / (n * n);
}

namespace {

void check_power_law(double alpha, double beta) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw Error(ErrorKind::invalid_argument, "alpha must lie in (0,1)");
    if (!(beta >= 0.0 && beta < 2.0 * alpha)) throw Error(ErrorKind::invalid_argument, "beta must lie in [0, 2 alpha)");
}

double power_law_prob(double n, double alpha, double beta, std::size_t i, std::size_t j) {
    return std::min(1.0, std::pow(n, beta) * std::pow(static_cast<double>(i) * static_cast<double>(j), -alpha));
}

}  // namespace

WeightedGraph power_law_graph(std::size_t n, double alpha, double beta, std::uint64_t seed) {
    check_power_law(alpha, beta);
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    const double nn = static_cast<double>(n);
    for (std::size_t j = 1; j < n; ++j)
        for (std::size_t i = 0; i < j; ++i) {
            const double prob = power_law_prob(nn, alpha, beta, i + 1, j + 1);
            if (prob >= 1.0 || rng::uniform(seed, rng::tag("power-law"), rng::pair_index(i, j)) < prob)
                edges.emplace_back(i, j);
        }
    return WeightedGraph::simple(n, edges);
}

double power_law_expected_edges(std::size_t n, double alpha, double beta) {
    check_power_law(alpha, beta);
    double s = 0.0;
    for (std::size_t j = 2; j <= n; ++j)
        for (std::size_t i = 1; i < j; ++i) s += power_law_prob(static_cast<double>(n), alpha, beta, i, j);
    return s;
}

double power_law_edge_variance(std::size_t n, double alpha, double beta) {
    check_power_law(alpha, beta);
    double s = 0.0;
    for (std::size_t j = 2; j <= n; ++j)
        for (std::size_t i = 1; i < j; ++i) {
            const double p = power_law_prob(static_cast<double>(n), alpha, beta, i, j);
            s += p * (1.0 - p);
        }
    return s;
}

StepGraphon power_law_graphon(double alpha, std::size_t grid) {
    if (!(alpha > 0.0)) throw Error(ErrorKind::invalid_argument, "alpha must be positive");
    if (alpha >= 1.0) throw Error(ErrorKind::invalid_argument, "(xy)^{-alpha} is not integrable for alpha >= 1");
    if (grid == 0) throw Error(ErrorKind::invalid_argument, "grid must be >= 1");
    std::vector<double> breaks(grid + 1);
    for (std::size_t k = 0; k <= grid; ++k) breaks[k] = static_cast<double>(k) / static_cast<double>(grid);
    breaks.back() = 1.0;
    const double e = 1.0 - alpha;
    auto F = [e](double a, double b) { return (std::pow(b, e) - std::pow(a, e)) / e; };
    return StepGraphon::from_cell_integrals(breaks, [F](double a, double b, double c, double d) { return F(a, b) * F(c, d); });
}

WeightedGraph clique_sequence(std::size_t idx) {
    if (idx < 2) throw Error(ErrorKind::invalid_argument, "idx must be >= 2");
    if (idx > 16 || (idx << idx) > (std::size_t{1} << 20))
        throw Error(ErrorKind::resolution_guard, "clique sequence beyond 2^20 vertices");
    const std::size_t n = idx << idx;
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t j = 1; j < idx; ++j)
        for (std::size_t i = 0; i < j; ++i) edges.emplace_back(i, j);
    return WeightedGraph::simple(n, edges);
}

std::size_t DoublingSequence::vertices(std::size_t n) const {
    if (n < 1 || n > steps()) throw Error(ErrorKind::invalid_argument, "step out of range");
    std::size_t v = 2;
    for (std::size_t k = 0; k + 1 < n; ++k) v *= factors[k].size();
    return v;
}

double DoublingSequence::l1(std::size_t n) const {
    if (n < 1 || n > steps()) throw Error(ErrorKind::invalid_argument, "step out of range");
    double s = 0.5;  // one edge on two vertices
    for (std::size_t k = 0; k + 1 < n; ++k) s *= h_density[k];
    return s;
}

double DoublingSequence::successive_bound(std::size_t n) const {
    if (n < 1 || n >= steps()) throw Error(ErrorKind::invalid_argument, "step out of range");
    return h_normalized_cut[n - 1];
}

WeightedGraph DoublingSequence::graph(std::size_t n, std::size_t max_vertices) const {
    const std::size_t nv = vertices(n);
    if (nv > max_vertices)
        throw Error(ErrorKind::resolution_guard, "G_" + std::to_string(n) + " has " + std::to_string(nv) +
                                                     " vertices; use the factored form");
    // Vertex (u, i) of G x H is u * |H| + i.
    std::vector<std::pair<std::size_t, std::size_t>> cur{{0, 1}};
    std::size_t size = 2;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        const auto& H = factors[k];
        const std::size_t h = H.size();
        std::vector<std::pair<std::size_t, std::size_t>> next;
        for (auto [u, v] : cur)
            for (const auto& e : H.edges()) {
                next.emplace_back(u * h + e.i, v * h + e.j);
                next.emplace_back(u * h + e.j, v * h + e.i);
            }
        cur = std::move(next);
        size *= h;
    }
    return WeightedGraph::simple(size, cur);
}

DoublingSequence doubling_sequence(const DoublingOptions& opt) {
    if (opt.steps < 1 || opt.steps > 6) throw Error(ErrorKind::resolution_guard, "doubling steps must lie in [1,6]");
    if (opt.h_vertices < 2) throw Error(ErrorKind::invalid_argument, "H needs at least two vertices");
    DoublingSequence seq;
    const std::size_t h = opt.h_vertices;
    for (std::size_t n = 1; n < opt.steps; ++n) {
        const double eps = std::ldexp(1.0, -2 * static_cast<int>(n));
        bool accepted = false;
        for (std::size_t attempt = 0; attempt < opt.max_retries && !accepted; ++attempt) {
            const std::uint64_t s = rng::derive(opt.seed, rng::tag("doubling-H"), n * 1000003 + attempt);
            std::vector<std::pair<std::size_t, std::size_t>> edges;
            for (std::size_t j = 1; j < h; ++j)
                for (std::size_t i = 0; i < j; ++i)
                    if (rng::uniform(s, kEdgeTag, rng::pair_index(i, j)) < 0.5) edges.emplace_back(i, j);
            WeightedGraph H = WeightedGraph::simple(h, edges);
            const double dens = graph_lp_norm(H, 1.0);
            if (dens == 0.0) continue;
            if (!opt.strict && std::fabs(dens - 0.5) > eps) continue;
            StepGraphon WH = embed_graph(H);
            std::vector<double> c(WH.values());
            for (double& x : c) x -= 0.5;
            const double cut_half = cut_norm(StepGraphon(WH.lengths(), std::move(c)), opt.cut).upper;
            if (opt.strict && cut_half > eps) continue;
            std::vector<double> d(WH.values());
            for (double& x : d) x = x / dens - 1.0;
            seq.factors.push_back(std::move(H));
            seq.eps.push_back(eps);
            seq.h_density.push_back(dens);
            seq.h_cut_upper.push_back(cut_half);
            seq.h_normalized_cut.push_back(cut_norm(StepGraphon(WH.lengths(), std::move(d)), opt.cut).upper);
            seq.attempts.push_back(attempt + 1);
            accepted = true;
        }
        if (!accepted) throw Error(ErrorKind::certification_failed, "could not certify quasirandomness");
    }
    return seq;
}

double ChernoffParams::q() const { return std::accumulate(probs.begin(), probs.end(), 0.0); }

void ChernoffParams::validate() const {
    if (!(lam > 0.0)) throw Error(ErrorKind::invalid_argument, "lambda must be positive");
    for (double p : probs)
        if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorKind::invalid_argument, "probabilities must lie in [0,1]");
    if (!signs.empty() && signs.size() != probs.size())
        throw Error(ErrorKind::invalid_argument, "one sign per variable");
    for (int s : signs)
        if (s != 1 && s != -1) throw Error(ErrorKind::invalid_argument, "signs must be +1 or -1");
}

double chernoff_bound(const ChernoffParams& c) {
    c.validate();
    const double q = c.q();
    return c.lam <= 1.0 ? 2.0 * std::exp(-c.lam * c.lam * q / 3.0) : 2.0 * std::exp(-c.lam * q / 3.0);
}

double chernoff_exact_tail(const ChernoffParams& c) {
    c.validate();
    const std::size_t n = c.probs.size();
    // dist[k] = P(X = k - n)
    std::vector<double> dist(2 * n + 1, 0.0), next(2 * n + 1);
    dist[n] = 1.0;
    double mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double p = c.probs[i];
        const int s = c.signs.empty() ? 1 : c.signs[i];
        mean += s * p;
        std::fill(next.begin(), next.end(), 0.0);
        for (std::size_t k = 0; k < dist.size(); ++k) {
            if (dist[k] == 0.0) continue;
            next[k] += (1.0 - p) * dist[k];
            const std::size_t t = s > 0 ? k + 1 : k - 1;
            next[t] += p * dist[k];
        }
        std::swap(dist, next);
    }
    const double dev = c.lam * c.q();
    double tail = 0.0;
    for (std::size_t k = 0; k < dist.size(); ++k) {
        const double x = static_cast<double>(k) - static_cast<double>(n);
        if (std::fabs(x - mean) >= dev * (1.0 - 1e-12)) tail += dist[k];
    }
    return std::min(tail, 1.0);
}

ChernoffEmpirical chernoff_monte_carlo(const ChernoffParams& c, std::size_t draws, std::uint64_t seed,
                                       std::size_t threads) {
    c.validate();
    const std::size_t n = c.probs.size();
    double mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) mean += (c.signs.empty() ? 1 : c.signs[i]) * c.probs[i];
    const double dev = c.lam * c.q();
    const std::uint64_t tag = rng::tag("chernoff");
    auto run = [&](std::size_t lo, std::size_t hi) {
        std::size_t ex = 0;
        for (std::size_t d = lo; d < hi; ++d) {
            double x = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                if (rng::uniform(seed, tag, d * n + i) < c.probs[i]) x += c.signs.empty() ? 1 : c.signs[i];
            if (std::fabs(x - mean) >= dev * (1.0 - 1e-12)) ++ex;
        }
        return ex;
    };
    ChernoffEmpirical out;
    out.draws = draws;
    threads = std::max<std::size_t>(1, std::min(threads, draws));
    if (threads == 1) {
        out.exceed = run(0, draws);
        return out;
    }
    std::vector<std::size_t> part(threads, 0);
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t)
        pool.emplace_back([&, t] { part[t] = run(draws * t / threads, draws * (t + 1) / threads); });
    for (auto& th : pool) th.join();
    out.exceed = std::accumulate(part.begin(), part.end(), std::size_t{0});
    return out;
}

ConcentrationReport sparsify_concentration_check(const WeightedGraph& H, double rho, double eps,
                                                 std::size_t trials, std::uint64_t seed) {
    const std::size_t n = H.size();
    if (n > 20) throw Error(ErrorKind::resolution_guard, "concentration check needs at most 20 vertices");
    if (rho != 1.0) throw Error(ErrorKind::invalid_argument, "concentration check runs at rho = 1");
    if (!(eps > 0.0)) throw Error(ErrorKind::invalid_argument, "eps must be positive");
    for (const auto& e : H.edges())
        if (e.i == e.j || std::fabs(e.w) > 1.0)
            throw Error(ErrorKind::invalid_argument, "H needs weights in [-1,1] and no loops");
    ConcentrationReport rep;
    rep.trials = trials;
    const double l1 = graph_lp_norm(H, 1.0);
    const double nn = static_cast<double>(n);
    rep.bound = std::exp2(nn + 1.0) * std::exp(-std::min(eps, eps * eps) * l1 * nn * nn / 24.0);
    rep.vacuous = rep.bound >= 1.0;
    const StepGraphon WH = embed_graph(H);
    CutOptions opt;
    for (std::size_t t = 0; t < trials; ++t) {
        WeightedGraph G = sparsify(H, 1.0, rng::derive(seed, rng::tag("concentration"), t));
        const double d = cut_norm(difference(embed_graph(G), WH), opt).upper;
        rep.max_distance = std::max(rep.max_distance, d);
        if (d > eps * l1) ++rep.failures;
    }
    rep.frequency = trials ? static_cast<double>(rep.failures) / static_cast<double>(trials) : 0.0;
    return rep;
}

}  // namespace graphonlab
