#include "graphonlab/core.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace graphonlab {

namespace {

void require_p(double p) {
    if (!(p >= 1.0)) throw Error(ErrorKind::invalid_argument, "p must be >= 1");
}

double pow_abs(double x, double p) {
    double a = std::fabs(x);
    if (p == 1.0) return a;
    if (p == 2.0) return a * a;
    return std::pow(a, p);
}

double finish_norm(double s, double p) {
    if (p == 1.0) return s;
    if (p == 2.0) return std::sqrt(s);
    return std::pow(s, 1.0 / p);
}

bool close(double a, double b, double tol) { return std::fabs(a - b) <= tol; }

}  // namespace

WeightedGraph::WeightedGraph(std::vector<double> vertex_weights, std::vector<Edge> edges)
    : alpha_(std::move(vertex_weights)) {
    const std::size_t n = alpha_.size();
    for (double a : alpha_) {
        if (!(a > 0.0) || !std::isfinite(a))
            throw Error(ErrorKind::invalid_argument, "vertex weights must be positive");
        total_ += a;
    }
    for (auto& e : edges) {
        if (e.i >= n || e.j >= n) throw Error(ErrorKind::invalid_argument, "edge endpoint out of range");
        if (!std::isfinite(e.w)) throw Error(ErrorKind::invalid_argument, "edge weight not finite");
        if (e.i > e.j) std::swap(e.i, e.j);
    }
    std::sort(edges.begin(), edges.end(),
              [](const Edge& a, const Edge& b) { return a.i != b.i ? a.i < b.i : a.j < b.j; });
    for (const auto& e : edges) {
        if (!edges_.empty() && edges_.back().i == e.i && edges_.back().j == e.j)
            edges_.back().w += e.w;
        else
            edges_.push_back(e);
    }
    std::erase_if(edges_, [](const Edge& e) { return e.w == 0.0; });

    simple_ = std::all_of(alpha_.begin(), alpha_.end(), [](double a) { return a == 1.0; }) &&
              std::all_of(edges_.begin(), edges_.end(),
                          [](const Edge& e) { return e.i != e.j && e.w == 1.0; });
}

WeightedGraph WeightedGraph::simple(std::size_t n,
                                    const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
    std::vector<Edge> es;
    es.reserve(edges.size());
    for (auto [i, j] : edges) {
        if (i == j) throw Error(ErrorKind::invalid_argument, "simple graph cannot have loops");
        es.push_back({std::min(i, j), std::max(i, j), 1.0});
    }
    std::sort(es.begin(), es.end(),
              [](const Edge& a, const Edge& b) { return a.i != b.i ? a.i < b.i : a.j < b.j; });
    es.erase(std::unique(es.begin(), es.end(),
                         [](const Edge& a, const Edge& b) { return a.i == b.i && a.j == b.j; }),
             es.end());
    return WeightedGraph(std::vector<double>(n, 1.0), std::move(es));
}

double WeightedGraph::weight(std::size_t i, std::size_t j) const {
    if (i > j) std::swap(i, j);
    auto it = std::lower_bound(edges_.begin(), edges_.end(), std::make_pair(i, j),
                               [](const Edge& e, const std::pair<std::size_t, std::size_t>& k) {
                                   return e.i != k.first ? e.i < k.first : e.j < k.second;
                               });
    if (it != edges_.end() && it->i == i && it->j == j) return it->w;
    return 0.0;
}

double WeightedGraph::subset_weight(const std::vector<std::size_t>& vertices) const {
    double s = 0.0;
    for (auto v : vertices) s += alpha_.at(v);
    return s;
}

StepGraphon::StepGraphon(std::vector<double> lengths, std::vector<double> values)
    : len_(std::move(lengths)), val_(std::move(values)) {
    const std::size_t m = len_.size();
    if (m == 0) throw Error(ErrorKind::invalid_argument, "graphon needs at least one class");
    if (val_.size() != m * m) throw Error(ErrorKind::invalid_argument, "values must be m x m");
    double total = 0.0;
    for (double l : len_) {
        if (!(l > 0.0)) throw Error(ErrorKind::invalid_argument, "class lengths must be positive");
        total += l;
    }
    if (!close(total, 1.0, 1e-9)) throw Error(ErrorKind::invalid_argument, "class lengths must sum to 1");
    for (double& l : len_) l /= total;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i; j < m; ++j) {
            double a = val_[i * m + j], b = val_[j * m + i];
            if (!std::isfinite(a) || !std::isfinite(b))
                throw Error(ErrorKind::invalid_argument, "graphon values must be finite");
            if (!close(a, b, 1e-12 * std::max({1.0, std::fabs(a), std::fabs(b)})))
                throw Error(ErrorKind::invalid_argument, "graphon values must be symmetric");
            double s = 0.5 * (a + b);
            val_[i * m + j] = val_[j * m + i] = s;
        }
    }
    cum_.resize(m);
    std::partial_sum(len_.begin(), len_.end(), cum_.begin());
}

StepGraphon StepGraphon::constant(double c) { return StepGraphon({1.0}, {c}); }

StepGraphon StepGraphon::equipartition(std::size_t m, std::vector<double> values) {
    return StepGraphon(std::vector<double>(m, 1.0 / static_cast<double>(m)), std::move(values));
}

StepGraphon StepGraphon::sample_function(const std::function<double(double, double)>& f,
                                         std::size_t n) {
    if (n == 0) throw Error(ErrorKind::invalid_argument, "grid must be positive");
    constexpr int q = 4;
    const double h = 1.0 / static_cast<double>(n);
    std::vector<double> vals(n * n);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a; b < n; ++b) {
            double s = 0.0;
            for (int u = 0; u < q; ++u)
                for (int v = 0; v < q; ++v)
                    s += f(h * (static_cast<double>(a) + (u + 0.5) / q),
                           h * (static_cast<double>(b) + (v + 0.5) / q));
            vals[a * n + b] = vals[b * n + a] = s / (q * q);
        }
    }
    return equipartition(n, std::move(vals));
}

StepGraphon StepGraphon::from_cell_integrals(
    const std::vector<double>& breaks,
    const std::function<double(double, double, double, double)>& integral) {
    if (breaks.size() < 2 || breaks.front() != 0.0 || breaks.back() != 1.0)
        throw Error(ErrorKind::invalid_argument, "breaks must run from 0 to 1");
    const std::size_t n = breaks.size() - 1;
    std::vector<double> len(n), vals(n * n);
    for (std::size_t a = 0; a < n; ++a) len[a] = breaks[a + 1] - breaks[a];
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a; b < n; ++b) {
            double v = integral(breaks[a], breaks[a + 1], breaks[b], breaks[b + 1]) / (len[a] * len[b]);
            vals[a * n + b] = vals[b * n + a] = v;
        }
    }
    return StepGraphon(std::move(len), std::move(vals));
}

std::size_t StepGraphon::class_of(double x) const {
    auto it = std::upper_bound(cum_.begin(), cum_.end(), x);
    auto k = static_cast<std::size_t>(it - cum_.begin());
    return std::min(k, len_.size() - 1);
}

StepGraphon StepGraphon::scaled(double s) const {
    std::vector<double> v(val_);
    for (double& x : v) x *= s;
    return StepGraphon(len_, std::move(v));
}

StepGraphon StepGraphon::reordered(const std::vector<std::size_t>& order) const {
    const std::size_t m = size();
    if (order.size() != m) throw Error(ErrorKind::invalid_argument, "order size mismatch");
    std::vector<double> len(m), v(m * m);
    for (std::size_t k = 0; k < m; ++k) {
        len[k] = len_.at(order[k]);
        for (std::size_t l = 0; l < m; ++l) v[k * m + l] = value(order[k], order[l]);
    }
    return StepGraphon(std::move(len), std::move(v));
}

Partition::Partition(std::vector<double> base_measures, const std::vector<std::size_t>& labels)
    : base_(std::move(base_measures)) {
    if (labels.size() != base_.size()) throw Error(ErrorKind::invalid_argument, "one label per base cell");
    std::map<std::size_t, std::size_t> canon;
    labels_.reserve(labels.size());
    for (std::size_t c = 0; c < labels.size(); ++c) {
        auto [it, fresh] = canon.emplace(labels[c], canon.size());
        if (fresh) measures_.push_back(0.0);
        labels_.push_back(it->second);
        measures_[it->second] += base_[c];
    }
}

Partition Partition::trivial(std::vector<double> base_measures) {
    std::vector<std::size_t> l(base_measures.size(), 0);
    return Partition(std::move(base_measures), l);
}

Partition Partition::discrete(std::vector<double> base_measures) {
    std::vector<std::size_t> l(base_measures.size());
    std::iota(l.begin(), l.end(), std::size_t{0});
    return Partition(std::move(base_measures), l);
}

Partition Partition::split(std::vector<double> base_measures, const std::vector<std::size_t>& S) {
    std::vector<std::size_t> l(base_measures.size(), 0);
    for (auto s : S) l.at(s) = 1;
    return Partition(std::move(base_measures), l);
}

std::vector<std::vector<std::size_t>> Partition::members() const {
    std::vector<std::vector<std::size_t>> out(classes());
    for (std::size_t c = 0; c < labels_.size(); ++c) out[labels_[c]].push_back(c);
    return out;
}

double Partition::min_measure() const {
    return measures_.empty() ? 0.0 : *std::min_element(measures_.begin(), measures_.end());
}

bool Partition::same_parent(const Partition& other) const {
    if (base_.size() != other.base_.size()) return false;
    for (std::size_t i = 0; i < base_.size(); ++i)
        if (!close(base_[i], other.base_[i], 1e-12)) return false;
    return true;
}

bool Partition::refines(const Partition& coarser) const {
    if (!same_parent(coarser)) return false;
    std::vector<std::size_t> image(classes(), static_cast<std::size_t>(-1));
    for (std::size_t c = 0; c < labels_.size(); ++c) {
        auto& im = image[labels_[c]];
        if (im == static_cast<std::size_t>(-1)) im = coarser.labels_[c];
        else if (im != coarser.labels_[c]) return false;
    }
    return true;
}

double graph_lp_norm(const WeightedGraph& G, double p) {
    require_p(p);
    if (G.size() == 0) throw Error(ErrorKind::invalid_argument, "empty graph");
    const auto& a = G.vertex_weights();
    if (p == kInf) {
        double m = 0.0;
        for (const auto& e : G.edges()) m = std::max(m, std::fabs(e.w));
        return m;
    }
    const double t2 = G.total_weight() * G.total_weight();
    double s = 0.0;
    for (const auto& e : G.edges()) {
        double mult = e.i == e.j ? 1.0 : 2.0;
        s += mult * a[e.i] * a[e.j] / t2 * pow_abs(e.w, p);
    }
    return finish_norm(s, p);
}

double graphon_lp_norm(const StepGraphon& W, double p) {
    require_p(p);
    const std::size_t m = W.size();
    if (p == kInf) {
        double mx = 0.0;
        for (double v : W.values()) mx = std::max(mx, std::fabs(v));
        return mx;
    }
    double s = 0.0;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) s += W.length(i) * W.length(j) * pow_abs(W.value(i, j), p);
    return finish_norm(s, p);
}

double edge_density(const WeightedGraph& G, const std::vector<std::size_t>& S,
                    const std::vector<std::size_t>& T) {
    if (S.empty() || T.empty()) throw Error(ErrorKind::invalid_argument, "empty block");
    const std::size_t n = G.size();
    std::vector<char> inS(n, 0), inT(n, 0);
    for (auto s : S) inS.at(s) = 1;
    for (auto t : T) inT.at(t) = 1;
    const auto& a = G.vertex_weights();
    double aS = 0.0, aT = 0.0;
    for (std::size_t v = 0; v < n; ++v) {
        if (inS[v]) aS += a[v];
        if (inT[v]) aT += a[v];
    }
    double s = 0.0;
    for (const auto& e : G.edges()) {
        if (inS[e.i] && inT[e.j]) s += a[e.i] * a[e.j] * e.w;
        if (e.i != e.j && inS[e.j] && inT[e.i]) s += a[e.i] * a[e.j] * e.w;
    }
    return s / (aS * aT);
}

StepGraphon embed_graph(const WeightedGraph& G) {
    const std::size_t n = G.size();
    if (n == 0) throw Error(ErrorKind::invalid_argument, "empty graph");
    std::vector<double> len(n), v(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) len[i] = G.vertex_weights()[i] / G.total_weight();
    for (const auto& e : G.edges()) v[e.i * n + e.j] = v[e.j * n + e.i] = e.w;
    return StepGraphon(std::move(len), std::move(v));
}

StepGraphon normalize(const WeightedGraph& G) {
    double l1 = graph_lp_norm(G, 1.0);
    if (l1 == 0.0) throw Error(ErrorKind::invalid_argument, "no edges");
    return embed_graph(G).scaled(1.0 / l1);
}

namespace {

// Sum of lambda_i lambda_j v_ij over each block pair.
std::vector<double> block_sums(const StepGraphon& W, const Partition& P) {
    if (P.base_size() != W.size()) throw Error(ErrorKind::invalid_argument, "partition does not match grid");
    const std::size_t m = W.size(), k = P.classes();
    std::vector<double> B(k * k, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t a = P.label(i);
        for (std::size_t j = 0; j < m; ++j)
            B[a * k + P.label(j)] += W.length(i) * W.length(j) * W.value(i, j);
    }
    return B;
}

std::vector<double> block_averages(const StepGraphon& W, const Partition& P) {
    auto B = block_sums(W, P);
    const std::size_t k = P.classes();
    const auto& mu = P.measures();
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b) B[a * k + b] /= mu[a] * mu[b];
    return B;
}

}  // namespace

StepGraphon step(const StepGraphon& W, const Partition& P) {
    auto avg = block_averages(W, P);
    const std::size_t m = W.size(), k = P.classes();
    std::vector<double> v(m * m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) v[i * m + j] = avg[P.label(i) * k + P.label(j)];
    return StepGraphon(W.lengths(), std::move(v));
}

StepGraphon quotient(const StepGraphon& W, const Partition& P) {
    return StepGraphon(P.measures(), block_averages(W, P));
}

double stepped_lp_norm(const StepGraphon& W, const Partition& P, double p) {
    return graphon_lp_norm(quotient(W, P), p);
}

Partition common_refinement(const Partition& P, const Partition& Q) {
    if (!P.same_parent(Q)) throw Error(ErrorKind::invalid_argument, "partitions have different parents");
    const std::size_t kq = Q.classes();
    std::vector<std::size_t> l(P.base_size());
    for (std::size_t c = 0; c < l.size(); ++c) l[c] = P.label(c) * kq + Q.label(c);
    return Partition(P.base(), l);
}

double inner_product(const StepGraphon& U, const StepGraphon& W) {
    const std::size_t m = U.size();
    if (W.size() != m) throw Error(ErrorKind::invalid_argument, "mismatched grids");
    for (std::size_t i = 0; i < m; ++i)
        if (!close(U.length(i), W.length(i), 1e-12)) throw Error(ErrorKind::invalid_argument, "mismatched grids");
    double s = 0.0;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) s += U.length(i) * U.length(j) * U.value(i, j) * W.value(i, j);
    return s;
}

double mean(const StepGraphon& W) {
    double s = 0.0;
    for (std::size_t i = 0; i < W.size(); ++i)
        for (std::size_t j = 0; j < W.size(); ++j) s += W.length(i) * W.length(j) * W.value(i, j);
    return s;
}

std::pair<StepGraphon, StepGraphon> truncate(const StepGraphon& W, double K) {
    if (!(K > 0.0)) throw Error(ErrorKind::invalid_argument, "truncation level must be positive");
    std::vector<double> lo(W.values()), hi(W.values().size(), 0.0);
    for (std::size_t k = 0; k < lo.size(); ++k) {
        if (std::fabs(lo[k]) > K) {
            hi[k] = lo[k];
            lo[k] = 0.0;
        }
    }
    return {StepGraphon(W.lengths(), std::move(lo)), StepGraphon(W.lengths(), std::move(hi))};
}

std::pair<StepGraphon, StepGraphon> align_grids(const StepGraphon& U, const StepGraphon& W) {
    auto cuts = [](const StepGraphon& X) {
        std::vector<double> c(X.size() + 1, 0.0);
        for (std::size_t i = 0; i < X.size(); ++i) c[i + 1] = c[i] + X.length(i);
        c.back() = 1.0;
        return c;
    };
    auto cu = cuts(U), cw = cuts(W);
    if (cu == cw) return {U, W};
    std::vector<double> all;
    all.reserve(cu.size() + cw.size());
    std::merge(cu.begin(), cu.end(), cw.begin(), cw.end(), std::back_inserter(all));
    std::vector<double> br{0.0};
    for (double x : all)
        if (x - br.back() > 1e-14) br.push_back(x);
    br.back() = 1.0;
    const std::size_t r = br.size() - 1;
    std::vector<double> len(r);
    std::vector<std::size_t> iu(r), iw(r);
    for (std::size_t k = 0; k < r; ++k) {
        len[k] = br[k + 1] - br[k];
        double mid = 0.5 * (br[k] + br[k + 1]);
        iu[k] = U.class_of(mid);
        iw[k] = W.class_of(mid);
    }
    std::vector<double> vu(r * r), vw(r * r);
    for (std::size_t a = 0; a < r; ++a)
        for (std::size_t b = 0; b < r; ++b) {
            vu[a * r + b] = U.value(iu[a], iu[b]);
            vw[a * r + b] = W.value(iw[a], iw[b]);
        }
    return {StepGraphon(len, std::move(vu)), StepGraphon(len, std::move(vw))};
}

StepGraphon difference(const StepGraphon& U, const StepGraphon& W) {
    auto [a, b] = align_grids(U, W);
    std::vector<double> v(a.values());
    for (std::size_t k = 0; k < v.size(); ++k) v[k] -= b.values()[k];
    return StepGraphon(a.lengths(), std::move(v));
}

double lp_distance(const StepGraphon& U, const StepGraphon& W, double p) {
    return graphon_lp_norm(difference(U, W), p);
}

TwinMerge merge_twins(const StepGraphon& W, double tol) {
    const std::size_t m = W.size();
    std::vector<double> rowsum(m, 0.0);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) rowsum[i] += W.value(i, j);
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return rowsum[a] < rowsum[b]; });

    // Twins have row sums within m*tol, so candidates are a contiguous window in sorted order.
    const double window = static_cast<double>(m) * tol;
    std::vector<std::size_t> rep_of(m, static_cast<std::size_t>(-1));
    std::vector<std::size_t> reps;  // positions in `order`, increasing
    std::size_t first_open = 0;
    for (std::size_t pos = 0; pos < m; ++pos) {
        const std::size_t i = order[pos];
        while (first_open < reps.size() && rowsum[order[reps[first_open]]] < rowsum[i] - window) ++first_open;
        std::size_t found = static_cast<std::size_t>(-1);
        for (std::size_t r = first_open; r < reps.size() && found == static_cast<std::size_t>(-1); ++r) {
            const std::size_t c = order[reps[r]];
            bool same = true;
            for (std::size_t j = 0; j < m && same; ++j) same = std::fabs(W.value(i, j) - W.value(c, j)) <= tol;
            if (same) found = c;
        }
        if (found == static_cast<std::size_t>(-1)) {
            reps.push_back(pos);
            rep_of[i] = i;
        } else {
            rep_of[i] = found;
        }
    }
    Partition P(W.lengths(), rep_of);
    return {quotient(W, P), P.labels()};
}

}  // namespace graphonlab
