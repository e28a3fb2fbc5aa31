#include "graphonlab/upperreg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "graphonlab/rng.hpp"

namespace graphonlab {

const char* to_string(VerdictStatus s) {
    switch (s) {
        case VerdictStatus::verified_exact: return "verified_exact";
        case VerdictStatus::falsified: return "falsified";
        case VerdictStatus::unfalsified: return "unfalsified";
    }
    return "unknown";
}

namespace {

constexpr std::size_t kExactLimit = 12;
constexpr double kViolation = 1e-9;

// Atoms with measures mu and a symmetric weight matrix, stored as neighbor lists.
struct Atoms {
    std::vector<double> mu;
    std::vector<std::vector<std::pair<std::size_t, double>>> nbr;  // u != v, value v_uv
    std::vector<double> loop;

    explicit Atoms(const StepGraphon& W) : mu(W.lengths()), nbr(W.size()), loop(W.size()) {
        const std::size_t n = W.size();
        for (std::size_t u = 0; u < n; ++u) {
            loop[u] = W.value(u, u);
            for (std::size_t v = 0; v < n; ++v)
                if (v != u && W.value(u, v) != 0.0) nbr[u].emplace_back(v, W.value(u, v));
        }
    }
    Atoms(const WeightedGraph& G, double scale) : mu(G.size()), nbr(G.size()), loop(G.size(), 0.0) {
        for (std::size_t i = 0; i < G.size(); ++i) mu[i] = G.vertex_weights()[i] / G.total_weight();
        for (const auto& e : G.edges()) {
            if (e.i == e.j) {
                loop[e.i] = e.w * scale;
            } else {
                nbr[e.i].emplace_back(e.j, e.w * scale);
                nbr[e.j].emplace_back(e.i, e.w * scale);
            }
        }
    }
    std::size_t size() const { return mu.size(); }
};

// Block integrals B (k x k, row-major) and part measures w.
struct Blocks {
    std::size_t k = 0;
    std::vector<double> B, w;

    void reset(std::size_t parts) {
        k = parts;
        B.assign(k * k, 0.0);
        w.assign(k, 0.0);
    }
    // Adds (sign = +1) or removes (sign = -1) atom contributions given its row sums r over parts.
    void apply(std::size_t x, const std::vector<double>& r, double self, double mu, double sign) {
        for (std::size_t c = 0; c < k; ++c) {
            B[x * k + c] += sign * r[c];
            B[c * k + x] += sign * r[c];
        }
        B[x * k + x] += sign * self;
        w[x] += sign * mu;
    }
};

using Score = std::function<double(const Blocks&)>;

Score lp_score(double p) {
    return [p](const Blocks& b) {
        if (p == kInf) {
            double m = 0.0;
            for (std::size_t a = 0; a < b.k; ++a)
                for (std::size_t c = 0; c < b.k; ++c)
                    m = std::max(m, std::fabs(b.B[a * b.k + c]) / (b.w[a] * b.w[c]));
            return m;
        }
        double s = 0.0;
        for (std::size_t a = 0; a < b.k; ++a)
            for (std::size_t c = 0; c < b.k; ++c) {
                const double ww = b.w[a] * b.w[c];
                s += ww * std::pow(std::fabs(b.B[a * b.k + c]) / ww, p);
            }
        return std::pow(s, 1.0 / p);
    };
}

Score tail_score(const TailBoundFn& K) {
    std::vector<std::pair<double, double>> grid(K.table().begin(), K.table().end());
    return [grid](const Blocks& b) {
        double worst = -kInf;
        for (auto [eps, k] : grid) {
            double t = 0.0;
            for (std::size_t a = 0; a < b.k; ++a)
                for (std::size_t c = 0; c < b.k; ++c) {
                    const double x = std::fabs(b.B[a * b.k + c]);
                    const double ww = b.w[a] * b.w[c];
                    if (x >= k * ww) t += x;
                }
            worst = std::max(worst, t - eps);
        }
        return worst;
    };
}

// Row sums of atom v against each part, and its self term.
void row_sums(const Atoms& A, const std::vector<std::size_t>& lab, std::size_t v, std::size_t k,
              std::vector<double>& r, double& self) {
    r.assign(k, 0.0);
    for (auto [u, x] : A.nbr[v])
        if (lab[u] < k) r[lab[u]] += A.mu[v] * A.mu[u] * x;
    self = A.mu[v] * A.mu[v] * A.loop[v];
}

struct Search {
    double best = -kInf;
    std::vector<std::size_t> labels;
    std::size_t admissible = 0;
};

// All set partitions with at least min_parts parts of measure >= eta, as restricted growth strings.
Search enumerate(const Atoms& A, double eta, std::size_t min_parts, const Score& score) {
    const std::size_t n = A.size();
    const double floor_eta = eta - 1e-12;
    const std::size_t unassigned = n;  // sentinel label
    std::vector<std::size_t> lab(n, unassigned);
    std::vector<double> suffix(n + 1, 0.0);
    for (std::size_t i = n; i-- > 0;) suffix[i] = suffix[i + 1] + A.mu[i];
    Blocks b;
    b.reset(n);
    Search out;

    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t v, std::size_t k) {
        double deficit = 0.0;
        for (std::size_t a = 0; a < k; ++a) deficit += std::max(0.0, floor_eta - b.w[a]);
        if (deficit > suffix[v] + 1e-12) return;
        if (v == n) {
            if (k < min_parts) return;
            ++out.admissible;
            Blocks view;
            view.reset(k);
            for (std::size_t a = 0; a < k; ++a) {
                view.w[a] = b.w[a];
                for (std::size_t c = 0; c < k; ++c) view.B[a * k + c] = b.B[a * n + c];
            }
            const double s = score(view);
            if (s > out.best) {
                out.best = s;
                out.labels = lab;
            }
            return;
        }
        // Per-frame buffer: deeper calls must not clobber the row sums needed for the undo.
        std::vector<double> r;
        double self;
        row_sums(A, lab, v, n, r, self);
        for (std::size_t a = 0; a <= k && a < n; ++a) {
            b.apply(a, r, self, A.mu[v], 1.0);
            lab[v] = a;
            rec(v + 1, std::max(k, a + 1));
            lab[v] = unassigned;
            b.apply(a, r, self, A.mu[v], -1.0);
        }
    };
    rec(0, 0);
    return out;
}

Blocks blocks_of(const Atoms& A, const std::vector<std::size_t>& lab, std::size_t k) {
    Blocks b;
    b.reset(k);
    for (std::size_t v = 0; v < A.size(); ++v) {
        b.w[lab[v]] += A.mu[v];
        b.B[lab[v] * k + lab[v]] += A.mu[v] * A.mu[v] * A.loop[v];
        for (auto [u, x] : A.nbr[v]) b.B[lab[v] * k + lab[u]] += A.mu[v] * A.mu[u] * x;
    }
    return b;
}

// Single-atom moves that keep every part >= eta, taking the best improvement each time.
double improve(const Atoms& A, std::vector<std::size_t>& lab, std::size_t k, double eta, const Score& score) {
    const std::size_t n = A.size();
    Blocks b = blocks_of(A, lab, k);
    std::vector<std::size_t> count(k, 0);
    for (auto l : lab) ++count[l];
    double cur = score(b);
    std::vector<double> r;
    for (int sweep = 0; sweep < 100; ++sweep) {
        bool moved = false;
        for (std::size_t v = 0; v < n; ++v) {
            const std::size_t a = lab[v];
            if (count[a] < 2 || b.w[a] - A.mu[v] < eta - 1e-12) continue;
            double self;
            row_sums(A, lab, v, k, r, self);
            // r counts v's own part through its neighbors only, so removal is exact.
            b.apply(a, r, self, A.mu[v], -1.0);
            double best = cur;
            std::size_t target = a;
            for (std::size_t c = 0; c < k; ++c) {
                if (c == a) continue;
                b.apply(c, r, self, A.mu[v], 1.0);
                const double s = score(b);
                b.apply(c, r, self, A.mu[v], -1.0);
                if (s > best + 1e-12 * (1.0 + std::fabs(best))) {
                    best = s;
                    target = c;
                }
            }
            b.apply(target, r, self, A.mu[v], 1.0);
            if (target != a) {
                lab[v] = target;
                --count[a];
                ++count[target];
                cur = best;
                moved = true;
            }
        }
        if (!moved) break;
    }
    // Recompute from scratch so the reported value carries no drift from incremental updates.
    return score(blocks_of(A, lab, k));
}

Search search(const Atoms& A, double eta, std::size_t min_parts, std::size_t budget, std::uint64_t seed,
              const Score& score) {
    const std::size_t n = A.size();
    Search out;
    const std::size_t kmax = std::min<std::size_t>(
        n, eta > 0.0 ? static_cast<std::size_t>(std::floor(1.0 / eta + 1e-9)) : n);
    if (kmax < std::max<std::size_t>(min_parts, 1)) return out;
    auto consider = [&](std::vector<std::size_t> lab, std::size_t k) {
        for (std::size_t a = 0; a < k; ++a) {
            double w = 0.0;
            for (std::size_t v = 0; v < n; ++v)
                if (lab[v] == a) w += A.mu[v];
            if (w < eta - 1e-12) return;
        }
        ++out.admissible;
        const double s = improve(A, lab, k, eta, score);
        if (s > out.best) {
            out.best = s;
            out.labels = std::move(lab);
        }
    };

    // Seed: the heaviest rows as one part, the rest as the other.
    if (min_parts <= 2 && kmax >= 2) {
        std::vector<double> mass(n, 0.0);
        for (std::size_t v = 0; v < n; ++v)
            for (auto [u, x] : A.nbr[v]) mass[v] += A.mu[u] * std::fabs(x);
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return mass[a] > mass[b]; });
        std::vector<std::size_t> lab(n, 1);
        double w = 0.0;
        for (auto v : order) {
            if (w >= eta - 1e-12) break;
            lab[v] = 0;
            w += A.mu[v];
        }
        consider(lab, 2);
    }
    for (std::size_t r = 1; r < std::max<std::size_t>(budget, 1); ++r) {
        const std::size_t lo = std::max<std::size_t>(min_parts, 2);
        if (kmax < lo) break;
        const std::size_t k = lo + (r - 1) % (kmax - lo + 1);
        rng::Stream s(rng::derive(seed, rng::tag("falsify-restart"), r), rng::tag("shuffle"));
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), 0);
        for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[s.below(i)]);
        std::vector<std::size_t> lab(n);
        std::vector<double> w(k, 0.0);
        for (auto v : order) {
            const std::size_t a = static_cast<std::size_t>(std::min_element(w.begin(), w.end()) - w.begin());
            lab[v] = a;
            w[a] += A.mu[v];
        }
        consider(lab, k);
    }
    if (min_parts <= 1) {
        std::vector<std::size_t> lab(n, 0);
        ++out.admissible;
        const double s = score(blocks_of(A, lab, 1));
        if (s > out.best) {
            out.best = s;
            out.labels = lab;
        }
    }
    return out;
}

RegularityVerdict verdict_from(const Search& s, const std::vector<double>& mu, double threshold, bool exact) {
    RegularityVerdict v;
    v.admissible = s.admissible;
    v.worst_value = s.admissible ? s.best : 0.0;
    if (s.admissible && s.best > threshold) {
        v.status = VerdictStatus::falsified;
        v.certificate = Partition(mu, s.labels);
    } else {
        v.status = exact ? VerdictStatus::verified_exact : VerdictStatus::unfalsified;
    }
    return v;
}

std::optional<RegularityVerdict> dominant_precheck(const WeightedGraph& G, double eta) {
    for (double a : G.vertex_weights())
        if (a > eta * G.total_weight() * (1.0 + 1e-12)) {
            RegularityVerdict v;
            v.status = VerdictStatus::falsified;
            v.reason = "dominant node";
            return v;
        }
    return std::nullopt;
}

void check_params(double C, double eta, double p) {
    if (!(p >= 1.0)) throw Error(ErrorKind::invalid_argument, "p must be >= 1");
    if (!(C > 0.0)) throw Error(ErrorKind::invalid_argument, "C must be positive");
    if (!(eta >= 0.0 && eta <= 1.0)) throw Error(ErrorKind::invalid_argument, "eta must lie in [0,1]");
}

double graph_scale(const WeightedGraph& G) {
    const double l1 = graph_lp_norm(G, 1.0);
    if (l1 == 0.0) throw Error(ErrorKind::invalid_argument, "no edges");
    return 1.0 / l1;
}

}  // namespace

RegularityVerdict check_upper_regular_exact(const StepGraphon& W, double C, double eta, double p) {
    check_params(C, eta, p);
    if (W.size() > kExactLimit) throw Error(ErrorKind::resolution_guard, "use falsify");
    Atoms A(W);
    return verdict_from(enumerate(A, eta, 2, lp_score(p)), A.mu, C + kViolation, true);
}

RegularityVerdict check_upper_regular_exact(const WeightedGraph& G, double C, double eta, double p) {
    check_params(C, eta, p);
    if (G.size() > kExactLimit) throw Error(ErrorKind::resolution_guard, "use falsify");
    if (auto d = dominant_precheck(G, eta)) return *d;
    Atoms A(G, graph_scale(G));
    return verdict_from(enumerate(A, eta, 2, lp_score(p)), A.mu, C + kViolation, true);
}

RegularityVerdict falsify_upper_regular(const StepGraphon& W, double C, double eta, double p,
                                        std::size_t budget, std::uint64_t seed) {
    check_params(C, eta, p);
    if (budget == 0) throw Error(ErrorKind::invalid_argument, "budget must be >= 1");
    Atoms A(W);
    return verdict_from(search(A, eta, 2, budget, seed, lp_score(p)), A.mu, C + kViolation, false);
}

RegularityVerdict falsify_upper_regular(const WeightedGraph& G, double C, double eta, double p,
                                        std::size_t budget, std::uint64_t seed) {
    check_params(C, eta, p);
    if (budget == 0) throw Error(ErrorKind::invalid_argument, "budget must be >= 1");
    if (auto d = dominant_precheck(G, eta)) return *d;
    Atoms A(G, graph_scale(G));
    return verdict_from(search(A, eta, 2, budget, seed, lp_score(p)), A.mu, C + kViolation, false);
}

bool confirms_violation(const StepGraphon& W, const Partition& P, double C, double eta, double p) {
    if (P.base_size() != W.size() || P.classes() < 2) return false;
    if (P.min_measure() < eta - 1e-12) return false;
    return stepped_lp_norm(W, P, p) > C + kViolation;
}

double tail_mass(const StepGraphon& W, double K) {
    if (!(K > 0.0)) throw Error(ErrorKind::invalid_argument, "K must be positive");
    double s = 0.0;
    for (std::size_t i = 0; i < W.size(); ++i)
        for (std::size_t j = 0; j < W.size(); ++j) {
            const double x = std::fabs(W.value(i, j));
            if (x >= K) s += W.length(i) * W.length(j) * x;
        }
    return s;
}

TailBoundFn::TailBoundFn(std::map<double, double> table) {
    for (auto [e, k] : table) set(e, k);
}

void TailBoundFn::set(double eps, double K) {
    if (!(eps > 0.0) || !(K > 0.0)) throw Error(ErrorKind::invalid_argument, "tail table entries must be positive");
    table_[eps] = K;
}

double TailBoundFn::operator()(double eps) const {
    auto it = table_.upper_bound(eps);
    if (it == table_.begin()) throw Error(ErrorKind::invalid_argument, "eps below the smallest tabulated key");
    return std::prev(it)->second;
}

TailBoundFn lp_tail_bound(const StepGraphon& W, double p, const std::vector<double>& eps_grid) {
    if (!(p > 1.0) || p == kInf) throw Error(ErrorKind::invalid_argument, "p must lie in (1,inf)");
    const double np = std::pow(graphon_lp_norm(W, p), p);
    TailBoundFn K;
    // A zero norm leaves every tail empty; any positive K works.
    for (double e : eps_grid) K.set(e, np > 0.0 ? std::pow(np / e, 1.0 / (p - 1.0)) : 1.0);
    return K;
}

bool check_k_bounded_tails(const StepGraphon& W, const TailBoundFn& K) {
    if (K.empty()) throw Error(ErrorKind::invalid_argument, "empty tail table");
    for (auto [e, k] : K.table())
        if (tail_mass(W, k) > e + 1e-12) return false;
    return true;
}

double integrability_delta(const std::function<double(double)>& K, double eps) {
    return eps / (2.0 * K(eps / 2.0));
}

TailBoundFn stepped_tail_function(const std::function<double(double)>& K, double l1,
                                  const std::vector<double>& eps_grid) {
    TailBoundFn out;
    for (double e : eps_grid) out.set(e, std::max(l1, 1e-300) / integrability_delta(K, e));
    return out;
}

RegularityVerdict check_uniform_upper_regular(const StepGraphon& W, const TailBoundFn& K, double eta,
                                              std::size_t budget, std::uint64_t seed) {
    if (K.empty()) throw Error(ErrorKind::invalid_argument, "empty tail table");
    if (budget == 0) throw Error(ErrorKind::invalid_argument, "budget must be >= 1");
    Atoms A(W);
    const auto score = tail_score(K);
    if (W.size() <= kExactLimit) return verdict_from(enumerate(A, eta, 1, score), A.mu, 1e-12, true);
    return verdict_from(search(A, eta, 1, budget, seed, score), A.mu, 1e-12, false);
}

}  // namespace graphonlab
