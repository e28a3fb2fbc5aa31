#include "graphonlab/cutmetric.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <thread>

#include "graphonlab/rng.hpp"

namespace graphonlab {

namespace {

constexpr std::uint64_t kRestartTag = rng::tag("cut-restart");
constexpr std::uint64_t kSwapTag = rng::tag("overlay-start");

std::vector<std::size_t> members_of(const std::vector<char>& mask) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < mask.size(); ++i)
        if (mask[i]) out.push_back(i);
    return out;
}

std::vector<std::size_t> expand(const std::vector<std::size_t>& merged_set,
                                const std::vector<std::size_t>& class_of) {
    std::vector<char> in(class_of.size() ? *std::max_element(class_of.begin(), class_of.end()) + 1 : 0, 0);
    for (auto c : merged_set) in[c] = 1;
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < class_of.size(); ++i)
        if (in[class_of[i]]) out.push_back(i);
    return out;
}

double pm_value(const StepGraphon& W, const std::vector<char>& f, const std::vector<char>& g) {
    double s = 0.0;
    for (std::size_t i = 0; i < W.size(); ++i)
        for (std::size_t j = 0; j < W.size(); ++j)
            s += W.length(i) * W.length(j) * W.value(i, j) * (f[i] ? 1.0 : -1.0) * (g[j] ? 1.0 : -1.0);
    return s;
}

struct RestartResult {
    double value = -1.0;
    std::vector<char> S, T;
};

// Alternating maximization of sign * <F, 1_S (x) 1_T>; pm switches to +-1 vectors.
RestartResult alternate(const BilinearForm& F, std::vector<char> S, double sign, bool pm) {
    const std::size_t m = F.dim();
    const auto& w = F.weights();
    std::vector<double> x(m), y(m);
    std::vector<char> T(m);
    auto choose = [&](const std::vector<char>& from, std::vector<char>& to) {
        for (std::size_t i = 0; i < m; ++i) x[i] = pm ? (from[i] ? 1.0 : -1.0) : (from[i] ? 1.0 : 0.0);
        F.apply(x, y);
        double v = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
            double c = sign * y[j];
            to[j] = c >= 0.0;
            v += pm ? w[j] * std::fabs(c) : (to[j] ? w[j] * c : 0.0);
        }
        return v;
    };
    double cur = choose(S, T);
    const auto stalled = [&](double v) { return v <= cur + 1e-15 * (1.0 + std::fabs(cur)); };
    for (int it = 0; it < 200; ++it) {
        std::vector<char> S2(m);
        double v = choose(T, S2);  // symmetric form: rows against T
        if (stalled(v)) break;
        cur = v;
        S = std::move(S2);
        std::vector<char> T2(m);
        v = choose(S, T2);
        if (stalled(v)) break;
        cur = v;
        T = std::move(T2);
    }
    return {cur, std::move(S), std::move(T)};
}

RestartResult run_restart(const BilinearForm& F, std::size_t r, std::uint64_t seed, bool pm) {
    const std::size_t m = F.dim();
    std::vector<char> start(m, 1);
    if (r > 0) {
        rng::Stream st(rng::derive(seed, kRestartTag, r), kRestartTag);
        for (auto& s : start) s = st.uniform() < 0.5;
    }
    RestartResult best;
    for (double sign : {1.0, -1.0}) {
        auto res = alternate(F, start, sign, pm);
        if (res.value > best.value) best = std::move(res);
        if (pm) break;  // the +-1 objective is symmetric under g -> -g
    }
    return best;
}

RestartResult multi_restart(const BilinearForm& F, std::size_t restarts, std::uint64_t seed,
                            unsigned threads, bool pm) {
    if (restarts == 0) throw Error(ErrorKind::invalid_argument, "restarts must be >= 1");
    std::vector<RestartResult> results(restarts);
    const unsigned nt = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(restarts)));
    if (nt == 1) {
        for (std::size_t r = 0; r < restarts; ++r) results[r] = run_restart(F, r, seed, pm);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < nt; ++t)
            pool.emplace_back([&, t] {
                for (std::size_t r = t; r < restarts; r += nt) results[r] = run_restart(F, r, seed, pm);
            });
        for (auto& th : pool) th.join();
    }
    std::size_t bi = 0;
    for (std::size_t r = 1; r < restarts; ++r)
        if (results[r].value > results[bi].value) bi = r;
    return std::move(results[bi]);
}

double upper_from_norms(const StepGraphon& W, std::size_t spectral_limit) {
    double u = graphon_lp_norm(W, 1.0);
    if (W.size() <= spectral_limit) u = std::min(u, spectral_bound(W));
    return u;
}

}  // namespace

void DenseForm::apply(const std::vector<double>& x, std::vector<double>& out) const {
    const std::size_t m = W_.size();
    out.assign(m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        if (x[i] == 0.0) continue;
        const double a = x[i] * W_.length(i);
        const double* row = W_.values().data() + i * m;
        for (std::size_t j = 0; j < m; ++j) out[j] += a * row[j];
    }
}

GraphMinusGraphon::GraphMinusGraphon(const WeightedGraph& G, double scale, const StepGraphon& W) : W_(W) {
    const std::size_t n = G.size();
    if (n == 0) throw Error(ErrorKind::invalid_argument, "empty graph");
    std::vector<double> br{0.0};
    double acc = 0.0;
    std::vector<double> vcut(n + 1, 0.0);
    for (std::size_t v = 0; v < n; ++v) {
        acc += G.vertex_weights()[v] / G.total_weight();
        vcut[v + 1] = acc;
    }
    vcut[n] = 1.0;
    std::vector<double> wcut(W.size() + 1, 0.0);
    for (std::size_t k = 0; k < W.size(); ++k) wcut[k + 1] = wcut[k] + W.length(k);
    wcut.back() = 1.0;
    std::vector<double> all;
    std::merge(vcut.begin(), vcut.end(), wcut.begin(), wcut.end(), std::back_inserter(all));
    for (double x : all)
        if (x - br.back() > 1e-14) br.push_back(x);
    br.back() = 1.0;

    const std::size_t r = br.size() - 1;
    cell_len_.resize(r);
    cell_class_.resize(r);
    std::vector<std::vector<std::size_t>> cells_of(n);
    std::size_t v = 0;
    for (std::size_t c = 0; c < r; ++c) {
        cell_len_[c] = br[c + 1] - br[c];
        double mid = 0.5 * (br[c] + br[c + 1]);
        while (v + 1 < n && vcut[v + 1] <= mid) ++v;
        cells_of[v].push_back(c);
        cell_class_[c] = W.class_of(mid);
    }

    struct Trip {
        std::size_t i, j;
        double a;
    };
    std::vector<Trip> trips;
    for (const auto& e : G.edges()) {
        for (auto ci : cells_of[e.i])
            for (auto cj : cells_of[e.j]) {
                trips.push_back({ci, cj, scale * e.w});
                if (e.i != e.j) trips.push_back({cj, ci, scale * e.w});
            }
    }
    std::sort(trips.begin(), trips.end(), [](const Trip& a, const Trip& b) { return a.i != b.i ? a.i < b.i : a.j < b.j; });
    row_start_.assign(r + 1, 0);
    col_.reserve(trips.size());
    val_.reserve(trips.size());
    for (const auto& t : trips) {
        ++row_start_[t.i + 1];
        col_.push_back(t.j);
        val_.push_back(t.a);
    }
    std::partial_sum(row_start_.begin(), row_start_.end(), row_start_.begin());

    std::vector<double> mu(W.size(), 0.0);
    for (std::size_t c = 0; c < r; ++c) mu[cell_class_[c]] += cell_len_[c];
    for (std::size_t a = 0; a < W.size(); ++a)
        for (std::size_t b = 0; b < W.size(); ++b) l1_ += mu[a] * mu[b] * std::fabs(W.value(a, b));
    for (const auto& t : trips) {
        double b = W.value(cell_class_[t.i], cell_class_[t.j]);
        l1_ += cell_len_[t.i] * cell_len_[t.j] * (std::fabs(t.a - b) - std::fabs(b));
    }
}

void GraphMinusGraphon::apply(const std::vector<double>& x, std::vector<double>& out) const {
    const std::size_t r = cell_len_.size(), k = W_.size();
    out.assign(r, 0.0);
    std::vector<double> block(k, 0.0);
    for (std::size_t i = 0; i < r; ++i) {
        if (x[i] == 0.0) continue;
        const double a = x[i] * cell_len_[i];
        block[cell_class_[i]] += a;
        for (std::size_t e = row_start_[i]; e < row_start_[i + 1]; ++e) out[col_[e]] += a * val_[e];
    }
    std::vector<double> per_class(k, 0.0);
    for (std::size_t c = 0; c < k; ++c)
        for (std::size_t b = 0; b < k; ++b) per_class[c] += block[b] * W_.value(b, c);
    for (std::size_t j = 0; j < r; ++j) out[j] -= per_class[cell_class_[j]];
}

double witness_value(const StepGraphon& W, const std::vector<std::size_t>& S,
                     const std::vector<std::size_t>& T) {
    double s = 0.0;
    for (auto i : S)
        for (auto j : T) s += W.length(i) * W.length(j) * W.value(i, j);
    return s;
}

CutResult cut_norm_exact(const StepGraphon& W) {
    const std::size_t m = W.size();
    if (m > 20) throw Error(ErrorKind::resolution_guard, "use heuristic");
    const auto& len = W.lengths();
    std::vector<double> col(m, 0.0);
    std::uint32_t S = 0, bestS = 0;
    double best = 0.0, bestSign = 1.0;
    const std::uint64_t total = std::uint64_t{1} << m;
    for (std::uint64_t g = 1; g < total; ++g) {
        const int bit = std::countr_zero(g);
        S ^= std::uint32_t{1} << bit;
        if ((g & 4095u) == 0) {
            std::fill(col.begin(), col.end(), 0.0);
            for (std::size_t i = 0; i < m; ++i)
                if (S >> i & 1u)
                    for (std::size_t j = 0; j < m; ++j) col[j] += len[i] * W.value(i, j);
        } else {
            const double a = (S >> bit & 1u) ? len[bit] : -len[bit];
            const double* row = W.values().data() + static_cast<std::size_t>(bit) * m;
            for (std::size_t j = 0; j < m; ++j) col[j] += a * row[j];
        }
        double pos = 0.0, neg = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
            double c = len[j] * col[j];
            if (c > 0.0) pos += c;
            else neg -= c;
        }
        if (pos > best) {
            best = pos;
            bestS = S;
            bestSign = 1.0;
        }
        if (neg > best) {
            best = neg;
            bestS = S;
            bestSign = -1.0;
        }
    }
    CutResult r;
    std::vector<double> c(m, 0.0);
    for (std::size_t i = 0; i < m; ++i)
        if (bestS >> i & 1u) {
            r.witness.S.push_back(i);
            for (std::size_t j = 0; j < m; ++j) c[j] += len[i] * W.value(i, j);
        }
    for (std::size_t j = 0; j < m; ++j)
        if (bestSign * c[j] >= 0.0) r.witness.T.push_back(j);
    r.witness.value = witness_value(W, r.witness.S, r.witness.T);
    r.lower = r.upper = std::fabs(r.witness.value);
    r.method = CutMethod::exact;
    return r;
}

CutResult cut_norm_heuristic(const BilinearForm& F, std::size_t restarts, std::uint64_t seed,
                             unsigned threads) {
    auto best = multi_restart(F, restarts, seed, threads, false);
    CutResult r;
    r.witness.S = members_of(best.S);
    r.witness.T = members_of(best.T);
    // Recompute the witness through the form so the value matches S and T exactly.
    std::vector<double> x(F.dim(), 0.0), y;
    for (auto i : r.witness.S) x[i] = 1.0;
    F.apply(x, y);
    double v = 0.0;
    for (auto j : r.witness.T) v += F.weights()[j] * y[j];
    r.witness.value = v;
    r.lower = std::fabs(v);
    r.upper = std::max(r.lower, F.l1());
    r.method = CutMethod::alternating;
    return r;
}

CutResult cut_norm_heuristic(const StepGraphon& W, std::size_t restarts, std::uint64_t seed,
                             unsigned threads, std::size_t spectral_limit) {
    DenseForm F(W);
    auto best = multi_restart(F, restarts, seed, threads, false);
    CutResult r;
    r.witness.S = members_of(best.S);
    r.witness.T = members_of(best.T);
    r.witness.value = witness_value(W, r.witness.S, r.witness.T);
    r.lower = std::fabs(r.witness.value);
    r.upper = std::max(r.lower, upper_from_norms(W, spectral_limit));
    r.method = CutMethod::alternating;
    return r;
}

CutResult cut_norm(const StepGraphon& W, const CutOptions& opt) {
    auto tm = merge_twins(W, opt.twin_tol);
    const StepGraphon& X = tm.merged;
    CutResult r = X.size() <= opt.exact_limit
                      ? cut_norm_exact(X)
                      : cut_norm_heuristic(X, opt.restarts, opt.seed, opt.threads, opt.spectral_limit);
    CutResult out;
    out.method = r.method;
    out.witness.S = expand(r.witness.S, tm.class_of);
    out.witness.T = expand(r.witness.T, tm.class_of);
    out.witness.value = witness_value(W, out.witness.S, out.witness.T);
    out.lower = std::fabs(out.witness.value);
    if (opt.twin_tol == 0.0 && r.method == CutMethod::exact)
        out.upper = out.lower;
    else
        out.upper = std::max(out.lower, r.upper + 2.0 * opt.twin_tol);
    return out;
}

double spectral_bound(const StepGraphon& W) {
    const std::size_t m = W.size();
    Eigen::MatrixXd M(m, m);
    double mx = 0.0;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            M(i, j) = std::sqrt(W.length(i) * W.length(j)) * W.value(i, j);
            mx = std::max(mx, std::fabs(M(i, j)));
        }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M, Eigen::EigenvaluesOnly);
    const auto& ev = es.eigenvalues();
    double r = std::max(std::fabs(ev.minCoeff()), std::fabs(ev.maxCoeff()));
    // Margin for the eigensolver's backward error.
    return r * (1.0 + 1e-10) + 1e-13 * static_cast<double>(m) * mx;
}

CutResult infty_to_one_norm(const StepGraphon& W, const CutOptions& opt) {
    auto tm = merge_twins(W, 0.0);
    const StepGraphon& X = tm.merged;
    const std::size_t m = X.size();
    CutResult r;
    std::vector<char> f(m, 1), g(m, 1);
    if (m <= opt.exact_limit) {
        const auto& len = X.lengths();
        std::vector<double> c(m, 0.0);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) c[j] += len[i] * X.value(i, j);
        auto score = [&] {
            double s = 0.0;
            for (std::size_t j = 0; j < m; ++j) s += len[j] * std::fabs(c[j]);
            return s;
        };
        std::uint32_t F = 0, bestF = 0;  // bit set = f_i is -1; f_0 fixed at +1
        double best = score();
        const std::uint64_t total = m > 1 ? std::uint64_t{1} << (m - 1) : 1;
        for (std::uint64_t k = 1; k < total; ++k) {
            const int bit = std::countr_zero(k) + 1;
            F ^= std::uint32_t{1} << bit;
            const double fnew = (F >> bit & 1u) ? -1.0 : 1.0;
            const double a = 2.0 * fnew * len[bit];
            for (std::size_t j = 0; j < m; ++j) c[j] += a * X.value(bit, j);
            double s = score();
            if (s > best) {
                best = s;
                bestF = F;
            }
        }
        std::fill(c.begin(), c.end(), 0.0);
        for (std::size_t i = 0; i < m; ++i) {
            f[i] = !(bestF >> i & 1u);
            for (std::size_t j = 0; j < m; ++j) c[j] += len[i] * (f[i] ? 1.0 : -1.0) * X.value(i, j);
        }
        for (std::size_t j = 0; j < m; ++j) g[j] = c[j] >= 0.0;
        r.method = CutMethod::exact;
    } else {
        DenseForm Fm(X);
        auto best = multi_restart(Fm, opt.restarts, opt.seed, opt.threads, true);
        f = best.S;
        g = best.T;
        r.method = CutMethod::alternating;
    }
    std::vector<char> fo(W.size()), go(W.size());
    for (std::size_t i = 0; i < W.size(); ++i) {
        fo[i] = f[tm.class_of[i]];
        go[i] = g[tm.class_of[i]];
    }
    r.witness.S = members_of(fo);
    r.witness.T = members_of(go);
    r.witness.value = pm_value(W, fo, go);
    r.lower = std::fabs(r.witness.value);
    r.upper = r.method == CutMethod::exact ? r.lower : std::max(r.lower, upper_from_norms(X, opt.spectral_limit));
    return r;
}

CutResult d_cut(const StepGraphon& U, const StepGraphon& W, const CutOptions& opt) {
    return cut_norm(difference(U, W), opt);
}

StepGraphon regrid(const StepGraphon& W, std::size_t n) {
    if (n == 0) throw Error(ErrorKind::invalid_argument, "grid must be positive");
    auto E = StepGraphon::equipartition(n, std::vector<double>(n * n, 0.0));
    auto [a, e] = align_grids(W, E);
    std::vector<std::size_t> labels(a.size());
    double x = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        labels[k] = E.class_of(x + 0.5 * a.length(k));
        x += a.length(k);
    }
    Partition P(a.lengths(), labels);
    if (P.classes() != n) throw Error(ErrorKind::invalid_argument, "regrid lost a cell");
    auto q = quotient(a, P);
    return StepGraphon::equipartition(n, q.values());
}

namespace {

double overlay_objective(const StepGraphon& Ur, const StepGraphon& Wr, const std::vector<std::size_t>& perm,
                         bool exact, std::uint64_t seed) {
    auto D = difference(Ur.reordered(perm), Wr);
    if (exact) return cut_norm_exact(merge_twins(D).merged).lower;
    return cut_norm_heuristic(D, 4, seed, 1, 0).lower;
}

std::vector<std::size_t> degree_order(const StepGraphon& X) {
    std::vector<double> deg(X.size(), 0.0);
    for (std::size_t i = 0; i < X.size(); ++i)
        for (std::size_t j = 0; j < X.size(); ++j) deg[i] += X.length(j) * X.value(i, j);
    std::vector<std::size_t> o(X.size());
    std::iota(o.begin(), o.end(), std::size_t{0});
    std::stable_sort(o.begin(), o.end(), [&](auto a, auto b) { return deg[a] < deg[b]; });
    return o;
}

}  // namespace

DeltaResult delta_cut_upper(const StepGraphon& U, const StepGraphon& W, std::size_t budget,
                            std::uint64_t seed, std::size_t n_c, const CutOptions& opt) {
    const StepGraphon Ur = regrid(U, n_c), Wr = regrid(W, n_c);
    DeltaResult res;
    res.regrid_error_u = d_cut(U, Ur, opt).upper;
    res.regrid_error_w = d_cut(W, Wr, opt).upper;

    std::vector<std::size_t> best(n_c);
    std::iota(best.begin(), best.end(), std::size_t{0});
    std::vector<std::vector<std::size_t>> candidates;

    if (n_c <= 8) {
        res.exhaustive = true;
        std::vector<std::size_t> perm = best;
        double bv = kInf;
        do {
            double v = overlay_objective(Ur, Wr, perm, true, seed);
            if (v < bv) {
                bv = v;
                best = perm;
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
        candidates.push_back(best);
    } else {
        // Match classes by rank of degree, then improve by pairwise swaps.
        auto ou = degree_order(Ur), ow = degree_order(Wr);
        std::vector<std::size_t> seed_perm(n_c);
        for (std::size_t k = 0; k < n_c; ++k) seed_perm[ow[k]] = ou[k];
        candidates.push_back(seed_perm);
        double bv = kInf;
        for (std::size_t r = 0; r < std::max<std::size_t>(budget, 1); ++r) {
            std::vector<std::size_t> perm = seed_perm;
            if (r > 0) {
                rng::Stream st(rng::derive(seed, kSwapTag, r), kSwapTag);
                for (std::size_t k = n_c - 1; k > 0; --k) std::swap(perm[k], perm[st.below(k + 1)]);
            }
            double cur = overlay_objective(Ur, Wr, perm, false, seed);
            for (int pass = 0; pass < 50; ++pass) {
                bool improved = false;
                for (std::size_t a = 0; a < n_c; ++a)
                    for (std::size_t b = a + 1; b < n_c; ++b) {
                        std::swap(perm[a], perm[b]);
                        double v = overlay_objective(Ur, Wr, perm, false, seed);
                        if (v < cur - 1e-15) {
                            cur = v;
                            improved = true;
                        } else {
                            std::swap(perm[a], perm[b]);
                        }
                    }
                if (!improved) break;
            }
            if (cur < bv) {
                bv = cur;
                best = perm;
            }
        }
        candidates.push_back(best);
        std::vector<std::size_t> id(n_c);
        std::iota(id.begin(), id.end(), std::size_t{0});
        candidates.push_back(id);
    }

    res.upper = kInf;
    for (const auto& c : candidates) {
        double u = d_cut(Ur.reordered(c), Wr, opt).upper;
        if (u < res.upper) {
            res.upper = u;
            res.plan.permutation = c;
        }
    }
    res.upper_original = res.upper + res.regrid_error_u + res.regrid_error_w;
    return res;
}

double delta_cut_lower(const StepGraphon& U, const StepGraphon& W) { return std::fabs(mean(U) - mean(W)); }

namespace {

// max <sign*X, s (x) t> over fractional class occupations with sum s = sum t = a.
double max_box(const StepGraphon& X, double a, double sign) {
    const std::size_t m = X.size();
    const auto& len = X.lengths();
    double best = -kInf;
    std::vector<double> s(m), c(m);
    std::vector<std::size_t> idx(m);
    auto evaluate = [&] {
        for (std::size_t j = 0; j < m; ++j) {
            c[j] = 0.0;
            for (std::size_t i = 0; i < m; ++i) c[j] += s[i] * sign * X.value(i, j);
        }
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        std::sort(idx.begin(), idx.end(), [&](auto p, auto q) { return c[p] > c[q]; });
        double rem = a, v = 0.0;
        for (auto j : idx) {
            double t = std::min(len[j], rem);
            v += t * c[j];
            rem -= t;
            if (rem <= 0.0) break;
        }
        best = std::max(best, v);
    };
    for (std::uint32_t F = 0; F < (1u << m); ++F) {
        double lf = 0.0;
        for (std::size_t i = 0; i < m; ++i)
            if (F >> i & 1u) lf += len[i];
        if (lf > a + 1e-15) continue;
        if (std::fabs(lf - a) <= 1e-15) {
            for (std::size_t i = 0; i < m; ++i) s[i] = (F >> i & 1u) ? len[i] : 0.0;
            evaluate();
            continue;
        }
        for (std::size_t j = 0; j < m; ++j) {
            if (F >> j & 1u) continue;
            if (lf + len[j] < a - 1e-15) continue;
            for (std::size_t i = 0; i < m; ++i) s[i] = (F >> i & 1u) ? len[i] : 0.0;
            s[j] = a - lf;
            evaluate();
        }
    }
    return best;
}

}  // namespace

double delta_cut_lower_box(const StepGraphon& U, const StepGraphon& W) {
    double lb = delta_cut_lower(U, W);
    auto mu = merge_twins(U).merged, mw = merge_twins(W).merged;
    if (mu.size() > 8 || mw.size() > 8) return lb;
    std::vector<double> as;
    for (const StepGraphon* X : {&mu, &mw})
        for (std::uint32_t F = 1; F < (1u << X->size()); ++F) {
            double a = 0.0;
            for (std::size_t i = 0; i < X->size(); ++i)
                if (F >> i & 1u) a += X->length(i);
            as.push_back(std::min(a, 1.0));
        }
    std::sort(as.begin(), as.end());
    as.erase(std::unique(as.begin(), as.end(), [](double x, double y) { return y - x <= 1e-12; }), as.end());
    for (double a : as) {
        double hu = max_box(mu, a, 1.0), hw = max_box(mw, a, 1.0);
        double lu = -max_box(mu, a, -1.0), lw = -max_box(mw, a, -1.0);
        lb = std::max({lb, std::fabs(hu - hw), std::fabs(lu - lw)});
    }
    return lb;
}

}  // namespace graphonlab
