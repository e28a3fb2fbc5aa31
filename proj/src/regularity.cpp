#include "graphonlab/regularity.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace graphonlab {

double RegularityParams::N() const { return std::pow(6.0 / eps, std::max(2.0, p / (p - 1.0))); }

std::size_t RegularityParams::max_iterations() const {
    double n = std::ceil(N());
    return n > 1e9 ? static_cast<std::size_t>(1e9) : static_cast<std::size_t>(n);
}

double RegularityParams::eta_theory() const {
    const double q = p / (p - 1.0);
    const double base = graph ? std::pow(eps / 320.0, q) : std::pow(eps / 160.0, q);
    // 4^{-N-1} underflows for most parameters; the result is then 0, which no part can undercut.
    return std::exp2(-2.0 * (N() + 1.0)) * base;
}

double RegularityParams::K_trunc() const { return C * std::pow(6.0 / eps, 1.0 / (p - 1.0)); }

void RegularityParams::validate() const {
    if (!(p > 1.0)) throw Error(ErrorKind::invalid_argument, "upper regularity needs p > 1");
    if (!(eps > 0.0 && eps < 1.0)) throw Error(ErrorKind::invalid_argument, "eps must lie in (0,1)");
    if (!(C > 0.0)) throw Error(ErrorKind::invalid_argument, "C must be positive");
    if (eta < 0.0 || eta >= 1.0) throw Error(ErrorKind::invalid_argument, "eta must lie in [0,1)");
}

namespace {

Partition refine_by(const Partition& P, const std::vector<std::size_t>& S) {
    return common_refinement(P, Partition::split(P.base(), S));
}

StepGraphon residual(const StepGraphon& W, const Partition& P) {
    auto Wp = step(W, P);
    std::vector<double> v(W.values());
    for (std::size_t k = 0; k < v.size(); ++k) v[k] -= Wp.values()[k];
    return StepGraphon(W.lengths(), std::move(v));
}

double max_abs(const StepGraphon& W) { return graphon_lp_norm(W, kInf); }

// Twin tolerance for residuals whose rows agree up to rounding.
CutOptions with_twin_tol(CutOptions opt, const StepGraphon& W) {
    opt.twin_tol = std::max(opt.twin_tol, 1e-12 * std::max(1.0, max_abs(W)));
    return opt;
}

double energy(const StepGraphon& W, const Partition& P) {
    double e = stepped_lp_norm(W, P, 2.0);
    return e * e;
}

}  // namespace

RegularityReport weak_regularity_l2(const StepGraphon& W, double eps, const Partition& P0,
                                    const CutOptions& opt) {
    if (!(eps > 0.0)) throw Error(ErrorKind::invalid_argument, "eps must be positive");
    if (P0.base_size() != W.size()) throw Error(ErrorKind::invalid_argument, "partition does not match grid");
    RegularityReport rep;
    rep.grid = W;
    rep.partition = P0;
    const double norm2 = graphon_lp_norm(W, 2.0);
    rep.target = eps * norm2;
    if (norm2 == 0.0) {
        rep.certified = true;
        return rep;
    }
    const std::size_t cap = static_cast<std::size_t>(std::ceil(1.0 / (eps * eps))) + 1;
    Partition P = P0;
    for (std::size_t it = 0;; ++it) {
        CutResult r = cut_norm(residual(W, P), opt);
        if (r.lower <= rep.target) {
            rep.error_cut = r.upper;
            rep.error_lower = r.lower;
            break;
        }
        if (it >= cap)
            throw Error(ErrorKind::certification_failed, "energy increment exceeded its bound; witness oracle inconsistent");
        P = refine_by(refine_by(P, r.witness.S), r.witness.T);
        rep.trace.push_back({r.lower, energy(W, P), 0.0, 0.0, P.classes()});
    }
    rep.partition = P;
    rep.iterations = rep.trace.size();
    rep.certified = rep.error_cut <= rep.target + 1e-12;
    return rep;
}

double equitize_bound(double q_error, double w_norm_p, std::size_t Q, std::size_t P, std::size_t k, double p) {
    const double ratio = 2.0 * static_cast<double>(Q) / (static_cast<double>(k) * static_cast<double>(P));
    const double expo = p == kInf ? 1.0 : 1.0 - 1.0 / p;
    return 2.0 * q_error + 2.0 * w_norm_p * std::pow(ratio, expo);
}

namespace {

struct Piece {
    std::size_t cls;
    double len;
    std::size_t cell;
};

// Feeds mass into consecutive cells of measure c.
class Cutter {
public:
    Cutter(std::vector<Piece>& out, double c, std::size_t first_cell)
        : out_(out), c_(c), tol_(1e-12 * c), cell_(first_cell) {}

    void feed(std::size_t cls, double a) {
        if (a <= tol_ && fill_ == 0.0 && cell_ > first_used_) {
            out_.push_back({cls, a, cell_ - 1});  // rounding residue joins the last closed cell
            return;
        }
        while (a > 0.0) {
            const double room = c_ - fill_;
            if (a <= room + tol_) {
                out_.push_back({cls, a, cell_});
                fill_ += a;
                a = 0.0;
                if (fill_ >= c_ - tol_) close();
            } else {
                out_.push_back({cls, room, cell_});
                a -= room;
                close();
            }
        }
    }
    std::size_t next_cell() const { return cell_; }
    bool open() const { return fill_ > 0.0; }

private:
    void close() {
        ++cell_;
        fill_ = 0.0;
    }
    std::vector<Piece>& out_;
    double c_, tol_;
    std::size_t cell_;
    std::size_t first_used_ = 0;
    double fill_ = 0.0;
};

}  // namespace

EquitizeResult equitize(const StepGraphon& W, const Partition& P, const Partition& Q, std::size_t k,
                        double p, std::size_t max_classes, const CutOptions& opt) {
    if (k == 0) throw Error(ErrorKind::invalid_argument, "k must be >= 1");
    if (P.base_size() != W.size()) throw Error(ErrorKind::invalid_argument, "partition does not match grid");
    if (!Q.refines(P)) throw Error(ErrorKind::invalid_argument, "Q must refine P");
    const std::size_t np = P.classes();
    for (double mu : P.measures())
        if (std::fabs(mu - 1.0 / static_cast<double>(np)) > 1e-9)
            throw Error(ErrorKind::invalid_argument, "P must be an equipartition");
    if (k > max_classes / np)
        throw Error(ErrorKind::resolution_guard,
                    "equitize needs " + std::to_string(k) + " x " + std::to_string(np) +
                        " classes, above the grid cap " + std::to_string(max_classes));

    auto qmem = Q.members();
    std::vector<std::size_t> q_parent(Q.classes());
    for (std::size_t q = 0; q < Q.classes(); ++q) q_parent[q] = P.label(qmem[q].front());

    std::vector<Piece> pieces;
    for (std::size_t pp = 0; pp < np; ++pp) {
        const double c = P.measures()[pp] / static_cast<double>(k);
        Cutter cut(pieces, c, pp * k);
        std::vector<std::pair<std::size_t, double>> rest;
        for (std::size_t q = 0; q < Q.classes(); ++q) {
            if (q_parent[q] != pp) continue;
            const double full = std::floor(Q.measures()[q] / c + 1e-9);
            double budget = full * c;
            for (auto i : qmem[q]) {
                double a = W.length(i);
                double take = std::min(a, budget);
                if (a - take <= 1e-12 * c) take = a;
                if (take > 0.0) cut.feed(i, take);
                budget -= take;
                if (a - take > 0.0) rest.emplace_back(i, a - take);
            }
        }
        for (auto [i, a] : rest) cut.feed(i, a);
        if (cut.next_cell() != (pp + 1) * k || cut.open())
            throw Error(ErrorKind::certification_failed, "equitize lost mass to rounding");
    }
    if (pieces.size() > 2 * max_classes + W.size())
        throw Error(ErrorKind::resolution_guard, "equitize grid exceeds the class cap");

    std::stable_sort(pieces.begin(), pieces.end(), [](const Piece& a, const Piece& b) { return a.cls < b.cls; });
    std::vector<Piece> merged;
    for (const auto& pc : pieces) {
        if (!merged.empty() && merged.back().cls == pc.cls && merged.back().cell == pc.cell)
            merged.back().len += pc.len;
        else
            merged.push_back(pc);
    }
    const std::size_t r = merged.size();
    std::vector<double> len(r), vals(r * r);
    std::vector<std::size_t> origin(r), labels(r);
    for (std::size_t a = 0; a < r; ++a) {
        len[a] = merged[a].len;
        origin[a] = merged[a].cls;
        labels[a] = merged[a].cell;
    }
    for (std::size_t a = 0; a < r; ++a)
        for (std::size_t b = 0; b < r; ++b) vals[a * r + b] = W.value(origin[a], origin[b]);

    EquitizeResult res;
    res.grid = StepGraphon(std::move(len), std::move(vals));
    res.partition = Partition(res.grid.lengths(), labels);
    res.origin = std::move(origin);
    const auto tol_opt = with_twin_tol(opt, W);
    res.q_error = cut_norm(residual(W, Q), tol_opt).upper;
    res.bound = equitize_bound(res.q_error, graphon_lp_norm(W, p), Q.classes(), np, k, p);
    res.error_cut = cut_norm(residual(res.grid, res.partition), tol_opt).upper;
    return res;
}

RegularityReport weak_regularity_l2_equitable(const StepGraphon& W, double eps, const Partition& P0,
                                              std::size_t k, std::size_t max_classes, const CutOptions& opt) {
    auto inner = weak_regularity_l2(W, eps / 3.0, P0, opt);
    auto eq = equitize(W, P0, inner.partition, k, 2.0, max_classes, opt);
    RegularityReport rep;
    rep.grid = eq.grid;
    rep.partition = eq.partition;
    rep.error_cut = std::min(eq.error_cut, eq.bound);
    rep.error_lower = 0.0;
    rep.target = eps * graphon_lp_norm(W, 2.0);
    rep.certified = rep.error_cut <= rep.target + 1e-12;
    rep.iterations = inner.iterations;
    rep.trace = inner.trace;
    return rep;
}

LpReport weak_regularity_lp(const StepGraphon& W, double p, double eps, const Partition& P0,
                            const LpOptions& opt) {
    if (!(p > 1.0 && p < 2.0)) throw Error(ErrorKind::invalid_argument, "p must lie in (1,2)");
    if (!(eps > 0.0 && eps < 1.0)) throw Error(ErrorKind::invalid_argument, "eps must lie in (0,1)");
    LpReport out;
    const double np = graphon_lp_norm(W, p);
    out.inner_eps = std::pow(eps / 3.0, p / (2.0 * (p - 1.0)));
    out.log4_k_required = 10.0 * std::pow(3.0 / eps, p / (p - 1.0));
    if (np == 0.0) {
        out.report.grid = W;
        out.report.partition = P0;
        out.report.certified = true;
        return out;
    }
    out.K = std::pow(3.0 / eps, 1.0 / (p - 1.0)) * np;
    out.tail_bound = std::pow(np, p) / std::pow(out.K, p - 1.0);
    auto [Wk, tail] = truncate(W, out.K);
    out.tail_l1 = graphon_lp_norm(tail, 1.0);

    std::size_t k;
    if (opt.k) {
        k = *opt.k;
    } else {
        const double log4_cap = std::log(static_cast<double>(opt.max_classes) / static_cast<double>(P0.classes())) / std::log(4.0);
        if (out.log4_k_required > log4_cap) throw Error(ErrorKind::resolution_guard, "eps too small for grid cap");
        k = static_cast<std::size_t>(std::ceil(std::pow(4.0, out.log4_k_required)));
    }
    auto inner = weak_regularity_l2(Wk, out.inner_eps / 3.0, P0, opt.cut);
    auto eqr = equitize(Wk, P0, inner.partition, k, 2.0, opt.max_classes, opt.cut);

    // Restate W on the split grid, then bound ||W - W_Q|| directly and by the triangle inequality.
    const std::size_t r = eqr.grid.size();
    std::vector<double> vals(r * r);
    for (std::size_t a = 0; a < r; ++a)
        for (std::size_t b = 0; b < r; ++b) vals[a * r + b] = W.value(eqr.origin[a], eqr.origin[b]);
    StepGraphon Wg(eqr.grid.lengths(), std::move(vals));
    const double direct = cut_norm(residual(Wg, eqr.partition), with_twin_tol(opt.cut, Wg)).upper;
    const double triangle = 2.0 * out.tail_l1 + std::min(eqr.error_cut, eqr.bound);

    out.report = inner;
    out.report.grid = Wg;
    out.report.partition = eqr.partition;
    out.report.error_cut = std::min(direct, triangle);
    out.report.target = eps * np;
    out.report.certified = out.report.error_cut <= out.report.target + 1e-12;
    return out;
}

namespace {

// Drops intersections with parts lighter than eta, then absorbs complements lighter than eta.
std::vector<std::size_t> round_to_parts(const std::vector<std::size_t>& S, const Partition& P, double eta,
                                        double& moved) {
    const std::size_t n = P.base_size();
    std::vector<char> in(n, 0);
    for (auto s : S) in[s] = 1;
    std::vector<double> inter(P.classes(), 0.0);
    for (std::size_t c = 0; c < n; ++c)
        if (in[c]) inter[P.label(c)] += P.base()[c];
    const double cut = eta * (1.0 - 1e-12);
    moved = 0.0;
    for (std::size_t c = 0; c < n; ++c) {
        const std::size_t a = P.label(c);
        if (inter[a] > 0.0 && inter[a] < cut) {
            if (in[c]) moved += P.base()[c];
            in[c] = 0;
        } else if (inter[a] > 0.0 && P.measures()[a] - inter[a] < cut) {
            if (!in[c]) moved += P.base()[c];
            in[c] = 1;
        }
    }
    std::vector<std::size_t> out;
    for (std::size_t c = 0; c < n; ++c)
        if (in[c]) out.push_back(c);
    return out;
}

RegularityReport upper_loop(const StepGraphon& W, const RegularityParams& params, const CutOptions& opt) {
    params.validate();
    const double eta = params.eta_effective();
    const double thr = params.C * params.eps;
    const double p = params.p;
    const double slack = 1e-9 * std::max(1.0, params.C);
    RegularityReport rep;
    rep.grid = W;
    rep.target = thr;

    Partition P = Partition::trivial(W.lengths());
    std::vector<Partition> history{P};
    double norm = 0.0;

    const std::size_t cap = params.max_iterations();
    for (std::size_t it = 0;; ++it) {
        CutResult r = cut_norm(residual(W, P), opt);
        if (r.lower <= thr) {
            rep.error_cut = r.upper;
            rep.error_lower = r.lower;
            break;
        }
        if (it >= cap) throw RegularityViolation("upper regularity violated", P, stepped_lp_norm(W, P, p));
        TraceStep ts;
        ts.witness = r.lower;
        auto S = round_to_parts(r.witness.S, P, eta, ts.rounded_S);
        Partition half = refine_by(P, S);
        auto T = round_to_parts(r.witness.T, half, eta, ts.rounded_T);
        Partition next = refine_by(half, T);
        norm = stepped_lp_norm(W, next, p);
        if (norm > params.C + slack) throw RegularityViolation("upper regularity violated", next, norm);
        if (next == P) {
            // Rounding erased the witness; the partition cannot move further at this eta.
            rep.error_cut = r.upper;
            rep.error_lower = r.lower;
            break;
        }
        P = next;
        history.push_back(P);
        ts.parts = P.classes();
        rep.trace.push_back(ts);
    }

    // Energies: directly for p >= 2, on the truncation of the last stepped function for p < 2.
    StepGraphon U = W;
    if (p < 2.0) U = truncate(step(W, P), params.K_trunc()).first;
    for (std::size_t i = 0; i < rep.trace.size(); ++i) rep.trace[i].energy = energy(U, history[i + 1]);

    rep.partition = P;
    rep.iterations = rep.trace.size();
    rep.certified = rep.error_cut <= thr + 1e-12;
    return rep;
}

}  // namespace

RegularityReport weak_regularity_upper(const StepGraphon& W, const RegularityParams& params, const CutOptions& opt) {
    return upper_loop(W, params, opt);
}

RegularityReport weak_regularity_graph(const WeightedGraph& G, const RegularityParams& params, const CutOptions& opt) {
    RegularityParams gp = params;
    gp.graph = true;
    gp.validate();
    const double eta = gp.eta_effective();
    for (double a : G.vertex_weights())
        if (a > eta * G.total_weight() * (1.0 + 1e-12)) throw Error(ErrorKind::dominant_node, "dominant node");
    return upper_loop(normalize(G), gp, opt);
}

Densified densify(const WeightedGraph& G, const RegularityParams& params, const CutOptions& opt) {
    auto rep = weak_regularity_graph(G, params, opt);
    Densified d;
    d.partition = rep.partition;
    d.U = quotient(normalize(G), rep.partition);
    d.error_cut = rep.error_cut;
    d.norm_p = graphon_lp_norm(d.U, params.p);
    d.certified = rep.certified;
    return d;
}

RegularityReport weak_regularity_upper_equitable(const StepGraphon& W, const RegularityParams& params,
                                                 std::size_t k, std::size_t max_classes, const CutOptions& opt) {
    auto rep = upper_loop(W, params, opt);
    auto eq = equitize(W, Partition::trivial(W.lengths()), rep.partition, k, params.p, max_classes, opt);
    RegularityReport out = rep;
    out.grid = eq.grid;
    out.partition = eq.partition;
    out.error_cut = eq.error_cut;
    out.error_lower = 0.0;
    out.target = 4.0 * params.C * params.eps;
    out.certified = out.error_cut <= out.target + 1e-12;
    return out;
}

}  // namespace graphonlab
