#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "graphonlab/core.hpp"

namespace graphonlab {

enum class CutMethod { exact, alternating };

// value = <W, 1_{S x T}> for cut witnesses; for the infinity-to-one norm the
// witness encodes f = 1_S - 1_{S^c}, g = 1_T - 1_{T^c} and value = <W, f (x) g>.
struct CutWitness {
    std::vector<std::size_t> S;
    std::vector<std::size_t> T;
    double value = 0.0;
};

// lower is attained by the witness; upper is a proven bound.
struct CutResult {
    double lower = 0.0;
    double upper = 0.0;
    CutWitness witness;
    CutMethod method = CutMethod::exact;
};

// Symmetric bilinear form sum_ij x_i y_j w_i w_j v_ij over weighted classes.
class BilinearForm {
public:
    virtual ~BilinearForm() = default;
    virtual std::size_t dim() const = 0;
    virtual const std::vector<double>& weights() const = 0;
    // out[j] = sum_i x[i] w_i v_ij; the column weight w_j is not applied.
    virtual void apply(const std::vector<double>& x, std::vector<double>& out) const = 0;
    // sum_ij w_i w_j |v_ij|, a valid upper bound for the cut norm.
    virtual double l1() const = 0;
};

class DenseForm final : public BilinearForm {
public:
    explicit DenseForm(const StepGraphon& W) : W_(W) {}
    std::size_t dim() const override { return W_.size(); }
    const std::vector<double>& weights() const override { return W_.lengths(); }
    void apply(const std::vector<double>& x, std::vector<double>& out) const override;
    double l1() const override { return graphon_lp_norm(W_, 1.0); }

private:
    const StepGraphon& W_;
};

// scale * W^G - W on the merged grid of the vertex intervals and the classes of W,
// without densifying the graph part.
class GraphMinusGraphon final : public BilinearForm {
public:
    GraphMinusGraphon(const WeightedGraph& G, double scale, const StepGraphon& W);
    std::size_t dim() const override { return cell_len_.size(); }
    const std::vector<double>& weights() const override { return cell_len_; }
    void apply(const std::vector<double>& x, std::vector<double>& out) const override;
    double l1() const override { return l1_; }

private:
    std::vector<double> cell_len_;
    std::vector<std::size_t> cell_class_;
    std::vector<std::size_t> row_start_;
    std::vector<std::size_t> col_;
    std::vector<double> val_;
    StepGraphon W_;
    double l1_ = 0.0;
};

struct CutOptions {
    std::size_t exact_limit = 20;
    std::size_t restarts = 32;
    std::uint64_t seed = 0;
    unsigned threads = 1;
    // Largest grid for which the eigenvalue bound is computed.
    std::size_t spectral_limit = 1500;
    // Row tolerance for twin merging; the upper bound absorbs 2 * twin_tol.
    double twin_tol = 0.0;
};

double witness_value(const StepGraphon& W, const std::vector<std::size_t>& S,
                     const std::vector<std::size_t>& T);

CutResult cut_norm_exact(const StepGraphon& W);
CutResult cut_norm_heuristic(const StepGraphon& W, std::size_t restarts, std::uint64_t seed,
                             unsigned threads = 1, std::size_t spectral_limit = 1500);
// upper is F.l1().
CutResult cut_norm_heuristic(const BilinearForm& F, std::size_t restarts, std::uint64_t seed,
                             unsigned threads = 1);
// Twin merge, then exact within exact_limit classes, else alternating with
// upper = min(L1, eigenvalue bound).
CutResult cut_norm(const StepGraphon& W, const CutOptions& opt = {});

CutResult infty_to_one_norm(const StepGraphon& W, const CutOptions& opt = {});

// Largest |eigenvalue| of diag(sqrt w) V diag(sqrt w); bounds the infinity-to-one norm.
double spectral_bound(const StepGraphon& W);

CutResult d_cut(const StepGraphon& U, const StepGraphon& W, const CutOptions& opt = {});

// Conditional average on an n x n equipartition of [0,1].
StepGraphon regrid(const StepGraphon& W, std::size_t n);

struct OverlayPlan {
    std::vector<std::size_t> permutation;  // position k of the overlay holds class permutation[k] of U
};

struct DeltaResult {
    double upper = 0.0;           // d_cut(U'^pi, W') for the best plan found, certified
    double regrid_error_u = 0.0;  // certified upper bound on d_cut(U, U')
    double regrid_error_w = 0.0;
    double upper_original = 0.0;  // upper + both regrid errors
    OverlayPlan plan;
    bool exhaustive = false;
};

DeltaResult delta_cut_upper(const StepGraphon& U, const StepGraphon& W, std::size_t budget,
                            std::uint64_t seed, std::size_t n_c = 24, const CutOptions& opt = {});
double delta_cut_lower(const StepGraphon& U, const StepGraphon& W);
// max over measures a of the gap between max_{|S|=|T|=a} <X, 1_{SxT}> for the two
// graphons; overlay-invariant, so a lower bound on delta_cut. Falls back to the mean
// gap when either graphon has more than 8 classes after twin merging.
double delta_cut_lower_box(const StepGraphon& U, const StepGraphon& W);

}  // namespace graphonlab
