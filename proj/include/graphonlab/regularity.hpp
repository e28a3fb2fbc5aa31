#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "graphonlab/core.hpp"
#include "graphonlab/cutmetric.hpp"

namespace graphonlab {

struct RegularityParams {
    double p = 2.0;
    double eps = 0.3;
    double C = 1.0;
    // 0 selects eta_theory().
    double eta = 0.0;
    bool graph = false;

    double N() const;
    std::size_t max_iterations() const;
    // 4^{-N-1} (eps/160)^{p/(p-1)} for graphons, (eps/320)^{p/(p-1)} for graphs.
    double eta_theory() const;
    double eta_effective() const { return eta > 0.0 ? eta : eta_theory(); }
    // Truncation level C (6/eps)^{1/(p-1)} used by the energy bookkeeping when p < 2.
    double K_trunc() const;
    void validate() const;
};

struct TraceStep {
    double witness = 0.0;       // |<W - W_P, 1_{SxT}>| found at this step
    double energy = 0.0;        // L2 energy of the stepped (possibly truncated) function after refining
    double rounded_S = 0.0;     // measure of S symmetric-difference S'
    double rounded_T = 0.0;
    std::size_t parts = 0;
};

struct RegularityReport {
    StepGraphon grid;           // the grid the partition lives on
    Partition partition;
    double error_cut = 0.0;     // proven upper bound on ||W - W_P||_cut
    double error_lower = 0.0;   // attained by a witness
    double target = 0.0;        // the bound the routine is meant to certify
    bool certified = false;     // error_cut <= target
    std::size_t iterations = 0;
    std::vector<TraceStep> trace;
};

class RegularityViolation : public Error {
public:
    RegularityViolation(const std::string& what, Partition certificate, double stepped_norm)
        : Error(ErrorKind::regularity_violated, what),
          certificate_(std::move(certificate)),
          norm_(stepped_norm) {}
    const Partition& certificate() const { return certificate_; }
    double stepped_norm() const { return norm_; }

private:
    Partition certificate_;
    double norm_;
};

RegularityReport weak_regularity_l2(const StepGraphon& W, double eps, const Partition& P0,
                                    const CutOptions& opt = {});

struct EquitizeResult {
    StepGraphon grid;                 // W with classes split where cells needed exact cuts
    Partition partition;              // exactly k|P| parts of equal measure
    std::vector<std::size_t> origin;  // grid class -> class of W
    double q_error = 0.0;             // certified ||W - W_Q||_cut
    double bound = 0.0;               // 2 q_error + 2 ||W||_p (2|Q|/(k|P|))^{1-1/p}
    double error_cut = 0.0;           // certified ||W - W_Q'||_cut measured on the grid
};

double equitize_bound(double q_error, double w_norm_p, std::size_t Q, std::size_t P, std::size_t k, double p);

EquitizeResult equitize(const StepGraphon& W, const Partition& P, const Partition& Q, std::size_t k,
                        double p, std::size_t max_classes = 4096, const CutOptions& opt = {});

// Weak regularity at eps/3 followed by equitize with the given k.
RegularityReport weak_regularity_l2_equitable(const StepGraphon& W, double eps, const Partition& P0,
                                              std::size_t k, std::size_t max_classes = 4096,
                                              const CutOptions& opt = {});

struct LpOptions {
    // Without k the required 4^{10 (3/eps)^{p/(p-1)}} is used and checked against max_classes.
    std::optional<std::size_t> k;
    std::size_t max_classes = 4096;
    CutOptions cut;
};

struct LpReport {
    RegularityReport report;
    double K = 0.0;
    double tail_l1 = 0.0;       // ||W 1_{|W|>K}||_1
    double tail_bound = 0.0;    // ||W||_p^p / K^{p-1}
    double inner_eps = 0.0;     // (eps/3)^{p/(2(p-1))}
    double log4_k_required = 0.0;
};

LpReport weak_regularity_lp(const StepGraphon& W, double p, double eps, const Partition& P0,
                            const LpOptions& opt = {});

// Throws RegularityViolation when a partition with parts >= eta has stepped L^p norm
// above C, or when ceil(N) refinements do not reach the target.
RegularityReport weak_regularity_upper(const StepGraphon& W, const RegularityParams& params,
                                       const CutOptions& opt = {});
// On normalize(G); throws Error(dominant_node) when a vertex outweighs eta * alpha_G.
RegularityReport weak_regularity_graph(const WeightedGraph& G, const RegularityParams& params,
                                       const CutOptions& opt = {});

struct Densified {
    StepGraphon U;              // one class per part, lengths = part weights
    Partition partition;        // over the vertices of G
    double error_cut = 0.0;     // certified d_cut(G/||G||_1, U) in the natural overlay
    double norm_p = 0.0;        // ||U||_p
    bool certified = false;
};

Densified densify(const WeightedGraph& G, const RegularityParams& params, const CutOptions& opt = {});

// Upper-regular partition followed by equitize into k parts; target is 4 C eps.
RegularityReport weak_regularity_upper_equitable(const StepGraphon& W, const RegularityParams& params,
                                                 std::size_t k, std::size_t max_classes = 4096,
                                                 const CutOptions& opt = {});

}  // namespace graphonlab
