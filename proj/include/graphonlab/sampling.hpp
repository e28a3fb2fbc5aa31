#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "graphonlab/core.hpp"
#include "graphonlab/cutmetric.hpp"

namespace graphonlab {

struct SamplerConfig {
    std::size_t n = 1;
    double rho = 1.0;
    std::uint64_t seed = 0;
    bool keep_coords = false;
    void validate() const;
};

struct Sample {
    WeightedGraph graph;         // unit vertex weights, vertices in ascending x
    std::vector<double> coords;  // sorted x_i, filled when requested
};

// x_i depends on (seed, i) only, so a larger n extends the same sequence.
double latent_coord(std::uint64_t seed, std::size_t i);

Sample sample_h(std::size_t n, const StepGraphon& W, std::uint64_t seed, bool keep_coords = false);
// Edge {i,j} kept with probability min(rho |beta_ij|, 1), weight sign(beta_ij).
WeightedGraph sparsify(const WeightedGraph& H, double rho, std::uint64_t seed);
// Seed used by sample_g for the sparsification coins.
std::uint64_t sparsify_seed(std::uint64_t seed);
// Equal to sparsify(sample_h(n, W, seed).graph, rho, sparsify_seed(seed)) without building H.
Sample sample_g(std::size_t n, const StepGraphon& W, double rho, std::uint64_t seed, bool keep_coords = false);
Sample sample_g(const SamplerConfig& cfg, const StepGraphon& W);

// (1/n^2) sum_{i != j} max(|beta_ij| - 1/rho, 0)
double cutoff_mass(const WeightedGraph& H, double rho);

// Edge {i,j} (1-based labels) with probability min(1, n^beta (ij)^{-alpha}).
WeightedGraph power_law_graph(std::size_t n, double alpha, double beta, std::uint64_t seed);
double power_law_expected_edges(std::size_t n, double alpha, double beta);
double power_law_edge_variance(std::size_t n, double alpha, double beta);
// Exact cell averages of (xy)^{-alpha} on a grid x grid equipartition.
StepGraphon power_law_graphon(double alpha, std::size_t grid);

// idx 2^idx vertices, one clique on the first idx of them.
WeightedGraph clique_sequence(std::size_t idx);

struct DoublingOptions {
    std::size_t steps = 4;          // G_1 .. G_steps, at most 6
    std::uint64_t seed = 0;
    std::size_t h_vertices = 32;
    // Strict: accept H_n only with certified ||W^{H_n} - 1/2||_cut <= 4^{-n}.
    // Relaxed: accept when | ||H_n||_1 - 1/2 | <= 4^{-n} and record certified cut bounds.
    bool strict = true;
    std::size_t max_retries = 100;
    CutOptions cut;
};

// G_{n+1} = G_n x H_n kept in factored form; G_n has 2 h^{n-1} vertices.
struct DoublingSequence {
    std::vector<WeightedGraph> factors;    // H_1 .. H_{steps-1}
    std::vector<double> eps;               // 4^{-n}
    std::vector<double> h_density;         // ||H_n||_1
    std::vector<double> h_cut_upper;       // certified ||W^{H_n} - 1/2||_cut
    std::vector<double> h_normalized_cut;  // certified ||W^{H_n}/||H_n||_1 - 1||_cut
    std::vector<std::size_t> attempts;

    std::size_t steps() const { return factors.size() + 1; }
    std::size_t vertices(std::size_t n) const;
    double l1(std::size_t n) const;
    // Certified bound on the natural-overlay cut distance between G_{n+1}/||G_{n+1}||_1
    // and G_n/||G_n||_1; it equals h_normalized_cut[n-1] since ||W^{G_n}||_1 factors out.
    double successive_bound(std::size_t n) const;
    WeightedGraph graph(std::size_t n, std::size_t max_vertices = 1u << 14) const;
};

DoublingSequence doubling_sequence(const DoublingOptions& opt);

struct ChernoffParams {
    std::vector<double> probs;
    std::vector<int> signs;  // +1 or -1 per variable; empty means all +1
    double lam = 1.0;
    double q() const;
    void validate() const;
};

double chernoff_bound(const ChernoffParams& c);
// P(|X - EX| >= lam q) from the exact distribution of X.
double chernoff_exact_tail(const ChernoffParams& c);

struct ChernoffEmpirical {
    std::size_t draws = 0;
    std::size_t exceed = 0;
    double frequency() const { return draws ? static_cast<double>(exceed) / static_cast<double>(draws) : 0.0; }
};
ChernoffEmpirical chernoff_monte_carlo(const ChernoffParams& c, std::size_t draws, std::uint64_t seed,
                                       std::size_t threads = 1);

struct ConcentrationReport {
    std::size_t trials = 0;
    std::size_t failures = 0;   // trials with d_cut(G(H), H) > eps ||H||_1
    double frequency = 0.0;
    double bound = 0.0;         // 2^{n+1} exp(-min(eps, eps^2) ||H||_1 n^2 / 24)
    bool vacuous = false;       // bound >= 1
    double max_distance = 0.0;
};

ConcentrationReport sparsify_concentration_check(const WeightedGraph& H, double rho, double eps,
                                                 std::size_t trials, std::uint64_t seed);

}  // namespace graphonlab
