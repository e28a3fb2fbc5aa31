#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "graphonlab/core.hpp"
#include "graphonlab/cutmetric.hpp"

namespace graphonlab {

// Simple loopless motif on vertices 0..vertex_count-1.
class MotifGraph {
public:
    MotifGraph() = default;
    MotifGraph(std::size_t vertex_count, std::vector<std::pair<std::size_t, std::size_t>> edges);

    // "1-2,2-3,3-1" with 1-based labels, or one of K2, K3, C4, P3, K4.
    static MotifGraph parse(const std::string& text);
    static MotifGraph disjoint_union(const MotifGraph& a, const MotifGraph& b);

    std::size_t vertex_count() const { return n_; }
    std::size_t edge_count() const { return edges_.size(); }
    std::size_t max_degree() const { return delta_; }
    std::size_t degree(std::size_t v) const { return deg_[v]; }
    const std::vector<std::pair<std::size_t, std::size_t>>& edges() const { return edges_; }
    std::string to_string() const;

private:
    std::size_t n_ = 0;
    std::vector<std::pair<std::size_t, std::size_t>> edges_;
    std::vector<std::size_t> deg_;
    std::size_t delta_ = 0;
};

// Exact t(F,W) by eliminating minimum-degree motif vertices; guarded at |V(F)| <= 8
// and classes^{|V(F)|} <= 1e8.
double hom_density_graphon(const MotifGraph& F, const StepGraphon& W);
double hom_density_graph(const MotifGraph& F, const WeightedGraph& G);

// 2m(m-1+p-D) (2 eps/(p-D))^{(p-D)/(p-D+m-1)} for p > D = max degree.
double counting_bound(const MotifGraph& F, double p, double eps);
// ||W||_D^m
double holder_bound(const MotifGraph& F, const StepGraphon& W);
// ||W||_q ||W||_p^{m-1} with q = p/(p-D+1), p > D.
double generalized_holder_bound(const MotifGraph& F, const StepGraphon& W, double p);

struct CounterexampleResult {
    double t_value = 0.0;      // prod_v ||w_n||_{deg v}^{deg v}
    double t_limit = 0.0;      // 2^{#{v : deg v = D}}
    double l1_dist = 0.0;      // ||W_n - 1||_1 = (int w_n)^2 - 1
    double ldelta_norm = 0.0;  // ||W_n||_D = ||w_n||_D^2
    double u_delta_norm = 0.0; // ||u_n||_D
    std::size_t cells = 0;
};

// w_n = 1 + u_n with u_n(x) = (x ln n)^{-1/D} on [1/n,1]; moments summed from exact
// integrals over a geometric grid with 64 cells per decade.
CounterexampleResult counterexample_family(const MotifGraph& F, double n);
// The step graphon of cell averages of w_n(x) w_n(y) on the same grid.
StepGraphon counterexample_graphon(std::size_t D, double n);

struct CountingCheck {
    double difference = 0.0;  // |t(F,U) - t(F,W)|
    double eps = 0.0;         // certified upper bound on delta_cut(U,W)
    double bound = 0.0;       // counting_bound(F, p, eps)
    bool holds = false;       // difference <= bound + 1e-9
};

CountingCheck counting_lemma_check(const MotifGraph& F, const StepGraphon& U, const StepGraphon& W, double p,
                                   const CutOptions& opt = {});

}  // namespace graphonlab
