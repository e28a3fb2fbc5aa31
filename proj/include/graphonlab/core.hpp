#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace graphonlab {

inline constexpr double kTol = 1e-9;
inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class ErrorKind {
    invalid_argument,
    parse,
    resolution_guard,
    dominant_node,
    regularity_violated,
    certification_failed,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

struct Edge {
    std::size_t i;
    std::size_t j;
    double w;
};

// Edges are kept once per unordered pair with i <= j, sorted, nonzero.
class WeightedGraph {
public:
    WeightedGraph() = default;
    // Duplicate pairs are summed and (j,i) is folded onto (i,j).
    WeightedGraph(std::vector<double> vertex_weights, std::vector<Edge> edges);

    static WeightedGraph simple(std::size_t n,
                                const std::vector<std::pair<std::size_t, std::size_t>>& edges);

    std::size_t size() const { return alpha_.size(); }
    const std::vector<double>& vertex_weights() const { return alpha_; }
    const std::vector<Edge>& edges() const { return edges_; }
    double total_weight() const { return total_; }
    // Unit weights, 0/1 edges, no loops.
    bool is_simple() const { return simple_; }
    double weight(std::size_t i, std::size_t j) const;
    double subset_weight(const std::vector<std::size_t>& vertices) const;

private:
    std::vector<double> alpha_;
    std::vector<Edge> edges_;
    double total_ = 0.0;
    bool simple_ = false;
};

// Symmetric step function; class i occupies an interval of length lengths[i],
// classes laid out left to right in index order.
class StepGraphon {
public:
    StepGraphon() = default;
    StepGraphon(std::vector<double> lengths, std::vector<double> values);

    static StepGraphon constant(double c);
    static StepGraphon equipartition(std::size_t m, std::vector<double> values);
    // Cell averages over an n x n equipartition by 4x4 midpoint quadrature.
    static StepGraphon sample_function(const std::function<double(double, double)>& f,
                                       std::size_t n);
    // Cell averages from exact integrals; integral(a,b,c,d) = int_{[a,b]x[c,d]} f.
    static StepGraphon from_cell_integrals(
        const std::vector<double>& breaks,
        const std::function<double(double, double, double, double)>& integral);

    std::size_t size() const { return len_.size(); }
    double length(std::size_t i) const { return len_[i]; }
    double value(std::size_t i, std::size_t j) const { return val_[i * len_.size() + j]; }
    const std::vector<double>& lengths() const { return len_; }
    const std::vector<double>& values() const { return val_; }

    std::size_t class_of(double x) const;
    double operator()(double x, double y) const { return value(class_of(x), class_of(y)); }

    StepGraphon scaled(double s) const;
    // Class k of the result is class order[k] of *this.
    StepGraphon reordered(const std::vector<std::size_t>& order) const;

private:
    std::vector<double> len_;
    std::vector<double> val_;
    std::vector<double> cum_;
};

// Labels over base cells (graphon classes or graph vertices) with their measures.
// Labels are canonicalized to first-occurrence order, so equal partitions compare equal.
class Partition {
public:
    Partition() = default;
    Partition(std::vector<double> base_measures, const std::vector<std::size_t>& labels);

    static Partition trivial(std::vector<double> base_measures);
    static Partition discrete(std::vector<double> base_measures);
    // Two-part partition {S, complement}; single part when either side is empty.
    static Partition split(std::vector<double> base_measures, const std::vector<std::size_t>& S);

    std::size_t classes() const { return measures_.size(); }
    std::size_t base_size() const { return labels_.size(); }
    std::size_t label(std::size_t cell) const { return labels_[cell]; }
    const std::vector<std::size_t>& labels() const { return labels_; }
    const std::vector<double>& measures() const { return measures_; }
    const std::vector<double>& base() const { return base_; }
    std::vector<std::vector<std::size_t>> members() const;
    double min_measure() const;
    bool refines(const Partition& coarser) const;
    bool same_parent(const Partition& other) const;

    bool operator==(const Partition& o) const { return labels_ == o.labels_; }

private:
    std::vector<double> base_;
    std::vector<std::size_t> labels_;
    std::vector<double> measures_;
};

double graph_lp_norm(const WeightedGraph& G, double p);
double graphon_lp_norm(const StepGraphon& W, double p);
double edge_density(const WeightedGraph& G, const std::vector<std::size_t>& S,
                    const std::vector<std::size_t>& T);
StepGraphon embed_graph(const WeightedGraph& G);
StepGraphon normalize(const WeightedGraph& G);

// Cellwise average; the result stays on the grid of W (constant on blocks of P).
StepGraphon step(const StepGraphon& W, const Partition& P);
// The stepped function compressed to one class per part of P.
StepGraphon quotient(const StepGraphon& W, const Partition& P);
// Stepped L^p norm computed on the quotient, without materializing step(W,P).
double stepped_lp_norm(const StepGraphon& W, const Partition& P, double p);

Partition common_refinement(const Partition& P, const Partition& Q);
double inner_product(const StepGraphon& U, const StepGraphon& W);
double mean(const StepGraphon& W);
std::pair<StepGraphon, StepGraphon> truncate(const StepGraphon& W, double K);

// Both operands restated on the merged interval grid.
std::pair<StepGraphon, StepGraphon> align_grids(const StepGraphon& U, const StepGraphon& W);
StepGraphon difference(const StepGraphon& U, const StepGraphon& W);
double lp_distance(const StepGraphon& U, const StepGraphon& W, double p);

// Merges classes whose rows agree within tol (values constant on the merged block).
// The result is a measure-preserving rearrangement of W up to sup-norm error <= tol.
struct TwinMerge {
    StepGraphon merged;
    std::vector<std::size_t> class_of;  // original class -> merged class
};
TwinMerge merge_twins(const StepGraphon& W, double tol = 0.0);

}  // namespace graphonlab
