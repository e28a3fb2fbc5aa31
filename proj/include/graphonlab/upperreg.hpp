#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "graphonlab/core.hpp"

namespace graphonlab {

enum class VerdictStatus { verified_exact, falsified, unfalsified };

const char* to_string(VerdictStatus s);

struct RegularityVerdict {
    VerdictStatus status = VerdictStatus::unfalsified;
    // "dominant node" when the vertex-weight precheck fails; then no certificate.
    std::string reason;
    std::optional<Partition> certificate;
    double worst_value = 0.0;
    std::size_t admissible = 0;  // partitions examined that met the part-size bound
};

// Partitions are over vertices (graphs) or classes (step graphons) and must have
// at least two parts; the one-part partition always has stepped norm |mean| and
// is not counted. Part sizes are measured in the normalized graphon.
RegularityVerdict check_upper_regular_exact(const WeightedGraph& G, double C, double eta, double p);
RegularityVerdict check_upper_regular_exact(const StepGraphon& W, double C, double eta, double p);

RegularityVerdict falsify_upper_regular(const WeightedGraph& G, double C, double eta, double p,
                                        std::size_t budget, std::uint64_t seed);
RegularityVerdict falsify_upper_regular(const StepGraphon& W, double C, double eta, double p,
                                        std::size_t budget, std::uint64_t seed);

// Recomputes a certificate: true iff every part has measure >= eta and ||W_P||_p > C + 1e-9.
bool confirms_violation(const StepGraphon& W, const Partition& P, double C, double eta, double p);

double tail_mass(const StepGraphon& W, double K);

// K(eps) is the value stored at the largest key <= eps.
class TailBoundFn {
public:
    TailBoundFn() = default;
    explicit TailBoundFn(std::map<double, double> table);
    void set(double eps, double K);
    double operator()(double eps) const;
    const std::map<double, double>& table() const { return table_; }
    bool empty() const { return table_.empty(); }

private:
    std::map<double, double> table_;
};

// Table of (||W||_p^p / eps)^{1/(p-1)} over the given eps values.
TailBoundFn lp_tail_bound(const StepGraphon& W, double p, const std::vector<double>& eps_grid);

bool check_k_bounded_tails(const StepGraphon& W, const TailBoundFn& K);

// Any set of measure <= eps / (2 K(eps/2)) carries at most eps of |W|.
double integrability_delta(const std::function<double(double)>& K, double eps);
// Tail function valid for every W_P: K'(eps) = l1 / delta(eps) with l1 >= ||W||_1.
TailBoundFn stepped_tail_function(const std::function<double(double)>& K, double l1,
                                  const std::vector<double>& eps_grid);

// Searches partitions with parts >= eta (the one-part partition included) for a stored eps
// with tail_mass(W_P, K(eps)) > eps + 1e-12. Exhaustive within 12 classes.
RegularityVerdict check_uniform_upper_regular(const StepGraphon& W, const TailBoundFn& K, double eta,
                                              std::size_t budget, std::uint64_t seed);

}  // namespace graphonlab
