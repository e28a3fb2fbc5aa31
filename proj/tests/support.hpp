#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "graphonlab/core.hpp"

namespace testsupport {

// Test-side randomness is independent of the library generator on purpose.
inline graphonlab::StepGraphon random_graphon(std::size_t m, double lo, double hi, std::uint64_t seed,
                                              bool equal_lengths = false) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> val(lo, hi), len(0.2, 1.0);
    std::vector<double> L(m), V(m * m);
    double tot = 0.0;
    for (auto& l : L) tot += (l = equal_lengths ? 1.0 : len(gen));
    for (auto& l : L) l /= tot;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i; j < m; ++j) V[i * m + j] = V[j * m + i] = val(gen);
    return graphonlab::StepGraphon(L, V);
}

inline graphonlab::WeightedGraph random_graph(std::size_t n, double p, std::uint64_t seed, bool weighted = false) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<graphonlab::Edge> e;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (u(gen) < p) e.push_back({i, j, weighted ? 0.1 + u(gen) : 1.0});
    std::vector<double> a(n, 1.0);
    if (weighted)
        for (auto& x : a) x = 0.5 + u(gen);
    return graphonlab::WeightedGraph(a, e);
}

// Brute-force cut norm over all pairs of class subsets.
inline double brute_cut(const graphonlab::StepGraphon& W) {
    const std::size_t m = W.size();
    double best = 0.0;
    for (std::uint32_t S = 0; S < (1u << m); ++S)
        for (std::uint32_t T = 0; T < (1u << m); ++T) {
            double s = 0.0;
            for (std::size_t i = 0; i < m; ++i)
                if (S >> i & 1u)
                    for (std::size_t j = 0; j < m; ++j)
                        if (T >> j & 1u) s += W.length(i) * W.length(j) * W.value(i, j);
            best = std::max(best, std::fabs(s));
        }
    return best;
}

// Brute-force infinity-to-one norm over sign vectors.
inline double brute_inf1(const graphonlab::StepGraphon& W) {
    const std::size_t m = W.size();
    double best = 0.0;
    for (std::uint32_t f = 0; f < (1u << m); ++f)
        for (std::uint32_t g = 0; g < (1u << m); ++g) {
            double s = 0.0;
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t j = 0; j < m; ++j) {
                    const double a = (f >> i & 1u) ? 1.0 : -1.0, b = (g >> j & 1u) ? 1.0 : -1.0;
                    s += a * b * W.length(i) * W.length(j) * W.value(i, j);
                }
            best = std::max(best, std::fabs(s));
        }
    return best;
}

// Every set partition of {0..n-1} as label vectors.
inline void for_each_partition(std::size_t n, const std::function<void(const std::vector<std::size_t>&)>& f) {
    std::vector<std::size_t> lab(n, 0);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t v, std::size_t k) {
        if (v == n) {
            f(lab);
            return;
        }
        for (std::size_t a = 0; a <= k; ++a) {
            lab[v] = a;
            rec(v + 1, std::max(k, a + 1));
        }
    };
    rec(0, 0);
}

}  // namespace testsupport
