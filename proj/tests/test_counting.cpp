#include <doctest.h>

#include <cmath>

#include "graphonlab/counting.hpp"
#include "support.hpp"

using namespace graphonlab;
using testsupport::random_graph;
using testsupport::random_graphon;

namespace {

// Independent oracle: sum over all maps V(F) -> V(G) of vertex-weighted edge products.
double brute_hom(const MotifGraph& F, const WeightedGraph& G) {
    const std::size_t k = F.vertex_count(), n = G.size();
    std::vector<std::size_t> phi(k, 0);
    double total = 0.0;
    for (;;) {
        double term = 1.0;
        for (std::size_t v = 0; v < k; ++v) term *= G.vertex_weights()[phi[v]] / G.total_weight();
        for (auto [a, b] : F.edges()) term *= G.weight(phi[a], phi[b]);
        total += term;
        std::size_t v = 0;
        while (v < k && ++phi[v] == n) phi[v++] = 0;
        if (v == k) break;
    }
    return total;
}

// Every simple graph on k vertices, by edge bitmask.
std::vector<MotifGraph> all_motifs(std::size_t k) {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j) pairs.emplace_back(i, j);
    std::vector<MotifGraph> out;
    for (std::uint32_t mask = 0; mask < (1u << pairs.size()); ++mask) {
        std::vector<std::pair<std::size_t, std::size_t>> e;
        for (std::size_t b = 0; b < pairs.size(); ++b)
            if (mask >> b & 1u) e.push_back(pairs[b]);
        out.emplace_back(k, e);
    }
    return out;
}

StepGraphon unit_lp(StepGraphon W, double p) { return W.scaled(1.0 / graphon_lp_norm(W, p)); }

}  // namespace

TEST_CASE("motif parsing") {
    auto F = MotifGraph::parse("1-2,2-3,3-1");
    CHECK(F.vertex_count() == 3);
    CHECK(F.edge_count() == 3);
    CHECK(F.max_degree() == 2);
    CHECK(MotifGraph::parse("C4").edge_count() == 4);
    CHECK(MotifGraph::parse("K4").max_degree() == 3);
    CHECK_THROWS_AS(MotifGraph::parse("1-1"), Error);
    CHECK_THROWS_AS(MotifGraph::parse("1-2,2-1"), Error);
    CHECK_THROWS_AS(MotifGraph::parse("1-"), Error);
    CHECK_THROWS_AS(MotifGraph::parse("Q7"), Error);
}

TEST_CASE("hom density matches map enumeration") {
    for (std::size_t gs = 1; gs <= 4; ++gs) {
        auto G = random_graph(gs + 1, 0.6, 10 + gs, true);
        // One loop to exercise diagonal cells.
        std::vector<Edge> e = G.edges();
        e.push_back({0, 0, 0.7});
        G = WeightedGraph(G.vertex_weights(), e);
        for (std::size_t k = 1; k <= 4; ++k)
            for (const auto& F : all_motifs(k))
                CHECK(hom_density_graph(F, G) == doctest::Approx(brute_hom(F, G)).epsilon(1e-12));
    }
}

TEST_CASE("hom density special cases") {
    auto K3 = MotifGraph::parse("K3");
    CHECK(hom_density_graphon(K3, StepGraphon::constant(0.5)) == doctest::Approx(0.125));
    auto G = WeightedGraph::simple(3, {{0, 1}, {1, 2}, {0, 2}});
    CHECK(hom_density_graph(K3, G) == doctest::Approx(2.0 / 9.0));
    // Complete bipartite graphon has no triangles.
    StepGraphon B({0.5, 0.5}, {0, 1, 1, 0});
    CHECK(hom_density_graphon(K3, B) == 0.0);
    // Separable W = g(x) g(y): t(K3) = (int g^2)^3.
    StepGraphon S({0.25, 0.75}, {1, 3, 3, 9});
    CHECK(hom_density_graphon(K3, S) == doctest::Approx(std::pow(0.25 + 0.75 * 9, 3)));
    CHECK(hom_density_graphon(MotifGraph(2, {}), S) == 1.0);
}

TEST_CASE("hom density is multiplicative over disjoint unions") {
    auto W = random_graphon(4, -1, 1, 21);
    auto A = MotifGraph::parse("K3"), B = MotifGraph::parse("P3");
    CHECK(hom_density_graphon(MotifGraph::disjoint_union(A, B), W) ==
          doctest::Approx(hom_density_graphon(A, W) * hom_density_graphon(B, W)).epsilon(1e-12));
}

TEST_CASE("hom density guards") {
    std::vector<std::pair<std::size_t, std::size_t>> path;
    for (std::size_t i = 0; i + 1 < 9; ++i) path.emplace_back(i, i + 1);
    CHECK_THROWS_AS(hom_density_graphon(MotifGraph(9, path), StepGraphon::constant(1.0)), Error);
}

TEST_CASE("counting bound") {
    auto K2 = MotifGraph::parse("K2");
    // m = 1, D = 1, p = 3: 2 * 2 * (2 eps / 2)^1.
    CHECK(counting_bound(K2, 3.0, 0.6) == doctest::Approx(2.4));
    auto K3 = MotifGraph::parse("K3");
    const double p = 4, eps = 0.01;
    CHECK(counting_bound(K3, p, eps) == doctest::Approx(2 * 3 * (2 + 2) * std::pow(2 * eps / 2, 2.0 / 4)));
    CHECK(counting_bound(K3, kInf, eps) == doctest::Approx(12 * eps));
    // Tends to 4 m eps as p grows.
    CHECK(std::fabs(counting_bound(K3, 1e7, eps) - 12 * eps) < 1e-3);
    CHECK_THROWS_AS(counting_bound(K3, 2.0, eps), Error);
    CHECK(counting_bound(K3, p, 0.0) == 0.0);
}

TEST_CASE("Hoelder bounds on random instances") {
    auto C4 = MotifGraph::parse("C4"), K3 = MotifGraph::parse("K3"), K4 = MotifGraph::parse("K4");
    for (std::uint64_t s = 0; s < 30; ++s) {
        auto W = random_graphon(2 + s % 5, -3, 3, s);
        for (const auto& F : {C4, K3, K4}) {
            const double t = std::fabs(hom_density_graphon(F, W));
            CHECK(t <= holder_bound(F, W) * (1 + 1e-12));
            CHECK(t <= generalized_holder_bound(F, W, double(F.max_degree()) + 0.5) * (1 + 1e-12));
        }
    }
}

TEST_CASE("counting lemma on normalized pairs") {
    auto K3 = MotifGraph::parse("K3");
    const double p = 3.0;
    for (std::uint64_t s = 0; s < 15; ++s) {
        auto U = unit_lp(random_graphon(3, 0, 2, s), p), W = unit_lp(random_graphon(4, 0, 2, 100 + s), p);
        auto c = counting_lemma_check(K3, U, W, p);
        CHECK(c.holds);
        CHECK(c.difference == doctest::Approx(std::fabs(hom_density_graphon(K3, U) - hom_density_graphon(K3, W))));
    }
    auto big = random_graphon(3, 2, 3, 1);
    CHECK_THROWS_AS(counting_lemma_check(K3, big, big, p), Error);
}

TEST_CASE("counterexample family") {
    auto C4 = MotifGraph::parse("C4");
    double prev_l1 = kInf, prev_t = kInf;
    for (double n : {1e2, 1e4, 1e6}) {
        auto r = counterexample_family(C4, n);
        CHECK(r.u_delta_norm == doctest::Approx(1.0).epsilon(1e-6));
        CHECK(r.ldelta_norm <= 4.0 + 1e-12);
        CHECK(r.t_limit == 16.0);
        CHECK(r.l1_dist < prev_l1);
        // The limit is approached from above, slowly.
        CHECK(r.t_value < prev_t);
        CHECK(r.t_value > r.t_limit);
        prev_l1 = r.l1_dist;
        prev_t = r.t_value;
    }
    CHECK_THROWS_AS(counterexample_family(MotifGraph::parse("K2"), 100), Error);
}

TEST_CASE("counterexample graphon is separable") {
    auto C4 = MotifGraph::parse("C4");
    auto W = counterexample_graphon(2, 10);
    // Oracle: W_ij = a_i a_j, so t(C4) = (sum_i len_i a_i^2)^4.
    double m2 = 0.0;
    for (std::size_t i = 0; i < W.size(); ++i) {
        const double a = std::sqrt(W.value(i, i));
        for (std::size_t j = 0; j < W.size(); ++j)
            CHECK(W.value(i, j) == doctest::Approx(a * std::sqrt(W.value(j, j))).epsilon(1e-12));
        m2 += W.length(i) * a * a;
    }
    const double t = hom_density_graphon(C4, W);
    CHECK(t == doctest::Approx(std::pow(m2, 4)).epsilon(1e-10));
    // Cell averaging only lowers second moments.
    CHECK(t <= counterexample_family(C4, 10).t_value * (1 + 1e-9));
}
