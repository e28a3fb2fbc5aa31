#include <doctest.h>

#include <cmath>

#include "graphonlab/core.hpp"
#include "support.hpp"

using namespace graphonlab;
using testsupport::random_graphon;

TEST_CASE("weighted graph folds reversed and duplicate pairs") {
    WeightedGraph G({1, 1, 1}, {{1, 0, 0.5}, {0, 1, 0.25}, {2, 2, 1.0}, {1, 2, 0.0}});
    REQUIRE(G.edges().size() == 2);
    CHECK(G.weight(0, 1) == doctest::Approx(0.75));
    CHECK(G.weight(1, 0) == doctest::Approx(0.75));
    CHECK(G.weight(1, 2) == 0.0);
    CHECK(G.weight(2, 2) == 1.0);
    CHECK_FALSE(G.is_simple());
    CHECK(WeightedGraph::simple(3, {{0, 1}, {1, 2}}).is_simple());
}

TEST_CASE("graph norms of K3") {
    auto K3 = WeightedGraph::simple(3, {{0, 1}, {1, 2}, {0, 2}});
    CHECK(graph_lp_norm(K3, 1.0) == doctest::Approx(6.0 / 9.0));
    CHECK(graph_lp_norm(K3, 2.0) == doctest::Approx(std::sqrt(6.0 / 9.0)));
    CHECK(graph_lp_norm(K3, kInf) == 1.0);
    CHECK(mean(normalize(K3)) == doctest::Approx(1.0));
    CHECK_THROWS_AS(graph_lp_norm(WeightedGraph(), 1.0), Error);
}

TEST_CASE("edge density is the weighted block average") {
    auto P3 = WeightedGraph::simple(3, {{0, 1}, {1, 2}});
    CHECK(edge_density(P3, {0, 2}, {1}) == doctest::Approx(1.0));
    CHECK(edge_density(P3, {0}, {2}) == 0.0);
    CHECK_THROWS_AS(edge_density(P3, {}, {1}), Error);
}

TEST_CASE("graphon norms match direct sums") {
    auto W = random_graphon(5, -2, 2, 7);
    double l1 = 0, l3 = 0, mx = 0;
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 5; ++j) {
            const double a = W.length(i) * W.length(j), v = std::fabs(W.value(i, j));
            l1 += a * v;
            l3 += a * v * v * v;
            mx = std::max(mx, v);
        }
    CHECK(graphon_lp_norm(W, 1.0) == doctest::Approx(l1));
    CHECK(graphon_lp_norm(W, 3.0) == doctest::Approx(std::cbrt(l3)));
    CHECK(graphon_lp_norm(W, kInf) == doctest::Approx(mx));
}

TEST_CASE("partitions canonicalize labels") {
    std::vector<double> base{0.25, 0.25, 0.5};
    Partition a(base, {7, 3, 7}), b(base, {0, 1, 0});
    CHECK(a == b);
    CHECK(a.classes() == 2);
    CHECK(a.measures()[0] == doctest::Approx(0.75));
    CHECK(Partition::discrete(base).refines(a));
    CHECK_FALSE(a.refines(Partition::discrete(base)));
    auto c = common_refinement(a, Partition::split(base, {2}));
    CHECK(c.classes() == 3);
    CHECK(Partition::split(base, {}).classes() == 1);
    CHECK_THROWS_AS(common_refinement(a, Partition::trivial({0.5, 0.5})), Error);
}

TEST_CASE("stepping contracts every L^p norm and keeps the integral") {
    for (std::uint64_t s = 0; s < 20; ++s) {
        auto W = random_graphon(6, -2, 2, s);
        Partition P(W.lengths(), {0, 1, 0, 2, 1, 2});
        auto Wp = step(W, P);
        CHECK(mean(Wp) == doctest::Approx(mean(W)).epsilon(1e-12));
        for (double p : {1.0, 1.5, 2.0, 3.0, kInf}) {
            CHECK(graphon_lp_norm(Wp, p) <= graphon_lp_norm(W, p) + 1e-12);
            CHECK(stepped_lp_norm(W, P, p) == doctest::Approx(graphon_lp_norm(Wp, p)).epsilon(1e-12));
            CHECK(graphon_lp_norm(quotient(W, P), p) == doctest::Approx(graphon_lp_norm(Wp, p)).epsilon(1e-12));
        }
        // Idempotent.
        auto Wpp = step(Wp, P);
        for (std::size_t k = 0; k < Wp.values().size(); ++k) CHECK(Wpp.values()[k] == doctest::Approx(Wp.values()[k]));
    }
}

TEST_CASE("grid alignment and distances") {
    auto U = random_graphon(3, 0, 1, 1), W = random_graphon(4, 0, 1, 2);
    auto [a, b] = align_grids(U, W);
    CHECK(a.size() == b.size());
    CHECK(a.size() <= 6);
    CHECK(mean(a) == doctest::Approx(mean(U)));
    CHECK(mean(b) == doctest::Approx(mean(W)));
    CHECK(lp_distance(U, U, 1.0) == 0.0);
    CHECK(lp_distance(U, W, 2.0) == doctest::Approx(lp_distance(W, U, 2.0)));
    auto V = random_graphon(2, 0, 1, 3);
    CHECK(lp_distance(U, W, 1.0) <= lp_distance(U, V, 1.0) + lp_distance(V, W, 1.0) + 1e-12);
    // A point lookup on the merged grid agrees with both operands.
    for (double x : {0.05, 0.3, 0.61, 0.97})
        for (double y : {0.1, 0.5, 0.88}) {
            CHECK(a(x, y) == doctest::Approx(U(x, y)));
            CHECK(b(x, y) == doctest::Approx(W(x, y)));
        }
}

TEST_CASE("twin merge keeps norms and values") {
    // Classes 0 and 2 are twins.
    StepGraphon W({0.2, 0.3, 0.5}, {1, 2, 1, 2, 0, 2, 1, 2, 1});
    auto tm = merge_twins(W);
    CHECK(tm.merged.size() == 2);
    CHECK(tm.class_of[0] == tm.class_of[2]);
    for (double p : {1.0, 2.0, kInf}) CHECK(graphon_lp_norm(tm.merged, p) == doctest::Approx(graphon_lp_norm(W, p)));
}

TEST_CASE("truncation splits W into a bounded part and a tail") {
    auto W = random_graphon(5, -4, 4, 11);
    auto [lo, hi] = truncate(W, 2.0);
    for (std::size_t k = 0; k < W.values().size(); ++k) {
        CHECK(lo.values()[k] + hi.values()[k] == W.values()[k]);
        CHECK(std::fabs(lo.values()[k]) <= 2.0);
    }
}

TEST_CASE("grid constructors") {
    auto C = StepGraphon::sample_function([](double, double) { return 3.0; }, 5);
    CHECK(graphon_lp_norm(C, kInf) == doctest::Approx(3.0));
    // Midpoint rule is exact for bilinear integrands.
    auto B = StepGraphon::sample_function([](double x, double y) { return x * y; }, 4);
    CHECK(B.value(1, 2) == doctest::Approx(0.375 * 0.625));
    auto E = StepGraphon::from_cell_integrals({0.0, 0.5, 1.0}, [](double a, double b, double c, double d) {
        return (b * b - a * a) / 2 * (d * d - c * c) / 2;
    });
    CHECK(E.value(0, 1) == doctest::Approx(0.25 * 0.75));
    CHECK_THROWS_AS(StepGraphon({0.5, 0.5}, {1, 2, 3, 4}).value(0, 1), Error);
    CHECK_THROWS_AS(StepGraphon({0.5, 0.4}, {1, 1, 1, 1}), Error);
}

TEST_CASE("embedding a graph uses vertex weights as interval lengths") {
    WeightedGraph G({1, 3}, {{0, 1, 2.0}});
    auto W = embed_graph(G);
    CHECK(W.length(0) == doctest::Approx(0.25));
    CHECK(W.value(0, 1) == 2.0);
    CHECK(graph_lp_norm(G, 1.0) == doctest::Approx(graphon_lp_norm(W, 1.0)));
    CHECK(graph_lp_norm(G, 2.0) == doctest::Approx(graphon_lp_norm(W, 2.0)));
}
