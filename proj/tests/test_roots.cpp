#include "support/builders.hpp"
#include "support/corpus.hpp"

#include <signet/roots.hpp>

#include <catch2/catch_amalgamated.hpp>

using namespace signet;
using testgraphs::from_triples;

namespace {

CrossingPolynomial<Rational> poly_from(std::initializer_list<long> a_values, int k_min, int n) {
    CrossingPolynomial<Rational> p;
    p.coefficients.assign(static_cast<std::size_t>(n), Rational(0));
    int k = k_min;
    for (long a : a_values) p.coefficients[static_cast<std::size_t>(k++)] = a;
    p.k_min = k_min;
    p.k_max = k - 1;
    return p;
}

} // namespace

TEST_CASE("linear crossing polynomial roots are exact") {
    const auto p = crossing_polynomial(testgraphs::dct_example());
    const auto roots = polynomial_roots(p);
    REQUIRE(roots.method == RootMethod::SturmExact);
    REQUIRE(roots.roots.size() == 1);
    REQUIRE(roots.roots[0].is_exact);
    REQUIRE(roots.roots[0].exact == Rational(44, 115));
    REQUIRE(roots.roots[0].multiplicity == 1);
}

TEST_CASE("cubic example roots match the published approximations") {
    // the printed polynomial 171 t^3 - 702 t^4 + 828 t^5 - 288 t^6, read as
    // a_3..a_6 = 171, 702, 828, 288 (a scalar multiple of the nine-vertex
    // example's polynomial, so the roots coincide)
    const auto p = poly_from({171, 702, 828, 288}, 3, 9);
    const auto roots = polynomial_roots(p);
    REQUIRE(roots.roots.size() == 4);
    REQUIRE(roots.roots[0].is_exact);
    REQUIRE(roots.roots[0].exact == 0);
    REQUIRE(roots.roots[0].multiplicity == 3);
    REQUIRE(roots.roots[1].value == Catch::Approx(0.42564300820429).epsilon(1e-9));
    REQUIRE(roots.roots[2].value == Catch::Approx(0.90081263405260).epsilon(1e-9));
    REQUIRE(roots.roots[3].value == Catch::Approx(1.54854435774311).epsilon(1e-9));

    // identical roots from the graph's own (unscaled) polynomial
    const auto own = polynomial_roots(crossing_polynomial(testgraphs::nine_vertex_example()));
    REQUIRE(own.roots.size() == 4);
    for (std::size_t i = 1; i < own.roots.size(); ++i)
        REQUIRE(own.roots[i].value == Catch::Approx(roots.roots[i].value).epsilon(1e-9));
}

TEST_CASE("repeated roots get their multiplicity") {
    // a_0, a_1, a_2 = 1, 2, 1 encodes (1 - t)^2
    const auto p = poly_from({1, 2, 1}, 0, 3);
    const auto roots = polynomial_roots(p);
    REQUIRE(roots.roots.size() == 1);
    REQUIRE(roots.roots[0].is_exact);
    REQUIRE(roots.roots[0].exact == 1);
    REQUIRE(roots.roots[0].multiplicity == 2);

    // (1 - t)^2 (2 - t) with a zero root: t^1 (1-t)^2 (2-t) in a_k form
    // expand (1-t)^2(2-t) = 2 - 5t + 4t^2 - t^3 -> a = {2, 5, 4, 1} at k = 1
    const auto q = poly_from({2, 5, 4, 1}, 1, 5);
    const auto qroots = polynomial_roots(q);
    REQUIRE(qroots.roots.size() == 3);
    REQUIRE(qroots.roots[0].exact == 0);
    REQUIRE(qroots.roots[0].multiplicity == 1);
    REQUIRE(qroots.roots[1].exact == 1);
    REQUIRE(qroots.roots[1].multiplicity == 2);
    REQUIRE(qroots.roots[2].exact == 2);
    REQUIRE(qroots.roots[2].multiplicity == 1);
}

TEST_CASE("zero polynomial is rejected") {
    CrossingPolynomial<Rational> zero;
    zero.coefficients.assign(4, Rational(0));
    REQUIRE_THROWS_AS(polynomial_roots(zero), ZeroPolynomialError);
}

TEST_CASE("root count equals the flexibility") {
    int cases = 0;
    testgraphs::for_each_small_signed_graph(5, 400, [&](const SignedGraph<Rational>& g) {
        const auto f = flexibility(g);
        const auto p = crossing_polynomial(g);
        if (p.is_zero()) return;
        const auto roots = polynomial_roots(p);
        REQUIRE(roots.positive_multiplicity() == f.tau);
        REQUIRE(p.degree_span() == f.tau);
        for (const auto& r : roots.roots) REQUIRE(r.value >= 0);
        ++cases;
    });
    REQUIRE(cases >= 399);
}

TEST_CASE("t_star on rings and complete graphs is exact") {
    for (int n = 3; n <= 12; ++n) {
        const auto b = t_star(testgraphs::ring(n, true));
        REQUIRE(b.kind == BifurcationPoint::Kind::Finite);
        REQUIRE(b.is_exact);
        REQUIRE(b.exact == Rational(1, n - 1));
    }
    for (int n = 3; n <= 9; ++n) {
        const auto b = t_star(testgraphs::complete(n, true));
        REQUIRE(b.is_exact);
        REQUIRE(b.exact == Rational(n - 2, 2));
    }
}

TEST_CASE("t_star special cases") {
    // disconnected positive part: t* = 0
    const auto split_plus = from_triples<Rational>(3, {{0, 1, -1}, {1, 2, -1}, {0, 2, 1}});
    REQUIRE(components(positive_part(split_plus)).n_components == 2);
    const auto zero = t_star(split_plus);
    REQUIRE(zero.kind == BifurcationPoint::Kind::AtZero);
    REQUIRE(zero.exact == 0);

    // no negative edges: t* = infinity
    const auto stable = t_star(testgraphs::ring(6));
    REQUIRE(stable.kind == BifurcationPoint::Kind::AtInfinity);
    REQUIRE(std::isinf(stable.value));

    const auto split = from_triples<Rational>(4, {{0, 1, 1}, {2, 3, -1}});
    REQUIRE_THROWS_AS(t_star(split), DisconnectedGraphError);
}

TEST_CASE("one-negative-edge formula agrees with the root path") {
    testgraphs::TestRng rng(59);
    int produced = 0;
    while (produced < 20) {
        auto g = testgraphs::random_rational_graph(rng, 4 + rng.below(4), 0.6, 0.0);
        const int e = rng.below(static_cast<int>(g.edge_count()));
        std::vector<SignedEdge<Rational>> edges;
        for (int i = 0; i < static_cast<int>(g.edge_count()); ++i) {
            auto edge = g.edges()[static_cast<std::size_t>(i)];
            if (i == e) edge.weight = -edge.weight;
            edges.push_back(edge);
        }
        const auto flipped = SignedGraph<Rational>::multigraph(g.vertex_count(), edges);
        if (components(positive_part(flipped)).n_components > 1) continue;
        ++produced;

        // t* = M(G+) / (|gamma_e| M(G.e))
        const Rational numerator = tree_constant(positive_part(flipped));
        const Rational denominator = weight_abs(edges[static_cast<std::size_t>(e)].weight) *
                                     tree_constant(contract_edge(flipped, e).graph,
                                                   DisconnectedPolicy::ZeroValue);
        const auto b = t_star(flipped);
        REQUIRE(b.is_exact);
        REQUIRE(b.exact == numerator / denominator);
    }
}

TEST_CASE("conjecture monitor: single-negative-edge t_star stays in its window") {
    // reported, not asserted: the extremes are the ring (1/(N-1)) and the
    // complete graph ((N-2)/2)
    testgraphs::TestRng rng(67);
    int inside = 0, outside = 0;
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 4 + rng.below(4);
        auto g = testgraphs::random_rational_graph(rng, n, 0.7, 0.0);
        std::vector<SignedEdge<Rational>> edges;
        for (int i = 0; i < static_cast<int>(g.edge_count()); ++i) {
            auto edge = g.edges()[static_cast<std::size_t>(i)];
            edge.weight = Rational(1); // unweighted version
            if (i == 0) edge.weight = Rational(-1);
            edges.push_back(edge);
        }
        const auto flipped = SignedGraph<Rational>::multigraph(n, edges);
        if (components(positive_part(flipped)).n_components > 1) continue;
        const auto b = t_star(flipped);
        const bool in_window =
            b.exact >= Rational(1, n - 1) && b.exact <= Rational(n - 2, 2);
        (in_window ? inside : outside)++;
    }
    WARN("t* conjecture monitor: " << inside << " inside window, " << outside << " outside");
    SUCCEED();
}
