#include "support/builders.hpp"
#include "support/corpus.hpp"

#include <signet/homology.hpp>

#include <catch2/catch_amalgamated.hpp>

using namespace signet;
using testgraphs::from_triples;

namespace {

/// Builds an oriented cycle from a vertex sequence, looking up edge ids.
template <class W>
OrientedCycle walk(const SignedGraph<W>& g, const std::vector<int>& vertices) {
    OrientedCycle cycle;
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        const int from = vertices[i];
        const int to = vertices[(i + 1) % vertices.size()];
        int id = -1;
        for (int e = 0; e < static_cast<int>(g.edge_count()); ++e) {
            const auto& edge = g.edges()[static_cast<std::size_t>(e)];
            if ((edge.u == std::min(from, to)) && (edge.v == std::max(from, to))) id = e;
        }
        REQUIRE(id >= 0);
        cycle.arcs.push_back({from, to, id});
    }
    return cycle;
}

/// Exact rank of a set of integer vectors.
int integer_rank(const std::vector<std::vector<int>>& rows, int width) {
    detail::RationalRowSpace space(static_cast<std::size_t>(width));
    int rank = 0;
    for (const auto& row : rows)
        if (space.insert(row)) ++rank;
    return rank;
}

} // namespace

TEST_CASE("fundamental cycles count |E| - N + 1") {
    REQUIRE(fundamental_cycles(testgraphs::path(6)).empty());

    const auto ring = testgraphs::ring(7);
    const auto single = fundamental_cycles(ring);
    REQUIRE(single.size() == 1);
    REQUIRE(single[0].arcs.size() == 7);

    REQUIRE(fundamental_cycles(testgraphs::nine_vertex_example()).size() == 4);

    // parallel edges and loops each add a cycle
    const auto multi = from_triples<Rational>(2, {{0, 1, 1}, {0, 1, 2}});
    const auto looped = contract_edge(multi, 0).graph;
    REQUIRE(fundamental_cycles(multi).size() == 1);
    REQUIRE(fundamental_cycles(looped).size() == 1);

    const auto split = from_triples<Rational>(4, {{0, 1, 1}, {2, 3, 1}});
    REQUIRE_THROWS_AS(fundamental_cycles(split), DisconnectedGraphError);
}

TEST_CASE("boundary map reproduces the two-triangle example") {
    const auto g = testgraphs::mixed_cycle_example_one();
    // cycle 3 -> 1 -> 2 -> 3 in the paper's 1-based labels
    const auto first = boundary_map(g, walk(g, {2, 0, 1}));
    REQUIRE(first == std::vector<int>{-1, 1, 0, 0, 0});
    // cycle 3 -> 5 -> 4 -> 3
    const auto second = boundary_map(g, walk(g, {2, 4, 3}));
    REQUIRE(second == std::vector<int>{0, 0, 0, 1, -1});

    // reversal negates the image
    const auto reversed = boundary_map(g, walk(g, {1, 0, 2}));
    for (std::size_t i = 0; i < reversed.size(); ++i)
        REQUIRE(reversed[i] == -first[i]);

    // a single-sign cycle is in the kernel
    const auto plus_ring = testgraphs::ring(5);
    const auto zero = boundary_map(plus_ring, walk(plus_ring, {0, 1, 2, 3, 4}));
    REQUIRE(zero == std::vector<int>(5, 0));
}

TEST_CASE("boundary map validates the walk") {
    const auto g = testgraphs::mixed_cycle_example_one();
    OrientedCycle not_closed;
    not_closed.arcs.push_back({2, 0, 1}); // edge (0,2)
    not_closed.arcs.push_back({0, 1, 0}); // edge (0,1) but then stops
    REQUIRE_THROWS_AS(boundary_map(g, not_closed), InvalidCycleError);

    OrientedCycle wrong_edge;
    wrong_edge.arcs.push_back({2, 0, 0}); // edge id 0 is (0,1), not (0,2)
    REQUIRE_THROWS_AS(boundary_map(g, wrong_edge), InvalidCycleError);

    REQUIRE_THROWS_AS(boundary_map(g, OrientedCycle{}), InvalidCycleError);
}

TEST_CASE("mixed cycle basis dimension equals tau") {
    const auto second = testgraphs::mixed_cycle_example_two();
    const auto basis = mixed_cycle_basis(second);
    REQUIRE(basis.dimension == 1);
    // generator proportional to (0, 1, 0, -1)
    const auto& v = basis.vectors[0];
    REQUIRE(v[0] == 0);
    REQUIRE(v[2] == 0);
    REQUIRE(v[1] != 0);
    REQUIRE(v[1] == -v[3]);

    REQUIRE(mixed_cycle_basis(testgraphs::complete(5)).dimension == 0); // rigid
    REQUIRE(mixed_cycle_basis(testgraphs::nine_vertex_example()).dimension == 3);
    REQUIRE(mixed_cycle_basis(testgraphs::mixed_cycle_example_one()).dimension == 2);

    int cases = 0;
    testgraphs::for_each_small_signed_graph(5, 500, [&](const SignedGraph<Rational>& g) {
        REQUIRE(mixed_cycle_basis(g).dimension == flexibility(g).tau);
        ++cases;
    });
    REQUIRE(cases == 500);

    testgraphs::TestRng rng(83);
    for (int trial = 0; trial < 15; ++trial) {
        const auto g = testgraphs::random_rational_graph(rng, 5 + rng.below(5), 0.5, 0.4);
        REQUIRE(mixed_cycle_basis(g).dimension == flexibility(g).tau);
    }
}

TEST_CASE("fixed subspace structure") {
    const auto nine = testgraphs::nine_vertex_example();
    const auto s = fixed_subspace(nine);
    REQUIRE(s.plus_indicators.size() == 4);
    REQUIRE(s.minus_indicators.size() == 3);
    REQUIRE(s.dimension == 6);
    REQUIRE(s.plus_block.size() == 3);
    REQUIRE(s.minus_block.size() == 2);

    // the stated relation: indicators of each sign sum to all-ones
    for (const auto& ind : {s.plus_indicators, s.minus_indicators}) {
        std::vector<int> total(9, 0);
        for (const auto& v : ind)
            for (std::size_t i = 0; i < v.size(); ++i) total[i] += v[i];
        REQUIRE(total == std::vector<int>(9, 1));
    }

    // the basis really is independent
    REQUIRE(integer_rank(s.basis, 9) == 6);

    // all-positive connected graph: S_fixed is everything
    const auto plain = fixed_subspace(testgraphs::ring(4));
    REQUIRE(plain.dimension == 4);
    REQUIRE(integer_rank(plain.basis, 4) == 4);

    // two-component positive part: v1+ + v2+ = ones
    const auto sixteen = fixed_subspace(testgraphs::sixteen_vertex_two_plus_components());
    std::vector<int> total(16, 0);
    for (const auto& v : sixteen.plus_indicators)
        for (std::size_t i = 0; i < v.size(); ++i) total[i] += v[i];
    REQUIRE(total == std::vector<int>(16, 1));
}

TEST_CASE("free and fixed subspaces are orthogonal complements") {
    int cases = 0;
    testgraphs::for_each_small_signed_graph(5, 400, [&](const SignedGraph<Rational>& g) {
        const auto basis = mixed_cycle_basis(g);
        const auto fixed = fixed_subspace(g);
        REQUIRE(basis.dimension + fixed.dimension == g.vertex_count());
        for (const auto& free_vec : basis.vectors) {
            long long sum = 0;
            for (int x : free_vec) sum += x;
            REQUIRE(sum == 0); // balanced +/-1 contributions
            for (const auto& fixed_vec : fixed.basis) {
                long long dot = 0;
                for (std::size_t i = 0; i < free_vec.size(); ++i)
                    dot += static_cast<long long>(free_vec[i]) * fixed_vec[i];
                REQUIRE(dot == 0);
            }
        }
        ++cases;
    });
    REQUIRE(cases == 400);
}

TEST_CASE("projected index is the rigid part of the spectrum") {
    const auto nine = testgraphs::nine_vertex_example();
    const auto rep = projected_index(nine);
    REQUIRE(rep.index == IndexTriple{2, 1, 3});
    REQUIRE(rep.dim_fixed == 6);
    REQUIRE(rep.block_structure_ok);

    // all-positive graph: everything is fixed, index (N-1, 1, 0)
    const auto plain = projected_index(testgraphs::complete(5));
    REQUIRE(plain.index == IndexTriple{4, 1, 0});
    REQUIRE(plain.dim_fixed == 5);
}

TEST_CASE("projected index is invariant under sign-preserving reweighting") {
    testgraphs::TestRng rng(89);
    for (int trial = 0; trial < 8; ++trial) {
        const auto g = testgraphs::random_rational_graph(rng, 5 + rng.below(4), 0.55, 0.4);
        const auto f = flexibility(g);
        const IndexTriple expected{f.c_minus - 1, 1, f.c_plus - 1};
        for (int rw = 0; rw < 10; ++rw) {
            std::vector<SignedEdge<Rational>> edges;
            for (const auto& e : g.edges()) {
                Rational magnitude(1 + rng.below(9), 1 + rng.below(5));
                edges.push_back({e.u, e.v, e.weight < 0 ? -magnitude : magnitude});
            }
            const auto reweighted = SignedGraph<Rational>::multigraph(g.vertex_count(), edges);
            const auto rep = projected_index(reweighted);
            REQUIRE(rep.index == expected);
            REQUIRE(rep.block_structure_ok);
        }
    }
}

TEST_CASE("restriction to the minus indicators is congruent to the contraction") {
    testgraphs::TestRng rng(101);
    for (int trial = 0; trial < 10; ++trial) {
        const auto g = testgraphs::random_rational_graph(rng, 6 + rng.below(3), 0.5, 0.45);
        const auto contraction = contract_subgraph(g, EdgeSign::Negative);
        const auto quotient_inertia = inertia(assemble(contraction.graph));

        // Gram-style restriction <1_i, L 1_j> over the minus components
        const auto minus = components(negative_part(g));
        const int q = minus.n_components;
        const Eigen::MatrixXd l = assemble(g).entries;
        Eigen::MatrixXd indicators = Eigen::MatrixXd::Zero(g.vertex_count(), q);
        for (int v = 0; v < g.vertex_count(); ++v)
            indicators(v, minus.labels[static_cast<std::size_t>(v)]) = 1.0;
        // zero tolerance anchored to the parent operator: the restriction can
        // be numerically tiny when a component swallows everything
        const Eigen::MatrixXd restricted = indicators.transpose() * l * indicators;
        REQUIRE(inertia_of(restricted, default_zero_tolerance(l)) == quotient_inertia);
        REQUIRE(quotient_inertia == IndexTriple{q - 1, 1, 0});
    }
}
