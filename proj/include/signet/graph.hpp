#ifndef SIGNET_GRAPH_HPP
#define SIGNET_GRAPH_HPP

#include "signet/errors.hpp"
#include "signet/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

namespace signet {

enum class ZeroWeightPolicy { Reject, Drop };
enum class EdgeSign { Positive, Negative };

template <class W>
struct SignedEdge {
    int u;    // u <= v after normalization
    int v;
    W weight; // nonzero by construction

    bool is_loop() const { return u == v; }
};

/// Undirected signed weighted graph on vertices 0..n-1.
///
/// Immutable after construction; every operation below is a pure function
/// returning a fresh graph. Parallel edges and loops are representable
/// (contraction creates them) but the simple() constructor rejects both.
template <class W>
class SignedGraph {
public:
    using WeightType = W;
    using Edge = SignedEdge<W>;

    /// Simple graph: rejects loops and duplicate vertex pairs.
    static SignedGraph simple(int n_vertices, std::vector<Edge> edges,
                              ZeroWeightPolicy zero_policy = ZeroWeightPolicy::Reject) {
        SignedGraph g(n_vertices, std::move(edges), zero_policy);
        std::vector<std::pair<int, int>> seen;
        seen.reserve(g.edges_.size());
        for (const Edge& e : g.edges_) {
            if (e.is_loop()) throw PreconditionError("simple graph cannot contain a loop");
            seen.emplace_back(e.u, e.v);
        }
        std::sort(seen.begin(), seen.end());
        if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
            throw PreconditionError("simple graph cannot contain parallel edges");
        return g;
    }

    /// Multigraph: parallel edges allowed, loops allowed.
    static SignedGraph multigraph(int n_vertices, std::vector<Edge> edges,
                                  ZeroWeightPolicy zero_policy = ZeroWeightPolicy::Reject) {
        return SignedGraph(n_vertices, std::move(edges), zero_policy);
    }

    int vertex_count() const { return n_; }
    const std::vector<Edge>& edges() const { return edges_; }
    std::size_t edge_count() const { return edges_.size(); }

    const Edge& edge(int id) const {
        if (id < 0 || static_cast<std::size_t>(id) >= edges_.size())
            throw NoSuchEdgeError("no edge with id " + std::to_string(id));
        return edges_[static_cast<std::size_t>(id)];
    }

    bool has_positive_edges() const {
        return std::any_of(edges_.begin(), edges_.end(),
                           [](const Edge& e) { return e.weight > 0; });
    }
    bool has_negative_edges() const {
        return std::any_of(edges_.begin(), edges_.end(),
                           [](const Edge& e) { return e.weight < 0; });
    }
    bool has_loops() const {
        return std::any_of(edges_.begin(), edges_.end(),
                           [](const Edge& e) { return e.is_loop(); });
    }

private:
    SignedGraph(int n_vertices, std::vector<Edge> edges, ZeroWeightPolicy zero_policy)
        : n_(n_vertices) {
        if (n_ < 1) throw PreconditionError("graph needs at least one vertex");
        edges_.reserve(edges.size());
        for (Edge e : edges) {
            if (e.u < 0 || e.u >= n_ || e.v < 0 || e.v >= n_)
                throw PreconditionError("edge endpoint out of range");
            if (e.weight == W(0)) {
                if (zero_policy == ZeroWeightPolicy::Reject)
                    throw ZeroWeightError();
                continue;
            }
            if (e.u > e.v) std::swap(e.u, e.v);
            edges_.push_back(std::move(e));
        }
    }

    int n_;
    std::vector<Edge> edges_;
};

using RationalGraph = SignedGraph<Rational>;
using RealGraph = SignedGraph<double>;

/// Connected-component partition. Component ids are assigned in order of the
/// smallest vertex they contain, so they are 0..n_components-1 and stable
/// under edge permutations.
struct ComponentLabeling {
    std::vector<int> labels;
    int n_components = 0;

    std::vector<int> component_sizes() const {
        std::vector<int> sizes(static_cast<std::size_t>(n_components), 0);
        for (int l : labels) ++sizes[static_cast<std::size_t>(l)];
        return sizes;
    }
};

namespace detail {

/// Union-find with path halving; scales to edge lists with >= 1e5 edges.
class UnionFind {
public:
    explicit UnionFind(int n) : parent_(static_cast<std::size_t>(n)) {
        std::iota(parent_.begin(), parent_.end(), 0);
    }
    int find(int x) {
        while (parent_[static_cast<std::size_t>(x)] != x) {
            parent_[static_cast<std::size_t>(x)] =
                parent_[static_cast<std::size_t>(parent_[static_cast<std::size_t>(x)])];
            x = parent_[static_cast<std::size_t>(x)];
        }
        return x;
    }
    /// Returns false when already joined.
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent_[static_cast<std::size_t>(b)] = a;
        return true;
    }

private:
    std::vector<int> parent_;
};

} // namespace detail

template <class W>
ComponentLabeling components(const SignedGraph<W>& g) {
    detail::UnionFind uf(g.vertex_count());
    for (const auto& e : g.edges()) uf.unite(e.u, e.v);
    ComponentLabeling out;
    out.labels.assign(static_cast<std::size_t>(g.vertex_count()), -1);
    for (int v = 0; v < g.vertex_count(); ++v) {
        const int root = uf.find(v);
        if (out.labels[static_cast<std::size_t>(root)] < 0)
            out.labels[static_cast<std::size_t>(root)] = out.n_components++;
        out.labels[static_cast<std::size_t>(v)] = out.labels[static_cast<std::size_t>(root)];
    }
    return out;
}

template <class W>
bool is_connected(const SignedGraph<W>& g) {
    return components(g).n_components == 1;
}

/// Subgraph on the full vertex set keeping only edges of one sign.
template <class W>
SignedGraph<W> positive_part(const SignedGraph<W>& g) {
    std::vector<SignedEdge<W>> kept;
    for (const auto& e : g.edges())
        if (e.weight > 0) kept.push_back(e);
    return SignedGraph<W>::multigraph(g.vertex_count(), std::move(kept));
}

template <class W>
SignedGraph<W> negative_part(const SignedGraph<W>& g) {
    std::vector<SignedEdge<W>> kept;
    for (const auto& e : g.edges())
        if (e.weight < 0) kept.push_back(e);
    return SignedGraph<W>::multigraph(g.vertex_count(), std::move(kept));
}

/// tau = n - c(G-) - c(G+) + 1 for a connected graph; always >= 0.
struct Flexibility {
    int tau = 0;
    int c_plus = 0;
    int c_minus = 0;
    int n = 0;

    bool rigid() const { return tau == 0; }
};

template <class W>
Flexibility flexibility(const SignedGraph<W>& g) {
    if (!is_connected(g)) throw DisconnectedGraphError();
    Flexibility f;
    f.n = g.vertex_count();
    f.c_plus = components(positive_part(g)).n_components;
    f.c_minus = components(negative_part(g)).n_components;
    f.tau = f.n - f.c_minus - f.c_plus + 1;
    return f;
}

/// Removes one copy of edge `id`. Remaining edges keep their relative order,
/// so ids above `id` shift down by one.
template <class W>
SignedGraph<W> delete_edge(const SignedGraph<W>& g, int id) {
    g.edge(id); // range check
    std::vector<SignedEdge<W>> kept;
    kept.reserve(g.edge_count() - 1);
    for (int i = 0; i < static_cast<int>(g.edge_count()); ++i)
        if (i != id) kept.push_back(g.edges()[static_cast<std::size_t>(i)]);
    return SignedGraph<W>::multigraph(g.vertex_count(), std::move(kept));
}

template <class W>
struct Contraction {
    SignedGraph<W> graph;
    /// old vertex id -> new vertex id (the two endpoints map to one id).
    std::vector<int> vertex_map;
};

/// Identifies the endpoints of edge `id` (removing that copy only); parallel
/// edges and loops created by the identification are retained. Vertices are
/// renumbered contiguously; edge order is preserved as in delete_edge.
template <class W>
Contraction<W> contract_edge(const SignedGraph<W>& g, int id) {
    const auto& e = g.edge(id);
    if (e.is_loop()) throw LoopContractionError();
    const int a = e.u, b = e.v; // a < b
    std::vector<int> map(static_cast<std::size_t>(g.vertex_count()));
    for (int v = 0; v < g.vertex_count(); ++v)
        map[static_cast<std::size_t>(v)] = v < b ? v : (v == b ? a : v - 1);
    std::vector<SignedEdge<W>> kept;
    kept.reserve(g.edge_count() - 1);
    for (int i = 0; i < static_cast<int>(g.edge_count()); ++i) {
        if (i == id) continue;
        const auto& f = g.edges()[static_cast<std::size_t>(i)];
        kept.push_back({map[static_cast<std::size_t>(f.u)], map[static_cast<std::size_t>(f.v)],
                        f.weight});
    }
    return {SignedGraph<W>::multigraph(g.vertex_count() - 1, std::move(kept)), std::move(map)};
}

template <class W>
struct SignContraction {
    SignedGraph<W> graph;          // quotient: one vertex per component of the chosen sign
    std::vector<int> vertex_map;   // old vertex -> quotient vertex (component id)
    std::vector<int> vertex_weights; // quotient vertex -> number of original vertices
};

/// Collapses every component of the chosen-sign subgraph to a single vertex.
/// Opposite-sign edges between two components are summed into one quotient
/// edge; edges internal to a component vanish (they contribute nothing to the
/// projected Laplacian). vertex_weights holds the contracted inner product.
template <class W>
SignContraction<W> contract_subgraph(const SignedGraph<W>& g, EdgeSign sign) {
    if (!is_connected(g)) throw DisconnectedGraphError();
    const ComponentLabeling side =
        components(sign == EdgeSign::Positive ? positive_part(g) : negative_part(g));
    const int q = side.n_components;
    std::vector<std::vector<W>> acc(static_cast<std::size_t>(q));
    for (auto& row : acc) row.assign(static_cast<std::size_t>(q), W(0));
    for (const auto& e : g.edges()) {
        const bool on_side = (sign == EdgeSign::Positive) ? (e.weight > 0) : (e.weight < 0);
        if (on_side) continue;
        const int cu = side.labels[static_cast<std::size_t>(e.u)];
        const int cv = side.labels[static_cast<std::size_t>(e.v)];
        if (cu == cv) continue;
        acc[static_cast<std::size_t>(std::min(cu, cv))][static_cast<std::size_t>(std::max(cu, cv))] +=
            e.weight;
    }
    std::vector<SignedEdge<W>> quotient_edges;
    for (int i = 0; i < q; ++i)
        for (int j = i + 1; j < q; ++j)
            if (acc[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] != W(0))
                quotient_edges.push_back(
                    {i, j, acc[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]});
    return {SignedGraph<W>::multigraph(q, std::move(quotient_edges)), side.labels,
            side.component_sizes()};
}

template <class W>
SignedGraph<double> to_real(const SignedGraph<W>& g) {
    std::vector<SignedEdge<double>> edges;
    edges.reserve(g.edge_count());
    for (const auto& e : g.edges()) edges.push_back({e.u, e.v, to_double(e.weight)});
    return SignedGraph<double>::multigraph(g.vertex_count(), std::move(edges));
}

} // namespace signet

#endif // SIGNET_GRAPH_HPP
