#ifndef SIGNET_HOMOLOGY_HPP
#define SIGNET_HOMOLOGY_HPP

#include "signet/spectral.hpp"

#include <queue>
#include <vector>

namespace signet {

/// Closed walk given as directed arcs; consecutive arcs share a vertex and
/// the last arc returns to the first. Orientation is a convention only:
/// reversing a cycle negates its boundary image.
struct OrientedCycle {
    struct Arc {
        int from = 0;
        int to = 0;
        int edge_id = 0;
    };
    std::vector<Arc> arcs;
};

/// Fundamental cycle basis from a breadth-first spanning tree: one cycle per
/// non-tree edge (in edge-id order), each the non-tree edge followed by the
/// tree path back. |E| - N + 1 cycles for a connected graph.
template <class W>
std::vector<OrientedCycle> fundamental_cycles(const SignedGraph<W>& g) {
    if (!is_connected(g)) throw DisconnectedGraphError();
    const int n = g.vertex_count();
    std::vector<std::vector<std::pair<int, int>>> adjacency(static_cast<std::size_t>(n));
    for (int id = 0; id < static_cast<int>(g.edge_count()); ++id) {
        const auto& e = g.edges()[static_cast<std::size_t>(id)];
        if (e.is_loop()) continue;
        adjacency[static_cast<std::size_t>(e.u)].emplace_back(e.v, id);
        adjacency[static_cast<std::size_t>(e.v)].emplace_back(e.u, id);
    }
    std::vector<int> parent(static_cast<std::size_t>(n), -1);
    std::vector<int> parent_edge(static_cast<std::size_t>(n), -1);
    std::vector<int> depth(static_cast<std::size_t>(n), -1);
    std::vector<bool> in_tree(g.edge_count(), false);
    std::queue<int> frontier;
    frontier.push(0);
    depth[0] = 0;
    while (!frontier.empty()) {
        const int v = frontier.front();
        frontier.pop();
        for (const auto& [w, id] : adjacency[static_cast<std::size_t>(v)]) {
            if (depth[static_cast<std::size_t>(w)] >= 0) continue;
            depth[static_cast<std::size_t>(w)] = depth[static_cast<std::size_t>(v)] + 1;
            parent[static_cast<std::size_t>(w)] = v;
            parent_edge[static_cast<std::size_t>(w)] = id;
            in_tree[static_cast<std::size_t>(id)] = true;
            frontier.push(w);
        }
    }

    std::vector<OrientedCycle> cycles;
    for (int id = 0; id < static_cast<int>(g.edge_count()); ++id) {
        if (in_tree[static_cast<std::size_t>(id)]) continue;
        const auto& e = g.edges()[static_cast<std::size_t>(id)];
        OrientedCycle cycle;
        cycle.arcs.push_back({e.u, e.v, id});
        if (e.is_loop()) {
            cycles.push_back(std::move(cycle));
            continue;
        }
        // tree path e.v -> e.u through the lowest common ancestor
        std::vector<OrientedCycle::Arc> down; // collected from e.u upward, to reverse
        int x = e.v, y = e.u;
        while (depth[static_cast<std::size_t>(x)] > depth[static_cast<std::size_t>(y)]) {
            const int p = parent[static_cast<std::size_t>(x)];
            cycle.arcs.push_back({x, p, parent_edge[static_cast<std::size_t>(x)]});
            x = p;
        }
        while (depth[static_cast<std::size_t>(y)] > depth[static_cast<std::size_t>(x)]) {
            const int p = parent[static_cast<std::size_t>(y)];
            down.push_back({p, y, parent_edge[static_cast<std::size_t>(y)]});
            y = p;
        }
        while (x != y) {
            const int px = parent[static_cast<std::size_t>(x)];
            cycle.arcs.push_back({x, px, parent_edge[static_cast<std::size_t>(x)]});
            x = px;
            const int py = parent[static_cast<std::size_t>(y)];
            down.push_back({py, y, parent_edge[static_cast<std::size_t>(y)]});
            y = py;
        }
        cycle.arcs.insert(cycle.arcs.end(), down.rbegin(), down.rend());
        cycles.push_back(std::move(cycle));
    }
    return cycles;
}

/// The boundary map: at each vertex the walk passes through, +1 when it
/// enters on a negative edge and leaves on a positive one, -1 for the
/// opposite switch, 0 when the two edges have like signs. Repeated visits
/// accumulate. Single-sign cycles map to zero.
template <class W>
std::vector<int> boundary_map(const SignedGraph<W>& g, const OrientedCycle& cycle) {
    if (cycle.arcs.empty()) throw InvalidCycleError("cycle has no arcs");
    for (std::size_t i = 0; i < cycle.arcs.size(); ++i) {
        const auto& arc = cycle.arcs[i];
        const auto& e = g.edge(arc.edge_id);
        const bool matches = (e.u == std::min(arc.from, arc.to) && e.v == std::max(arc.from, arc.to));
        if (!matches) throw InvalidCycleError("arc does not match its edge");
        const auto& next = cycle.arcs[(i + 1) % cycle.arcs.size()];
        if (arc.to != next.from) throw InvalidCycleError("walk is not closed");
    }
    std::vector<int> image(static_cast<std::size_t>(g.vertex_count()), 0);
    for (std::size_t i = 0; i < cycle.arcs.size(); ++i) {
        const auto& incoming = cycle.arcs[i];
        const auto& outgoing = cycle.arcs[(i + 1) % cycle.arcs.size()];
        const int s_in = weight_sign(g.edge(incoming.edge_id).weight);
        const int s_out = weight_sign(g.edge(outgoing.edge_id).weight);
        if (s_in < 0 && s_out > 0)
            ++image[static_cast<std::size_t>(incoming.to)];
        else if (s_in > 0 && s_out < 0)
            --image[static_cast<std::size_t>(incoming.to)];
    }
    return image;
}

/// Basis of the mixed-cycle group: boundary images of the fundamental
/// cycles, thinned to a maximal independent subset by exact row reduction.
/// Its dimension equals the flexibility tau.
struct MixedCycleBasis {
    std::vector<std::vector<int>> vectors;
    std::vector<OrientedCycle> cycles; // source cycle for each vector
    int dimension = 0;
};

namespace detail {

/// Incremental exact rank tracker over the rationals.
class RationalRowSpace {
public:
    explicit RationalRowSpace(std::size_t width) : width_(width) {}

    /// Returns true when the row was independent of the span so far.
    bool insert(const std::vector<int>& row) {
        std::vector<Rational> r(width_);
        for (std::size_t i = 0; i < width_; ++i) r[i] = row[i];
        for (const auto& [pivot, basis_row] : rows_) {
            if (r[pivot] == 0) continue;
            const Rational f = r[pivot] / basis_row[pivot];
            for (std::size_t i = 0; i < width_; ++i) r[i] -= f * basis_row[i];
        }
        for (std::size_t i = 0; i < width_; ++i) {
            if (r[i] != 0) {
                rows_.emplace_back(i, std::move(r));
                return true;
            }
        }
        return false;
    }

private:
    std::size_t width_;
    std::vector<std::pair<std::size_t, std::vector<Rational>>> rows_;
};

} // namespace detail

template <class W>
MixedCycleBasis mixed_cycle_basis(const SignedGraph<W>& g) {
    MixedCycleBasis basis;
    detail::RationalRowSpace span(static_cast<std::size_t>(g.vertex_count()));
    for (auto& cycle : fundamental_cycles(g)) {
        std::vector<int> image = boundary_map(g, cycle);
        if (span.insert(image)) {
            basis.vectors.push_back(std::move(image));
            basis.cycles.push_back(std::move(cycle));
        }
    }
    basis.dimension = static_cast<int>(basis.vectors.size());
    return basis;
}

/// Component indicator vectors of G+ and G- and the fixed subspace they
/// span. The single linear relation is sum_i v^{i,+} = sum_i v^{i,-} = 1,
/// so dropping one minus indicator leaves an independent basis.
struct FixedSubspace {
    std::vector<std::vector<int>> plus_indicators;  // c(G+) vectors
    std::vector<std::vector<int>> minus_indicators; // c(G-) vectors
    std::vector<std::vector<int>> basis;            // c(G+)+c(G-)-1 vectors
    std::vector<std::vector<int>> plus_block;       // mean-zero span inside the plus indicators
    std::vector<std::vector<int>> minus_block;
    std::vector<int> ones;
    int dimension = 0;
};

template <class W>
FixedSubspace fixed_subspace(const SignedGraph<W>& g) {
    if (!is_connected(g)) throw DisconnectedGraphError();
    const int n = g.vertex_count();
    const auto indicators = [n](const ComponentLabeling& c) {
        std::vector<std::vector<int>> vs(static_cast<std::size_t>(c.n_components),
                                         std::vector<int>(static_cast<std::size_t>(n), 0));
        for (int v = 0; v < n; ++v) vs[static_cast<std::size_t>(c.labels[static_cast<std::size_t>(v)])]
                                      [static_cast<std::size_t>(v)] = 1;
        return vs;
    };
    const auto mean_zero_block = [n](const std::vector<std::vector<int>>& ind) {
        // n*v_i - |V_i|*1 for all but the last indicator: integer, mean zero
        std::vector<std::vector<int>> block;
        for (std::size_t i = 0; i + 1 < ind.size(); ++i) {
            int size = 0;
            for (int x : ind[i]) size += x;
            std::vector<int> row(static_cast<std::size_t>(n));
            for (int v = 0; v < n; ++v)
                row[static_cast<std::size_t>(v)] = n * ind[i][static_cast<std::size_t>(v)] - size;
            block.push_back(std::move(row));
        }
        return block;
    };

    FixedSubspace s;
    s.plus_indicators = indicators(components(positive_part(g)));
    s.minus_indicators = indicators(components(negative_part(g)));
    s.basis = s.plus_indicators;
    for (std::size_t i = 0; i + 1 < s.minus_indicators.size(); ++i)
        s.basis.push_back(s.minus_indicators[i]);
    s.plus_block = mean_zero_block(s.plus_indicators);
    s.minus_block = mean_zero_block(s.minus_indicators);
    s.ones.assign(static_cast<std::size_t>(n), 1);
    s.dimension = static_cast<int>(s.basis.size());
    return s;
}

/// Inertia of L restricted to the fixed subspace. The basis is assembled
/// blockwise (minus block, constants, plus block); the blocks are
/// L-orthogonal, which is verified and reported. The result is
/// (c(G-)-1, 1, c(G+)-1) for every choice of weights.
struct ProjectedIndexReport {
    IndexTriple index;
    int dim_fixed = 0;
    double max_cross_block = 0.0;
    bool block_structure_ok = false;
};

template <class W>
ProjectedIndexReport projected_index(const SignedGraph<W>& g, double zero_tolerance = -1.0,
                                     double block_tolerance_rel = 1e-10) {
    const FixedSubspace s = fixed_subspace(g);
    const int n = g.vertex_count();
    const Eigen::MatrixXd l = assemble(g, 1.0).entries;

    // orthonormalize a block of integer vectors after projecting out 1
    const auto orthonormal_block = [n](const std::vector<std::vector<int>>& rows) {
        Eigen::MatrixXd q(n, static_cast<Eigen::Index>(rows.size()));
        Eigen::Index cols = 0;
        for (const auto& row : rows) {
            Eigen::VectorXd v(n);
            for (int i = 0; i < n; ++i) v(i) = row[static_cast<std::size_t>(i)];
            v.array() -= v.mean();
            for (Eigen::Index c = 0; c < cols; ++c) v -= q.col(c).dot(v) * q.col(c);
            const double norm = v.norm();
            if (norm > 1e-10) q.col(cols++) = v / norm;
        }
        return Eigen::MatrixXd(q.leftCols(cols));
    };

    const Eigen::MatrixXd minus_block = orthonormal_block(s.minus_indicators);
    const Eigen::MatrixXd plus_block = orthonormal_block(s.plus_indicators);
    const Eigen::Index dm = minus_block.cols(), dp = plus_block.cols();
    Eigen::MatrixXd v(n, dm + 1 + dp);
    v.leftCols(dm) = minus_block;
    v.col(dm) = Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)));
    v.rightCols(dp) = plus_block;

    const Eigen::MatrixXd m = v.transpose() * l * v;
    // zero detection must use the ambient operator's scale; the projected
    // matrix can be numerically tiny when the fixed subspace is small
    if (zero_tolerance < 0) zero_tolerance = default_zero_tolerance(l);
    ProjectedIndexReport rep;
    rep.dim_fixed = static_cast<int>(v.cols());
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            const bool same_block = (i < dm && j < dm) || (i == dm && j == dm) ||
                                    (i > dm && j > dm);
            if (!same_block) rep.max_cross_block = std::max(rep.max_cross_block, std::abs(m(i, j)));
        }
    }
    rep.block_structure_ok = rep.max_cross_block <= block_tolerance_rel * l.norm();
    rep.index = inertia_of(m, zero_tolerance);
    return rep;
}

} // namespace signet

#endif // SIGNET_HOMOLOGY_HPP
