#ifndef SIGNET_TREE_POLY_HPP
#define SIGNET_TREE_POLY_HPP

#include "signet/graph.hpp"

#include <cstdint>
#include <map>
#include <tuple>
#include <vector>

namespace signet {

// ---------------------------------------------------------------------------
// Spanning-tree enumeration (brute-force oracle)
// ---------------------------------------------------------------------------

template <class W>
struct SpanningTreeRecord {
    std::vector<int> edge_ids;  // n-1 edge ids, ascending
    W pi;                       // product of edge weights
    int negative_edges = 0;     // number of tree edges with weight < 0
};

struct EnumerationLimits {
    int max_vertices = 12;
    std::uint64_t max_subsets = 20'000'000;
};

namespace detail {

inline std::uint64_t binomial_capped(std::uint64_t n, std::uint64_t k, std::uint64_t cap) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        if (r > cap) return cap + 1;
        r = r * (n - k + i) / i;
    }
    return r;
}

} // namespace detail

/// Every spanning tree, found by scanning all (n-1)-subsets of the edge
/// multiset with a union-find acyclicity check. Deliberately naive: this is
/// the oracle the deletion-contraction path is tested against.
template <class W>
std::vector<SpanningTreeRecord<W>> enumerate_spanning_trees(const SignedGraph<W>& g,
                                                            const EnumerationLimits& limits = {}) {
    const int n = g.vertex_count();
    const int m = static_cast<int>(g.edge_count());
    if (n > limits.max_vertices)
        throw TooLargeError("graph exceeds the enumeration vertex cap");
    if (!is_connected(g)) throw DisconnectedGraphError();
    const int k = n - 1;
    if (detail::binomial_capped(static_cast<std::uint64_t>(m), static_cast<std::uint64_t>(k),
                                limits.max_subsets) > limits.max_subsets)
        throw TooLargeError("edge-subset count exceeds the enumeration budget");

    std::vector<SpanningTreeRecord<W>> trees;
    if (k == 0) {
        trees.push_back({{}, W(1), 0});
        return trees;
    }
    if (m < k) return trees; // cannot span; unreachable for connected g

    std::vector<int> pick(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) pick[static_cast<std::size_t>(i)] = i;
    while (true) {
        detail::UnionFind uf(n);
        bool acyclic = true;
        for (int id : pick) {
            const auto& e = g.edges()[static_cast<std::size_t>(id)];
            if (!uf.unite(e.u, e.v)) {
                acyclic = false;
                break;
            }
        }
        if (acyclic) { // n-1 acyclic edges on n vertices span
            SpanningTreeRecord<W> rec;
            rec.edge_ids = pick;
            rec.pi = W(1);
            for (int id : pick) {
                const auto& e = g.edges()[static_cast<std::size_t>(id)];
                rec.pi *= e.weight;
                if (e.weight < 0) ++rec.negative_edges;
            }
            trees.push_back(std::move(rec));
        }
        // next combination
        int i = k - 1;
        while (i >= 0 && pick[static_cast<std::size_t>(i)] == m - k + i) --i;
        if (i < 0) break;
        ++pick[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j)
            pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
    }
    return trees;
}

// ---------------------------------------------------------------------------
// Crossing polynomial via deletion-contraction
// ---------------------------------------------------------------------------

/// Coefficients a_k of M(G(t)) = sum_k a_k (-t)^k, stored for k = 0..n-1.
/// a_k is the total |pi(T)| over spanning trees with exactly k negative
/// edges; the window [k_min, k_max] carries the nonzero coefficients.
template <class W>
struct CrossingPolynomial {
    std::vector<W> coefficients;
    int k_min = 0;
    int k_max = 0;

    W evaluate(const W& t) const {
        W acc(0);
        W power(1); // (-t)^k
        for (std::size_t k = 0; k < coefficients.size(); ++k) {
            if (k > 0) power *= -t;
            acc += coefficients[k] * power;
        }
        return acc;
    }

    int degree_span() const { return k_max - k_min; }

    bool is_zero() const {
        for (const W& c : coefficients)
            if (c != W(0)) return false;
        return true;
    }
};

enum class DisconnectedPolicy { Throw, ZeroValue };

namespace detail {

// Signed polynomial in t, ascending coefficients.
template <class W>
using TPoly = std::vector<W>;

template <class W>
void poly_accumulate(TPoly<W>& dst, const TPoly<W>& src) {
    if (src.size() > dst.size()) dst.resize(src.size(), W(0));
    for (std::size_t i = 0; i < src.size(); ++i) dst[i] += src[i];
}

/// dst += scale * t * src
template <class W>
void poly_accumulate_shifted(TPoly<W>& dst, const TPoly<W>& src, const W& scale) {
    if (src.empty()) return;
    if (src.size() + 1 > dst.size()) dst.resize(src.size() + 1, W(0));
    for (std::size_t i = 0; i < src.size(); ++i) dst[i + 1] += scale * src[i];
}

/// Determinant of the reduced (vertex 0 removed) standard Laplacian; equals
/// sum over spanning trees of the weight product for any weights. Loops
/// cancel out of the Laplacian and are ignored.
template <class W>
W reduced_laplacian_det(const SignedGraph<W>& g) {
    const int n = g.vertex_count() - 1;
    if (n == 0) return W(1);
    std::vector<std::vector<W>> a(static_cast<std::size_t>(n));
    for (auto& row : a) row.assign(static_cast<std::size_t>(n), W(0));
    for (const auto& e : g.edges()) {
        if (e.is_loop()) continue;
        const int i = e.u - 1, j = e.v - 1;
        if (i >= 0) a[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] += e.weight;
        if (j >= 0) a[static_cast<std::size_t>(j)][static_cast<std::size_t>(j)] += e.weight;
        if (i >= 0 && j >= 0) {
            a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -= e.weight;
            a[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] -= e.weight;
        }
    }
    W det(1);
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        if constexpr (is_exact_weight_v<W>) {
            for (int r = col; r < n && pivot < 0; ++r)
                if (a[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)] != W(0)) pivot = r;
        } else {
            W best(0);
            for (int r = col; r < n; ++r) {
                const W mag = weight_abs(a[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)]);
                if (mag > best) {
                    best = mag;
                    pivot = r;
                }
            }
        }
        if (pivot < 0) return W(0);
        if (pivot != col) {
            std::swap(a[static_cast<std::size_t>(pivot)], a[static_cast<std::size_t>(col)]);
            det = -det;
        }
        const W p = a[static_cast<std::size_t>(col)][static_cast<std::size_t>(col)];
        if (p == W(0)) return W(0);
        det *= p;
        for (int r = col + 1; r < n; ++r) {
            const W f = a[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)] / p;
            if (f == W(0)) continue;
            for (int c = col; c < n; ++c)
                a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] -=
                    f * a[static_cast<std::size_t>(col)][static_cast<std::size_t>(c)];
        }
    }
    return det;
}

/// Deletion-contraction engine for M(G(t)). Negative edges are eliminated
/// first (each contributes one power of t); once only positive edges remain
/// the value closes through the matrix-tree determinant. Subproblems repeat
/// because deletions and contractions commute, so results are memoized on the
/// renumbered sorted edge multiset.
template <class W>
class CrossingEngine {
public:
    TPoly<W> run(const SignedGraph<W>& g) {
        // Loops never enter a spanning tree: M(G) = M(G \ loop).
        if (g.has_loops()) {
            std::vector<SignedEdge<W>> kept;
            for (const auto& e : g.edges())
                if (!e.is_loop()) kept.push_back(e);
            return run(SignedGraph<W>::multigraph(g.vertex_count(), std::move(kept)));
        }
        Key key = make_key(g);
        auto hit = memo_.find(key);
        if (hit != memo_.end()) return hit->second;

        TPoly<W> result;
        if (is_connected(g)) {
            int negative = -1;
            for (int i = 0; i < static_cast<int>(g.edge_count()); ++i)
                if (g.edges()[static_cast<std::size_t>(i)].weight < 0) {
                    negative = i;
                    break;
                }
            if (negative < 0) {
                result = {reduced_laplacian_det(g)};
            } else {
                result = run(delete_edge(g, negative));
                const W magnitude =
                    weight_abs(g.edges()[static_cast<std::size_t>(negative)].weight);
                poly_accumulate_shifted(result, run(contract_edge(g, negative).graph),
                                        W(-magnitude));
            }
        }
        memo_.emplace(std::move(key), result);
        return result;
    }

private:
    using Key = std::pair<int, std::vector<std::tuple<int, int, W>>>;

    static Key make_key(const SignedGraph<W>& g) {
        Key key;
        key.first = g.vertex_count();
        key.second.reserve(g.edge_count());
        for (const auto& e : g.edges()) key.second.emplace_back(e.u, e.v, e.weight);
        std::sort(key.second.begin(), key.second.end());
        return key;
    }

    std::map<Key, TPoly<W>> memo_;
};

} // namespace detail

/// M(G(t)) as a CrossingPolynomial. The homotopy scales each negative weight
/// by t, so the contracted branch of the recursion picks up a factor
/// -|gamma_e| t per negative edge.
template <class W>
CrossingPolynomial<W> crossing_polynomial(const SignedGraph<W>& g) {
    if (!is_connected(g)) throw DisconnectedGraphError();
    detail::CrossingEngine<W> engine;
    detail::TPoly<W> signed_coeffs = engine.run(g);
    CrossingPolynomial<W> p;
    p.coefficients.assign(static_cast<std::size_t>(g.vertex_count()), W(0));
    W dust(0);
    if constexpr (!is_exact_weight_v<W>) {
        for (const W& c : signed_coeffs) dust = std::max(dust, weight_abs(c));
        dust *= 1e-12; // wash out cancellation residue so the sign pattern stays clean
    }
    for (std::size_t k = 0; k < signed_coeffs.size(); ++k) {
        W a = (k % 2 == 0) ? signed_coeffs[k] : -signed_coeffs[k];
        if constexpr (!is_exact_weight_v<W>) {
            if (weight_abs(a) <= dust) a = W(0);
        }
        p.coefficients[k] = a;
    }
    p.k_min = 0;
    while (p.k_min + 1 < static_cast<int>(p.coefficients.size()) &&
           p.coefficients[static_cast<std::size_t>(p.k_min)] == W(0))
        ++p.k_min;
    p.k_max = static_cast<int>(p.coefficients.size()) - 1;
    while (p.k_max > 0 && p.coefficients[static_cast<std::size_t>(p.k_max)] == W(0)) --p.k_max;
    return p;
}

/// M(G) = sum over spanning trees of pi(T), i.e. the crossing polynomial at
/// t = 1. Disconnected input is 0 by the deletion-contraction convention;
/// whether that surfaces as a value or an error is the caller's choice.
template <class W>
W tree_constant(const SignedGraph<W>& g, DisconnectedPolicy policy = DisconnectedPolicy::Throw) {
    if (!is_connected(g)) {
        if (policy == DisconnectedPolicy::Throw) throw DisconnectedGraphError();
        return W(0);
    }
    detail::CrossingEngine<W> engine;
    detail::TPoly<W> signed_coeffs = engine.run(g);
    W acc(0);
    for (const W& c : signed_coeffs) acc += c;
    return acc;
}

/// Quadratic M(G(t)) for exactly two vertex-disjoint negative edges, built
/// from the four double deletion/contraction minors. Must agree with
/// crossing_polynomial.
template <class W>
CrossingPolynomial<W> two_edge_polynomial(const SignedGraph<W>& g, int e, int f) {
    const auto& ee = g.edge(e);
    const auto& ef = g.edge(f);
    if (e == f || ee.weight >= 0 || ef.weight >= 0)
        throw PreconditionError("e and f must be distinct negative edges");
    for (int i = 0; i < static_cast<int>(g.edge_count()); ++i)
        if (i != e && i != f && g.edges()[static_cast<std::size_t>(i)].weight < 0)
            throw PreconditionError("graph must have exactly two negative edges");
    if (ee.u == ef.u || ee.u == ef.v || ee.v == ef.u || ee.v == ef.v)
        throw PreconditionError("the two negative edges must not share a vertex");
    if (!is_connected(g)) throw DisconnectedGraphError();

    const int f_after_e = f > e ? f - 1 : f; // edge order is stable minus the removed id
    const auto value = [](const SignedGraph<W>& h) {
        return tree_constant(h, DisconnectedPolicy::ZeroValue);
    };
    const SignedGraph<W> del_e = delete_edge(g, e);
    const SignedGraph<W> con_e = contract_edge(g, e).graph;
    const W m_del_del = value(delete_edge(del_e, f_after_e));
    const W m_del_con = value(contract_edge(del_e, f_after_e).graph);
    const W m_con_del = value(delete_edge(con_e, f_after_e));
    const W m_con_con = value(contract_edge(con_e, f_after_e).graph);

    const W abs_e = weight_abs(ee.weight);
    const W abs_f = weight_abs(ef.weight);
    CrossingPolynomial<W> p;
    p.coefficients.assign(static_cast<std::size_t>(g.vertex_count()), W(0));
    p.coefficients[0] = m_del_del;
    p.coefficients[1] = abs_e * m_con_del + abs_f * m_del_con;
    p.coefficients[2] = abs_e * abs_f * m_con_con;
    p.k_min = p.coefficients[0] != W(0) ? 0 : (p.coefficients[1] != W(0) ? 1 : 2);
    p.k_max = p.coefficients[2] != W(0) ? 2 : (p.coefficients[1] != W(0) ? 1 : 0);
    return p;
}

} // namespace signet

#endif // SIGNET_TREE_POLY_HPP
