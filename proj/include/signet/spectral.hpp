#ifndef SIGNET_SPECTRAL_HPP
#define SIGNET_SPECTRAL_HPP

#include "signet/roots.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <span>
#include <vector>

namespace signet {

/// Dense signed Laplacian: off-diagonal gamma_ij(t), diagonal -sum of the
/// incident weights (row sums vanish). Positive weights are fixed, negative
/// weights scale with the homotopy parameter t; t = 1 is the plain graph.
struct LaplacianMatrix {
    Eigen::MatrixXd entries;
    double t = 1.0;
};

template <class W>
LaplacianMatrix assemble(const SignedGraph<W>& g, double t = 1.0) {
    if (t < 0) throw NegativeParameterError();
    const int n = g.vertex_count();
    LaplacianMatrix lap;
    lap.t = t;
    lap.entries = Eigen::MatrixXd::Zero(n, n);
    for (const auto& e : g.edges()) {
        if (e.is_loop()) continue; // cancels in the zero-row-sum convention
        double w = to_double(e.weight);
        if (w < 0) w *= t;
        lap.entries(e.u, e.v) += w;
        lap.entries(e.v, e.u) += w;
        lap.entries(e.u, e.u) -= w;
        lap.entries(e.v, e.v) -= w;
    }
    return lap;
}

struct EigenSystem {
    Eigen::VectorXd values;  // ascending
    Eigen::MatrixXd vectors; // orthonormal columns, matching order
};

inline EigenSystem eigensystem(const Eigen::MatrixXd& symmetric) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(symmetric);
    if (solver.info() != Eigen::Success) throw ConvergenceError();
    return {solver.eigenvalues(), solver.eigenvectors()};
}

inline EigenSystem eigensystem(const LaplacianMatrix& lap) { return eigensystem(lap.entries); }

/// (n_-, n_0, n_+) of a symmetric matrix under an explicit zero tolerance.
struct IndexTriple {
    int n_minus = 0;
    int n_zero = 0;
    int n_plus = 0;
    double zero_tolerance = 0.0;

    bool operator==(const IndexTriple& o) const {
        return n_minus == o.n_minus && n_zero == o.n_zero && n_plus == o.n_plus;
    }
};

/// Scale-aware default: 1e-9 * n * max|entry|.
inline double default_zero_tolerance(const Eigen::MatrixXd& m) {
    const double scale = m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
    return std::max(1e-9 * static_cast<double>(m.rows()) * scale, 1e-300);
}

inline IndexTriple inertia_of(const Eigen::MatrixXd& symmetric, double zero_tolerance = -1.0) {
    if (zero_tolerance < 0) zero_tolerance = default_zero_tolerance(symmetric);
    IndexTriple idx;
    idx.zero_tolerance = zero_tolerance;
    const Eigen::VectorXd ev = eigensystem(symmetric).values;
    for (int i = 0; i < ev.size(); ++i) {
        if (ev(i) < -zero_tolerance)
            ++idx.n_minus;
        else if (ev(i) > zero_tolerance)
            ++idx.n_plus;
        else
            ++idx.n_zero;
    }
    return idx;
}

inline IndexTriple inertia(const LaplacianMatrix& lap, double zero_tolerance = -1.0) {
    return inertia_of(lap.entries, zero_tolerance);
}

// ---------------------------------------------------------------------------
// Index bounds (the three topological inequalities)
// ---------------------------------------------------------------------------

struct BoundsReport {
    struct Range {
        int lower = 0;
        int upper = 0;
        int value = 0;
        bool ok = false;
        int slack_lower = 0;
        int slack_upper = 0;
    };
    int n = 0;
    int c_plus = 0;
    int c_minus = 0;
    int tau = 0;
    IndexTriple index;
    Range plus, minus, zero;
    bool all_ok = false;
};

/// Evaluates c(G+)-1 <= n_+ <= N-c(G-) and its two companions at t = 1.
template <class W>
BoundsReport check_bounds(const SignedGraph<W>& g, double zero_tolerance = -1.0) {
    const Flexibility f = flexibility(g); // throws on disconnected input
    BoundsReport r;
    r.n = f.n;
    r.c_plus = f.c_plus;
    r.c_minus = f.c_minus;
    r.tau = f.tau;
    r.index = inertia(assemble(g, 1.0), zero_tolerance);
    const auto fill = [](BoundsReport::Range& range, int lower, int upper, int value) {
        range.lower = lower;
        range.upper = upper;
        range.value = value;
        range.slack_lower = value - lower;
        range.slack_upper = upper - value;
        range.ok = range.slack_lower >= 0 && range.slack_upper >= 0;
    };
    fill(r.plus, r.c_plus - 1, r.n - r.c_minus, r.index.n_plus);
    fill(r.minus, r.c_minus - 1, r.n - r.c_plus, r.index.n_minus);
    fill(r.zero, 1, r.n + 2 - r.c_minus - r.c_plus, r.index.n_zero);
    r.all_ok = r.plus.ok && r.minus.ok && r.zero.ok;
    return r;
}

// ---------------------------------------------------------------------------
// Eigenvalue curves of the homotopy
// ---------------------------------------------------------------------------

namespace detail {

/// Orthonormal basis of the mean-zero subspace (Helmert vectors); the
/// remaining spectrum of L lives here since 1 is always in the kernel.
inline Eigen::MatrixXd mean_zero_basis(int n) {
    Eigen::MatrixXd q = Eigen::MatrixXd::Zero(n, n - 1);
    for (int k = 1; k < n; ++k) {
        const double norm = std::sqrt(static_cast<double>(k) + static_cast<double>(k) * k);
        for (int i = 0; i < k; ++i) q(i, k - 1) = 1.0 / norm;
        q(k, k - 1) = -static_cast<double>(k) / norm;
    }
    return q;
}

} // namespace detail

struct EigenCurve {
    std::vector<double> t_grid;
    std::vector<Eigen::VectorXd> values;            // full spectrum of L(G(t)), ascending
    std::vector<Eigen::VectorXd> restricted_values; // spectrum on the mean-zero subspace
    std::vector<double> crossings;                  // zero crossings of restricted branches
};

/// Per-grid-point spectra plus refined zero-crossing parameters. Sorted-order
/// branch matching is exact here: dL/dt = L(G-) is positive semi-definite, so
/// every sorted branch is non-decreasing in t and crosses zero at most once.
template <class W>
EigenCurve eigen_curves(const SignedGraph<W>& g, std::span<const double> t_grid) {
    if (!is_connected(g)) throw DisconnectedGraphError();
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        if (t_grid[i] < 0) throw NegativeParameterError();
        if (i > 0 && t_grid[i] <= t_grid[i - 1])
            throw PreconditionError("t grid must be strictly increasing");
    }
    const int n = g.vertex_count();
    const Eigen::MatrixXd q = detail::mean_zero_basis(n);
    const auto restricted = [&](double t) -> Eigen::VectorXd {
        const Eigen::MatrixXd l = assemble(g, t).entries;
        return eigensystem(Eigen::MatrixXd(q.transpose() * l * q)).values;
    };

    EigenCurve curve;
    curve.t_grid.assign(t_grid.begin(), t_grid.end());
    for (double t : t_grid) {
        curve.values.push_back(eigensystem(assemble(g, t)).values);
        curve.restricted_values.push_back(restricted(t));
    }
    const double scale = curve.values.empty() ? 1.0 : 1e-12;
    for (int b = 0; b < n - 1; ++b) {
        for (std::size_t i = 0; i + 1 < curve.t_grid.size(); ++i) {
            const double lo_val = curve.restricted_values[i](b);
            const double hi_val = curve.restricted_values[i + 1](b);
            if (!(lo_val < 0.0 && hi_val >= 0.0)) continue;
            double lo = curve.t_grid[i], hi = curve.t_grid[i + 1];
            for (int iter = 0; iter < 80 && hi - lo > scale * std::max(1.0, hi); ++iter) {
                const double mid = 0.5 * (lo + hi);
                if (restricted(mid)(b) < 0.0)
                    lo = mid;
                else
                    hi = mid;
            }
            curve.crossings.push_back(0.5 * (lo + hi));
        }
    }
    std::sort(curve.crossings.begin(), curve.crossings.end());
    return curve;
}

/// Grid over (t0, tmax) bracketing all crossings, found from the inertia
/// alone: t0 small enough that n_+ is still at its floor c(G+)-1, tmax large
/// enough that n_+ has reached its ceiling N-c(G-).
template <class W>
std::vector<double> default_curve_grid(const SignedGraph<W>& g, int points = 121) {
    const Flexibility f = flexibility(g);
    const auto n_plus_at = [&](double t) { return inertia(assemble(g, t)).n_plus; };
    double t0 = 1.0;
    for (int i = 0; i < 80 && n_plus_at(t0) > f.c_plus - 1; ++i) t0 *= 0.5;
    double tmax = 1.0;
    for (int i = 0; i < 200 && n_plus_at(tmax) < f.n - f.c_minus; ++i) tmax *= 2.0;
    // pad both ends so no crossing can sit exactly on a bracket endpoint
    t0 *= 0.5;
    tmax *= 2.0;
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i)
        grid.push_back(t0 + (tmax - t0) * static_cast<double>(i) / (points - 1));
    return grid;
}

// ---------------------------------------------------------------------------
// Generalized eigenvalue route to the crossing-polynomial roots
// ---------------------------------------------------------------------------

/// All eigenvalues of the pencil A v = lambda B v with B symmetric positive
/// definite, ascending.
inline Eigen::VectorXd pencil_eigenvalues(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, b, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw ConvergenceError();
    return solver.eigenvalues();
}

/// Eigenvalues of L v = lambda S v for diagonal positive S (the contracted
/// inner product), ascending.
inline std::vector<double> contracted_pencil_eigenvalues(const Eigen::MatrixXd& l,
                                                         const Eigen::VectorXd& s_diag) {
    const Eigen::VectorXd ev = pencil_eigenvalues(l, Eigen::MatrixXd(s_diag.asDiagonal()));
    return {ev.data(), ev.data() + ev.size()};
}

/// Roots of M(G(t)) recovered as the finite eigenvalues of
/// L+ v = -t L- v on the mean-zero subspace. The pencil is only
/// semi-definite: directions in ker(-L-) carry infinite eigenvalues, which
/// are excised by a rank-revealing split and a Schur complement of the
/// coupling block (the kernel block of L+ is nonsingular for connected
/// graphs, so the complement is well defined).
template <class W>
RootList gsep_roots(const SignedGraph<W>& g, double kernel_threshold_rel = 1e-12) {
    if (!is_connected(g)) throw DisconnectedGraphError();
    if (!g.has_negative_edges()) throw EmptyNegativePartError();
    const int n = g.vertex_count();
    const Eigen::MatrixXd q = detail::mean_zero_basis(n);
    const Eigen::MatrixXd a = q.transpose() * assemble(positive_part(g)).entries * q;
    const Eigen::MatrixXd b = -(q.transpose() * assemble(negative_part(g)).entries * q);
    // a and b are both negative semi-definite here.
    const EigenSystem bsys = eigensystem(b);
    const double bscale = bsys.values.cwiseAbs().maxCoeff();
    const double threshold = kernel_threshold_rel * bscale;
    std::vector<int> range_idx, kernel_idx;
    for (int i = 0; i < bsys.values.size(); ++i)
        (std::abs(bsys.values(i)) > threshold ? range_idx : kernel_idx).push_back(i);
    const int nr = static_cast<int>(range_idx.size());
    const int nk = static_cast<int>(kernel_idx.size());

    Eigen::MatrixXd u_range(n - 1, nr), u_kernel(n - 1, nk);
    Eigen::VectorXd beta(nr);
    for (int i = 0; i < nr; ++i) {
        u_range.col(i) = bsys.vectors.col(range_idx[static_cast<std::size_t>(i)]);
        beta(i) = bsys.values(range_idx[static_cast<std::size_t>(i)]);
    }
    for (int i = 0; i < nk; ++i)
        u_kernel.col(i) = bsys.vectors.col(kernel_idx[static_cast<std::size_t>(i)]);

    const Eigen::MatrixXd a_rr = u_range.transpose() * a * u_range;
    Eigen::MatrixXd c = a_rr;
    if (nk > 0) {
        const Eigen::MatrixXd a_rk = u_range.transpose() * a * u_kernel;
        const Eigen::MatrixXd a_kk = u_kernel.transpose() * a * u_kernel;
        c -= a_rk * a_kk.ldlt().solve(a_rk.transpose());
    }
    const Eigen::VectorXd finite =
        pencil_eigenvalues(Eigen::MatrixXd(-c), Eigen::MatrixXd((-beta).asDiagonal()));

    RootList out;
    out.method = RootMethod::GsepNumeric;
    std::vector<double> roots(finite.data(), finite.data() + finite.size());
    std::sort(roots.begin(), roots.end());
    const double value_floor = 1e-8;
    for (std::size_t i = 0; i < roots.size();) {
        double v = std::max(roots[i], 0.0);
        std::size_t j = i + 1;
        double sum = v;
        while (j < roots.size() && std::abs(roots[j] - v) <= value_floor * std::max(1.0, std::abs(v))) {
            sum += std::max(roots[j], 0.0);
            v = sum / static_cast<double>(j - i + 1);
            ++j;
        }
        RootRecord rec;
        rec.value = v < value_floor ? 0.0 : v;
        rec.multiplicity = static_cast<int>(j - i);
        out.roots.push_back(rec);
        i = j;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Asymptotic spectra of the homotopy
// ---------------------------------------------------------------------------

enum class AsymptoticLimit { TowardZero, TowardInfinity };

/// linear_rates: slopes of the branches that scale linearly in the limit
/// (eigenvalues of the dominant side's Laplacian). finite_limits: the limits
/// of the remaining branches, from the contracted pencil L v = lambda S v
/// with S the contracted inner product.
struct AsymptoticSpectrum {
    std::vector<double> linear_rates;
    std::vector<double> finite_limits;
};

template <class W>
AsymptoticSpectrum asymptotic_spectrum(const SignedGraph<W>& g, AsymptoticLimit limit) {
    if (!is_connected(g)) throw DisconnectedGraphError();
    const bool toward_infinity = limit == AsymptoticLimit::TowardInfinity;

    // nonzero spectrum of the side that dominates the limit
    const SignedGraph<W> dominant = toward_infinity ? negative_part(g) : positive_part(g);
    const Eigen::MatrixXd ld = assemble(dominant).entries;
    const Eigen::VectorXd dom_vals = eigensystem(ld).values;
    const double dom_tol = default_zero_tolerance(ld);
    std::vector<double> dominant_nonzero;
    for (int i = 0; i < dom_vals.size(); ++i)
        if (std::abs(dom_vals(i)) > dom_tol) dominant_nonzero.push_back(dom_vals(i));

    // nonzero solutions of the contracted pencil L v = lambda S v
    const auto contraction =
        contract_subgraph(g, toward_infinity ? EdgeSign::Negative : EdgeSign::Positive);
    const int nq = contraction.graph.vertex_count();
    Eigen::VectorXd s(nq);
    for (int i = 0; i < nq; ++i)
        s(i) = static_cast<double>(contraction.vertex_weights[static_cast<std::size_t>(i)]);
    std::vector<double> pencil =
        contracted_pencil_eigenvalues(assemble(contraction.graph).entries, s);
    if (!pencil.empty()) {
        // drop the constant-vector zero, robustly the smallest magnitude
        std::size_t drop = 0;
        for (std::size_t i = 1; i < pencil.size(); ++i)
            if (std::abs(pencil[i]) < std::abs(pencil[drop])) drop = i;
        pencil.erase(pencil.begin() + static_cast<std::ptrdiff_t>(drop));
    }

    // toward infinity the dominant side's spectrum grows like t and the
    // kernel branches settle at the pencil values; toward zero the dominant
    // (positive) spectrum is the limit and the kernel branches emerge at
    // rate t times the pencil values
    AsymptoticSpectrum out;
    if (toward_infinity) {
        out.linear_rates = std::move(dominant_nonzero);
        out.finite_limits = std::move(pencil);
    } else {
        out.linear_rates = std::move(pencil);
        out.finite_limits = std::move(dominant_nonzero);
    }
    std::sort(out.linear_rates.begin(), out.linear_rates.end());
    std::sort(out.finite_limits.begin(), out.finite_limits.end());
    return out;
}

// ---------------------------------------------------------------------------
// Gershgorin discs
// ---------------------------------------------------------------------------

struct GershgorinReport {
    struct Disc {
        double center = 0.0;
        double radius = 0.0;
    };
    std::vector<Disc> discs;
    int n_mixed = 0; // discs with the origin strictly interior
    int tau = -1;    // only meaningful when comparison_applicable
    bool comparison_applicable = false;
    bool bound_ok = true; // n_mixed >= tau + 1 when applicable
};

template <class W>
GershgorinReport gershgorin(const SignedGraph<W>& g) {
    const Eigen::MatrixXd l = assemble(g, 1.0).entries;
    GershgorinReport rep;
    const int n = g.vertex_count();
    const double tol = 1e-12 * std::max(1.0, l.cwiseAbs().maxCoeff());
    for (int i = 0; i < n; ++i) {
        GershgorinReport::Disc d;
        d.center = l(i, i);
        for (int j = 0; j < n; ++j)
            if (j != i) d.radius += std::abs(l(i, j));
        if (d.radius - std::abs(d.center) > tol) ++rep.n_mixed;
        rep.discs.push_back(d);
    }
    if (g.has_positive_edges() && g.has_negative_edges() && is_connected(g)) {
        rep.comparison_applicable = true;
        rep.tau = flexibility(g).tau;
        rep.bound_ok = rep.n_mixed >= rep.tau + 1;
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Bisection route to t*
// ---------------------------------------------------------------------------

/// Independent verification path for t*: monotone bisection on the inertia
/// predicate n_+(L(G(t))) = 0, bracketing by doubling from t = 1.
template <class W>
BifurcationPoint t_star_bisection(const SignedGraph<W>& g, double rel_tol = 1e-8) {
    if (!is_connected(g)) throw DisconnectedGraphError();
    BifurcationPoint b;
    b.method = RootMethod::GsepNumeric;
    if (components(positive_part(g)).n_components > 1) {
        b.kind = BifurcationPoint::Kind::AtZero;
        b.value = 0.0;
        b.exact = 0;
        b.is_exact = true;
        return b;
    }
    if (!g.has_negative_edges()) {
        b.kind = BifurcationPoint::Kind::AtInfinity;
        b.value = std::numeric_limits<double>::infinity();
        return b;
    }
    const auto stable = [&](double t) { return inertia(assemble(g, t)).n_plus == 0; };
    double lo, hi;
    if (stable(1.0)) {
        lo = 1.0;
        hi = 2.0;
        int guard = 0;
        while (stable(hi) && ++guard < 200) {
            lo = hi;
            hi *= 2.0;
        }
        if (guard >= 200) throw ConvergenceError("t* bracket did not close");
    } else {
        hi = 1.0;
        lo = 0.5;
        while (!stable(lo) && lo > 1e-300) {
            hi = lo;
            lo *= 0.5;
        }
        if (!stable(lo)) lo = 0.0;
    }
    while (hi - lo > rel_tol * std::max(1.0, lo)) {
        const double mid = 0.5 * (lo + hi);
        if (stable(mid))
            lo = mid;
        else
            hi = mid;
    }
    b.kind = BifurcationPoint::Kind::Finite;
    b.value = 0.5 * (lo + hi);
    return b;
}

/// Smallest positive gsep root; the numeric-mode counterpart of the exact
/// t_star. Falls back on the same topological special cases.
template <class W>
BifurcationPoint t_star_numeric(const SignedGraph<W>& g) {
    if (!is_connected(g)) throw DisconnectedGraphError();
    BifurcationPoint b;
    b.method = RootMethod::GsepNumeric;
    if (components(positive_part(g)).n_components > 1) {
        b.kind = BifurcationPoint::Kind::AtZero;
        b.value = 0.0;
        b.exact = 0;
        b.is_exact = true;
        return b;
    }
    if (!g.has_negative_edges()) {
        b.kind = BifurcationPoint::Kind::AtInfinity;
        b.value = std::numeric_limits<double>::infinity();
        return b;
    }
    const RootList roots = gsep_roots(g);
    for (const auto& r : roots.roots) {
        if (r.value > 0) {
            b.kind = BifurcationPoint::Kind::Finite;
            b.value = r.value;
            return b;
        }
    }
    throw Error("no positive gsep eigenvalue despite tau > 0");
}

} // namespace signet

#endif // SIGNET_SPECTRAL_HPP
