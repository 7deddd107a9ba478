#ifndef SIGNET_ROOTS_HPP
#define SIGNET_ROOTS_HPP

#include "signet/tree_poly.hpp"

#include <algorithm>
#include <limits>
#include <utility>
#include <vector>

namespace signet {

namespace ratpoly {

/// Signed rational polynomial, ascending coefficients in t.
using RPoly = std::vector<Rational>;

inline void trim(RPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline int degree(const RPoly& p) { return static_cast<int>(p.size()) - 1; }

inline Rational eval(const RPoly& p, const Rational& x) {
    Rational acc(0);
    for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
    return acc;
}

inline RPoly derivative(const RPoly& p) {
    RPoly d;
    for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * Rational(static_cast<long>(i)));
    return d;
}

/// Scales to the coprime integer form with positive leading coefficient;
/// keeps Euclidean remainder chains from blowing up.
inline RPoly primitive(RPoly p) {
    trim(p);
    if (p.empty()) return p;
    Integer den_lcm = 1;
    for (const Rational& c : p)
        den_lcm = boost::multiprecision::lcm(den_lcm, boost::multiprecision::denominator(c));
    Integer num_gcd = 0;
    std::vector<Integer> scaled;
    scaled.reserve(p.size());
    for (const Rational& c : p) {
        Integer v = boost::multiprecision::numerator(c) *
                    (den_lcm / boost::multiprecision::denominator(c));
        scaled.push_back(v);
        num_gcd = boost::multiprecision::gcd(num_gcd, boost::multiprecision::abs(v));
    }
    if (num_gcd == 0) num_gcd = 1;
    if (scaled.back() < 0) num_gcd = -num_gcd;
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = Rational(scaled[i]) / Rational(num_gcd);
    return p;
}

/// Remainder of a by b (b nonzero).
inline RPoly rem(RPoly a, const RPoly& b) {
    trim(a);
    while (degree(a) >= degree(b) && !a.empty()) {
        const Rational q = a.back() / b.back();
        const std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= q * b[i];
        a.pop_back();
        trim(a);
    }
    return a;
}

inline RPoly gcd(RPoly a, RPoly b) {
    a = primitive(std::move(a));
    b = primitive(std::move(b));
    while (!b.empty()) {
        RPoly r = primitive(rem(a, b));
        a = std::move(b);
        b = std::move(r);
    }
    if (a.empty()) a = {Rational(1)};
    return a;
}

inline RPoly divide_exact(const RPoly& a, const RPoly& b) {
    RPoly r = a;
    trim(r);
    RPoly q(r.size() >= b.size() ? r.size() - b.size() + 1 : 0, Rational(0));
    while (degree(r) >= degree(b) && !r.empty()) {
        const Rational c = r.back() / b.back();
        const std::size_t shift = r.size() - b.size();
        q[shift] = c;
        for (std::size_t i = 0; i < b.size(); ++i) r[shift + i] -= c * b[i];
        trim(r);
    }
    return q;
}

/// Yun's algorithm: p = prod f_i^i with the f_i square-free and coprime.
/// Returns the f_i indexed from multiplicity 1 (entries may be constant).
inline std::vector<RPoly> squarefree_decomposition(RPoly p) {
    std::vector<RPoly> factors;
    p = primitive(std::move(p));
    if (degree(p) < 1) return factors;
    RPoly dp = derivative(p);
    RPoly a = gcd(p, dp);
    RPoly b = divide_exact(p, a);
    RPoly c = divide_exact(dp, a);
    while (true) {
        RPoly d = c;
        const RPoly db = derivative(b);
        for (std::size_t i = 0; i < db.size(); ++i) {
            if (i >= d.size()) d.resize(i + 1, Rational(0));
            d[i] -= db[i];
        }
        trim(d);
        if (degree(b) < 1) break;
        RPoly f = gcd(b, d);
        factors.push_back(primitive(f));
        b = divide_exact(b, f);
        c = divide_exact(d, f);
    }
    return factors;
}

/// Sturm chain p, p', -rem(...), ...
inline std::vector<RPoly> sturm_chain(const RPoly& p) {
    std::vector<RPoly> chain;
    chain.push_back(primitive(p));
    RPoly d = primitive(derivative(p));
    if (!d.empty()) chain.push_back(d);
    while (chain.back().size() > 1) {
        RPoly r = rem(chain[chain.size() - 2], chain.back());
        trim(r);
        if (r.empty()) break;
        for (Rational& c : r) c = -c;
        chain.push_back(primitive(r));
    }
    return chain;
}

inline int sign_changes_at(const std::vector<RPoly>& chain, const Rational& x) {
    int changes = 0;
    int last = 0;
    for (const RPoly& q : chain) {
        const int s = weight_sign(eval(q, x));
        if (s == 0) continue;
        if (last != 0 && s != last) ++changes;
        last = s;
    }
    return changes;
}

/// Number of distinct roots in (lo, hi].
inline int count_roots(const std::vector<RPoly>& chain, const Rational& lo, const Rational& hi) {
    return sign_changes_at(chain, lo) - sign_changes_at(chain, hi);
}

/// Cauchy bound: every root has |x| <= 1 + max |c_i / c_deg|.
inline Rational root_bound(const RPoly& p) {
    Rational bound(0);
    for (std::size_t i = 0; i + 1 < p.size(); ++i)
        bound = std::max(bound, weight_abs(p[i] / p.back()));
    return bound + 1;
}

struct Interval {
    Rational lo, hi; // (lo, hi], contains exactly one root
};

/// Isolating intervals for all roots in (0, bound], by Sturm bisection.
inline std::vector<Interval> isolate_positive_roots(const RPoly& p) {
    std::vector<Interval> out;
    const std::vector<RPoly> chain = sturm_chain(p);
    const Rational hi = root_bound(p);
    struct Item {
        Rational lo, hi;
        int count;
    };
    std::vector<Item> stack;
    const int total = count_roots(chain, Rational(0), hi);
    if (total > 0) stack.push_back({Rational(0), hi, total});
    while (!stack.empty()) {
        Item it = stack.back();
        stack.pop_back();
        if (it.count == 1) {
            out.push_back({it.lo, it.hi});
            continue;
        }
        const Rational mid = (it.lo + it.hi) / 2;
        const int left = count_roots(chain, it.lo, mid);
        if (left > 0) stack.push_back({it.lo, mid, left});
        if (it.count - left > 0) stack.push_back({mid, it.hi, it.count - left});
    }
    std::sort(out.begin(), out.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    return out;
}

/// Shrinks an isolating interval until hi - lo <= rel_width * hi.
inline Interval refine(const RPoly& p, Interval iv, const Rational& rel_width) {
    const int sign_hi = weight_sign(eval(p, iv.hi));
    if (sign_hi == 0) return {iv.hi, iv.hi}; // the root is the endpoint itself
    while (iv.hi - iv.lo > rel_width * iv.hi) {
        const Rational mid = (iv.lo + iv.hi) / 2;
        const int sm = weight_sign(eval(p, mid));
        if (sm == 0) return {mid, mid};
        if (sm == sign_hi)
            iv.hi = mid;
        else
            iv.lo = mid;
    }
    return iv;
}

} // namespace ratpoly

// ---------------------------------------------------------------------------
// Root lists and the bifurcation point
// ---------------------------------------------------------------------------

enum class RootMethod { SturmExact, GsepNumeric };

inline const char* to_string(RootMethod m) {
    return m == RootMethod::SturmExact ? "sturm-exact" : "gsep-numeric";
}

struct RootRecord {
    double value = 0.0;
    Rational exact;     // meaningful when is_exact
    bool is_exact = false;
    int multiplicity = 1;
};

struct RootList {
    std::vector<RootRecord> roots; // ascending, includes t = 0 when present
    RootMethod method = RootMethod::SturmExact;

    int total_multiplicity() const {
        int m = 0;
        for (const auto& r : roots) m += r.multiplicity;
        return m;
    }
    int positive_multiplicity() const {
        int m = 0;
        for (const auto& r : roots)
            if (r.value > 0 || (r.is_exact && r.exact > 0)) m += r.multiplicity;
        return m;
    }
};

struct RootOptions {
    /// Isolating intervals are narrowed to this relative width in exact mode.
    Rational rel_width = Rational(1, 1000000000000LL);
};

/// All roots of M(G(t)) on [0, inf) with multiplicities, exactly. Roots of
/// square-free factors of degree one come out as exact rationals; the rest
/// are Sturm-isolated and bisected, reported at the interval midpoint.
template <class W>
RootList polynomial_roots(const CrossingPolynomial<W>& p, const RootOptions& options = {})
    requires is_exact_weight_v<W>
{
    if (p.is_zero()) throw ZeroPolynomialError();
    RootList out;
    out.method = RootMethod::SturmExact;
    if (p.k_min > 0) {
        RootRecord zero;
        zero.value = 0.0;
        zero.exact = 0;
        zero.is_exact = true;
        zero.multiplicity = p.k_min;
        out.roots.push_back(zero);
    }
    // q(t) = sum_j a_{k_min+j} (-1)^j t^j carries the positive roots
    ratpoly::RPoly q;
    for (int k = p.k_min; k <= p.k_max; ++k) {
        const int j = k - p.k_min;
        Rational c = p.coefficients[static_cast<std::size_t>(k)];
        if (j % 2 == 1) c = -c;
        q.push_back(c);
    }
    ratpoly::trim(q);
    if (ratpoly::degree(q) >= 1) {
        const auto factors = ratpoly::squarefree_decomposition(q);
        for (std::size_t i = 0; i < factors.size(); ++i) {
            const ratpoly::RPoly& f = factors[i];
            const int multiplicity = static_cast<int>(i) + 1;
            if (ratpoly::degree(f) < 1) continue;
            if (ratpoly::degree(f) == 1) {
                RootRecord r;
                r.exact = -f[0] / f[1];
                r.value = to_double(r.exact);
                r.is_exact = true;
                r.multiplicity = multiplicity;
                out.roots.push_back(r);
                continue;
            }
            for (const auto& iv0 : ratpoly::isolate_positive_roots(f)) {
                const auto iv = ratpoly::refine(f, iv0, options.rel_width);
                RootRecord r;
                r.exact = (iv.lo + iv.hi) / 2;
                r.value = to_double(r.exact);
                r.is_exact = iv.lo == iv.hi;
                r.multiplicity = multiplicity;
                out.roots.push_back(r);
            }
        }
    }
    std::sort(out.roots.begin(), out.roots.end(),
              [](const RootRecord& a, const RootRecord& b) { return a.value < b.value; });
    return out;
}

struct BifurcationPoint {
    enum class Kind { AtZero, Finite, AtInfinity };
    Kind kind = Kind::Finite;
    double value = 0.0;     // 0 for AtZero, +inf for AtInfinity
    Rational exact;         // meaningful when is_exact and kind == Finite/AtZero
    bool is_exact = false;
    RootMethod method = RootMethod::SturmExact;

    bool is_zero() const { return kind == Kind::AtZero; }
    bool is_infinite() const { return kind == Kind::AtInfinity; }
};

/// t* = sup{ t >= 0 : n_+(L(G(t))) = 0 }: zero iff G+ is disconnected,
/// infinite iff G- is empty, otherwise the smallest positive root of the
/// crossing polynomial (eigenvalues only ever cross left to right).
template <class W>
BifurcationPoint t_star(const SignedGraph<W>& g)
    requires is_exact_weight_v<W>
{
    if (!is_connected(g)) throw DisconnectedGraphError();
    BifurcationPoint b;
    b.method = RootMethod::SturmExact;
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
    const RootList roots = polynomial_roots(crossing_polynomial(g));
    for (const auto& r : roots.roots) {
        if (r.is_exact ? r.exact > 0 : r.value > 0) {
            b.kind = BifurcationPoint::Kind::Finite;
            b.value = r.value;
            b.exact = r.exact;
            b.is_exact = r.is_exact;
            return b;
        }
    }
    throw Error("crossing polynomial has no positive root despite tau > 0");
}

} // namespace signet

#endif // SIGNET_ROOTS_HPP
