#ifndef SIGNET_REPORT_HPP
#define SIGNET_REPORT_HPP

#include "signet/homology.hpp"
#include "signet/io.hpp"
#include "signet/roots.hpp"
#include "signet/spectral.hpp"

#include <json.hpp>

#include <string>

namespace signet {

struct AnalysisOptions {
    double zero_tolerance = -1.0; // <0: scale-aware default
    bool topology_only = false;   // skip everything that needs dense matrices
    bool force_full = false;      // run the dense path even on large graphs
    int dense_vertex_limit = 2000;
};

namespace detail {

inline nlohmann::json root_to_json(const RootRecord& r) {
    nlohmann::json j;
    j["value"] = r.value;
    j["multiplicity"] = r.multiplicity;
    if (r.is_exact) j["exact"] = to_string(r.exact);
    return j;
}

inline nlohmann::json bifurcation_to_json(const BifurcationPoint& b) {
    nlohmann::json j;
    switch (b.kind) {
    case BifurcationPoint::Kind::AtZero:
        j["kind"] = "zero";
        j["value"] = 0.0;
        break;
    case BifurcationPoint::Kind::AtInfinity:
        j["kind"] = "infinite";
        break;
    case BifurcationPoint::Kind::Finite:
        j["kind"] = "finite";
        j["value"] = b.value;
        break;
    }
    if (b.is_exact && b.kind != BifurcationPoint::Kind::AtInfinity) j["exact"] = to_string(b.exact);
    j["method"] = to_string(b.method);
    return j;
}

inline nlohmann::json index_to_json(const IndexTriple& idx) {
    return {{"n_minus", idx.n_minus},
            {"n_zero", idx.n_zero},
            {"n_plus", idx.n_plus},
            {"zero_tolerance", idx.zero_tolerance}};
}

inline nlohmann::json bounds_to_json(const BoundsReport& b) {
    const auto range = [](const BoundsReport::Range& r) {
        return nlohmann::json{{"lower", r.lower},     {"upper", r.upper},
                              {"value", r.value},     {"ok", r.ok},
                              {"slack_lower", r.slack_lower}, {"slack_upper", r.slack_upper}};
    };
    return {{"n_plus", range(b.plus)},
            {"n_minus", range(b.minus)},
            {"n_zero", range(b.zero)},
            {"all_ok", b.all_ok}};
}

template <class W>
nlohmann::json polynomial_to_json(const CrossingPolynomial<W>& p) {
    nlohmann::json coeffs = nlohmann::json::array();
    for (int k = p.k_min; k <= p.k_max; ++k) {
        nlohmann::json c;
        c["k"] = k;
        if constexpr (is_exact_weight_v<W>)
            c["value"] = to_string(p.coefficients[static_cast<std::size_t>(k)]);
        else
            c["value"] = p.coefficients[static_cast<std::size_t>(k)];
        coeffs.push_back(std::move(c));
    }
    return {{"k_min", p.k_min}, {"k_max", p.k_max}, {"coefficients", std::move(coeffs)}};
}

} // namespace detail

/// The full spectral-topological report for one graph, as JSON: components,
/// flexibility, index, the three bounds, crossing polynomial, roots, t*,
/// Gershgorin summary, subspace split and asymptotic spectra. Graphs above
/// the dense limit degrade to the topology-only subset unless forced.
template <class W>
nlohmann::json analyze_to_json(const SignedGraph<W>& g,
                               const std::vector<std::int64_t>& original_ids,
                               const AnalysisOptions& options = {}) {
    nlohmann::json j;
    j["n_vertices"] = g.vertex_count();
    j["n_edges"] = g.edge_count();
    j["mode"] = is_exact_weight_v<W> ? "rational" : "float";
    if (!original_ids.empty()) j["vertex_ids"] = original_ids;

    const ComponentLabeling whole = components(g);
    const int c_plus = components(positive_part(g)).n_components;
    const int c_minus = components(negative_part(g)).n_components;
    j["components"] = {{"gamma", whole.n_components},
                       {"gamma_plus", c_plus},
                       {"gamma_minus", c_minus}};
    const bool connected = whole.n_components == 1;
    j["connected"] = connected;
    if (connected) {
        const Flexibility f = flexibility(g);
        j["flexibility"] = {{"tau", f.tau},
                            {"c_plus", f.c_plus},
                            {"c_minus", f.c_minus},
                            {"n", f.n},
                            {"rigid", f.rigid()}};
    }

    const bool topology_only =
        options.topology_only ||
        (g.vertex_count() > options.dense_vertex_limit && !options.force_full);
    j["topology_only"] = topology_only;
    if (topology_only || !connected) {
        if (g.vertex_count() > options.dense_vertex_limit && !options.force_full &&
            !options.topology_only)
            j["note"] = "dense analysis skipped for a graph this large; pass --full to override";
        return j;
    }

    const BoundsReport bounds = check_bounds(g, options.zero_tolerance);
    j["index"] = detail::index_to_json(bounds.index);
    j["bounds"] = detail::bounds_to_json(bounds);

    const CrossingPolynomial<W> poly = crossing_polynomial(g);
    j["crossing_polynomial"] = detail::polynomial_to_json(poly);

    nlohmann::json roots_json = nlohmann::json::array();
    BifurcationPoint star;
    if constexpr (is_exact_weight_v<W>) {
        if (g.has_negative_edges())
            for (const auto& r : polynomial_roots(poly).roots)
                roots_json.push_back(detail::root_to_json(r));
        star = t_star(g);
    } else {
        if (g.has_negative_edges() && c_plus == 1)
            for (const auto& r : gsep_roots(g).roots)
                roots_json.push_back(detail::root_to_json(r));
        star = t_star_numeric(g);
    }
    j["roots"] = std::move(roots_json);
    j["t_star"] = detail::bifurcation_to_json(star);

    const GershgorinReport gersh = gershgorin(g);
    j["gershgorin"] = {{"n_mixed", gersh.n_mixed},
                       {"comparison_applicable", gersh.comparison_applicable},
                       {"tau", gersh.tau},
                       {"bound_ok", gersh.bound_ok}};

    const MixedCycleBasis cycles = mixed_cycle_basis(g);
    const FixedSubspace fixed = fixed_subspace(g);
    const ProjectedIndexReport projected = projected_index(g, options.zero_tolerance);
    nlohmann::json basis = nlohmann::json::array();
    for (const auto& v : cycles.vectors) basis.push_back(v);
    j["subspaces"] = {{"dim_free", cycles.dimension},
                      {"dim_fixed", fixed.dimension},
                      {"mixed_cycle_basis", std::move(basis)},
                      {"projected_index", detail::index_to_json(projected.index)},
                      {"block_structure_ok", projected.block_structure_ok}};

    const AsymptoticSpectrum at_inf = asymptotic_spectrum(g, AsymptoticLimit::TowardInfinity);
    const AsymptoticSpectrum at_zero = asymptotic_spectrum(g, AsymptoticLimit::TowardZero);
    j["asymptotics"] = {
        {"t_to_infinity",
         {{"linear_rates", at_inf.linear_rates}, {"finite_limits", at_inf.finite_limits}}},
        {"t_to_zero",
         {{"linear_rates", at_zero.linear_rates}, {"finite_limits", at_zero.finite_limits}}}};
    return j;
}

inline nlohmann::json analyze_to_json(const LoadedGraph& loaded, const AnalysisOptions& options = {}) {
    return std::visit(
        [&](const auto& g) { return analyze_to_json(g, loaded.original_ids, options); },
        loaded.graph);
}

/// Human-readable rendering of the same content.
inline std::string render_text_report(const nlohmann::json& j) {
    std::ostringstream os;
    os << "vertices: " << j["n_vertices"].get<int>() << "   edges: " << j["n_edges"].get<std::size_t>()
       << "   mode: " << j["mode"].get<std::string>() << '\n';
    const auto& c = j["components"];
    os << "components: c(G) = " << c["gamma"].get<int>() << ", c(G+) = " << c["gamma_plus"].get<int>()
       << ", c(G-) = " << c["gamma_minus"].get<int>() << '\n';
    if (j.contains("flexibility")) {
        const auto& f = j["flexibility"];
        os << "flexibility: tau = " << f["tau"].get<int>()
           << (f["rigid"].get<bool>() ? " (rigid)" : "") << '\n';
    }
    if (j["topology_only"].get<bool>()) {
        if (j.contains("note")) os << j["note"].get<std::string>() << '\n';
        return os.str();
    }
    const auto& idx = j["index"];
    os << "index: (n_-, n_0, n_+) = (" << idx["n_minus"].get<int>() << ", "
       << idx["n_zero"].get<int>() << ", " << idx["n_plus"].get<int>() << ")\n";
    const auto& b = j["bounds"];
    const auto show = [&](const char* name, const nlohmann::json& r) {
        os << "  " << name << " in [" << r["lower"].get<int>() << ", " << r["upper"].get<int>()
           << "], value " << r["value"].get<int>() << (r["ok"].get<bool>() ? "" : "  VIOLATED")
           << '\n';
    };
    show("n_+", b["n_plus"]);
    show("n_-", b["n_minus"]);
    show("n_0", b["n_zero"]);
    os << "crossing polynomial: a_k for k = " << j["crossing_polynomial"]["k_min"].get<int>()
       << ".." << j["crossing_polynomial"]["k_max"].get<int>() << ":";
    for (const auto& coeff : j["crossing_polynomial"]["coefficients"])
        os << "  a_" << coeff["k"].get<int>() << " = "
           << (coeff["value"].is_string() ? coeff["value"].get<std::string>()
                                          : std::to_string(coeff["value"].get<double>()));
    os << '\n';
    os << "roots:";
    if (j["roots"].empty()) os << " (none)";
    for (const auto& r : j["roots"]) {
        os << "  " << r["value"].get<double>();
        if (r.contains("exact")) os << " (= " << r["exact"].get<std::string>() << ")";
        if (r["multiplicity"].get<int>() > 1) os << " x" << r["multiplicity"].get<int>();
    }
    os << '\n';
    const auto& ts = j["t_star"];
    os << "t_star = ";
    if (ts["kind"] == "infinite")
        os << "infinity";
    else if (ts.contains("exact"))
        os << ts["exact"].get<std::string>();
    else
        os << ts["value"].get<double>();
    os << '\n';
    const auto& gg = j["gershgorin"];
    os << "gershgorin: " << gg["n_mixed"].get<int>() << " mixed discs";
    if (gg["comparison_applicable"].get<bool>())
        os << ", tau + 1 = " << gg["tau"].get<int>() + 1
           << (gg["bound_ok"].get<bool>() ? " (dominated)" : " VIOLATED");
    os << '\n';
    const auto& s = j["subspaces"];
    os << "subspaces: dim S_free = " << s["dim_free"].get<int>()
       << ", dim S_fixed = " << s["dim_fixed"].get<int>() << ", projected index = ("
       << s["projected_index"]["n_minus"].get<int>() << ", "
       << s["projected_index"]["n_zero"].get<int>() << ", "
       << s["projected_index"]["n_plus"].get<int>() << ")\n";
    return os.str();
}

} // namespace signet

#endif // SIGNET_REPORT_HPP
