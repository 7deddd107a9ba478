// signet: spectral-topological analysis of signed weighted graphs.
//
// Exit codes: 0 success, 1 validation or computation failure, 2 usage error.

#include <signet/signet.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

using namespace signet;

struct LoadOptions {
    std::string path;
    bool multigraph = false;
    bool drop_zero = false;
    bool directed = false;
};

void add_load_options(CLI::App* cmd, LoadOptions& opts) {
    cmd->add_option("file", opts.path, "edge-list file ('u v w' lines, '#' comments)")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_flag("--multigraph", opts.multigraph, "sum duplicate edges instead of rejecting them");
    cmd->add_flag("--drop-zero", opts.drop_zero, "drop zero-weight edges instead of rejecting them");
    cmd->add_flag("--directed", opts.directed,
                  "treat lines as directed +/-1 relations and symmetrize them");
}

LoadedGraph load(const LoadOptions& opts) {
    if (opts.directed) {
        std::ifstream in(opts.path);
        if (!in) throw Error("cannot open '" + opts.path + "'");
        std::vector<DirectedEntry> entries;
        std::string line;
        long line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            std::istringstream ls(line);
            std::string first;
            if (!(ls >> first) || first[0] == '#') continue;
            DirectedEntry e;
            std::int64_t sign;
            std::istringstream fs(first);
            if (!(fs >> e.from) || !(ls >> e.to >> sign) || (sign != 1 && sign != -1))
                throw ParseError("expected 'i j s' with s in {1, -1}", line_no);
            e.sign = static_cast<int>(sign);
            entries.push_back(e);
        }
        return symmetrize_directed(entries);
    }
    ParseOptions popts;
    popts.multigraph = opts.multigraph;
    popts.drop_zero_weights = opts.drop_zero;
    return parse_edge_list_file(opts.path, popts);
}

std::string format_value(const BifurcationPoint& b) {
    if (b.is_infinite()) return "infinity";
    if (b.is_exact) return to_string(b.exact);
    std::ostringstream os;
    os.precision(17);
    os << b.value;
    return os.str();
}

std::ostream& open_or_stdout(std::ofstream& file, const std::string& path) {
    if (path.empty()) return std::cout;
    file.open(path);
    if (!file) throw Error("cannot write '" + path + "'");
    return file;
}

template <class W>
std::string polynomial_display(const CrossingPolynomial<W>& p) {
    std::ostringstream os;
    os.precision(17);
    bool first = true;
    for (int k = p.k_min; k <= p.k_max; ++k) {
        const W& a = p.coefficients[static_cast<std::size_t>(k)];
        if (a == W(0)) continue;
        const bool negative_term = k % 2 == 1;
        if (first) {
            if (negative_term) os << "-";
            first = false;
        } else {
            os << (negative_term ? " - " : " + ");
        }
        if constexpr (is_exact_weight_v<W>)
            os << to_string(a);
        else
            os << a;
        if (k == 1)
            os << " t";
        else if (k > 1)
            os << " t^" << k;
    }
    if (first) os << "0";
    return os.str();
}

int cmd_analyze(const LoadOptions& opts, const AnalysisOptions& aopts, const std::string& format) {
    const LoadedGraph g = load(opts);
    const nlohmann::json j = analyze_to_json(g, aopts);
    if (format == "json")
        std::cout << j.dump(2) << '\n';
    else
        std::cout << render_text_report(j);
    return 0;
}

int cmd_poly(const LoadOptions& opts) {
    const LoadedGraph g = load(opts);
    std::visit(
        [](const auto& inner) {
            const auto p = crossing_polynomial(inner);
            using W = typename std::decay_t<decltype(inner)>::WeightType;
            for (int k = p.k_min; k <= p.k_max; ++k) {
                std::cout << "a_" << k << " = ";
                if constexpr (is_exact_weight_v<W>)
                    std::cout << to_string(p.coefficients[static_cast<std::size_t>(k)]);
                else
                    std::cout << p.coefficients[static_cast<std::size_t>(k)];
                std::cout << '\n';
            }
            std::cout << "M(G(t)) = " << polynomial_display(p) << '\n';
        },
        g.graph);
    return 0;
}

int cmd_roots(const LoadOptions& opts, const std::string& method) {
    const LoadedGraph g = load(opts);
    RootList roots;
    if (method == "sturm") {
        if (g.mode != WeightMode::ExactRational)
            throw PreconditionError("sturm roots need rational weights; use --method gsep");
        roots = polynomial_roots(crossing_polynomial(g.rational()));
    } else {
        roots = gsep_roots(g.as_real());
    }
    std::cout << "method: " << to_string(roots.method) << '\n';
    for (const auto& r : roots.roots) {
        std::cout.precision(17);
        std::cout << r.value;
        if (r.is_exact) std::cout << " (= " << to_string(r.exact) << ")";
        if (r.multiplicity > 1) std::cout << "  multiplicity " << r.multiplicity;
        std::cout << '\n';
    }
    return 0;
}

int cmd_tstar(const LoadOptions& opts, const std::string& method) {
    const LoadedGraph g = load(opts);
    BifurcationPoint b;
    if (method == "bisection") {
        b = t_star_bisection(g.as_real());
    } else if (g.mode == WeightMode::ExactRational) {
        b = t_star(g.rational());
    } else {
        b = t_star_numeric(g.real());
    }
    std::cout << "t_star = " << format_value(b) << '\n';
    return 0;
}

int cmd_curves(const LoadOptions& opts, double tmax, int points, const std::string& out_path) {
    const LoadedGraph g = load(opts);
    const SignedGraph<double> real = g.as_real();
    std::vector<double> grid;
    if (tmax > 0) {
        grid.reserve(static_cast<std::size_t>(points));
        for (int i = 0; i < points; ++i)
            grid.push_back(tmax * (i + 1) / static_cast<double>(points));
    } else {
        grid = default_curve_grid(real, points);
    }
    const EigenCurve curve = eigen_curves(real, grid);
    std::ofstream file;
    std::ostream& out = open_or_stdout(file, out_path);
    out.precision(17);
    out << "t";
    for (int i = 1; i <= real.vertex_count(); ++i) out << ",lambda_" << i;
    out << '\n';
    for (std::size_t i = 0; i < curve.t_grid.size(); ++i) {
        out << curve.t_grid[i];
        for (int k = 0; k < curve.values[i].size(); ++k) out << ',' << curve.values[i](k);
        out << '\n';
    }
    std::cerr << "crossings:";
    for (double c : curve.crossings) std::cerr << ' ' << c;
    std::cerr << '\n';
    return 0;
}

int cmd_decompose(const LoadOptions& opts) {
    const LoadedGraph g = load(opts);
    std::visit(
        [](const auto& inner) {
            const auto basis = mixed_cycle_basis(inner);
            const auto fixed = fixed_subspace(inner);
            const auto projected = projected_index(inner);
            std::cout << "dim S_free = " << basis.dimension
                      << "   dim S_fixed = " << fixed.dimension << '\n';
            for (const auto& v : basis.vectors) {
                std::cout << "cycle vector:";
                for (int x : v) std::cout << ' ' << x;
                std::cout << '\n';
            }
            std::cout << "projected index = (" << projected.index.n_minus << ", "
                      << projected.index.n_zero << ", " << projected.index.n_plus << ")\n";
            std::cout << "block structure " << (projected.block_structure_ok ? "ok" : "VIOLATED")
                      << " (max cross-block " << projected.max_cross_block << ")\n";
        },
        g.graph);
    return 0;
}

int cmd_asymptotics(const LoadOptions& opts, const std::string& limit) {
    const LoadedGraph g = load(opts);
    const SignedGraph<double> real = g.as_real();
    const auto print = [&](const char* name, AsymptoticLimit l) {
        const AsymptoticSpectrum s = asymptotic_spectrum(real, l);
        std::cout.precision(12);
        std::cout << name << " linear rates:";
        for (double v : s.linear_rates) std::cout << ' ' << v;
        std::cout << "\n" << name << " finite limits:";
        for (double v : s.finite_limits) std::cout << ' ' << v;
        std::cout << '\n';
    };
    if (limit == "inf" || limit == "both") print("t->inf", AsymptoticLimit::TowardInfinity);
    if (limit == "0" || limit == "both") print("t->0", AsymptoticLimit::TowardZero);
    return 0;
}

int cmd_gershgorin(const LoadOptions& opts) {
    const LoadedGraph g = load(opts);
    const GershgorinReport rep = gershgorin(g.as_real());
    std::cout.precision(12);
    for (std::size_t i = 0; i < rep.discs.size(); ++i)
        std::cout << "disc " << i << ": center " << rep.discs[i].center << ", radius "
                  << rep.discs[i].radius << '\n';
    std::cout << "mixed discs: " << rep.n_mixed << '\n';
    if (rep.comparison_applicable)
        std::cout << "tau + 1 = " << rep.tau + 1 << " -> "
                  << (rep.bound_ok ? "dominated" : "VIOLATED") << '\n';
    return rep.comparison_applicable && !rep.bound_ok ? 1 : 0;
}

int cmd_ensemble(const EnsembleConfig& config, const std::string& prefix) {
    const EnsembleResult result = run_ensemble(config);
    int rejected_disconnected = 0, rejected_empty = 0;
    for (const auto& rec : result.records) {
        if (rec.rejection == EnsembleRecord::Rejection::PositivePartDisconnected)
            ++rejected_disconnected;
        if (rec.rejection == EnsembleRecord::Rejection::NegativePartEmpty) ++rejected_empty;
    }

    {
        std::ofstream records(prefix + "_records.csv");
        if (!records) throw Error("cannot write '" + prefix + "_records.csv'");
        records.precision(17);
        records << "sample,accepted,rejection,t_star\n";
        for (const auto& rec : result.records) {
            records << rec.sample << ',' << (rec.accepted ? 1 : 0) << ',';
            switch (rec.rejection) {
            case EnsembleRecord::Rejection::None: records << "none"; break;
            case EnsembleRecord::Rejection::PositivePartDisconnected:
                records << "positive-part-disconnected";
                break;
            case EnsembleRecord::Rejection::NegativePartEmpty:
                records << "negative-part-empty";
                break;
            }
            records << ',';
            if (rec.accepted) records << rec.t_star;
            records << '\n';
        }
    }

    nlohmann::json summary;
    summary["n"] = config.n;
    summary["p_plus"] = config.p_plus;
    summary["p_minus"] = config.p_minus;
    summary["samples"] = config.samples;
    summary["seed"] = config.seed;
    summary["accepted"] = result.summary.count;
    summary["rejected_positive_part_disconnected"] = rejected_disconnected;
    summary["rejected_negative_part_empty"] = rejected_empty;
    summary["mean"] = result.summary.mean;
    summary["stddev"] = result.summary.stddev;
    {
        std::ofstream sfile(prefix + "_summary.json");
        if (!sfile) throw Error("cannot write '" + prefix + "_summary.json'");
        sfile << summary.dump(2) << '\n';
    }

    const auto write_qq = [&](QQReference ref, const std::string& name) {
        if (result.summary.count < 10) return;
        std::ofstream qq(prefix + "_qq_" + name + ".csv");
        if (!qq) throw Error("cannot write qq csv");
        qq.precision(17);
        qq << "theoretical,sample\n";
        for (const auto& [theo, sample] : qq_data(result.summary, ref))
            qq << theo << ',' << sample << '\n';
    };
    write_qq(QQReference::Normal, "normal");
    write_qq(QQReference::LogNormal, "lognormal");

    std::cout << "accepted " << result.summary.count << "/" << config.samples << ", mean t* = "
              << result.summary.mean << ", stddev = " << result.summary.stddev << '\n';
    return 0;
}

template <class W>
int verify_graph(const SignedGraph<W>& g, const EnumerationLimits& limits) {
    int failures = 0;
    const auto report = [&](const std::string& name, bool ok, const std::string& note = "") {
        std::cout << (ok ? "[PASS] " : "[FAIL] ") << name;
        if (!note.empty()) std::cout << " (" << note << ")";
        std::cout << '\n';
        if (!ok) ++failures;
    };
    const auto skip = [](const std::string& name, const std::string& why) {
        std::cout << "[SKIP] " << name << " (" << why << ")\n";
    };

    if (!is_connected(g)) {
        std::cout << "graph is disconnected; only component counts are meaningful\n";
        return 0;
    }

    const CrossingPolynomial<W> poly = crossing_polynomial(g);

    // deletion-contraction vs brute-force enumeration
    try {
        const auto trees = enumerate_spanning_trees(g, limits);
        std::vector<W> bucketed(static_cast<std::size_t>(g.vertex_count()), W(0));
        for (const auto& t : trees)
            bucketed[static_cast<std::size_t>(t.negative_edges)] += weight_abs(t.pi);
        bool match = true;
        for (std::size_t k = 0; k < bucketed.size(); ++k) {
            if constexpr (is_exact_weight_v<W>) {
                if (bucketed[k] != poly.coefficients[k]) match = false;
            } else {
                if (std::abs(bucketed[k] - poly.coefficients[k]) >
                    1e-9 * std::max(1.0, std::abs(bucketed[k])))
                    match = false;
            }
        }
        report("crossing polynomial vs spanning-tree enumeration", match);
    } catch (const TooLargeError&) {
        skip("crossing polynomial vs spanning-tree enumeration", "beyond enumeration budget");
    }

    // dct identity on every non-loop edge
    {
        bool ok = true;
        const W m = tree_constant(g);
        for (int e = 0; e < static_cast<int>(g.edge_count()); ++e) {
            const auto& edge = g.edges()[static_cast<std::size_t>(e)];
            W rhs;
            if (edge.is_loop()) {
                rhs = tree_constant(delete_edge(g, e), DisconnectedPolicy::ZeroValue);
            } else {
                rhs = tree_constant(delete_edge(g, e), DisconnectedPolicy::ZeroValue) +
                      edge.weight *
                          tree_constant(contract_edge(g, e).graph, DisconnectedPolicy::ZeroValue);
            }
            if constexpr (is_exact_weight_v<W>) {
                if (rhs != m) ok = false;
            } else {
                if (std::abs(rhs - m) > 1e-9 * std::max(1.0, std::abs(m))) ok = false;
            }
        }
        report("deletion-contraction identity edge-by-edge", ok);
    }

    // sturm vs gsep roots
    if constexpr (is_exact_weight_v<W>) {
        if (g.has_negative_edges() && components(positive_part(g)).n_components >= 1) {
            const RootList sturm = polynomial_roots(poly);
            const RootList gsep = gsep_roots(to_real(g));
            std::vector<double> a, b;
            for (const auto& r : sturm.roots)
                for (int i = 0; i < r.multiplicity; ++i) a.push_back(r.value);
            for (const auto& r : gsep.roots)
                for (int i = 0; i < r.multiplicity; ++i) b.push_back(r.value);
            bool ok = a.size() == b.size();
            for (std::size_t i = 0; ok && i < a.size(); ++i)
                if (std::abs(a[i] - b[i]) > 1e-6 * std::max(1.0, std::abs(a[i]))) ok = false;
            report("sturm roots vs gsep eigenvalues", ok);
        } else {
            skip("sturm roots vs gsep eigenvalues", "no negative edges");
        }
    }

    // topological bounds at t = 1
    report("index bounds", check_bounds(to_real(g)).all_ok);

    // homology decomposition
    {
        const Flexibility f = flexibility(g);
        const MixedCycleBasis basis = mixed_cycle_basis(g);
        report("mixed-cycle dimension equals tau", basis.dimension == f.tau,
               "dim = " + std::to_string(basis.dimension) + ", tau = " + std::to_string(f.tau));
        const FixedSubspace fixed = fixed_subspace(g);
        bool ortho = true;
        for (const auto& free_vec : basis.vectors) {
            for (const auto& fixed_vec : fixed.basis) {
                long long dot = 0;
                for (std::size_t i = 0; i < free_vec.size(); ++i)
                    dot += static_cast<long long>(free_vec[i]) * fixed_vec[i];
                if (dot != 0) ortho = false;
            }
        }
        report("S_free orthogonal to S_fixed", ortho);
        report("dimensions add to N", basis.dimension + fixed.dimension == g.vertex_count());
        const ProjectedIndexReport projected = projected_index(g);
        const bool idx_ok = projected.index.n_minus == f.c_minus - 1 &&
                            projected.index.n_zero == 1 &&
                            projected.index.n_plus == f.c_plus - 1;
        report("projected index equals (c(G-)-1, 1, c(G+)-1)",
               idx_ok && projected.block_structure_ok);
    }
    return failures;
}

int cmd_verify(const LoadOptions& opts, int cap) {
    const LoadedGraph g = load(opts);
    EnumerationLimits limits;
    limits.max_vertices = cap;
    const int failures =
        std::visit([&](const auto& inner) { return verify_graph(inner, limits); }, g.graph);
    if (failures > 0) {
        std::cout << failures << " check(s) failed\n";
        return 1;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"spectral-topological analysis of signed weighted graphs"};
    app.require_subcommand(1);

    LoadOptions load_opts;
    AnalysisOptions aopts;
    std::string format = "text";
    std::string method = "polynomial";
    std::string roots_method;
    std::string limit = "both";
    std::string out_path;
    std::string prefix = "ensemble";
    double tmax = 0.0;
    int points = 121;
    int cap = 12;
    EnsembleConfig config;

    auto* analyze = app.add_subcommand("analyze", "full report for one graph");
    add_load_options(analyze, load_opts);
    analyze->add_option("--format", format, "json or text")
        ->check(CLI::IsMember({"json", "text"}));
    analyze->add_option("--tol", aopts.zero_tolerance, "zero tolerance for the inertia");
    analyze->add_flag("--topology-only", aopts.topology_only, "components and flexibility only");
    analyze->add_flag("--full", aopts.force_full, "dense analysis even for large graphs");

    auto* poly = app.add_subcommand("poly", "crossing polynomial coefficients");
    add_load_options(poly, load_opts);

    auto* roots = app.add_subcommand("roots", "roots of the crossing polynomial");
    add_load_options(roots, load_opts);
    roots->add_option("--method", roots_method, "sturm (exact) or gsep (numeric)")
        ->check(CLI::IsMember({"sturm", "gsep"}));

    auto* tstar = app.add_subcommand("tstar", "bifurcation point of the homotopy");
    add_load_options(tstar, load_opts);
    tstar->add_option("--method", method, "polynomial or bisection")
        ->check(CLI::IsMember({"polynomial", "bisection"}));

    auto* curves = app.add_subcommand("curves", "eigenvalue curves CSV over a t grid");
    add_load_options(curves, load_opts);
    curves->add_option("--tmax", tmax, "grid upper end (default: bracket automatically)");
    curves->add_option("--points", points, "grid size")->check(CLI::PositiveNumber);
    curves->add_option("--out", out_path, "output CSV path (default stdout)");

    auto* decompose = app.add_subcommand("decompose", "mixed-cycle basis and fixed subspace");
    add_load_options(decompose, load_opts);

    auto* asym = app.add_subcommand("asymptotics", "asymptotic spectra of the homotopy");
    add_load_options(asym, load_opts);
    asym->add_option("--limit", limit, "0, inf or both")->check(CLI::IsMember({"0", "inf", "both"}));

    auto* gersh = app.add_subcommand("gershgorin", "Gershgorin discs and the tau comparison");
    add_load_options(gersh, load_opts);

    auto* ens = app.add_subcommand("ensemble", "random signed Erdos-Renyi t* statistics");
    ens->add_option("--n", config.n, "vertex count")->check(CLI::PositiveNumber);
    ens->add_option("--p-plus", config.p_plus, "positive edge probability")
        ->check(CLI::Range(0.0, 1.0));
    ens->add_option("--p-minus", config.p_minus, "negative edge probability")
        ->check(CLI::Range(0.0, 1.0));
    ens->add_option("--samples", config.samples, "sample count")->check(CLI::PositiveNumber);
    ens->add_option("--seed", config.seed, "random seed");
    ens->add_option("--threads", config.threads, "worker threads (default: SIGNET_THREADS or all)");
    std::string ens_method = "polynomial";
    ens->add_option("--method", ens_method, "t* method: polynomial or bisection")
        ->check(CLI::IsMember({"polynomial", "bisection"}));
    ens->add_option("--out-prefix", prefix, "output file prefix");

    auto* verify = app.add_subcommand("verify", "run the oracle cross-check suite on the input");
    add_load_options(verify, load_opts);
    verify->add_option("--cap", cap, "spanning-tree enumeration vertex cap");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(analyze)) return cmd_analyze(load_opts, aopts, format);
        if (app.got_subcommand(poly)) return cmd_poly(load_opts);
        if (app.got_subcommand(roots)) {
            if (roots_method.empty()) {
                const LoadedGraph probe = load(load_opts);
                roots_method = probe.mode == WeightMode::ExactRational ? "sturm" : "gsep";
            }
            return cmd_roots(load_opts, roots_method);
        }
        if (app.got_subcommand(tstar)) return cmd_tstar(load_opts, method);
        if (app.got_subcommand(curves)) return cmd_curves(load_opts, tmax, points, out_path);
        if (app.got_subcommand(decompose)) return cmd_decompose(load_opts);
        if (app.got_subcommand(asym)) return cmd_asymptotics(load_opts, limit);
        if (app.got_subcommand(gersh)) return cmd_gershgorin(load_opts);
        if (app.got_subcommand(ens)) {
            config.t_star_method = ens_method == "bisection" ? EnsembleConfig::Method::Bisection
                                                             : EnsembleConfig::Method::Polynomial;
            return cmd_ensemble(config, prefix);
        }
        if (app.got_subcommand(verify)) return cmd_verify(load_opts, cap);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
