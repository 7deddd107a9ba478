#include "support/builders.hpp"
#include "support/corpus.hpp"

#include <signet/io.hpp>
#include <signet/report.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <chrono>
#include <fstream>
#include <sstream>

using namespace signet;

namespace {

LoadedGraph parse_text(const std::string& text, const ParseOptions& options = {}) {
    std::istringstream in(text);
    return parse_edge_list(in, options);
}

/// Minimal structural validator for the subset of JSON Schema the report
/// schema uses: type, required, properties, items.
bool validates(const nlohmann::json& instance, const nlohmann::json& schema) {
    if (schema.contains("type")) {
        const std::string type = schema["type"].get<std::string>();
        if (type == "object" && !instance.is_object()) return false;
        if (type == "array" && !instance.is_array()) return false;
        if (type == "string" && !instance.is_string()) return false;
        if (type == "integer" && !instance.is_number_integer()) return false;
        if (type == "number" && !instance.is_number()) return false;
        if (type == "boolean" && !instance.is_boolean()) return false;
    }
    if (schema.contains("required"))
        for (const auto& key : schema["required"])
            if (!instance.contains(key.get<std::string>())) return false;
    if (schema.contains("properties") && instance.is_object())
        for (const auto& [key, sub] : schema["properties"].items())
            if (instance.contains(key) && !validates(instance.at(key), sub)) return false;
    if (schema.contains("items") && instance.is_array())
        for (const auto& element : instance)
            if (!validates(element, schema["items"])) return false;
    return true;
}

} // namespace

TEST_CASE("edge lists parse with sign, comments and headers") {
    const auto g = parse_text("# a comment\n0 1 1\n1 2 -1\n");
    REQUIRE(g.mode == WeightMode::ExactRational);
    REQUIRE(g.vertex_count() == 3);
    REQUIRE(g.edge_count() == 2);
    const auto& rational = g.rational();
    REQUIRE(rational.edges()[0].weight == Rational(1));
    REQUIRE(rational.edges()[1].weight == Rational(-1));

    const auto fractional = parse_text("0 1 1/3\n");
    REQUIRE(fractional.mode == WeightMode::ExactRational);
    REQUIRE(fractional.rational().edges()[0].weight == Rational(1, 3));

    const auto counted = parse_text("# vertices 5\n0 1 1\n");
    REQUIRE(counted.vertex_count() == 5);
    REQUIRE(counted.original_ids == std::vector<std::int64_t>{0, 1, 2, 3, 4});

    const auto floating = parse_text("0 1 1.5\n1 2 -2\n");
    REQUIRE(floating.mode == WeightMode::Floating);
    REQUIRE(floating.real().edges()[0].weight == 1.5);
    REQUIRE(floating.real().edges()[1].weight == -2.0);
}

TEST_CASE("sparse ids are compacted with a persisted map") {
    const auto g = parse_text("100 7 1\n7 4000 -1\n");
    REQUIRE(g.vertex_count() == 3);
    REQUIRE(g.original_ids == std::vector<std::int64_t>{7, 100, 4000});
    const auto& edges = g.rational().edges();
    REQUIRE(edges[0].u == 0); // (7, 100)
    REQUIRE(edges[0].v == 1);
}

TEST_CASE("parse errors carry line numbers") {
    try {
        parse_text("0 1 1\n0 x 1\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        REQUIRE(e.line() == 2);
    }
    REQUIRE_THROWS_AS(parse_text("0 1\n"), ParseError);
    REQUIRE_THROWS_AS(parse_text("0 1 1 9\n"), ParseError);
    REQUIRE_THROWS_AS(parse_text("0 1 1/0\n"), ParseError);
    REQUIRE_THROWS_AS(parse_text("0 0 1\n"), ParseError);
    REQUIRE_THROWS_AS(parse_text("# vertices 2\n0 5 1\n"), ParseError);
    REQUIRE_THROWS_AS(parse_text(""), ParseError);
    REQUIRE_THROWS_AS(parse_text("0 1 nan\n"), ParseError);
}

TEST_CASE("duplicates and zero weights follow the flags") {
    REQUIRE_THROWS_AS(parse_text("0 1 1\n1 0 2\n"), DuplicateEdgeError);

    ParseOptions multi;
    multi.multigraph = true;
    const auto summed = parse_text("0 1 1\n1 0 2\n", multi);
    REQUIRE(summed.edge_count() == 1);
    REQUIRE(summed.rational().edges()[0].weight == Rational(3));

    REQUIRE_THROWS_AS(parse_text("0 1 0\n"), ZeroWeightError);
    ParseOptions dropping;
    dropping.drop_zero_weights = true;
    REQUIRE(parse_text("0 1 0\n0 2 1\n", dropping).edge_count() == 1);

    // duplicates summing to zero vanish under the drop flag, error otherwise
    ParseOptions both = multi;
    REQUIRE_THROWS_AS(parse_text("0 1 1\n1 0 -1\n", both), ZeroWeightError);
    both.drop_zero_weights = true;
    REQUIRE(parse_text("0 1 1\n1 0 -1\n0 2 2\n", both).edge_count() == 1);
}

TEST_CASE("serialization round-trips exactly") {
    const auto original =
        parse_text("# vertices 6\n0 1 1/3\n1 2 -7/2\n2 3 4\n3 4 -1\n4 5 12345/678\n");
    std::ostringstream out;
    write_edge_list(out, original);
    const auto reparsed = parse_text(out.str());
    REQUIRE(reparsed.mode == WeightMode::ExactRational);
    REQUIRE(reparsed.vertex_count() == original.vertex_count());
    REQUIRE(reparsed.rational().edges().size() == original.rational().edges().size());
    for (std::size_t i = 0; i < original.rational().edges().size(); ++i) {
        const auto& a = original.rational().edges()[i];
        const auto& b = reparsed.rational().edges()[i];
        REQUIRE(a.u == b.u);
        REQUIRE(a.v == b.v);
        REQUIRE(a.weight == b.weight);
    }

    // floating graphs round-trip bit-exactly through 17 significant digits
    const auto noisy = parse_text("0 1 0.1\n1 2 -0.30000000000000004\n2 0 1e-17\n");
    std::ostringstream fout;
    write_edge_list(fout, noisy);
    const auto freparsed = parse_text(fout.str());
    for (std::size_t i = 0; i < noisy.real().edges().size(); ++i)
        REQUIRE(freparsed.real().edges()[i].weight == noisy.real().edges()[i].weight);
}

TEST_CASE("directed symmetrization follows the fan/foe rules") {
    // one-sided relation extends to both directions
    const auto extended = symmetrize_directed(std::vector<DirectedEntry>{{3, 9, 1}});
    REQUIRE(extended.edge_count() == 1);
    REQUIRE(extended.rational().edges()[0].weight == Rational(1));

    // opposite signs cancel
    const auto cancelled =
        symmetrize_directed(std::vector<DirectedEntry>{{1, 2, 1}, {2, 1, -1}, {2, 3, -1}});
    REQUIRE(cancelled.edge_count() == 1); // only (2,3) survives
    REQUIRE(cancelled.rational().edges()[0].weight == Rational(-1));

    // mutual foes stay foes
    const auto foes = symmetrize_directed(std::vector<DirectedEntry>{{0, 1, -1}, {1, 0, -1}});
    REQUIRE(foes.edge_count() == 1);
    REQUIRE(foes.rational().edges()[0].weight == Rational(-1));

    REQUIRE_THROWS_AS(symmetrize_directed(std::vector<DirectedEntry>{{0, 1, 2}}),
                      PreconditionError);
}

TEST_CASE("analysis report is schema-valid and internally consistent") {
    std::ifstream schema_file(std::string(SIGNET_DOCS_DIR) + "/report.schema.json");
    REQUIRE(schema_file.good());
    const auto schema = nlohmann::json::parse(schema_file);

    const auto nine = testgraphs::nine_vertex_example();
    const auto j = analyze_to_json(nine, {});
    REQUIRE(validates(j, schema));

    // root count <= tau and subspace dimensions sum to N
    const int tau = j["flexibility"]["tau"].get<int>();
    int root_multiplicity = 0;
    for (const auto& r : j["roots"])
        if (r["value"].get<double>() > 0) root_multiplicity += r["multiplicity"].get<int>();
    REQUIRE(root_multiplicity <= tau);
    REQUIRE(j["subspaces"]["dim_free"].get<int>() + j["subspaces"]["dim_fixed"].get<int>() ==
            j["n_vertices"].get<int>());

    // float path also validates
    const auto real_report = analyze_to_json(to_real(nine), {});
    REQUIRE(validates(real_report, schema));
    REQUIRE(real_report["mode"] == "float");

    // topology-only reports validate too
    AnalysisOptions topo;
    topo.topology_only = true;
    REQUIRE(validates(analyze_to_json(nine, {}, topo), schema));
}

TEST_CASE("large edge lists stay on the sparse path") {
    // ~5e5 edges over ~2e5 vertices: parse + components + flexibility without
    // any dense matrix work
    const std::string path = std::string(SIGNET_TEST_TMPDIR) + "/large_edges.txt";
    {
        std::ofstream out(path);
        testgraphs::TestRng rng(2024);
        const int n = 200000;
        out << "# vertices " << n << "\n";
        for (int v = 1; v < n; ++v)
            out << rng.below(v) << ' ' << v << ' ' << (rng.chance(0.25) ? -1 : 1) << '\n';
        for (int extra = 0; extra < 300000; ++extra) {
            const int u = rng.below(n), v = rng.below(n);
            if (u != v) out << u << ' ' << v << ' ' << (rng.chance(0.25) ? -1 : 1) << '\n';
        }
    }
    const auto started = std::chrono::steady_clock::now();
    ParseOptions options;
    options.multigraph = true;
    options.drop_zero_weights = true;
    const auto loaded = parse_edge_list_file(path, options);
    REQUIRE(loaded.vertex_count() == 200000);
    REQUIRE(loaded.edge_count() >= 400000);
    const auto& g = loaded.rational();
    REQUIRE(components(g).n_components == 1);
    const auto f = flexibility(g);
    REQUIRE(f.tau >= 0);
    REQUIRE(f.c_plus + f.c_minus <= f.n + 1);
    const auto elapsed = std::chrono::steady_clock::now() - started;
    REQUIRE(std::chrono::duration_cast<std::chrono::seconds>(elapsed).count() < 60);

    AnalysisOptions aopts; // auto-degrades to the topology-only report
    const auto report = analyze_to_json(loaded, aopts);
    REQUIRE(report["topology_only"].get<bool>());
    REQUIRE_FALSE(report.contains("index"));
}
