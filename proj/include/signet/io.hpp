#ifndef SIGNET_IO_HPP
#define SIGNET_IO_HPP

#include "signet/graph.hpp"

#include <charconv>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <istream>
#include <map>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

namespace signet {

enum class WeightMode { ExactRational, Floating };

using GraphVariant = std::variant<SignedGraph<Rational>, SignedGraph<double>>;

/// Parsed graph plus the persisted id map (new id -> original file id).
struct LoadedGraph {
    GraphVariant graph;
    std::vector<std::int64_t> original_ids;
    WeightMode mode = WeightMode::ExactRational;

    int vertex_count() const {
        return std::visit([](const auto& g) { return g.vertex_count(); }, graph);
    }
    std::size_t edge_count() const {
        return std::visit([](const auto& g) { return g.edge_count(); }, graph);
    }
    const SignedGraph<Rational>& rational() const {
        return std::get<SignedGraph<Rational>>(graph);
    }
    const SignedGraph<double>& real() const { return std::get<SignedGraph<double>>(graph); }
    SignedGraph<double> as_real() const {
        return std::visit([](const auto& g) { return to_real(g); }, graph);
    }
};

struct ParseOptions {
    /// Duplicate undirected pairs: error when false, summed when true.
    bool multigraph = false;
    /// Zero weights (including duplicates summing to zero): error when false.
    bool drop_zero_weights = false;
};

namespace detail {

struct RawEdge {
    std::int64_t u, v;
    std::string weight_token;
    long line;
};

inline bool parse_int64(std::string_view token, std::int64_t& out) {
    const auto* begin = token.data();
    const auto* end = token.data() + token.size();
    const auto res = std::from_chars(begin, end, out);
    return res.ec == std::errc() && res.ptr == end;
}

} // namespace detail

/// Reads the "u v w" edge-list format: whitespace-separated tokens, '#'
/// comment lines, optional "# vertices N" header. Weights parse as exact
/// rationals ("p", "p/q") when every token has that shape, as doubles
/// otherwise. With a header, ids are used literally and must lie in [0, N);
/// without one, arbitrary non-negative ids are compacted in ascending order
/// and the id map is kept for reports.
inline LoadedGraph parse_edge_list(std::istream& in, const ParseOptions& options = {}) {
    std::vector<detail::RawEdge> raw;
    std::int64_t declared_vertices = -1;
    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first)) continue; // blank
        if (first[0] == '#') {
            std::string word;
            if (ls >> word && word == "vertices") {
                std::int64_t n;
                if (!(ls >> n) || n < 1) throw ParseError("bad vertex-count header", line_no);
                declared_vertices = n;
            }
            continue;
        }
        detail::RawEdge e;
        e.line = line_no;
        if (!detail::parse_int64(first, e.u) || e.u < 0)
            throw ParseError("expected a non-negative vertex id, got '" + first + "'", line_no);
        std::string second, third, extra;
        if (!(ls >> second >> third))
            throw ParseError("expected 'u v w'", line_no);
        if (ls >> extra) throw ParseError("trailing token '" + extra + "'", line_no);
        if (!detail::parse_int64(second, e.v) || e.v < 0)
            throw ParseError("expected a non-negative vertex id, got '" + second + "'", line_no);
        if (e.u == e.v) throw ParseError("loop edges are not accepted from files", line_no);
        e.weight_token = third;
        raw.push_back(std::move(e));
    }

    // id mapping
    std::map<std::int64_t, int> id_map;
    if (declared_vertices >= 0) {
        for (const auto& e : raw)
            if (e.u >= declared_vertices || e.v >= declared_vertices)
                throw ParseError("vertex id exceeds the declared vertex count", e.line);
        for (std::int64_t v = 0; v < declared_vertices; ++v)
            id_map.emplace(v, static_cast<int>(v));
    } else {
        for (const auto& e : raw) {
            id_map.emplace(e.u, 0);
            id_map.emplace(e.v, 0);
        }
        int next = 0;
        for (auto& [orig, compact] : id_map) compact = next++;
        if (id_map.empty()) throw ParseError("no edges in input", 0);
    }
    const int n = declared_vertices >= 0 ? static_cast<int>(declared_vertices)
                                         : static_cast<int>(id_map.size());
    std::vector<std::int64_t> original_ids(static_cast<std::size_t>(n));
    for (const auto& [orig, compact] : id_map)
        original_ids[static_cast<std::size_t>(compact)] = orig;

    // weight mode: rational iff every token parses as one
    bool rational_mode = true;
    for (const auto& e : raw)
        if (!parse_rational(e.weight_token)) {
            rational_mode = false;
            break;
        }

    const auto build = [&](auto parse_weight, auto zero) -> LoadedGraph {
        using W = decltype(zero);
        std::map<std::pair<int, int>, W> acc;
        std::map<std::pair<int, int>, long> first_line;
        for (const auto& e : raw) {
            const W w = parse_weight(e);
            int u = id_map.at(e.u), v = id_map.at(e.v);
            if (u > v) std::swap(u, v);
            const auto key = std::make_pair(u, v);
            if (acc.count(key)) {
                if (!options.multigraph)
                    throw DuplicateEdgeError("duplicate edge (" + std::to_string(e.u) + ", " +
                                                 std::to_string(e.v) + ") in simple mode",
                                             e.line);
                acc[key] += w;
            } else {
                acc.emplace(key, w);
                first_line.emplace(key, e.line);
            }
        }
        std::vector<SignedEdge<W>> edges;
        for (const auto& [key, w] : acc) {
            if (w == W(0)) {
                if (!options.drop_zero_weights)
                    throw ZeroWeightError("zero weight on edge at line " +
                                          std::to_string(first_line.at(key)));
                continue;
            }
            edges.push_back({key.first, key.second, w});
        }
        LoadedGraph out{GraphVariant{SignedGraph<W>::multigraph(n, std::move(edges))},
                        std::move(original_ids),
                        std::is_same_v<W, Rational> ? WeightMode::ExactRational
                                                    : WeightMode::Floating};
        return out;
    };

    if (rational_mode) {
        return build(
            [&](const detail::RawEdge& e) {
                auto r = parse_rational(e.weight_token);
                if (!r) throw ParseError("bad rational weight '" + e.weight_token + "'", e.line);
                return *r;
            },
            Rational(0));
    }
    return build(
        [&](const detail::RawEdge& e) {
            try {
                std::size_t used = 0;
                const double w = std::stod(e.weight_token, &used);
                if (used != e.weight_token.size() || !std::isfinite(w))
                    throw ParseError("bad weight '" + e.weight_token + "'", e.line);
                return w;
            } catch (const ParseError&) {
                throw;
            } catch (const std::exception&) {
                throw ParseError("bad weight '" + e.weight_token + "'", e.line);
            }
        },
        0.0);
}

inline LoadedGraph parse_edge_list_file(const std::string& path, const ParseOptions& options = {}) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "'");
    return parse_edge_list(in, options);
}

/// Canonical serialized form: vertex-count header plus one "u v w" line per
/// edge in storage order. Rationals are written as "p/q", doubles with 17
/// significant digits, so parse -> write -> parse is the identity.
template <class W>
void write_edge_list(std::ostream& out, const SignedGraph<W>& g) {
    out << "# vertices " << g.vertex_count() << '\n';
    for (const auto& e : g.edges()) {
        out << e.u << ' ' << e.v << ' ';
        if constexpr (is_exact_weight_v<W>)
            out << to_string(e.weight);
        else
            out << std::setprecision(17) << e.weight;
        out << '\n';
    }
}

inline void write_edge_list(std::ostream& out, const LoadedGraph& g) {
    std::visit([&](const auto& inner) { write_edge_list(out, inner); }, g.graph);
}

// ---------------------------------------------------------------------------
// Directed-data symmetrization
// ---------------------------------------------------------------------------

struct DirectedEntry {
    std::int64_t from = 0;
    std::int64_t to = 0;
    int sign = 0; // +1 or -1
};

/// Symmetrizes fan/foe-style directed signs: agreeing or one-sided relations
/// keep their sign, opposite directions cancel to no edge. A repeated ordered
/// pair overwrites the earlier entry. Ids are compacted as in parse_edge_list.
inline LoadedGraph symmetrize_directed(std::span<const DirectedEntry> entries) {
    std::map<std::pair<std::int64_t, std::int64_t>, int> directed;
    std::map<std::int64_t, int> id_map;
    for (const auto& e : entries) {
        if (e.sign != 1 && e.sign != -1)
            throw PreconditionError("directed signs must be +1 or -1");
        if (e.from < 0 || e.to < 0) throw PreconditionError("vertex ids must be non-negative");
        if (e.from == e.to) continue; // self-relations carry no edge
        directed[{e.from, e.to}] = e.sign;
        id_map.emplace(e.from, 0);
        id_map.emplace(e.to, 0);
    }
    int next = 0;
    for (auto& [orig, compact] : id_map) compact = next++;
    std::vector<std::int64_t> original_ids(id_map.size());
    for (const auto& [orig, compact] : id_map)
        original_ids[static_cast<std::size_t>(compact)] = orig;

    std::vector<SignedEdge<Rational>> edges;
    for (const auto& [key, sign] : directed) {
        const auto& [i, j] = key;
        if (i > j) continue; // handle each unordered pair once, from its (i<j) side
        const auto back = directed.find({j, i});
        const int forward = sign;
        const int backward = back == directed.end() ? 0 : back->second;
        if (forward * backward == -1) continue; // conflict cancels the edge
        const int undirected = forward != 0 ? forward : backward;
        edges.push_back({id_map.at(i), id_map.at(j), Rational(undirected)});
    }
    // pairs present only as (j, i) with j > i
    for (const auto& [key, sign] : directed) {
        const auto& [j, i] = key;
        if (j < i) continue;
        if (directed.count({i, j})) continue;
        edges.push_back({id_map.at(i), id_map.at(j), Rational(sign)});
    }
    const int n = static_cast<int>(id_map.size());
    return {GraphVariant{SignedGraph<Rational>::multigraph(std::max(n, 1), std::move(edges))},
            std::move(original_ids), WeightMode::ExactRational};
}

} // namespace signet

#endif // SIGNET_IO_HPP
