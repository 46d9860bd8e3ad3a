#pragma once

// File formats and inline specs understood by the command-line tool.
//
//   graph:       {"n": 4, "edges": [[0, 1], ...]}
//   walk:        {"graph": <graph>, "coin_dim": c, "moves": [[...], ...]}
//   protocol:    {"walk": <walk or spec>, "kind": "atom"|"concat"|"commutator",
//                 "steps": [{"coin": M, "generator": M, "slope": a}],
//                 "children": [<protocol or name>, <protocol or name>]}
//   matrix M:    rows of [re, im] pairs, or a flat row-major list of pairs;
//                a bare number is a real entry.
//
// Walk specs: "cycle:N", "lattice:N,D", "example", "file:PATH".
// Protocol specs: "strauch", "evencyc", "file:PATH".

#include "qwl/graphs.hpp"
#include "qwl/limits.hpp"
#include "qwl/walks.hpp"

#include <json.hpp>

#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace qwl {

using Json = nlohmann::ordered_json;

Graph graph_from_json(const Json& j);
Json graph_to_json(const Graph& g);

CoinedWalk walk_from_json(const Json& j);
Json walk_to_json(const CoinedWalk& w);

CMatrix matrix_from_json(const Json& j);
Json matrix_to_json(const CMatrix& m);

/// Reads and parses a JSON file; BadSpec if it cannot be read or parsed.
Json read_json_file(const std::string& path);

std::shared_ptr<const CoinedWalk> resolve_walk(std::string_view spec);

/// Builtin names use `walk`, which must be a cycle walk.
ProtocolExpr resolve_protocol(std::string_view spec, std::shared_ptr<const CoinedWalk> walk);

/// `parent_walk` is used when the object has no "walk" field.
ProtocolExpr protocol_from_json(const Json& j, std::shared_ptr<const CoinedWalk> parent_walk = nullptr);

/// Scientific notation with 17 significant digits.
std::string format_double(double v);

/// Deterministic JSON text: two-space indentation, doubles through
/// format_double, non-finite doubles as null.
std::string dump_json(const Json& j);

/// Parses "a,b,c" into integers; BadSpec on malformed input.
std::vector<std::int64_t> parse_int_list(std::string_view text);

/// Splits CSV text into rows of fields. No quoting support; the reports we
/// write never contain commas inside fields.
std::vector<std::vector<std::string>> parse_csv(std::string_view text);

}  // namespace qwl
