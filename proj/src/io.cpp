#include "qwl/io.hpp"

#include "qwl/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace qwl {

namespace {

[[noreturn]] void bad_spec(const std::string& message) { throw Error(ErrorKind::BadSpec, message); }

int parse_int(std::string_view token, std::string_view context) {
  int value = 0;
  const auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || end != token.data() + token.size()) {
    bad_spec("malformed integer '" + std::string(token) + "' in '" + std::string(context) + "'");
  }
  return value;
}

template <typename T>
T field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad_spec(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    bad_spec(std::string("field '") + key + "' has the wrong type");
  }
}

Complex entry_from_json(const Json& e) {
  if (e.is_number()) return {e.get<double>(), 0.0};
  if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
    return {e[0].get<double>(), e[1].get<double>()};
  }
  bad_spec("matrix entry must be a number or a [re, im] pair");
}

bool is_entry(const Json& e) { return e.is_number() || (e.is_array() && e.size() == 2 && e[0].is_number()); }

void dump_into(const Json& j, std::string& out, int indent) {
  const std::string pad(indent, ' ');
  const std::string inner(indent + 2, ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out += ",\n";
        first = false;
        out += inner + Json(key).dump() + ": ";
        dump_into(value, out, indent + 2);
      }
      out += "\n" + pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // Arrays of scalars stay on one line.
      const bool flat = std::all_of(j.begin(), j.end(), [](const Json& e) { return e.is_primitive(); });
      out += "[";
      bool first = true;
      for (const auto& value : j) {
        if (!first) out += flat ? ", " : ",";
        first = false;
        if (!flat) out += "\n" + inner;
        dump_into(value, out, indent + 2);
      }
      if (!flat) out += "\n" + pad;
      out += "]";
      return;
    }
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      out += std::isfinite(v) ? format_double(v) : "null";
      return;
    }
    default:
      out += j.dump();
  }
}

}  // namespace

Graph graph_from_json(const Json& j) {
  const int n = field<int>(j, "n");
  const Json edges = field<Json>(j, "edges");
  if (!edges.is_array()) bad_spec("'edges' must be an array");
  std::vector<Edge> list;
  for (const auto& e : edges) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer()) {
      bad_spec("each edge must be a pair of integers");
    }
    list.emplace_back(e[0].get<int>(), e[1].get<int>());
  }
  return Graph(n, std::move(list));
}

Json graph_to_json(const Graph& g) {
  Json edges = Json::array();
  for (const auto& [u, v] : g.edges()) edges.push_back({u, v});
  return Json{{"n", g.vertex_count()}, {"edges", edges}};
}

CoinedWalk walk_from_json(const Json& j) {
  Graph g = graph_from_json(field<Json>(j, "graph"));
  const int c = field<int>(j, "coin_dim");
  const auto moves = field<std::vector<std::vector<int>>>(j, "moves");
  if (static_cast<int>(moves.size()) != c) {
    throw Error(ErrorKind::DimMismatch, "coin_dim is " + std::to_string(c) + " but 'moves' has " +
                                            std::to_string(moves.size()) + " rows");
  }
  return graph_coined_walk(std::move(g), moves);
}

Json walk_to_json(const CoinedWalk& w) {
  return Json{{"graph", graph_to_json(w.graph())}, {"coin_dim", w.coin_dim()}, {"moves", w.moves()}};
}

CMatrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) bad_spec("matrix must be a non-empty array");
  // A flat list of entries needs a square length; otherwise rows of real
  // numbers such as [[1, 0], [0, 1]] are read as rows.
  const auto n = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(j.size()))));
  if (n * n == static_cast<Eigen::Index>(j.size()) && std::all_of(j.begin(), j.end(), is_entry)) {
    CMatrix m(n, n);
    for (Eigen::Index i = 0; i < n * n; ++i) m(i / n, i % n) = entry_from_json(j[i]);
    return m;
  }
  const auto rows = static_cast<Eigen::Index>(j.size());
  if (!j[0].is_array() || j[0].empty()) bad_spec("matrix rows must be non-empty arrays");
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  CMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    if (!j[r].is_array() || static_cast<Eigen::Index>(j[r].size()) != cols) bad_spec("matrix rows differ in length");
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = entry_from_json(j[r][c]);
  }
  return m;
}

Json matrix_to_json(const CMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(Json::array({m(r, c).real(), m(r, c).imag()}));
    rows.push_back(row);
  }
  return rows;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad_spec("cannot read '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    bad_spec("'" + path + "' is not valid JSON: " + e.what());
  }
}

std::shared_ptr<const CoinedWalk> resolve_walk(std::string_view spec) {
  const std::string text(spec);
  try {
    if (text == "example") return std::make_shared<const CoinedWalk>(example_walk());
    if (text.starts_with("cycle:")) {
      return std::make_shared<const CoinedWalk>(cycle_walk(parse_int(spec.substr(6), spec)));
    }
    if (text.starts_with("lattice:")) {
      const auto args = spec.substr(8);
      const auto comma = args.find(',');
      if (comma == std::string_view::npos) bad_spec("lattice spec needs N,D: '" + text + "'");
      return std::make_shared<const CoinedWalk>(
          lattice_walk(parse_int(args.substr(0, comma), spec), parse_int(args.substr(comma + 1), spec)));
    }
    if (text.starts_with("file:")) return std::make_shared<const CoinedWalk>(walk_from_json(read_json_file(text.substr(5))));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::TooSmall) bad_spec("'" + text + "': " + e.what());
    throw;
  }
  bad_spec("unknown walk spec '" + text + "'");
}

ProtocolExpr resolve_protocol(std::string_view spec, std::shared_ptr<const CoinedWalk> walk) {
  const std::string text(spec);
  if (text == "strauch" || text == "evencyc") {
    if (!walk || !is_cycle_walk(*walk)) {
      throw Error(ErrorKind::NotACycle, "protocol '" + text + "' needs a cycle walk");
    }
    return text == "strauch" ? strauch_protocol(walk->walker_dim()) : evencyc_protocol(walk->walker_dim());
  }
  if (text.starts_with("file:")) return protocol_from_json(read_json_file(text.substr(5)), std::move(walk));
  bad_spec("unknown protocol spec '" + text + "'");
}

ProtocolExpr protocol_from_json(const Json& j, std::shared_ptr<const CoinedWalk> parent_walk) {
  if (j.is_string()) return resolve_protocol(j.get<std::string>(), std::move(parent_walk));
  if (!j.is_object()) bad_spec("protocol must be an object or a name");

  std::shared_ptr<const CoinedWalk> walk = std::move(parent_walk);
  if (j.contains("walk")) {
    const Json& w = j.at("walk");
    walk = w.is_string() ? resolve_walk(w.get<std::string>()) : std::make_shared<const CoinedWalk>(walk_from_json(w));
  }

  const auto kind = field<std::string>(j, "kind");
  if (kind == "atom") {
    if (!walk) bad_spec("atom protocol has no walk");
    const Json steps = field<Json>(j, "steps");
    if (!steps.is_array()) bad_spec("'steps' must be an array");
    std::vector<ProtocolStep> list;
    for (const auto& s : steps) {
      list.push_back({matrix_from_json(field<Json>(s, "coin")), matrix_from_json(field<Json>(s, "generator")),
                      s.contains("slope") ? field<double>(s, "slope") : 1.0});
    }
    return ProtocolExpr::atom(walk, std::move(list));
  }
  if (kind == "concat" || kind == "commutator") {
    const Json children = field<Json>(j, "children");
    if (!children.is_array() || children.size() != 2) bad_spec("'" + kind + "' needs exactly two children");
    ProtocolExpr left = protocol_from_json(children[0], walk);
    ProtocolExpr right = protocol_from_json(children[1], walk);
    return kind == "concat" ? ProtocolExpr::concat(std::move(left), std::move(right))
                            : ProtocolExpr::commutator(std::move(left), std::move(right));
  }
  bad_spec("unknown protocol kind '" + kind + "'");
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

std::string dump_json(const Json& j) {
  std::string out;
  dump_into(j, out, 0);
  out += "\n";
  return out;
}

std::vector<std::int64_t> parse_int_list(std::string_view text) {
  std::vector<std::int64_t> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto token = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    std::int64_t value = 0;
    const auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || ec != std::errc() || end != token.data() + token.size()) {
      bad_spec("malformed integer list '" + std::string(text) + "'");
    }
    out.push_back(value);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::vector<std::vector<std::string>> parse_csv(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
      const auto comma = line.find(',', start);
      fields.push_back(line.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    rows.push_back(std::move(fields));
  }
  return rows;
}

}  // namespace qwl
