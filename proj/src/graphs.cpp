#include "qwl/graphs.hpp"

#include "qwl/error.hpp"

#include <algorithm>
#include <string>

namespace qwl {

Graph::Graph(int n, std::vector<Edge> edges) : n_(n) {
  if (n < 1) throw Error(ErrorKind::InvalidGraph, "vertex count must be positive, got " + std::to_string(n));
  for (auto& [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n) {
      throw Error(ErrorKind::InvalidGraph,
                  "edge (" + std::to_string(u) + "," + std::to_string(v) + ") out of range for n=" + std::to_string(n));
    }
    if (u == v) throw Error(ErrorKind::InvalidGraph, "self-loop at vertex " + std::to_string(u));
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  edges_ = std::move(edges);
}

bool Graph::has_edge(int u, int v) const {
  if (u > v) std::swap(u, v);
  return std::binary_search(edges_.begin(), edges_.end(), Edge{u, v});
}

std::vector<int> Graph::degrees() const {
  std::vector<int> deg(n_, 0);
  for (const auto& [u, v] : edges_) {
    ++deg[u];
    ++deg[v];
  }
  return deg;
}

Graph cycle_graph(int n) {
  if (n < 3) throw Error(ErrorKind::TooSmall, "cycle needs at least 3 vertices, got " + std::to_string(n));
  std::vector<Edge> edges;
  for (int j = 0; j < n; ++j) edges.emplace_back(j, (j + 1) % n);
  return Graph(n, std::move(edges));
}

Graph cartesian_product(const Graph& g1, const Graph& g2) {
  const int n1 = g1.vertex_count();
  const int n2 = g2.vertex_count();
  std::vector<Edge> edges;
  for (int a = 0; a < n1; ++a) {
    for (const auto& [u, v] : g2.edges()) edges.emplace_back(a * n2 + u, a * n2 + v);
  }
  for (const auto& [u, v] : g1.edges()) {
    for (int b = 0; b < n2; ++b) edges.emplace_back(u * n2 + b, v * n2 + b);
  }
  return Graph(n1 * n2, std::move(edges));
}

Graph lattice_graph(int n, int d) {
  if (d < 1) throw Error(ErrorKind::TooSmall, "lattice dimension must be at least 1");
  Graph g = cycle_graph(n);
  const Graph factor = g;
  for (int l = 1; l < d; ++l) g = cartesian_product(g, factor);
  return g;
}

Graph example_graph() { return Graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}); }

CMatrix adjacency(const Graph& g) {
  const int n = g.vertex_count();
  CMatrix a = CMatrix::Zero(n, n);
  for (const auto& [u, v] : g.edges()) {
    a(u, v) = 1.0;
    a(v, u) = 1.0;
  }
  return a;
}

CMatrix laplacian(const Graph& g) {
  CMatrix l = adjacency(g);
  const auto deg = g.degrees();
  for (int j = 0; j < g.vertex_count(); ++j) l(j, j) = -static_cast<double>(deg[j]);
  return l;
}

std::optional<int> regular_degree(const Graph& g) {
  const auto deg = g.degrees();
  if (std::all_of(deg.begin(), deg.end(), [&](int d) { return d == deg.front(); })) return deg.front();
  return std::nullopt;
}

}  // namespace qwl
