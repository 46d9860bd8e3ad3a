#pragma once

#include "qwl/numerics.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace qwl {

using Edge = std::pair<int, int>;

/// Finite undirected simple graph. Edges are stored as sorted (u, v) pairs
/// with u < v, deduplicated.
class Graph {
 public:
  /// Throws InvalidGraph for out-of-range vertices or self-loops.
  Graph(int n, std::vector<Edge> edges);

  int vertex_count() const noexcept { return n_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  bool has_edge(int u, int v) const;
  std::vector<int> degrees() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  int n_;
  std::vector<Edge> edges_;
};

Graph cycle_graph(int n);

/// Vertex (a, b) gets index a * n2 + b, so the adjacency is
/// kron(A1, I) + kron(I, A2).
Graph cartesian_product(const Graph& g1, const Graph& g2);

/// d-fold Cartesian product of the n-cycle.
Graph lattice_graph(int n, int d);

/// Complete graph on four vertices A, B, C, D.
Graph example_graph();

CMatrix adjacency(const Graph& g);

/// A - diag(deg). Rows and columns sum to zero.
CMatrix laplacian(const Graph& g);

std::optional<int> regular_degree(const Graph& g);

}  // namespace qwl
