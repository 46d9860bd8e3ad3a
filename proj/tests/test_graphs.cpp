#include "oracles.hpp"
#include "qwl/graphs.hpp"

#include <doctest.h>

#include <set>

using namespace qwl;
using qwl::test::thrown_kind;

namespace {

Graph path_graph(int n) {
  std::vector<Edge> edges;
  for (int j = 0; j + 1 < n; ++j) edges.emplace_back(j, j + 1);
  return Graph(n, edges);
}

// Enumerates all vertex pairs of g1 x g2 and applies the product rule.
std::set<Edge> brute_force_product_edges(const Graph& g1, const Graph& g2) {
  const int n1 = g1.vertex_count(), n2 = g2.vertex_count();
  std::set<Edge> out;
  for (int p = 0; p < n1 * n2; ++p)
    for (int q = p + 1; q < n1 * n2; ++q) {
      const int a = p / n2, b = p % n2, a2 = q / n2, b2 = q % n2;
      if ((a == a2 && g2.has_edge(b, b2)) || (b == b2 && g1.has_edge(a, a2))) out.insert({p, q});
    }
  return out;
}

std::vector<Graph> small_graphs() {
  return {cycle_graph(3), cycle_graph(4), path_graph(3), example_graph(), Graph(2, {{0, 1}}), Graph(3, {})};
}

}  // namespace

TEST_CASE("graph construction validates and deduplicates") {
  const Graph g(4, {{1, 0}, {0, 1}, {2, 3}});
  CHECK(g.edges() == std::vector<Edge>{{0, 1}, {2, 3}});
  CHECK(g.has_edge(1, 0));
  CHECK_FALSE(g.has_edge(1, 2));
  CHECK(thrown_kind([] { Graph(3, {{0, 3}}); }) == ErrorKind::InvalidGraph);
  CHECK(thrown_kind([] { Graph(3, {{1, 1}}); }) == ErrorKind::InvalidGraph);
  CHECK(thrown_kind([] { Graph(3, {{-1, 1}}); }) == ErrorKind::InvalidGraph);
  CHECK(thrown_kind([] { Graph(0, {}); }) == ErrorKind::InvalidGraph);
}

TEST_CASE("cycle_graph examples") {
  CHECK(cycle_graph(3).edges() == std::vector<Edge>{{0, 1}, {0, 2}, {1, 2}});
  const Graph c4 = cycle_graph(4);
  CHECK(c4.edges().size() == 4);
  CHECK(c4.degrees() == std::vector<int>{2, 2, 2, 2});
  const CMatrix f5 = test::forward_shift(5);
  CHECK(adjacency(cycle_graph(5)) == f5 + f5.transpose());
  CHECK(thrown_kind([] { cycle_graph(2); }) == ErrorKind::TooSmall);
  CHECK(thrown_kind([] { cycle_graph(1); }) == ErrorKind::TooSmall);
}

TEST_CASE("cartesian_product examples") {
  const Graph c33 = cartesian_product(cycle_graph(3), cycle_graph(3));
  CHECK(c33.vertex_count() == 9);
  CHECK(c33.degrees() == std::vector<int>(9, 4));
  CHECK(c33.edges().size() == brute_force_product_edges(cycle_graph(3), cycle_graph(3)).size());
  CHECK(c33.edges().size() == 18);

  const Graph c34 = cartesian_product(cycle_graph(3), cycle_graph(4));
  CHECK(adjacency(c34) ==
        test::loop_kron(test::cycle_adjacency(3), identity(4)) + test::loop_kron(identity(3), test::cycle_adjacency(4)));
}

TEST_CASE("cartesian_product agrees with brute force enumeration") {
  for (const Graph& g1 : small_graphs())
    for (const Graph& g2 : small_graphs()) {
      if (g1.vertex_count() * g2.vertex_count() > 12) continue;
      const Graph p = cartesian_product(g1, g2);
      const auto expected = brute_force_product_edges(g1, g2);
      CHECK(std::set<Edge>(p.edges().begin(), p.edges().end()) == expected);
      const auto d1 = g1.degrees(), d2 = g2.degrees(), dp = p.degrees();
      for (int a = 0; a < g1.vertex_count(); ++a)
        for (int b = 0; b < g2.vertex_count(); ++b) CHECK(dp[a * g2.vertex_count() + b] == d1[a] + d2[b]);
      const CMatrix a1 = adjacency(g1), a2 = adjacency(g2);
      CHECK(adjacency(p) == test::loop_kron(a1, identity(a2.rows())) + test::loop_kron(identity(a1.rows()), a2));
    }
}

TEST_CASE("adjacency examples") {
  CHECK(adjacency(cycle_graph(4)) == test::cycle_adjacency(4));
  CHECK(adjacency(example_graph()) == CMatrix::Ones(4, 4) - identity(4));
  CHECK(adjacency(Graph(3, {})) == CMatrix::Zero(3, 3));
}

TEST_CASE("laplacian examples") {
  CHECK(laplacian(cycle_graph(4)) == -2.0 * identity(4) + test::cycle_adjacency(4));
  for (int d : {1, 2, 3}) {
    const Graph g = lattice_graph(3, d);
    CHECK(laplacian(g) == -2.0 * d * identity(g.vertex_count()) + adjacency(g));
  }
  CMatrix edge(2, 2);
  edge << -1.0, 1.0, 1.0, -1.0;
  CHECK(laplacian(Graph(2, {{0, 1}})) == edge);
}

TEST_CASE("adjacency and laplacian invariants") {
  for (const Graph& g : small_graphs()) {
    const CMatrix a = adjacency(g);
    const CMatrix l = laplacian(g);
    CHECK(a == a.transpose());
    CHECK(a.diagonal().isZero(0.0));
    CMatrix deg = CMatrix::Zero(a.rows(), a.cols());
    const auto d = g.degrees();
    for (int j = 0; j < g.vertex_count(); ++j) deg(j, j) = d[j];
    CHECK(l == a - deg);
    CHECK(l.colwise().sum().isZero(0.0));
    CHECK(l.rowwise().sum().isZero(0.0));
    const auto eig = hermitian_eig(l);
    CHECK(eig.values.maxCoeff() <= 1e-12);
  }
}

TEST_CASE("regular_degree examples") {
  CHECK(regular_degree(cycle_graph(7)) == 2);
  CHECK(regular_degree(example_graph()) == 3);
  CHECK_FALSE(regular_degree(path_graph(3)).has_value());
  CHECK(regular_degree(lattice_graph(4, 2)) == 4);
}
