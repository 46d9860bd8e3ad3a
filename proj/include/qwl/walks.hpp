#pragma once

#include "qwl/graphs.hpp"
#include "qwl/numerics.hpp"

#include <cstdint>
#include <vector>

namespace qwl {

/// Coined discrete-time walk on a regular graph.
///
/// The coin-walker space is ordered coin-major: |c_k, j> has index k*N + j.
/// moves()[k][j] is the vertex reached from j on coin result k; each row is a
/// bijection, so the controlled shift S|c_k, j> = |c_k, moves[k][j]> is a
/// permutation.
class CoinedWalk {
 public:
  int coin_dim() const noexcept { return static_cast<int>(moves_.size()); }
  int walker_dim() const noexcept { return graph_.vertex_count(); }
  int dim() const noexcept { return coin_dim() * walker_dim(); }

  const Graph& graph() const noexcept { return graph_; }
  const std::vector<std::vector<int>>& moves() const noexcept { return moves_; }

  /// shift_permutation()[k*N + j] == k*N + moves[k][j].
  const std::vector<int>& shift_permutation() const noexcept { return shift_; }

  friend bool operator==(const CoinedWalk&, const CoinedWalk&) = default;

  friend CoinedWalk graph_coined_walk(Graph g, std::vector<std::vector<int>> moves);

 private:
  CoinedWalk(Graph g, std::vector<std::vector<int>> moves);

  Graph graph_;
  std::vector<std::vector<int>> moves_;
  std::vector<int> shift_;
};

/// Validates and builds a coined walk. Errors: NotRegular, DimMismatch when the
/// table shape is wrong, NotBijective naming the coin result, NotAnEdge naming
/// the vertex and coin result.
CoinedWalk graph_coined_walk(Graph g, std::vector<std::vector<int>> moves);

/// Forward cyclic shift: F e_k = e_{k+1 mod n}.
CMatrix circulant_shift(int n);

/// Coin 0 steps forward, coin 1 backward; the shift is diag(F, F^T).
CoinedWalk cycle_walk(int n);

/// Coin 2l steps forward and 2l+1 backward along coordinate l.
CoinedWalk lattice_walk(int n, int d);

/// Walk on K4 with vertices A, B, C, D. Coin 0 swaps A<->C and B<->D, coin 1
/// swaps A<->B and C<->D, coin 2 swaps A<->D and B<->C.
CoinedWalk example_walk();

/// True when w is exactly cycle_walk(w.walker_dim()).
bool is_cycle_walk(const CoinedWalk& w);

CMatrix shift_matrix(const CoinedWalk& w);

/// S (coin (x) I_N). Throws NotUnitary / DimMismatch.
CMatrix step_operator(const CoinedWalk& w, const CMatrix& coin);

/// Least r >= 1 with S^r = I (lcm of the permutation's cycle lengths).
std::int64_t shift_order(const CoinedWalk& w);

/// Edge-space form of a coined walk. The edge basis is the set of ordered
/// pairs (present, future) sorted lexicographically.
struct EdgeWalk {
  std::vector<Edge> edge_basis;
  CMatrix w_matrix;     // W|j, n_j(c_k)> = |n_j(c_k), n_{n_j(c_k)}(c_k)>
  CMatrix coin_blocks;  // sum_j |j><j| (x) Q_j
  CMatrix chi;          // chi|c_k, j> = |j, n_j(c_k)>
};

/// Throws EdgeCollision if two coin results move some vertex to the same
/// neighbour (chi would not be injective).
EdgeWalk coined_to_edge_walk(const CoinedWalk& w, const CMatrix& coin);

/// || chi S (C (x) 1) - W C~ chi ||_F
double intertwining_residual(const CoinedWalk& w, const CMatrix& coin);

/// exp(-i gamma h t).
CMatrix ctqw_propagator(const CMatrix& h, double gamma, double t);

/// exp(gamma l t) for a graph Laplacian l and t >= 0. Column-stochastic.
CMatrix ctrw_propagator(const CMatrix& l, double gamma, double t);

using RealState = Eigen::VectorXd;

/// One step of p' = p + gamma dt L p. Requires gamma * dt * max_degree <= 1.
RealState dtrw_step(const RealState& p, const CMatrix& l, double gamma, double dt);

}  // namespace qwl
