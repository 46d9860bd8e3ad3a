#include "qwl/walks.hpp"

#include "qwl/error.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <string>

namespace qwl {

namespace {

void require_laplacian(const CMatrix& l) {
  constexpr double tol = 1e-10;
  if (l.rows() != l.cols()) throw Error(ErrorKind::NotLaplacian, "matrix is not square");
  if (l.imag().norm() > tol) throw Error(ErrorKind::NotLaplacian, "matrix has imaginary entries");
  const Eigen::MatrixXd r = l.real();
  if ((r - r.transpose()).norm() > tol) throw Error(ErrorKind::NotLaplacian, "matrix is not symmetric");
  if (r.colwise().sum().cwiseAbs().maxCoeff() > tol) {
    throw Error(ErrorKind::NotLaplacian, "column sums are not zero");
  }
  for (Eigen::Index i = 0; i < r.rows(); ++i) {
    for (Eigen::Index j = 0; j < r.cols(); ++j) {
      if (i != j && r(i, j) < -tol) throw Error(ErrorKind::NotLaplacian, "negative off-diagonal entry");
    }
  }
}

}  // namespace

CoinedWalk::CoinedWalk(Graph g, std::vector<std::vector<int>> moves)
    : graph_(std::move(g)), moves_(std::move(moves)) {
  const int n = graph_.vertex_count();
  shift_.resize(moves_.size() * n);
  for (std::size_t k = 0; k < moves_.size(); ++k) {
    for (int j = 0; j < n; ++j) shift_[k * n + j] = static_cast<int>(k) * n + moves_[k][j];
  }
}

CoinedWalk graph_coined_walk(Graph g, std::vector<std::vector<int>> moves) {
  const auto degree = regular_degree(g);
  if (!degree) throw Error(ErrorKind::NotRegular, "graph is not regular");
  const int n = g.vertex_count();
  if (static_cast<int>(moves.size()) != *degree) {
    throw Error(ErrorKind::DimMismatch, "move table has " + std::to_string(moves.size()) +
                                            " coin results, graph degree is " + std::to_string(*degree));
  }
  for (std::size_t k = 0; k < moves.size(); ++k) {
    const auto& row = moves[k];
    if (static_cast<int>(row.size()) != n) {
      throw Error(ErrorKind::DimMismatch, "move row for coin " + std::to_string(k) + " has " +
                                              std::to_string(row.size()) + " entries, expected " +
                                              std::to_string(n));
    }
    std::vector<bool> hit(n, false);
    for (int j = 0; j < n; ++j) {
      const int target = row[j];
      if (target < 0 || target >= n || hit[target]) {
        throw Error(ErrorKind::NotBijective, "coin " + std::to_string(k) + " is not a bijection on vertices");
      }
      hit[target] = true;
    }
    for (int j = 0; j < n; ++j) {
      if (!g.has_edge(j, row[j])) {
        throw Error(ErrorKind::NotAnEdge, "vertex " + std::to_string(j) + ", coin " + std::to_string(k) +
                                              ": move to " + std::to_string(row[j]) + " is not an edge");
      }
    }
  }
  return CoinedWalk(std::move(g), std::move(moves));
}

CMatrix circulant_shift(int n) {
  if (n < 2) throw Error(ErrorKind::TooSmall, "circulant shift needs n >= 2, got " + std::to_string(n));
  CMatrix f = CMatrix::Zero(n, n);
  for (int k = 0; k < n; ++k) f((k + 1) % n, k) = 1.0;
  return f;
}

CoinedWalk cycle_walk(int n) {
  if (n < 3) throw Error(ErrorKind::TooSmall, "cycle needs at least 3 vertices, got " + std::to_string(n));
  return lattice_walk(n, 1);
}

CoinedWalk lattice_walk(int n, int d) {
  if (n < 3) throw Error(ErrorKind::TooSmall, "lattice side must be at least 3, got " + std::to_string(n));
  if (d < 1) throw Error(ErrorKind::TooSmall, "lattice dimension must be at least 1, got " + std::to_string(d));
  Graph g = lattice_graph(n, d);
  const int total = g.vertex_count();
  std::vector<std::vector<int>> moves;
  for (int l = 0; l < d; ++l) {
    // Coordinate l (0-based, most significant first) has stride n^(d-1-l).
    int stride = 1;
    for (int q = l + 1; q < d; ++q) stride *= n;
    for (const int delta : {1, n - 1}) {
      std::vector<int> row(total);
      for (int j = 0; j < total; ++j) {
        const int coord = (j / stride) % n;
        row[j] = j + (((coord + delta) % n) - coord) * stride;
      }
      moves.push_back(std::move(row));
    }
  }
  return graph_coined_walk(std::move(g), std::move(moves));
}

CoinedWalk example_walk() {
  return graph_coined_walk(example_graph(), {{2, 3, 0, 1}, {1, 0, 3, 2}, {3, 2, 1, 0}});
}

bool is_cycle_walk(const CoinedWalk& w) {
  if (w.coin_dim() != 2 || w.walker_dim() < 3) return false;
  return w == cycle_walk(w.walker_dim());
}

CMatrix shift_matrix(const CoinedWalk& w) {
  const auto& perm = w.shift_permutation();
  CMatrix s = CMatrix::Zero(w.dim(), w.dim());
  for (int i = 0; i < w.dim(); ++i) s(perm[i], i) = 1.0;
  return s;
}

CMatrix step_operator(const CoinedWalk& w, const CMatrix& coin) {
  if (coin.rows() != w.coin_dim() || coin.cols() != w.coin_dim()) {
    throw Error(ErrorKind::DimMismatch, "coin must be " + std::to_string(w.coin_dim()) + "x" +
                                            std::to_string(w.coin_dim()));
  }
  if (!is_unitary(coin)) throw Error(ErrorKind::NotUnitary, "coin is not unitary");
  // Row perm[i] of S (coin (x) I) is row i of coin (x) I.
  const CMatrix lifted = kron(coin, identity(w.walker_dim()));
  const auto& perm = w.shift_permutation();
  CMatrix out(w.dim(), w.dim());
  for (int i = 0; i < w.dim(); ++i) out.row(perm[i]) = lifted.row(i);
  return out;
}

std::int64_t shift_order(const CoinedWalk& w) {
  const auto& perm = w.shift_permutation();
  std::vector<bool> seen(perm.size(), false);
  std::int64_t order = 1;
  for (std::size_t start = 0; start < perm.size(); ++start) {
    if (seen[start]) continue;
    std::int64_t length = 0;
    for (std::size_t i = start; !seen[i]; i = perm[i]) {
      seen[i] = true;
      ++length;
    }
    order = std::lcm(order, length);
  }
  return order;
}

EdgeWalk coined_to_edge_walk(const CoinedWalk& w, const CMatrix& coin) {
  if (coin.rows() != w.coin_dim() || coin.cols() != w.coin_dim()) {
    throw Error(ErrorKind::DimMismatch, "coin dimension does not match the walk");
  }
  if (!is_unitary(coin)) throw Error(ErrorKind::NotUnitary, "coin is not unitary");

  const int c = w.coin_dim();
  const int n = w.walker_dim();
  const auto& moves = w.moves();

  // coin_of[(j, target)] = k, the coin result carrying j to target.
  std::map<Edge, int> coin_of;
  for (int k = 0; k < c; ++k) {
    for (int j = 0; j < n; ++j) {
      if (!coin_of.emplace(Edge{j, moves[k][j]}, k).second) {
        throw Error(ErrorKind::EdgeCollision, "vertex " + std::to_string(j) + " reaches " +
                                                  std::to_string(moves[k][j]) + " on more than one coin result");
      }
    }
  }

  EdgeWalk out;
  std::map<Edge, int> index;
  for (const auto& [edge, k] : coin_of) {
    index.emplace(edge, static_cast<int>(out.edge_basis.size()));
    out.edge_basis.push_back(edge);
  }
  const int dim = static_cast<int>(out.edge_basis.size());

  out.chi = CMatrix::Zero(dim, w.dim());
  out.w_matrix = CMatrix::Zero(dim, dim);
  out.coin_blocks = CMatrix::Zero(dim, dim);
  for (int k = 0; k < c; ++k) {
    for (int j = 0; j < n; ++j) {
      const int next = moves[k][j];
      const int col = index.at({j, next});
      out.chi(col, k * n + j) = 1.0;
      out.w_matrix(index.at({next, moves[k][next]}), col) = 1.0;
      // Q_j |n_j(c_k)> = sum_l alpha_lk |n_j(c_l)>, with alpha = coin.
      for (int l = 0; l < c; ++l) out.coin_blocks(index.at({j, moves[l][j]}), col) = coin(l, k);
    }
  }
  return out;
}

double intertwining_residual(const CoinedWalk& w, const CMatrix& coin) {
  const EdgeWalk e = coined_to_edge_walk(w, coin);
  return (e.chi * step_operator(w, coin) - e.w_matrix * e.coin_blocks * e.chi).norm();
}

CMatrix ctqw_propagator(const CMatrix& h, double gamma, double t) { return expm_hermitian(h, gamma * t); }

CMatrix ctrw_propagator(const CMatrix& l, double gamma, double t) {
  require_laplacian(l);
  if (t < 0.0) throw Error(ErrorKind::InvalidArgument, "ctrw time must be nonnegative");
  const auto [values, vectors] = hermitian_eig(l);
  const Eigen::VectorXd growth = (gamma * t * values.array()).exp();
  const CMatrix p = vectors * growth.cast<Complex>().asDiagonal() * vectors.adjoint();
  return p.real().cast<Complex>();
}

RealState dtrw_step(const RealState& p, const CMatrix& l, double gamma, double dt) {
  require_laplacian(l);
  if (p.size() != l.rows()) throw Error(ErrorKind::DimMismatch, "state and Laplacian sizes differ");
  if (dt < 0.0 || gamma < 0.0) throw Error(ErrorKind::InvalidArgument, "rate and time step must be nonnegative");
  const double max_degree = (-l.real().diagonal()).maxCoeff();
  if (gamma * dt * max_degree > 1.0) {
    throw Error(ErrorKind::Unstable, "gamma*dt*max_degree = " + std::to_string(gamma * dt * max_degree) + " > 1");
  }
  return p + gamma * dt * (l.real() * p);
}

}  // namespace qwl
