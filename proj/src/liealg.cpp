#include "qwl/liealg.hpp"

#include "qwl/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <string>

namespace qwl {

namespace {

constexpr Complex kI{0.0, 1.0};

Eigen::VectorXd pack(const CMatrix& m) {
  const Eigen::Index n = m.size();
  Eigen::VectorXd v(2 * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    v(i) = m.data()[i].real();
    v(n + i) = m.data()[i].imag();
  }
  return v;
}

CMatrix unpack(const Eigen::VectorXd& v, int dim) {
  CMatrix m(dim, dim);
  const Eigen::Index n = m.size();
  for (Eigen::Index i = 0; i < n; ++i) m.data()[i] = Complex(v(i), v(n + i));
  return m;
}

double relative_skew_residual(const CMatrix& x) {
  return skew_hermitian_residual(x) / std::max(1.0, x.norm());
}

}  // namespace

std::vector<CMatrix> u_basis(int c) {
  if (c < 1) throw Error(ErrorKind::TooSmall, "coin dimension must be positive");
  std::vector<CMatrix> out;
  for (int k = 0; k < c; ++k) {
    CMatrix m = CMatrix::Zero(c, c);
    m(k, k) = kI;
    out.push_back(m);
  }
  for (int j = 0; j < c; ++j) {
    for (int k = j + 1; k < c; ++k) {
      CMatrix re = CMatrix::Zero(c, c);
      re(j, k) = 1.0;
      re(k, j) = -1.0;
      out.push_back(re);
      CMatrix im = CMatrix::Zero(c, c);
      im(j, k) = kI;
      im(k, j) = kI;
      out.push_back(im);
    }
  }
  return out;
}

std::vector<CMatrix> su_basis(int c) {
  if (c < 2) throw Error(ErrorKind::TooSmall, "su(c) needs c >= 2");
  std::vector<CMatrix> out;
  for (int k = 0; k + 1 < c; ++k) {
    CMatrix m = CMatrix::Zero(c, c);
    m(k, k) = kI;
    m(k + 1, k + 1) = -kI;
    out.push_back(m);
  }
  for (const auto& m : u_basis(c)) {
    if (m.diagonal().isZero()) out.push_back(m);
  }
  return out;
}

std::vector<CMatrix> generators(const CoinedWalk& w) {
  const auto r = shift_order(w);
  const CMatrix s = shift_matrix(w);
  const CMatrix lift = identity(w.walker_dim());
  std::vector<CMatrix> lifted;
  for (const auto& b : u_basis(w.coin_dim())) lifted.push_back(kron(b, lift));

  std::vector<CMatrix> out;
  CMatrix power = identity(w.dim());  // S^k
  for (std::int64_t k = 0; k < r; ++k) {
    // S^{r-k} = (S^k)^{-1} = (S^k)^T for a permutation.
    for (const auto& g : lifted) out.push_back(power * g * power.transpose());
    power = s * power;
  }
  return out;
}

LieBasis lie_closure(const std::vector<CMatrix>& gens, double tol) {
  if (!(tol >= 1e-12 && tol <= 1e-6)) {
    throw Error(ErrorKind::InvalidArgument, "closure tolerance " + std::to_string(tol) + " outside [1e-12, 1e-6]");
  }
  if (gens.empty()) throw Error(ErrorKind::InvalidArgument, "generator set is empty");
  const auto dim = gens.front().rows();
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (gens[i].rows() != dim || gens[i].cols() != dim) {
      throw Error(ErrorKind::DimMismatch, "generator " + std::to_string(i) + " has the wrong shape");
    }
    if (relative_skew_residual(gens[i]) > kHermitianTol) {
      throw Error(ErrorKind::NotSkewHermitian, "generator " + std::to_string(i) + " is not skew-Hermitian");
    }
  }

  const Eigen::Index packed_len = 2 * dim * dim;
  const Eigen::Index max_dim = dim * dim;
  Eigen::MatrixXd q(packed_len, max_dim);
  Eigen::Index count = 0;
  std::vector<CMatrix> elements;

  // Admits the part of candidate orthogonal to the current span, if any.
  auto admit = [&](const CMatrix& candidate) {
    Eigen::VectorXd v = pack(candidate);
    const double norm = v.norm();
    if (norm <= tol) return;
    v /= norm;
    for (int pass = 0; pass < 2; ++pass) {
      if (count > 0) v -= q.leftCols(count) * (q.leftCols(count).transpose() * v);
    }
    const double remainder = v.norm();
    if (remainder <= tol || count == max_dim) return;
    v /= remainder;
    q.col(count++) = v;
    CMatrix element = unpack(v, static_cast<int>(dim));
    // Strip roundoff so every element is exactly skew-Hermitian.
    elements.push_back(0.5 * (element - element.adjoint()));
  };

  for (const auto& g : gens) admit(g);

  const int cap = static_cast<int>(dim * dim) + 10;
  int passes = 0;
  std::size_t frontier_begin = 0;
  while (true) {
    if (passes >= cap) throw Error(ErrorKind::IterationCapExceeded, "closure did not settle");
    ++passes;
    const std::size_t existing = elements.size();
    // Brackets among elements older than the frontier were taken in
    // earlier passes.
    for (std::size_t i = frontier_begin; i < existing; ++i) {
      for (std::size_t j = 0; j < existing; ++j) {
        if (j >= frontier_begin && j <= i) continue;
        admit(commutator(elements[i], elements[j]));
      }
    }
    if (elements.size() == existing) break;
    frontier_begin = existing;
  }

  LieBasis basis;
  basis.ambient_dim_ = static_cast<int>(dim);
  basis.elements_ = std::move(elements);
  basis.packed_ = q.leftCols(count);
  basis.tol_ = tol;
  basis.passes_ = passes;
  basis.generator_count_ = static_cast<int>(gens.size());
  return basis;
}

double member_residual(const LieBasis& basis, const CMatrix& x) {
  if (x.rows() != basis.ambient_dim() || x.cols() != basis.ambient_dim()) {
    throw Error(ErrorKind::DimMismatch, "matrix is " + std::to_string(x.rows()) + "x" + std::to_string(x.cols()) +
                                            ", algebra acts on dimension " + std::to_string(basis.ambient_dim()));
  }
  if (relative_skew_residual(x) > kHermitianTol) {
    throw Error(ErrorKind::NotSkewHermitian, "member_residual expects a skew-Hermitian matrix");
  }
  const Eigen::VectorXd v = pack(x);
  const double norm = v.norm();
  if (norm == 0.0) return 0.0;
  const auto& q = basis.packed();
  const Eigen::VectorXd rest = v - q * (q.transpose() * v);
  return rest.norm() / norm;
}

bool is_simulable(const LieBasis& basis, const CMatrix& h, double tol) {
  if (!is_hermitian(h, kHermitianTol * std::max(1.0, h.norm()))) {
    throw Error(ErrorKind::NonHermitian, "Hamiltonian is not Hermitian");
  }
  return member_residual(basis, -kI * h) <= tol;
}

double conjugation_invariance_residual(const LieBasis& basis, const CoinedWalk& w) {
  if (w.dim() != basis.ambient_dim()) throw Error(ErrorKind::DimMismatch, "walk and algebra dimensions differ");
  const CMatrix s = shift_matrix(w);
  double worst = 0.0;
  for (const auto& b : basis.elements()) worst = std::max(worst, member_residual(basis, s * b * s.transpose()));
  return worst;
}

std::vector<SpectrumEntry> spectrum_multiset(const CMatrix& h, int digits) {
  if (h.rows() != h.cols()) throw Error(ErrorKind::NonNormalInput, "matrix is not square");
  RVector values;
  if (is_hermitian(h)) {
    values = hermitian_eig(h).values;
  } else if (is_skew_hermitian(h)) {
    values = hermitian_eig(-kI * h).values;
  } else {
    throw Error(ErrorKind::NonNormalInput, "matrix is neither Hermitian nor skew-Hermitian");
  }
  const double scale = std::pow(10.0, digits);
  std::map<double, int, std::greater<>> counts;
  for (const double v : values) {
    double rounded = std::round(v * scale) / scale;
    if (rounded == 0.0) rounded = 0.0;  // fold -0 into 0
    ++counts[rounded];
  }
  std::vector<SpectrumEntry> out;
  for (const auto& [value, mult] : counts) out.push_back({value, mult});
  return out;
}

CMatrix example_subspace_element() {
  const CoinedWalk w = example_walk();
  const CMatrix s = shift_matrix(w);
  std::array<CMatrix, 3> walker;  // S_1, S_2, S_3
  for (int k = 0; k < 3; ++k) walker[k] = s.block(4 * k, 4 * k, 4, 4);

  // Sign of S_1, S_2, S_3 on the common eigenvectors w_0..w_3.
  constexpr std::array<std::array<int, 3>, 4> signs{{{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}}};

  std::array<CMatrix, 4> blocks;
  for (auto& b : blocks) b = CMatrix::Zero(3, 3);
  blocks[0](0, 0) = 3.0 * kI;
  blocks[0](1, 1) = -3.0 * kI;
  for (int k = 1; k < 4; ++k) {
    blocks[k](0, 0) = kI;
    blocks[k](1, 1) = -kI;
  }

  CMatrix a = CMatrix::Zero(3, 3);
  std::array<CMatrix, 3> coeff{CMatrix::Zero(3, 3), CMatrix::Zero(3, 3), CMatrix::Zero(3, 3)};
  for (int k = 0; k < 4; ++k) {
    a += 0.25 * blocks[k];
    for (int i = 0; i < 3; ++i) coeff[i] += 0.25 * signs[k][i] * blocks[k];
  }

  CMatrix out = kron(a, identity(4));
  for (int i = 0; i < 3; ++i) out += kron(coeff[i], walker[i]);
  return out;
}

}  // namespace qwl
