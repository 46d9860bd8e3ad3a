#pragma once

#include "qwl/numerics.hpp"
#include "qwl/walks.hpp"

#include <vector>

namespace qwl {

inline constexpr double kDefaultClosureTol = 1e-9;

/// Orthonormal (real Hilbert-Schmidt) basis of a real Lie algebra of
/// skew-Hermitian matrices.
class LieBasis {
 public:
  int ambient_dim() const noexcept { return ambient_dim_; }
  int dimension() const noexcept { return static_cast<int>(elements_.size()); }
  const std::vector<CMatrix>& elements() const noexcept { return elements_; }
  double tolerance() const noexcept { return tol_; }
  int passes() const noexcept { return passes_; }
  int generator_count() const noexcept { return generator_count_; }

  /// Columns are the elements flattened as [Re; Im]; the Euclidean inner
  /// product of two columns is the Hilbert-Schmidt inner product.
  const Eigen::MatrixXd& packed() const noexcept { return packed_; }

 private:
  friend LieBasis lie_closure(const std::vector<CMatrix>& gens, double tol);

  int ambient_dim_ = 0;
  std::vector<CMatrix> elements_;
  Eigen::MatrixXd packed_;
  double tol_ = kDefaultClosureTol;
  int passes_ = 0;
  int generator_count_ = 0;
};

/// c^2 matrices spanning u(c): i E_kk, E_jk - E_kj, i (E_jk + E_kj).
std::vector<CMatrix> u_basis(int c);

/// c^2 - 1 traceless matrices spanning su(c).
std::vector<CMatrix> su_basis(int c);

/// S^k (B (x) I_N) S^{r-k} for k = 0..r-1 and B in u_basis(c).
std::vector<CMatrix> generators(const CoinedWalk& w);

/// Smallest real Lie algebra containing gens. tol must lie in [1e-12, 1e-6].
/// Throws IterationCapExceeded after (dim^2 + 10) bracket passes.
LieBasis lie_closure(const std::vector<CMatrix>& gens, double tol = kDefaultClosureTol);

/// ||x - P x||_F / ||x||_F with P the orthogonal projector onto the basis span.
double member_residual(const LieBasis& basis, const CMatrix& x);

/// member_residual(basis, -i h) <= tol, for Hermitian h.
bool is_simulable(const LieBasis& basis, const CMatrix& h, double tol);

/// max over basis elements b of member_residual(basis, S b S^-1).
double conjugation_invariance_residual(const LieBasis& basis, const CoinedWalk& w);

struct SpectrumEntry {
  double value;
  int multiplicity;
  friend bool operator==(const SpectrumEntry&, const SpectrumEntry&) = default;
};

/// Eigenvalues rounded to `digits` decimals and counted, largest first.
/// Skew-Hermitian input reports the imaginary parts (eigenvalues of -i h).
std::vector<SpectrumEntry> spectrum_multiset(const CMatrix& h, int digits = 8);

/// Element of the K4 example algebra with spectrum {+-3i x1, +-i x3, 0 x4}:
/// assemble diagonal coin blocks on the common eigenbasis of the three walker
/// permutations, then map back through the character table of Z2 x Z2.
CMatrix example_subspace_element();

}  // namespace qwl
