#pragma once

// Perturbed-coin protocols and the limit that turns repeated discrete steps
// into continuous-time evolution exp(-i gamma H t).

#include "qwl/numerics.hpp"
#include "qwl/walks.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace qwl {

/// One factor S (coin exp(generator * slope * x) (x) I).
struct ProtocolStep {
  CMatrix coin;       // unitary, c x c
  CMatrix generator;  // skew-Hermitian, c x c
  double slope = 1.0;
};

/// Immutable protocol tree.
///
/// An Atom multiplies its steps left to right as written, M_1 M_2 ... M_m,
/// so M_m acts first on a state. At x = 0 the product must equal phi * I for
/// a unit-modulus phi (the reference trajectory); construction fails with
/// NotScalarAtZero otherwise. Concat multiplies two protocols; Commutator
/// forms U1 U2 U1^-1 U2^-1 with both children evaluated at sqrt(x).
class ProtocolExpr {
 public:
  enum class Kind { Atom, Concat, Commutator };

  static ProtocolExpr atom(std::shared_ptr<const CoinedWalk> walk, std::vector<ProtocolStep> steps);
  static ProtocolExpr concat(ProtocolExpr left, ProtocolExpr right);
  static ProtocolExpr commutator(ProtocolExpr left, ProtocolExpr right);

  Kind kind() const noexcept { return kind_; }
  const CoinedWalk& walk() const noexcept { return *walk_; }
  std::shared_ptr<const CoinedWalk> walk_ptr() const noexcept { return walk_; }

  /// Empty for composites.
  std::span<const ProtocolStep> steps() const noexcept { return steps_; }
  /// Only valid for composites.
  const ProtocolExpr& left() const { return *left_; }
  const ProtocolExpr& right() const { return *right_; }

  Complex phase() const noexcept { return phase_; }

 private:
  ProtocolExpr() = default;

  Kind kind_ = Kind::Atom;
  std::shared_ptr<const CoinedWalk> walk_;
  std::vector<ProtocolStep> steps_;
  std::shared_ptr<const ProtocolExpr> left_;
  std::shared_ptr<const ProtocolExpr> right_;
  Complex phase_{1.0, 0.0};
};

/// R exp(iDx) with R = [[0,-i],[-i,0]] and D = [[0,-1],[-1,0]].
CMatrix strauch_coin(double x);

/// Two identical steps (coin R, generator iD) on the n-cycle. Phase -1.
ProtocolExpr strauch_protocol(int n);

/// S e^{Ex} S^{n-1} e^{Ex} on the n-cycle, E = [[0,-i],[-i,0]]. Phase +1.
ProtocolExpr evencyc_protocol(int n);

/// [[0, I + F^2], [I + F^2T, 0]], the generator both cycle protocols realize.
CMatrix limit_hamiltonian_cycle(int n);

/// Domain is 0 <= x < 1; DomainExceeded otherwise.
CMatrix protocol_unitary(const ProtocolExpr& p, double x);

Complex reference_phase(const ProtocolExpr& p);

/// H with phi^-1 T(x) = exp(-iHx) + O(x^2), from the first derivative of the
/// step product at zero.
CMatrix effective_hamiltonian(const ProtocolExpr& p);

/// Forward-difference estimate i phi^-1 (T(h) - T(0)) / h, independent of the
/// analytic prefix/suffix route.
CMatrix effective_hamiltonian_fd(const ProtocolExpr& p, double h = 1e-6);

/// || phi^-1 U(x) - exp(-i H x) ||_F
double single_step_error(const ProtocolExpr& p, double x);

struct RepeatedLimit {
  CMatrix unitary;  // (phi^-1 U(gamma t / m))^m
  double error;     // distance to exp(-i gamma H t)
};

RepeatedLimit repeated_limit(const ProtocolExpr& p, double gamma, double t, std::int64_t m);

struct ConvergenceSample {
  std::int64_t m;  // repetition count, 0 for single-step samples
  double x;
  double error;
};

struct ConvergenceReport {
  std::vector<ConvergenceSample> samples;  // x strictly decreasing when gamma t > 0
  std::optional<double> fitted_exponent;   // empty without two positive samples
};

/// Log-log least-squares slope of error against x over the smallest half of
/// the x grid. Samples with zero x or zero error are ignored.
std::optional<double> fit_exponent(std::span<const ConvergenceSample> samples);

/// Repeated-limit error for each m in an ascending list.
ConvergenceReport convergence_study(const ProtocolExpr& p, double gamma, double t,
                                    std::span<const std::int64_t> m_list);

/// Single-step error on a strictly decreasing grid of x values.
ConvergenceReport single_step_study(const ProtocolExpr& p, std::span<const double> x_list);

// Chiral components on the n-cycle: psi = [psi_R; psi_L].
struct ChiralComponents {
  CVector plus1;   // psi_R + F psi_L
  CVector plus2;   // psi_L + F^T psi_R
  CVector minus1;  // psi_R - F psi_L
  CVector minus2;  // psi_L - F^T psi_R
};

std::pair<CVector, CVector> chiral_split(const CVector& psi, int n);
ChiralComponents chiral_combinations(const CVector& psi_r, const CVector& psi_l, int n);

/// 1/2 ([plus1; plus2] + [minus1; minus2]), which equals [psi_R; psi_L].
CVector chiral_reconstruct(const ChiralComponents& parts);

/// exp(sign * 2i gamma t) / 2 * psi. sign must be +1 or -1.
CVector phi_transform(const CVector& psi, double gamma, double t, int sign);

}  // namespace qwl
