#include "qwl/limits.hpp"

#include "qwl/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qwl {

namespace {

constexpr double kPhaseTol = 1e-10;

CMatrix step_matrix(const CoinedWalk& w, const ProtocolStep& s, double x) {
  // exp(E a x) = exp(-i (iE) a x) with iE Hermitian.
  const CMatrix perturbed = s.coin * expm_hermitian(Complex(0.0, 1.0) * s.generator, s.slope * x);
  return step_operator(w, perturbed);
}

// Unchecked evaluation; also used for the finite-difference route.
CMatrix evaluate(const ProtocolExpr& p, double x) {
  switch (p.kind()) {
    case ProtocolExpr::Kind::Atom: {
      CMatrix product = identity(p.walk().dim());
      for (const auto& step : p.steps()) product = product * step_matrix(p.walk(), step, x);
      return product;
    }
    case ProtocolExpr::Kind::Concat:
      return evaluate(p.left(), x) * evaluate(p.right(), x);
    case ProtocolExpr::Kind::Commutator: {
      const double root = std::sqrt(x);
      const CMatrix a = evaluate(p.left(), root);
      const CMatrix b = evaluate(p.right(), root);
      return a * b * a.adjoint() * b.adjoint();
    }
  }
  return {};
}

void require_same_walk(const ProtocolExpr& a, const ProtocolExpr& b) {
  if (a.walk_ptr() != b.walk_ptr() && !(a.walk() == b.walk())) {
    throw Error(ErrorKind::DimMismatch, "protocol children act on different walks");
  }
}

CMatrix cycle_block_hamiltonian(int n, const CMatrix& upper) {
  CMatrix h = CMatrix::Zero(2 * n, 2 * n);
  h.topRightCorner(n, n) = upper;
  h.bottomLeftCorner(n, n) = upper.adjoint();
  return h;
}

CMatrix binary_power(CMatrix base, std::int64_t m) {
  CMatrix result = identity(base.rows());
  while (m > 0) {
    if (m & 1) result = result * base;
    m >>= 1;
    if (m > 0) base = base * base;
  }
  return result;
}

}  // namespace

ProtocolExpr ProtocolExpr::atom(std::shared_ptr<const CoinedWalk> walk, std::vector<ProtocolStep> steps) {
  if (!walk) throw Error(ErrorKind::InvalidArgument, "atom needs a walk");
  if (steps.empty()) throw Error(ErrorKind::InvalidArgument, "atom needs at least one step");
  const int c = walk->coin_dim();
  for (std::size_t j = 0; j < steps.size(); ++j) {
    const auto& s = steps[j];
    const std::string where = "step " + std::to_string(j);
    if (s.coin.rows() != c || s.coin.cols() != c || s.generator.rows() != c || s.generator.cols() != c) {
      throw Error(ErrorKind::DimMismatch, where + ": coin and generator must be " + std::to_string(c) + "x" +
                                              std::to_string(c));
    }
    if (!is_unitary(s.coin)) throw Error(ErrorKind::NotUnitary, where + ": coin is not unitary");
    if (!is_skew_hermitian(s.generator)) {
      throw Error(ErrorKind::NotSkewHermitian, where + ": generator is not skew-Hermitian");
    }
    if (!std::isfinite(s.slope)) throw Error(ErrorKind::InvalidArgument, where + ": slope is not finite");
  }

  ProtocolExpr p;
  p.kind_ = Kind::Atom;
  p.walk_ = std::move(walk);
  p.steps_ = std::move(steps);

  const CMatrix at_zero = evaluate(p, 0.0);
  const Complex phi = at_zero(0, 0);
  if (std::abs(std::abs(phi) - 1.0) > kPhaseTol || (at_zero - phi * identity(at_zero.rows())).norm() > kPhaseTol) {
    throw Error(ErrorKind::NotScalarAtZero, "step product at x = 0 is not a phase times the identity");
  }
  p.phase_ = phi / std::abs(phi);
  return p;
}

ProtocolExpr ProtocolExpr::concat(ProtocolExpr left, ProtocolExpr right) {
  require_same_walk(left, right);
  ProtocolExpr p;
  p.kind_ = Kind::Concat;
  p.walk_ = left.walk_;
  p.phase_ = left.phase_ * right.phase_;
  p.left_ = std::make_shared<const ProtocolExpr>(std::move(left));
  p.right_ = std::make_shared<const ProtocolExpr>(std::move(right));
  return p;
}

ProtocolExpr ProtocolExpr::commutator(ProtocolExpr left, ProtocolExpr right) {
  require_same_walk(left, right);
  ProtocolExpr p;
  p.kind_ = Kind::Commutator;
  p.walk_ = left.walk_;
  p.phase_ = Complex(1.0, 0.0);
  p.left_ = std::make_shared<const ProtocolExpr>(std::move(left));
  p.right_ = std::make_shared<const ProtocolExpr>(std::move(right));
  return p;
}

CMatrix strauch_coin(double x) {
  CMatrix r(2, 2);
  r << 0.0, Complex(0.0, -1.0), Complex(0.0, -1.0), 0.0;
  CMatrix d(2, 2);
  d << 0.0, -1.0, -1.0, 0.0;
  // exp(iDx) = exp(-i D (-x)).
  return r * expm_hermitian(d, -x);
}

ProtocolExpr strauch_protocol(int n) {
  auto walk = std::make_shared<const CoinedWalk>(cycle_walk(n));
  CMatrix d(2, 2);
  d << 0.0, -1.0, -1.0, 0.0;
  const ProtocolStep step{strauch_coin(0.0), Complex(0.0, 1.0) * d, 1.0};
  return ProtocolExpr::atom(std::move(walk), {step, step});
}

ProtocolExpr evencyc_protocol(int n) {
  auto walk = std::make_shared<const CoinedWalk>(cycle_walk(n));
  CMatrix e(2, 2);
  e << 0.0, Complex(0.0, -1.0), Complex(0.0, -1.0), 0.0;
  const ProtocolStep kicked{identity(2), e, 1.0};
  const ProtocolStep plain{identity(2), CMatrix::Zero(2, 2), 1.0};
  std::vector<ProtocolStep> steps(n, plain);
  steps.front() = kicked;
  steps.back() = kicked;
  return ProtocolExpr::atom(std::move(walk), std::move(steps));
}

CMatrix limit_hamiltonian_cycle(int n) {
  if (n < 3) throw Error(ErrorKind::TooSmall, "cycle needs at least 3 vertices, got " + std::to_string(n));
  const CMatrix f = circulant_shift(n);
  return cycle_block_hamiltonian(n, identity(n) + f * f);
}

CMatrix protocol_unitary(const ProtocolExpr& p, double x) {
  if (!(x >= 0.0 && x < 1.0)) {
    throw Error(ErrorKind::DomainExceeded, "perturbation x = " + std::to_string(x) + " outside [0, 1)");
  }
  return evaluate(p, x);
}

Complex reference_phase(const ProtocolExpr& p) { return p.phase(); }

CMatrix effective_hamiltonian(const ProtocolExpr& p) {
  switch (p.kind()) {
    case ProtocolExpr::Kind::Atom: {
      const auto steps = p.steps();
      const std::size_t m = steps.size();
      const CoinedWalk& w = p.walk();
      std::vector<CMatrix> at_zero;
      at_zero.reserve(m);
      for (const auto& s : steps) at_zero.push_back(step_operator(w, s.coin));

      // suffix[j] = M_{j+1}(0) ... M_m(0)
      std::vector<CMatrix> suffix(m, identity(w.dim()));
      for (std::size_t j = m - 1; j > 0; --j) suffix[j - 1] = at_zero[j] * suffix[j];

      const CMatrix lift = identity(w.walker_dim());
      const auto& perm = w.shift_permutation();
      CMatrix derivative = CMatrix::Zero(w.dim(), w.dim());
      CMatrix prefix = identity(w.dim());
      for (std::size_t j = 0; j < m; ++j) {
        const CMatrix inner = kron(steps[j].coin * steps[j].generator * steps[j].slope, lift);
        CMatrix shifted(w.dim(), w.dim());
        for (int i = 0; i < w.dim(); ++i) shifted.row(perm[i]) = inner.row(i);
        derivative += prefix * shifted * suffix[j];
        prefix = prefix * at_zero[j];
      }
      return Complex(0.0, 1.0) * std::conj(p.phase()) * derivative;
    }
    case ProtocolExpr::Kind::Concat:
      return effective_hamiltonian(p.left()) + effective_hamiltonian(p.right());
    case ProtocolExpr::Kind::Commutator:
      return Complex(0.0, -1.0) * commutator(effective_hamiltonian(p.left()), effective_hamiltonian(p.right()));
  }
  return {};
}

CMatrix effective_hamiltonian_fd(const ProtocolExpr& p, double h) {
  return Complex(0.0, 1.0) * std::conj(p.phase()) * (evaluate(p, h) - evaluate(p, 0.0)) / h;
}

double single_step_error(const ProtocolExpr& p, double x) {
  const CMatrix u = std::conj(p.phase()) * protocol_unitary(p, x);
  return distance(u, expm_hermitian(effective_hamiltonian(p), x));
}

RepeatedLimit repeated_limit(const ProtocolExpr& p, double gamma, double t, std::int64_t m) {
  if (m < 1) throw Error(ErrorKind::InvalidArgument, "repetition count must be positive");
  const double x = gamma * t / static_cast<double>(m);
  const CMatrix step = std::conj(p.phase()) * protocol_unitary(p, x);
  RepeatedLimit out{binary_power(step, m), 0.0};
  out.error = distance(out.unitary, expm_hermitian(effective_hamiltonian(p), gamma * t));
  return out;
}

std::optional<double> fit_exponent(std::span<const ConvergenceSample> samples) {
  std::vector<const ConvergenceSample*> sorted;
  for (const auto& s : samples) {
    if (s.x > 0.0 && s.error > 0.0) sorted.push_back(&s);
  }
  std::sort(sorted.begin(), sorted.end(), [](auto* a, auto* b) { return a->x < b->x; });
  const std::size_t keep = std::max<std::size_t>(2, (sorted.size() + 1) / 2);
  if (sorted.size() < 2) return std::nullopt;
  sorted.resize(std::min(keep, sorted.size()));

  double mx = 0.0, my = 0.0;
  for (auto* s : sorted) {
    mx += std::log(s->x);
    my += std::log(s->error);
  }
  mx /= sorted.size();
  my /= sorted.size();
  double sxy = 0.0, sxx = 0.0;
  for (auto* s : sorted) {
    const double dx = std::log(s->x) - mx;
    sxy += dx * (std::log(s->error) - my);
    sxx += dx * dx;
  }
  if (sxx == 0.0) return std::nullopt;
  return sxy / sxx;
}

ConvergenceReport convergence_study(const ProtocolExpr& p, double gamma, double t,
                                    std::span<const std::int64_t> m_list) {
  if (m_list.empty()) throw Error(ErrorKind::InvalidArgument, "m list is empty");
  for (std::size_t i = 1; i < m_list.size(); ++i) {
    if (m_list[i] <= m_list[i - 1]) throw Error(ErrorKind::InvalidArgument, "m list must be strictly ascending");
  }
  ConvergenceReport report;
  for (const auto m : m_list) {
    const auto limit = repeated_limit(p, gamma, t, m);
    report.samples.push_back({m, gamma * t / static_cast<double>(m), limit.error});
  }
  report.fitted_exponent = fit_exponent(report.samples);
  return report;
}

ConvergenceReport single_step_study(const ProtocolExpr& p, std::span<const double> x_list) {
  if (x_list.empty()) throw Error(ErrorKind::InvalidArgument, "x list is empty");
  for (std::size_t i = 1; i < x_list.size(); ++i) {
    if (x_list[i] >= x_list[i - 1]) throw Error(ErrorKind::InvalidArgument, "x list must be strictly decreasing");
  }
  ConvergenceReport report;
  for (const double x : x_list) report.samples.push_back({0, x, single_step_error(p, x)});
  report.fitted_exponent = fit_exponent(report.samples);
  return report;
}

std::pair<CVector, CVector> chiral_split(const CVector& psi, int n) {
  if (n < 1 || psi.size() != 2 * n) {
    throw Error(ErrorKind::DimMismatch, "state has dimension " + std::to_string(psi.size()) + ", expected " +
                                            std::to_string(2 * n));
  }
  return {psi.head(n), psi.tail(n)};
}

ChiralComponents chiral_combinations(const CVector& psi_r, const CVector& psi_l, int n) {
  if (psi_r.size() != n || psi_l.size() != n) throw Error(ErrorKind::DimMismatch, "chiral halves must have dimension n");
  const CMatrix f = circulant_shift(n);
  const CVector f_l = f * psi_l;
  const CVector ft_r = f.transpose() * psi_r;
  return {psi_r + f_l, psi_l + ft_r, psi_r - f_l, psi_l - ft_r};
}

CVector chiral_reconstruct(const ChiralComponents& parts) {
  const auto n = parts.plus1.size();
  CVector out(2 * n);
  out.head(n) = 0.5 * (parts.plus1 + parts.minus1);
  out.tail(n) = 0.5 * (parts.plus2 + parts.minus2);
  return out;
}

CVector phi_transform(const CVector& psi, double gamma, double t, int sign) {
  if (sign != 1 && sign != -1) throw Error(ErrorKind::InvalidArgument, "sign must be +1 or -1");
  return 0.5 * std::exp(Complex(0.0, 2.0 * sign * gamma * t)) * psi;
}

}  // namespace qwl
