#pragma once
// Protocol fixtures shared by the unit and acceptance tests.
#include "oracles.hpp"
#include "qwl/limits.hpp"
#include "qwl/random.hpp"

#include <cmath>
#include <memory>
#include <numbers>
#include <vector>

namespace qwl::test {

// Two-step protocol on the K4 walk. Diagonal coins commute with the shift and
// S^2 = I, so the product at zero is diag(d1 d2) (x) I, a phase when
// d2 = conj(d1) e^{i theta}.
inline ProtocolExpr random_example_atom(LcgStream& rng) {
  static const auto walk = std::make_shared<const CoinedWalk>(example_walk());
  const double theta = 2.0 * std::numbers::pi * rng.uniform();
  std::vector<Complex> d1, d2;
  for (int k = 0; k < 3; ++k) {
    const Complex z = std::polar(1.0, 2.0 * std::numbers::pi * rng.uniform());
    d1.push_back(z);
    d2.push_back(std::conj(z) * std::polar(1.0, theta));
  }
  std::vector<ProtocolStep> steps{
      {diag(d1), random_skew_hermitian(3, rng), 2.0 * rng.uniform() - 1.0},
      {diag(d2), random_skew_hermitian(3, rng), 2.0 * rng.uniform() - 1.0},
  };
  return ProtocolExpr::atom(walk, std::move(steps));
}

// i phi^-1 times the derivative at zero of s -> (T(s^power) - T(0)) / s^power,
// Richardson-extrapolated over step sizes s0, s0/2, ..., s0/2^levels.
// power = 2 suits commutators, whose children run at sqrt(x).
inline CMatrix richardson_generator(const ProtocolExpr& p, double s0, int power, int levels = 3) {
  const CMatrix t0 = protocol_unitary(p, 0.0);
  std::vector<CMatrix> table;
  for (int k = 0; k <= levels; ++k) {
    const double x = std::pow(std::ldexp(s0, -k), power);
    table.emplace_back((protocol_unitary(p, x) - t0) / x);
  }
  for (int level = 1; level <= levels; ++level) {
    const double f = std::ldexp(1.0, level);
    for (std::size_t k = table.size() - 1; k >= static_cast<std::size_t>(level); --k)
      table[k] = (f * table[k] - table[k - 1]) / (f - 1.0);
  }
  return Complex(0.0, 1.0) * std::conj(reference_phase(p)) * table.back();
}

}  // namespace qwl::test
