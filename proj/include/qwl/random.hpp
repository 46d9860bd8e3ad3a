#pragma once

#include "qwl/numerics.hpp"

#include <cstdint>

namespace qwl {

/// Reproducible pseudo-random stream, identical on every platform.
///
/// 64-bit linear congruential generator (Knuth's MMIX constants,
/// a = 6364136223846793005, c = 1442695040888963407) seeded with
/// state = seed ^ 0x9E3779B97F4A7C15. uniform() takes the top 53 bits of the
/// advanced state, shifted to the open interval (0, 1). Gaussians come from
/// Box-Muller on two consecutive uniforms.
class LcgStream {
 public:
  explicit LcgStream(std::uint64_t seed) noexcept : state_(seed ^ 0x9E3779B97F4A7C15ULL) {}

  std::uint64_t next() noexcept;
  double uniform() noexcept;
  Complex complex_gaussian() noexcept;

 private:
  std::uint64_t state_;
};

/// Normalized complex Gaussian state.
CVector random_state(Eigen::Index dim, LcgStream& rng);

/// Unitary from the QR factorization of a complex Gaussian matrix, with the
/// phases of R's diagonal folded into Q.
CMatrix random_unitary(Eigen::Index dim, LcgStream& rng);

/// Random element of u(dim): (G - G^dagger) / 2 for complex Gaussian G.
CMatrix random_skew_hermitian(Eigen::Index dim, LcgStream& rng);

}  // namespace qwl
