#ifndef RNLS_RANDOM_HPP
#define RNLS_RANDOM_HPP

#include <cmath>
#include <cstdint>
#include <random>

#include "rnls/types.hpp"

namespace rnls {

/// Portable random source: std::mt19937_64 (its output sequence is fixed by the
/// C++ standard) with explicitly defined conversions. The standard library
/// distributions are implementation-defined, so none are used here.
///
///   uniform()  = (next() >> 11) * 2^-53                in [0, 1)
///   normal()   = Box-Muller cosine branch on (1 - uniform(), uniform())
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  Real uniform() { return static_cast<Real>(next() >> 11) * 0x1.0p-53; }
  Real uniform(Real lo, Real hi) { return lo + (hi - lo) * uniform(); }

  Real normal() {
    const Real r = std::sqrt(-2.0 * std::log(1.0 - uniform()));
    const Real theta = 2.0 * M_PI * uniform();
    return r * std::cos(theta);
  }

  /// Standard complex Gaussian: independent N(0, 1/2) real and imaginary parts.
  Complex complex_normal() {
    const Real re = normal();
    const Real im = normal();
    return {re * M_SQRT1_2, im * M_SQRT1_2};
  }

  /// Independent stream derived from this one, e.g. one per ensemble member.
  Rng split() { return Rng(next() ^ 0x9e3779b97f4a7c15ULL); }

private:
  std::mt19937_64 engine_;
};

} // namespace rnls

#endif // RNLS_RANDOM_HPP
