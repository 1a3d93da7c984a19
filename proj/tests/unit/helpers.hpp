#ifndef RNLS_TEST_HELPERS_HPP
#define RNLS_TEST_HELPERS_HPP

#include "rnls/initial_data.hpp"
#include "rnls/random.hpp"
#include "rnls/state.hpp"

namespace rnls::test {

inline Field random_field(const SpatialGrid& grid, Rng& rng) {
  Field f(grid.points(), grid.points());
  for (Eigen::Index i = 0; i < f.size(); ++i) f.data()[i] = rng.complex_normal();
  return f;
}

/// Random field whose spectrum vanishes outside |k| <= k_max.
inline Field band_limited(const SpatialGrid& grid, Rng& rng, Real k_max) {
  Field spec = random_field(grid, rng);
  spec *= (grid.k_norm() <= k_max).cast<Real>().cast<Complex>();
  return grid.inverse(spec);
}

inline Real max_abs(const Field& f) { return f.abs().maxCoeff(); }

inline Real rel_diff(const Field& a, const Field& b) {
  return std::sqrt((a - b).abs2().sum() / std::max(a.abs2().sum(), 1e-300));
}

inline Real rel_diff(const VectorField& a, const VectorField& b) {
  Real num = 0.0, den = 0.0;
  for (int s = 0; s < a.size(); ++s) {
    num += (a.slot(s) - b.slot(s)).abs2().sum();
    den += a.slot(s).abs2().sum();
  }
  return std::sqrt(num / std::max(den, 1e-300));
}

} // namespace rnls::test

#endif // RNLS_TEST_HELPERS_HPP
