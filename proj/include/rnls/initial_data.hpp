#ifndef RNLS_INITIAL_DATA_HPP
#define RNLS_INITIAL_DATA_HPP

#include <string>
#include <vector>

#include "rnls/random.hpp"
#include "rnls/state.hpp"

namespace rnls {

enum class DataFamily {
  kZero,            ///< u_j = 0
  kGaussian,        ///< A e^{ix.xi} e^{-|x-c|^2 / (2 w^2)} in every listed mode
  kRandomGaussians  ///< per listed mode, a sum of randomly placed modulated Gaussians
};

DataFamily data_family_from(const std::string& name);
std::string to_string(DataFamily family);

struct InitialDataSpec {
  DataFamily family = DataFamily::kGaussian;
  Real amplitude = 1.0;
  Real width = 1.0;
  Vector2 center = Vector2::Zero();
  Vector2 xi = Vector2::Zero();
  std::vector<int> modes{0};
  /// Random family: bumps per mode, centers drawn in |c_i| <= spread,
  /// widths in [width/2, width], carrier frequencies |xi_i| <= max_frequency.
  int bumps = 3;
  Real spread = 1.0;
  Real max_frequency = 1.0;
};

/// Gaussian A e^{ix.xi} e^{-|x-c|^2/(2w^2)} sampled on the grid.
Field gaussian(const SpatialGrid& grid, Real amplitude, Real width, const Vector2& center,
               const Vector2& xi = Vector2::Zero());

/// Closed-form free evolution of e^{-|x|^2/2}: (1+2it)^-1 exp(-|x|^2 / (2(1+2it))).
Field free_gaussian(const SpatialGrid& grid, Real t);

VectorField make_initial_data(const SpatialGrid& grid, const ModeBand& band,
                              const InitialDataSpec& spec, Rng& rng);

/// Random state with `bumps` Gaussians in every mode of the band.
VectorField random_state(const SpatialGrid& grid, const ModeBand& band, Rng& rng,
                         Real amplitude = 1.0, Real width = 1.0, int bumps = 2);

} // namespace rnls

#endif // RNLS_INITIAL_DATA_HPP
