#include "rnls/initial_data.hpp"

#include <cmath>

namespace rnls {

DataFamily data_family_from(const std::string& name) {
  if (name == "zero") return DataFamily::kZero;
  if (name == "gaussian") return DataFamily::kGaussian;
  if (name == "random_gaussians") return DataFamily::kRandomGaussians;
  throw DomainError("unknown initial-data family '" + name + "'");
}

std::string to_string(DataFamily family) {
  switch (family) {
    case DataFamily::kZero: return "zero";
    case DataFamily::kGaussian: return "gaussian";
    case DataFamily::kRandomGaussians: return "random_gaussians";
  }
  return "unknown";
}

Field gaussian(const SpatialGrid& grid, Real amplitude, Real width, const Vector2& center,
               const Vector2& xi) {
  const RealField d0 = grid.x_coordinate(0) - center[0];
  const RealField d1 = grid.x_coordinate(1) - center[1];
  const RealField envelope = amplitude * (-(d0.square() + d1.square()) / (2.0 * width * width)).exp();
  const RealField phase = grid.x_coordinate(0) * xi[0] + grid.x_coordinate(1) * xi[1];
  return envelope.cast<Complex>() * phase.unaryExpr([](Real p) { return std::polar(1.0, p); });
}

Field free_gaussian(const SpatialGrid& grid, Real t) {
  const Complex z(1.0, 2.0 * t);
  const RealField r2 = grid.x_coordinate(0).square() + grid.x_coordinate(1).square();
  return r2.cast<Complex>().unaryExpr([z](Complex r) { return std::exp(-r / (2.0 * z)) / z; });
}

namespace {

void add_random_bumps(Field& target, const SpatialGrid& grid, Rng& rng, Real amplitude,
                      Real width, int bumps, Real spread, Real max_frequency) {
  for (int b = 0; b < bumps; ++b) {
    const Real radius = spread * std::sqrt(rng.uniform());
    const Real angle = 2.0 * M_PI * rng.uniform();
    const Vector2 c(radius * std::cos(angle), radius * std::sin(angle));
    const Real w = width * rng.uniform(0.5, 1.0);
    const Real kr = max_frequency * rng.uniform();
    const Real ka = 2.0 * M_PI * rng.uniform();
    const Vector2 xi(kr * std::cos(ka), kr * std::sin(ka));
    const Complex a = amplitude * rng.complex_normal();
    target += a * gaussian(grid, 1.0, w, c, xi);
  }
}

} // namespace

VectorField make_initial_data(const SpatialGrid& grid, const ModeBand& band,
                              const InitialDataSpec& spec, Rng& rng) {
  VectorField u(grid, band);
  switch (spec.family) {
    case DataFamily::kZero:
      break;
    case DataFamily::kGaussian:
      for (int j : spec.modes) u.mode(j) = gaussian(grid, spec.amplitude, spec.width, spec.center, spec.xi);
      break;
    case DataFamily::kRandomGaussians:
      for (int j : spec.modes) {
        add_random_bumps(u.mode(j), grid, rng, spec.amplitude, spec.width, spec.bumps, spec.spread,
                         spec.max_frequency);
      }
      break;
  }
  return u;
}

VectorField random_state(const SpatialGrid& grid, const ModeBand& band, Rng& rng, Real amplitude,
                         Real width, int bumps) {
  VectorField u(grid, band);
  for (int s = 0; s < u.size(); ++s) {
    add_random_bumps(u.slot(s), grid, rng, amplitude, width, bumps, width, 1.0 / width);
  }
  return u;
}

} // namespace rnls
