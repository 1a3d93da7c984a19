#ifndef RNLS_STATE_HPP
#define RNLS_STATE_HPP

#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

#include "rnls/grid.hpp"
#include "rnls/resonance.hpp"

namespace rnls {

/// The truncated vector state {u_j}, |j| <= J, one complex grid per mode.
class VectorField {
public:
  VectorField(const SpatialGrid& grid, const ModeBand& band);

  const SpatialGrid& grid() const { return grid_; }
  const ModeBand& band() const { return band_; }
  int size() const { return static_cast<int>(modes_.size()); }

  Field& mode(int j);
  const Field& mode(int j) const;
  Field& slot(int s) { return modes_[s]; }
  const Field& slot(int s) const { return modes_[s]; }

  /// rho = sum_j |u_j|^2.
  RealField density() const;
  bool all_finite() const;
  bool is_zero() const;

  VectorField& operator+=(const VectorField& other);
  VectorField& operator-=(const VectorField& other);
  VectorField& operator*=(Complex factor);

private:
  void require_compatible(const VectorField& other) const;

  SpatialGrid grid_;
  ModeBand band_;
  std::vector<Field> modes_;
};

/// g(j) = a + b j + c j^2 with a, c >= 0.
struct WeightSpec {
  Real a = 1.0;
  Real b = 0.0;
  Real c = 0.0;

  static WeightSpec unit() { return {1.0, 0.0, 0.0}; }
  static WeightSpec bracket() { return {1.0, 0.0, 1.0}; }

  void validate() const;
  Real operator()(int j) const { return a + b * j + c * Real(j) * Real(j); }
};

/// Spatial exponent for the L^p_x h^a norms; kInfinity is the grid maximum.
enum class SpatialExponent { kTwo = 2, kFour = 4, kInfinity = 0 };

SpatialExponent spatial_exponent_from(double p);

/// Pointwise sequence norm (sum_j <j>^{2a} |u_j|^2)^{1/2}, a in {0, 1}.
RealField pointwise_h_norm(const VectorField& u, int weight_exponent);

Real mass(const VectorField& u, const WeightSpec& weight = WeightSpec::unit());
Real kinetic_energy(const VectorField& u);
Real interaction_energy(const VectorField& u);
Real energy(const VectorField& u);

/// || (sum_j <j>^{2a} |u_j|^2)^{1/2} ||_{L^p_x}.
Real norm(const VectorField& u, SpatialExponent p, int weight_exponent);

/// Trapezoid-rule accumulation of int ||u(t)||^p_{L^q_x h^a} dt over samples.
class MixedNormAccumulator {
public:
  MixedNormAccumulator(Real time_exponent, SpatialExponent space, int weight_exponent);

  void add(Real t, const VectorField& u);
  /// Adds a precomputed spatial norm value at time t.
  void add_value(Real t, Real spatial_norm);

  /// int ||u||^p dt so far.
  Real integral() const { return integral_; }
  /// (int ||u||^p dt)^{1/p}.
  Real norm() const;
  int samples() const { return samples_; }

  SpatialExponent space() const { return space_; }
  int weight_exponent() const { return weight_exponent_; }

private:
  Real time_exponent_;
  SpatialExponent space_;
  int weight_exponent_;
  Real integral_ = 0.0;
  Real last_t_ = 0.0;
  Real last_value_ = 0.0;
  int samples_ = 0;
};

/// One row of the diagnostics stream.
struct DiagnosticsRecord {
  Real t = 0.0;
  Real mass = 0.0;
  Real mass_h1 = 0.0;
  Real energy = 0.0;
  Real l4_accum = 0.0;
  Real morawetz = 0.0;
  Vector2 x_center = Vector2::Zero();
  Vector2 xi_center = Vector2::Zero();
  Real n_scale = 0.0;
};

const char* diagnostics_csv_header();
void write_csv_row(std::ostream& os, const DiagnosticsRecord& record);

/// Shortest round-trip decimal representation.
std::string format_real(Real value);

} // namespace rnls

#endif // RNLS_STATE_HPP
