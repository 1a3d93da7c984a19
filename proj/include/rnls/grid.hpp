#ifndef RNLS_GRID_HPP
#define RNLS_GRID_HPP

#include <array>
#include <memory>

#include "rnls/types.hpp"

namespace rnls {

/// Smooth radial cutoff: 1 on r <= 1, 0 on r >= 2, and
/// s(2-r) / (s(2-r) + s(r-1)) with s(t) = exp(-1/t) in between.
Real bump(Real r);

/// Periodic N x N sampling of [-L, L)^2 together with its frequency lattice.
///
/// Point (a, b) sits at x = (-L + a dx, -L + b dx). Spectral arrays use FFT
/// ordering: index m < N/2 is frequency m dk, otherwise (m - N) dk, so the
/// Nyquist row is assigned to -N/2. Spectral coefficients approximate the
/// unitary transform (2 pi)^-1 \int u(x) e^{-ik.x} dx up to a unimodular
/// factor from the box offset, so sum |u|^2 dx^2 == sum |u_hat|^2 dk^2.
///
/// Copies share the transform plans; a grid is immutable after construction
/// and transforms may be called from several threads at once.
class SpatialGrid {
public:
  SpatialGrid(Real half_width, int points);

  Real half_width() const { return half_width_; }
  int points() const { return points_; }
  Real dx() const { return 2.0 * half_width_ / points_; }
  Real dk() const { return M_PI / half_width_; }
  /// Largest representable |k| component (the Nyquist magnitude).
  Real k_nyquist() const { return dk() * (points_ / 2); }
  Real cell_area() const { return dx() * dx(); }
  Real spectral_cell_area() const { return dk() * dk(); }

  Real coordinate(int index) const { return -half_width_ + index * dx(); }
  /// Signed lattice index of FFT slot m.
  int frequency_index(int m) const { return m < points_ / 2 ? m : m - points_; }
  Real wavenumber(int m) const { return frequency_index(m) * dk(); }

  /// |k|^2 on the spectral lattice.
  const RealField& k_squared() const;
  /// |k| on the spectral lattice.
  const RealField& k_norm() const;
  /// x-coordinate arrays (component 0 varies along rows, component 1 along columns).
  const RealField& x_coordinate(int component) const;
  /// k-component arrays in FFT ordering.
  const RealField& k_component(int component) const;

  Field zeros() const { return Field::Zero(points_, points_); }
  bool matches(const Field& f) const { return f.rows() == points_ && f.cols() == points_; }
  bool matches(const RealField& f) const { return f.rows() == points_ && f.cols() == points_; }

  Field forward(const Field& field) const;
  Field inverse(const Field& coefficients) const;
  void forward_in_place(Field& field) const;
  void inverse_in_place(Field& coefficients) const;

  /// inverse(symbol * forward(field)).
  Field apply_multiplier(const Field& field, const RealField& symbol) const;
  Field apply_multiplier(const Field& field, const Field& symbol) const;

  bool operator==(const SpatialGrid& other) const {
    return half_width_ == other.half_width_ && points_ == other.points_;
  }

private:
  struct Impl;
  Real half_width_;
  int points_;
  std::shared_ptr<const Impl> impl_;
};

enum class ProjectionMode { kShell, kLowPass };

/// Littlewood-Paley symbol: psi_i(k) for a single shell (zero for i < 0),
/// phi(2^-i |k|) for the low-pass.
RealField lp_symbol(const SpatialGrid& grid, int shell, ProjectionMode mode);

/// Same symbol recentered at the lattice frequency `shift` (in lattice units).
RealField lp_symbol_shifted(const SpatialGrid& grid, int shell, ProjectionMode mode,
                            const std::array<int, 2>& shift);

Field lp_project(const SpatialGrid& grid, const Field& field, int shell, ProjectionMode mode);

/// Lattice offset for a frequency vector; throws unless xi0 is a representable lattice point.
std::array<int, 2> lattice_offset(const SpatialGrid& grid, const Vector2& xi0);

/// e^{ix.xi0} P (e^{-ix.xi0} f).
Field galilean_project(const SpatialGrid& grid, const Field& field, const Vector2& xi0, int shell,
                       ProjectionMode mode);

/// |grad|^{1/2} of a real density; the output is real.
RealField half_derivative(const SpatialGrid& grid, const RealField& density);

/// Multiplier |k|^s applied to a real field.
RealField fractional_derivative(const SpatialGrid& grid, const RealField& density, Real order);

/// Spectral gradient component d/dx_c.
Field gradient(const SpatialGrid& grid, const Field& field, int component);

/// e^{-i|k|^2 t} applied spectrally.
Field free_propagate(const SpatialGrid& grid, const Field& field, Real t);

/// Plane wave e^{ix.xi} sampled on the grid.
Field plane_wave(const SpatialGrid& grid, const Vector2& xi);

/// Two-thirds rule: 1 where both |k_c| index magnitudes are <= N/3, else 0.
RealField dealias_mask(const SpatialGrid& grid);

} // namespace rnls

#endif // RNLS_GRID_HPP
