#include "rnls/grid.hpp"

#include <cmath>
#include <mutex>
#include <string>

#include <fftw3.h>

namespace rnls {

namespace {

Real smooth_step_factor(Real t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

// The FFTW planner is not reentrant.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

fftw_complex* as_fftw(Complex* p) { return reinterpret_cast<fftw_complex*>(p); }

} // namespace

Real bump(Real r) {
  r = std::abs(r);
  if (r <= 1.0) return 1.0;
  if (r >= 2.0) return 0.0;
  const Real a = smooth_step_factor(2.0 - r);
  const Real b = smooth_step_factor(r - 1.0);
  return a / (a + b);
}

struct SpatialGrid::Impl {
  fftw_plan forward_plan = nullptr;
  fftw_plan backward_plan = nullptr;
  RealField k_squared;
  RealField k_norm;
  std::array<RealField, 2> x;
  std::array<RealField, 2> k;
  Real forward_scale = 1.0;
  Real inverse_scale = 1.0;

  ~Impl() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    if (forward_plan) fftw_destroy_plan(forward_plan);
    if (backward_plan) fftw_destroy_plan(backward_plan);
  }
};

SpatialGrid::SpatialGrid(Real half_width, int points) : half_width_(half_width), points_(points) {
  if (!(half_width > 0.0) || !std::isfinite(half_width)) {
    throw DomainError("grid half-width must be positive and finite");
  }
  if (points < 8 || !is_power_of_two(points)) {
    throw DomainError("grid points per axis must be a power of two >= 8, got " +
                      std::to_string(points));
  }
  auto impl = std::make_shared<Impl>();
  const int n = points_;
  // ESTIMATE keeps the chosen algorithm, hence the round-off, identical across runs.
  {
    Field scratch(n, n);
    std::lock_guard<std::mutex> lock(planner_mutex());
    impl->forward_plan = fftw_plan_dft_2d(n, n, as_fftw(scratch.data()), as_fftw(scratch.data()),
                                          FFTW_FORWARD, FFTW_ESTIMATE);
    impl->backward_plan = fftw_plan_dft_2d(n, n, as_fftw(scratch.data()), as_fftw(scratch.data()),
                                           FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  if (!impl->forward_plan || !impl->backward_plan) throw std::runtime_error("FFTW planning failed");

  const Real h = dx();
  impl->forward_scale = h * h / (2.0 * M_PI);
  impl->inverse_scale = 2.0 * M_PI / (h * h * Real(n) * Real(n));

  for (int c = 0; c < 2; ++c) {
    impl->x[c].resize(n, n);
    impl->k[c].resize(n, n);
  }
  impl->k_squared.resize(n, n);
  impl->k_norm.resize(n, n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      impl->x[0](a, b) = coordinate(a);
      impl->x[1](a, b) = coordinate(b);
      const Real k0 = wavenumber(a);
      const Real k1 = wavenumber(b);
      impl->k[0](a, b) = k0;
      impl->k[1](a, b) = k1;
      impl->k_squared(a, b) = k0 * k0 + k1 * k1;
      impl->k_norm(a, b) = std::sqrt(k0 * k0 + k1 * k1);
    }
  }
  impl_ = std::move(impl);
}

const RealField& SpatialGrid::k_squared() const { return impl_->k_squared; }
const RealField& SpatialGrid::k_norm() const { return impl_->k_norm; }
const RealField& SpatialGrid::x_coordinate(int component) const { return impl_->x.at(component); }
const RealField& SpatialGrid::k_component(int component) const { return impl_->k.at(component); }

void SpatialGrid::forward_in_place(Field& field) const {
  if (!matches(field)) throw DomainError("field dimensions do not match the grid");
  fftw_execute_dft(impl_->forward_plan, as_fftw(field.data()), as_fftw(field.data()));
  field *= impl_->forward_scale;
}

void SpatialGrid::inverse_in_place(Field& coefficients) const {
  if (!matches(coefficients)) throw DomainError("field dimensions do not match the grid");
  fftw_execute_dft(impl_->backward_plan, as_fftw(coefficients.data()),
                   as_fftw(coefficients.data()));
  coefficients *= impl_->inverse_scale;
}

Field SpatialGrid::forward(const Field& field) const {
  Field out = field;
  forward_in_place(out);
  return out;
}

Field SpatialGrid::inverse(const Field& coefficients) const {
  Field out = coefficients;
  inverse_in_place(out);
  return out;
}

Field SpatialGrid::apply_multiplier(const Field& field, const RealField& symbol) const {
  Field spec = forward(field);
  spec *= symbol.cast<Complex>();
  inverse_in_place(spec);
  return spec;
}

Field SpatialGrid::apply_multiplier(const Field& field, const Field& symbol) const {
  Field spec = forward(field);
  spec *= symbol;
  inverse_in_place(spec);
  return spec;
}

namespace {

Real lp_value(Real knorm, int shell, ProjectionMode mode) {
  if (mode == ProjectionMode::kLowPass) return bump(std::ldexp(knorm, -shell));
  if (shell < 0) return 0.0;
  if (shell == 0) return bump(knorm);
  return bump(std::ldexp(knorm, -shell)) - bump(std::ldexp(knorm, 1 - shell));
}

} // namespace

RealField lp_symbol(const SpatialGrid& grid, int shell, ProjectionMode mode) {
  return lp_symbol_shifted(grid, shell, mode, {0, 0});
}

RealField lp_symbol_shifted(const SpatialGrid& grid, int shell, ProjectionMode mode,
                            const std::array<int, 2>& shift) {
  const int n = grid.points();
  RealField symbol(n, n);
  for (int a = 0; a < n; ++a) {
    // Slot of the unshifted frequency k - xi0, wrapped onto the lattice.
    const int sa = ((a - shift[0]) % n + n) % n;
    const Real k0 = grid.wavenumber(sa);
    for (int b = 0; b < n; ++b) {
      const int sb = ((b - shift[1]) % n + n) % n;
      const Real k1 = grid.wavenumber(sb);
      symbol(a, b) = lp_value(std::sqrt(k0 * k0 + k1 * k1), shell, mode);
    }
  }
  return symbol;
}

Field lp_project(const SpatialGrid& grid, const Field& field, int shell, ProjectionMode mode) {
  return grid.apply_multiplier(field, lp_symbol(grid, shell, mode));
}

std::array<int, 2> lattice_offset(const SpatialGrid& grid, const Vector2& xi0) {
  std::array<int, 2> shift{};
  const int half = grid.points() / 2;
  for (int c = 0; c < 2; ++c) {
    const Real units = xi0[c] / grid.dk();
    const Real rounded = std::round(units);
    if (!std::isfinite(units) || std::abs(units - rounded) > 1e-9 * std::max(1.0, std::abs(units))) {
      throw DomainError("frequency shift is not a lattice vector (dk = " +
                        std::to_string(grid.dk()) + ")");
    }
    if (rounded < -half || rounded > half - 1) {
      throw DomainError("frequency shift outside the representable lattice");
    }
    shift[c] = static_cast<int>(rounded);
  }
  return shift;
}

Field galilean_project(const SpatialGrid& grid, const Field& field, const Vector2& xi0, int shell,
                       ProjectionMode mode) {
  const auto shift = lattice_offset(grid, xi0);
  return grid.apply_multiplier(field, lp_symbol_shifted(grid, shell, mode, shift));
}

RealField fractional_derivative(const SpatialGrid& grid, const RealField& density, Real order) {
  if (!grid.matches(density)) throw DomainError("density dimensions do not match the grid");
  const RealField symbol = grid.k_norm().pow(order);
  return grid.apply_multiplier(density.cast<Complex>(), symbol).real();
}

RealField half_derivative(const SpatialGrid& grid, const RealField& density) {
  return fractional_derivative(grid, density, 0.5);
}

Field gradient(const SpatialGrid& grid, const Field& field, int component) {
  // The Nyquist row has no symmetric partner, so it is dropped; real fields keep real gradients.
  const RealField& k = grid.k_component(component);
  const Real nyquist = -grid.k_nyquist();
  const Field symbol = (k == nyquist).select(RealField::Zero(k.rows(), k.cols()), k).cast<Complex>() * Complex(0.0, 1.0);
  return grid.apply_multiplier(field, symbol);
}

Field free_propagate(const SpatialGrid& grid, const Field& field, Real t) {
  if (!std::isfinite(t)) throw DomainError("propagation time must be finite");
  if (t == 0.0) return field;
  const Field symbol = (grid.k_squared() * (-t)).unaryExpr([](Real p) { return std::polar(1.0, p); });
  return grid.apply_multiplier(field, symbol);
}

Field plane_wave(const SpatialGrid& grid, const Vector2& xi) {
  const RealField phase = grid.x_coordinate(0) * xi[0] + grid.x_coordinate(1) * xi[1];
  return phase.unaryExpr([](Real p) { return std::polar(1.0, p); });
}

RealField dealias_mask(const SpatialGrid& grid) {
  const int n = grid.points();
  const int cutoff = n / 3;
  RealField mask(n, n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      const bool keep = std::abs(grid.frequency_index(a)) <= cutoff &&
                        std::abs(grid.frequency_index(b)) <= cutoff;
      mask(a, b) = keep ? 1.0 : 0.0;
    }
  }
  return mask;
}

} // namespace rnls
