#include "rnls/state.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

namespace rnls {

VectorField::VectorField(const SpatialGrid& grid, const ModeBand& band)
    : grid_(grid), band_(band), modes_(static_cast<std::size_t>(band.size()), grid.zeros()) {}

Field& VectorField::mode(int j) {
  if (!band_.contains(j)) throw DomainError("mode " + std::to_string(j) + " outside band");
  return modes_[band_.slot(j)];
}

const Field& VectorField::mode(int j) const {
  if (!band_.contains(j)) throw DomainError("mode " + std::to_string(j) + " outside band");
  return modes_[band_.slot(j)];
}

RealField VectorField::density() const {
  RealField rho = RealField::Zero(grid_.points(), grid_.points());
  for (const auto& m : modes_) rho += m.abs2();
  return rho;
}

bool VectorField::all_finite() const {
  for (const auto& m : modes_) {
    if (!m.real().allFinite() || !m.imag().allFinite()) return false;
  }
  return true;
}

bool VectorField::is_zero() const {
  for (const auto& m : modes_) {
    if ((m != Complex(0.0)).any()) return false;
  }
  return true;
}

void VectorField::require_compatible(const VectorField& other) const {
  if (!(grid_ == other.grid_) || !(band_ == other.band_)) {
    throw DomainError("vector fields live on different grids or bands");
  }
}

VectorField& VectorField::operator+=(const VectorField& other) {
  require_compatible(other);
  for (std::size_t s = 0; s < modes_.size(); ++s) modes_[s] += other.modes_[s];
  return *this;
}

VectorField& VectorField::operator-=(const VectorField& other) {
  require_compatible(other);
  for (std::size_t s = 0; s < modes_.size(); ++s) modes_[s] -= other.modes_[s];
  return *this;
}

VectorField& VectorField::operator*=(Complex factor) {
  for (auto& m : modes_) m *= factor;
  return *this;
}

void WeightSpec::validate() const {
  if (!(a >= 0.0) || !(c >= 0.0) || !std::isfinite(b)) {
    throw DomainError("mass weight requires a >= 0 and c >= 0");
  }
}

SpatialExponent spatial_exponent_from(double p) {
  if (p == 2.0) return SpatialExponent::kTwo;
  if (p == 4.0) return SpatialExponent::kFour;
  if (std::isinf(p) && p > 0) return SpatialExponent::kInfinity;
  throw DomainError("unsupported spatial exponent " + std::to_string(p) + " (use 2, 4 or inf)");
}

namespace {

void require_weight_exponent(int a) {
  if (a != 0 && a != 1) throw DomainError("h^a weight exponent must be 0 or 1");
}

} // namespace

RealField pointwise_h_norm(const VectorField& u, int weight_exponent) {
  require_weight_exponent(weight_exponent);
  const int n = u.grid().points();
  RealField sum = RealField::Zero(n, n);
  for (int s = 0; s < u.size(); ++s) {
    const int j = u.band().mode_at(s);
    const Real w = weight_exponent == 1 ? bracket_sq<Real>(j) : 1.0;
    sum += w * u.slot(s).abs2();
  }
  return sum.sqrt();
}

Real mass(const VectorField& u, const WeightSpec& weight) {
  weight.validate();
  Real total = 0.0;
  for (int s = 0; s < u.size(); ++s) {
    total += weight(u.band().mode_at(s)) * u.slot(s).abs2().sum();
  }
  return total * u.grid().cell_area();
}

Real kinetic_energy(const VectorField& u) {
  const auto& grid = u.grid();
  Real total = 0.0;
  for (int s = 0; s < u.size(); ++s) {
    total += (grid.k_squared() * grid.forward(u.slot(s)).abs2()).sum();
  }
  return 0.5 * total * grid.spectral_cell_area();
}

Real interaction_energy(const VectorField& u) {
  const RealField rho = u.density();
  RealField quartic = RealField::Zero(rho.rows(), rho.cols());
  for (int s = 0; s < u.size(); ++s) quartic += u.slot(s).abs2().square();
  return 0.25 * (2.0 * rho.square() - quartic).sum() * u.grid().cell_area();
}

Real energy(const VectorField& u) { return kinetic_energy(u) + interaction_energy(u); }

Real norm(const VectorField& u, SpatialExponent p, int weight_exponent) {
  const RealField h = pointwise_h_norm(u, weight_exponent);
  const Real area = u.grid().cell_area();
  switch (p) {
    case SpatialExponent::kTwo:
      return std::sqrt(h.square().sum() * area);
    case SpatialExponent::kFour:
      return std::pow(h.square().square().sum() * area, 0.25);
    case SpatialExponent::kInfinity:
      return h.maxCoeff();
  }
  throw DomainError("unsupported spatial exponent");
}

MixedNormAccumulator::MixedNormAccumulator(Real time_exponent, SpatialExponent space,
                                           int weight_exponent)
    : time_exponent_(time_exponent), space_(space), weight_exponent_(weight_exponent) {
  require_weight_exponent(weight_exponent);
  if (!(time_exponent >= 1.0) || !std::isfinite(time_exponent)) {
    throw DomainError("time exponent must be finite and >= 1");
  }
}

void MixedNormAccumulator::add(Real t, const VectorField& u) {
  add_value(t, rnls::norm(u, space_, weight_exponent_));
}

void MixedNormAccumulator::add_value(Real t, Real spatial_norm) {
  const Real value = std::pow(spatial_norm, time_exponent_);
  if (samples_ > 0) {
    if (t < last_t_) throw DomainError("mixed-norm samples must be time ordered");
    integral_ += 0.5 * (t - last_t_) * (value + last_value_);
  }
  last_t_ = t;
  last_value_ = value;
  ++samples_;
}

Real MixedNormAccumulator::norm() const { return std::pow(integral_, 1.0 / time_exponent_); }

const char* diagnostics_csv_header() {
  return "t,mass,mass_h1,energy,l4_accum,morawetz,xc_1,xc_2,xi_1,xi_2,N_scale";
}

std::string format_real(Real value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

void write_csv_row(std::ostream& os, const DiagnosticsRecord& r) {
  os << format_real(r.t) << ',' << format_real(r.mass) << ',' << format_real(r.mass_h1) << ','
     << format_real(r.energy) << ',' << format_real(r.l4_accum) << ','
     << format_real(r.morawetz) << ',' << format_real(r.x_center[0]) << ','
     << format_real(r.x_center[1]) << ',' << format_real(r.xi_center[0]) << ','
     << format_real(r.xi_center[1]) << ',' << format_real(r.n_scale) << '\n';
}

} // namespace rnls
