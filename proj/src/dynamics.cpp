#include "rnls/dynamics.hpp"

#include <cmath>
#include <sstream>

#include "rnls/diagnostics.hpp"
#include "rnls/initial_data.hpp"

namespace rnls {

VectorField nonlinearity(const VectorField& u) {
  const RealField twice_rho = 2.0 * u.density();
  VectorField f(u.grid(), u.band());
#pragma omp parallel for schedule(static)
  for (int s = 0; s < u.size(); ++s) {
    f.slot(s) = (twice_rho - u.slot(s).abs2()).cast<Complex>() * u.slot(s);
  }
  return f;
}

VectorField nonlinearity_bruteforce(const VectorField& u) {
  if (u.band().radius() > kBruteForceMaxRadius) {
    throw DomainError("band too large for the brute-force resonance sum (J <= " +
                      std::to_string(kBruteForceMaxRadius) + ")");
  }
  VectorField f(u.grid(), u.band());
  for (int s = 0; s < u.size(); ++s) {
    const int j = u.band().mode_at(s);
    Field& out = f.slot(s);
    for (const auto& t : enumerate_resonances(j, u.band())) {
      out += u.mode(t.j1) * u.mode(t.j2).conjugate() * u.mode(t.j3);
    }
  }
  return f;
}

void StepperConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw DomainError("stepper.dt must be positive");
  if (!(horizon >= dt)) throw DomainError("stepper.T must be at least stepper.dt");
  if (snapshot_stride < 1) throw DomainError("stepper.snapshot_stride must be >= 1");
}

std::int64_t StepperConfig::steps() const {
  return static_cast<std::int64_t>(std::llround(horizon / dt));
}

StrangStepper::StrangStepper(const SpatialGrid& grid, Real dt, bool dealias)
    : grid_(grid), dt_(dt) {
  if (!(dt >= 0.0) || !std::isfinite(dt)) throw DomainError("time step must be finite and >= 0");
  half_symbol_ = (grid.k_squared() * (-0.5 * dt)).unaryExpr([](Real p) { return std::polar(1.0, p); });
  if (dealias) half_symbol_ *= dealias_mask(grid).cast<Complex>();
}

void StrangStepper::half_kinetic(VectorField& u) const {
#pragma omp parallel for schedule(static)
  for (int s = 0; s < u.size(); ++s) {
    Field& f = u.slot(s);
    grid_.forward_in_place(f);
    f *= half_symbol_;
    grid_.inverse_in_place(f);
  }
}

void StrangStepper::nonlinear_phase(VectorField& u, Real dt) {
  // rho must be complete before any mode rotates.
  const RealField twice_rho = 2.0 * u.density();
#pragma omp parallel for schedule(static)
  for (int s = 0; s < u.size(); ++s) {
    Field& f = u.slot(s);
    const RealField speed = twice_rho - f.abs2();
    f *= (speed * (-dt)).unaryExpr([](Real p) { return std::polar(1.0, p); });
  }
}

void StrangStepper::step(VectorField& u) const {
  if (!(u.grid() == grid_)) throw DomainError("state grid differs from the stepper grid");
  if (dt_ == 0.0) return;
  half_kinetic(u);
  nonlinear_phase(u, dt_);
  half_kinetic(u);
}

VectorField strang_step(const VectorField& u, Real dt, bool dealias) {
  VectorField out = u;
  StrangStepper(u.grid(), dt, dealias).step(out);
  return out;
}

namespace {

class RecordBuilder {
public:
  RecordBuilder(const SpatialGrid& grid, const DiagnosticsOptions& options)
      : options_(options), l4_(4.0, SpatialExponent::kFour, 0) {
    if (options.morawetz) morawetz_.emplace(grid);
  }

  DiagnosticsRecord operator()(Real t, const VectorField& u) {
    DiagnosticsRecord r;
    r.t = t;
    r.mass = mass(u);
    r.mass_h1 = mass(u, WeightSpec::bracket());
    r.energy = energy(u);
    l4_.add(t, u);
    r.l4_accum = l4_.integral();
    if (morawetz_) r.morawetz = (*morawetz_)(u, options_.morawetz_cutoff);
    // Centers of the zero state are reported as 0.
    if (options_.params && r.mass > 0.0) {
      const FrameParams p = extract_params(u, options_.mass_fraction);
      r.x_center = p.x_center;
      r.xi_center = p.xi_center;
      r.n_scale = p.n_scale;
    }
    return r;
  }

private:
  DiagnosticsOptions options_;
  MixedNormAccumulator l4_;
  std::optional<MorawetzEvaluator> morawetz_;
};

} // namespace

EvolveResult evolve(const VectorField& initial, const StepperConfig& config,
                    const std::vector<Observer>& observers, const DiagnosticsOptions& options) {
  config.validate();
  const StrangStepper stepper(initial.grid(), config.dt, config.dealias);
  RecordBuilder build(initial.grid(), options);
  EvolveResult result{initial, {}};
  VectorField& u = result.state;
  const Real mass0 = mass(u);
  const std::int64_t steps = config.steps();

  auto observe = [&](std::int64_t step, Real t) {
    result.records.push_back(build(t, u));
    for (const auto& obs : observers) obs(step, t, u);
  };

  observe(0, 0.0);
  for (std::int64_t n = 1; n <= steps; ++n) {
    stepper.step(u);
    const Real t = n * config.dt;
    if (!u.all_finite()) {
      throw ResolutionError("non-finite value at step " + std::to_string(n));
    }
    const Real m = mass(u);
    const Real drift = mass0 > 0.0 ? std::abs(m - mass0) / mass0 : std::abs(m);
    if (drift > kMassDriftLimit) {
      std::ostringstream msg;
      msg << "mass drift " << drift << " exceeds " << kMassDriftLimit << " at t = " << t
          << " (under-resolved run)";
      throw ResolutionError(msg.str());
    }
    if (n % config.snapshot_stride == 0 || n == steps) observe(n, t);
  }
  return result;
}

Real pointwise_estimate_ratio(const VectorField& u, int weight_exponent) {
  const RealField num = pointwise_h_norm(nonlinearity(u), weight_exponent);
  const RealField den = pointwise_h_norm(u, weight_exponent).cube();
  const Real floor = 1e-12 * den.maxCoeff();
  Real best = 0.0;
  for (Eigen::Index i = 0; i < den.size(); ++i) {
    if (den.data()[i] > floor) best = std::max(best, num.data()[i] / den.data()[i]);
  }
  return best;
}

Real nonlinear_estimate_probe(const EnsembleSpec& spec) {
  if (spec.band_radius > kBruteForceMaxRadius) throw DomainError("ensemble band limited to J <= 16");
  if (spec.samples < 1) throw DomainError("ensemble needs at least one sample");
  const SpatialGrid grid(spec.half_width, spec.grid_points);
  const ModeBand band(spec.band_radius);
  Rng rng(spec.seed);
  Real best = 0.0;
  for (int k = 0; k < spec.samples; ++k) {
    const VectorField u = random_state(grid, band, rng, 1.0, 1.0, 2);
    best = std::max(best, pointwise_estimate_ratio(u, spec.weight_exponent));
  }
  return best;
}

} // namespace rnls
