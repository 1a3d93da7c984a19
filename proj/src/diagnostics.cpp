#include "rnls/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace rnls {

FrameParams extract_params(const VectorField& u, Real mass_fraction) {
  if (!(mass_fraction > 0.0 && mass_fraction <= 1.0)) {
    throw DomainError("mass fraction must lie in (0, 1]");
  }
  const auto& grid = u.grid();
  const int n = grid.points();
  const RealField rho = u.density();
  const Real total = rho.sum() * grid.cell_area();
  if (!(total > 0.0)) throw DomainError("modulation parameters need a state with positive mass");

  FrameParams out;
  for (int c = 0; c < 2; ++c) {
    out.x_center[c] = (grid.x_coordinate(c) * rho).sum() * grid.cell_area() / total;
  }

  RealField spectral = RealField::Zero(n, n);
  for (int s = 0; s < u.size(); ++s) spectral += grid.forward(u.slot(s)).abs2();
  spectral *= grid.spectral_cell_area();
  const Real spectral_total = spectral.sum();
  for (int c = 0; c < 2; ++c) {
    out.xi_center[c] = (grid.k_component(c) * spectral).sum() / spectral_total;
  }

  // Cumulative spectral mass by distance from xi_center, linearly interpolated.
  std::vector<std::pair<Real, Real>> shells;
  shells.reserve(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      const Real d0 = grid.k_component(0)(a, b) - out.xi_center[0];
      const Real d1 = grid.k_component(1)(a, b) - out.xi_center[1];
      shells.emplace_back(std::sqrt(d0 * d0 + d1 * d1), spectral(a, b));
    }
  }
  std::sort(shells.begin(), shells.end());
  const Real target = mass_fraction * spectral_total;
  Real cumulative = 0.0;
  Real prev_r = 0.0;
  Real prev_c = 0.0;
  out.n_scale = shells.back().first;
  for (const auto& [r, w] : shells) {
    cumulative += w;
    if (cumulative >= target) {
      const Real span = cumulative - prev_c;
      out.n_scale = span > 0.0 ? prev_r + (r - prev_r) * (target - prev_c) / span : r;
      break;
    }
    prev_r = r;
    prev_c = cumulative;
  }
  return out;
}

VectorField apply_cutoff(const VectorField& u, const Cutoff& cutoff) {
  if (!cutoff) return u;
  const RealField symbol = lp_symbol(u.grid(), *cutoff, ProjectionMode::kLowPass);
  VectorField w(u.grid(), u.band());
  for (int s = 0; s < u.size(); ++s) w.slot(s) = u.grid().apply_multiplier(u.slot(s), symbol);
  return w;
}

std::array<RealField, 2> momentum_density(const VectorField& w) {
  const int n = w.grid().points();
  std::array<RealField, 2> p{RealField::Zero(n, n), RealField::Zero(n, n)};
  for (int s = 0; s < w.size(); ++s) {
    for (int c = 0; c < 2; ++c) {
      p[c] += (w.slot(s).conjugate() * gradient(w.grid(), w.slot(s), c)).imag();
    }
  }
  return p;
}

MorawetzEvaluator::MorawetzEvaluator(const SpatialGrid& grid)
    : grid_(grid), padded_(2.0 * grid.half_width(), 2 * grid.points()) {
  const int n = grid.points();
  const int m = 2 * n;
  const Real h = grid.dx();
  const Real reach = grid.half_width();
  for (int c = 0; c < 2; ++c) kernel_hat_[c] = Field::Zero(m, m);
  for (int a = 0; a < m; ++a) {
    const Real z0 = (a < n ? a : a - m) * h;
    for (int b = 0; b < m; ++b) {
      const Real z1 = (b < n ? b : b - m) * h;
      const Real r = std::sqrt(z0 * z0 + z1 * z1);
      if (r == 0.0 || r > reach) continue;
      kernel_hat_[0](a, b) = z0 / r;
      kernel_hat_[1](a, b) = z1 / r;
    }
  }
  for (auto& k : kernel_hat_) padded_.forward_in_place(k);
}

Real MorawetzEvaluator::evaluate(const RealField& rho,
                                 const std::array<RealField, 2>& momentum) const {
  const int n = grid_.points();
  Field rho_hat = Field::Zero(2 * n, 2 * n);
  rho_hat.topLeftCorner(n, n) = rho.cast<Complex>();
  padded_.forward_in_place(rho_hat);
  Real total = 0.0;
  for (int c = 0; c < 2; ++c) {
    Field conv = rho_hat * kernel_hat_[c];
    padded_.inverse_in_place(conv);
    // The padded transform pair carries one factor dx^2 / (2 pi).
    total += (momentum[c] * conv.topLeftCorner(n, n).real()).sum();
  }
  return 2.0 * M_PI * total * grid_.cell_area();
}

Real MorawetzEvaluator::operator()(const VectorField& u, const Cutoff& cutoff) const {
  if (!(u.grid() == grid_)) throw DomainError("state grid differs from the evaluator grid");
  const VectorField w = apply_cutoff(u, cutoff);
  return evaluate(w.density(), momentum_density(w));
}

Real interaction_morawetz(const VectorField& u, const Cutoff& cutoff) {
  return MorawetzEvaluator(u.grid())(u, cutoff);
}

Real morawetz_ceiling(const VectorField& u, const Cutoff& cutoff) {
  const VectorField w = apply_cutoff(u, cutoff);
  const Real m = mass(w);
  return m * std::sqrt(m) * std::sqrt(2.0 * kinetic_energy(w));
}

Real morawetz_density_norm(const VectorField& u, const Cutoff& cutoff) {
  const VectorField w = apply_cutoff(u, cutoff);
  const RealField d = half_derivative(u.grid(), w.density());
  return d.square().sum() * u.grid().cell_area();
}

Real morawetz_lhs(const Trajectory& trajectory, const Cutoff& cutoff) {
  Real total = 0.0;
  for (std::size_t n = 0; n < trajectory.size(); ++n) {
    if (n > 0 && trajectory[n].t < trajectory[n - 1].t) {
      throw DomainError("trajectory snapshots must be time ordered");
    }
  }
  Real prev = 0.0;
  for (std::size_t n = 0; n < trajectory.size(); ++n) {
    const Real value = morawetz_density_norm(trajectory[n].state, cutoff);
    if (n > 0) total += 0.5 * (trajectory[n].t - trajectory[n - 1].t) * (value + prev);
    prev = value;
  }
  return total;
}

// ---------------------------------------------------------------------------

Real ScatterReport::last_window_fraction() const {
  const Real t = total();
  if (window_values.empty() || t == 0.0) return 0.0;
  return window_values.back() / t;
}

bool ScatterReport::gaps_monotone_after(Real onset) const {
  Real prev = INFINITY;
  for (std::size_t n = 0; n < gaps.size(); ++n) {
    if (times[n + 1] <= onset) continue;
    if (gaps[n] > prev) return false;
    prev = gaps[n];
  }
  return true;
}

ScatterProbe::ScatterProbe(int windows) : windows_(windows) {
  if (windows < 1) throw DomainError("scatter probe needs at least one window");
}

void ScatterProbe::add(Real t, const VectorField& u) {
  if (!times_.empty() && t <= times_.back()) throw DomainError("snapshots must be time ordered");
  const Real l4 = norm(u, SpatialExponent::kFour, 0);
  VectorField pullback(u.grid(), u.band());
  for (int s = 0; s < u.size(); ++s) pullback.slot(s) = free_propagate(u.grid(), u.slot(s), -t);
  if (previous_pullback_) {
    VectorField diff = pullback;
    diff -= *previous_pullback_;
    gaps_.push_back(norm(diff, SpatialExponent::kTwo, 1));
  }
  previous_pullback_ = std::move(pullback);
  times_.push_back(t);
  l4_values_.push_back(l4 * l4 * l4 * l4);
}

ScatterReport ScatterProbe::report() const {
  ScatterReport r;
  r.times = times_;
  r.gaps = gaps_;
  r.l4_running.assign(times_.size(), 0.0);
  r.window_values.assign(static_cast<std::size_t>(windows_), 0.0);
  if (times_.empty()) return r;
  const Real t0 = times_.front();
  const Real span = times_.back() - t0;
  for (std::size_t n = 1; n < times_.size(); ++n) {
    const Real piece = 0.5 * (times_[n] - times_[n - 1]) * (l4_values_[n] + l4_values_[n - 1]);
    r.l4_running[n] = r.l4_running[n - 1] + piece;
    // Each interval belongs to the window containing its midpoint.
    const Real mid = 0.5 * (times_[n] + times_[n - 1]) - t0;
    int w = span > 0.0 ? static_cast<int>(std::floor(mid / span * windows_)) : 0;
    w = std::clamp(w, 0, windows_ - 1);
    r.window_values[static_cast<std::size_t>(w)] += piece;
  }
  r.tails.assign(r.window_values.size(), 0.0);
  Real acc = 0.0;
  for (std::size_t w = r.window_values.size(); w-- > 0;) {
    acc += r.window_values[w];
    r.tails[w] = acc;
  }
  return r;
}

ScatterReport scattering_probe(const Trajectory& trajectory, int windows) {
  if (static_cast<int>(trajectory.size()) < kScatterMinSnapshots) {
    throw DomainError("scattering probe needs at least " + std::to_string(kScatterMinSnapshots) +
                      " snapshots");
  }
  ScatterProbe probe(windows);
  for (const auto& snap : trajectory) probe.add(snap.t, snap.state);
  return probe.report();
}

// ---------------------------------------------------------------------------

BilinearFit fit_loglog(std::vector<BilinearSample> samples) {
  if (samples.size() < 4) throw DomainError("log-log fit needs at least 4 samples");
  BilinearFit fit;
  const std::size_t n = samples.size();
  std::vector<Real> x(n), y(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(samples[i].ratio > 0.0) || !(samples[i].value > 0.0)) {
      throw DomainError("log-log fit needs positive samples");
    }
    x[i] = std::log(samples[i].ratio);
    y[i] = std::log(samples[i].value);
  }
  const Real mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const Real my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  Real sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0) throw DomainError("log-log fit needs distinct ratios");
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  Real sse = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Real e = y[i] - (fit.intercept + fit.slope * x[i]);
    sse += e * e;
  }
  fit.r_squared = syy > 0.0 ? 1.0 - sse / syy : 1.0;
  fit.slope_stderr = std::sqrt(sse / static_cast<Real>(n - 2) / sxx);
  fit.samples = std::move(samples);
  return fit;
}

void BilinearProbeSpec::validate() const {
  if (!(q >= 1.0) || !std::isfinite(q)) throw DomainError("bilinear q must be finite and >= 1");
  if (!(p >= 1.0)) throw DomainError("bilinear p must be >= 1");
  if (std::isfinite(p) && std::abs(1.0 / p + 1.0 / q - 1.0) > 1e-12) {
    throw DomainError("bilinear exponents must satisfy 1/p + 1/q = 1");
  }
  if (std::isinf(p) && q != 1.0) throw DomainError("p = inf pairs with q = 1");
  if (first_octave < 0 || last_octave < first_octave) throw DomainError("bad octave range");
  if (!(horizon > 0.0)) throw DomainError("bilinear window must be positive");
  if (linear_samples < 2 || geometric_samples < 0) throw DomainError("too few time samples");
  const SpatialGrid grid(half_width, grid_points);
  const Real high = std::ldexp(1.0, i_high);
  const Real low = std::ldexp(1.0, i_high - last_octave);
  if (2.0 * high > grid.k_nyquist()) {
    throw DomainError("high shell exceeds the resolvable frequency range");
  }
  if (2.0 * low < 4.0 * grid.dk()) throw DomainError("low shell below the lattice resolution");
}

VectorField shell_data(const SpatialGrid& grid, const ModeBand& band, Real scale, Rng& rng,
                       int angular_order) {
  const int n = grid.points();
  RealField radial(n, n);
  RealField angle(n, n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      const Real r = grid.k_norm()(a, b) / scale;
      radial(a, b) = bump(r) - bump(2.0 * r);
      angle(a, b) = std::atan2(grid.k_component(1)(a, b), grid.k_component(0)(a, b));
    }
  }
  VectorField u(grid, band);
  for (int s = 0; s < u.size(); ++s) {
    Field spec = Field::Zero(n, n);
    for (int l = -angular_order; l <= angular_order; ++l) {
      const Complex c = rng.complex_normal();
      spec += c * angle.unaryExpr([l](Real th) { return std::polar(1.0, l * th); });
    }
    spec *= radial.cast<Complex>();
    u.slot(s) = grid.inverse(spec);
  }
  u *= Complex(1.0 / norm(u, SpatialExponent::kTwo, 0), 0.0);
  return u;
}

namespace {

std::vector<Real> bilinear_times(const BilinearProbeSpec& spec) {
  const Real unit = std::ldexp(1.0, -2 * spec.i_high);
  const Real early = std::min(8.0, spec.horizon);
  std::vector<Real> ts;
  for (int i = 0; i < spec.linear_samples; ++i) {
    ts.push_back(unit * early * i / (spec.linear_samples - 1));
  }
  if (spec.horizon > early && spec.geometric_samples > 0) {
    const Real ratio = std::pow(spec.horizon / early, 1.0 / spec.geometric_samples);
    for (int i = 1; i <= spec.geometric_samples; ++i) {
      ts.push_back(unit * early * std::pow(ratio, i));
    }
  }
  return ts;
}

RealField free_density(const SpatialGrid& grid, const std::vector<Field>& spectra, Real t) {
  const Field phase =
      (grid.k_squared() * (-t)).unaryExpr([](Real p) { return std::polar(1.0, p); });
  RealField rho = RealField::Zero(grid.points(), grid.points());
  for (const auto& s : spectra) {
    Field f = s * phase;
    grid.inverse_in_place(f);
    rho += f.abs2();
  }
  return rho;
}

std::vector<Field> spectra_of(const VectorField& u) {
  std::vector<Field> out;
  for (int s = 0; s < u.size(); ++s) out.push_back(u.grid().forward(u.slot(s)));
  return out;
}

// One pass over the time samples, measuring every requested low shell against the same high data.
std::vector<Real> measure(const BilinearProbeSpec& spec, const std::vector<int>& low_shells) {
  const SpatialGrid grid(spec.half_width, spec.grid_points);
  const ModeBand band(spec.band_radius);
  Rng rng(spec.seed);
  const auto high = spectra_of(shell_data(grid, band, std::ldexp(1.0, spec.i_high), rng,
                                          spec.angular_order));
  // Every low shell reuses one random angular profile, so octaves differ only by scale.
  const Rng low_rng = rng;
  std::vector<std::vector<Field>> lows;
  for (int i : low_shells) {
    Rng r = low_rng;
    lows.push_back(spectra_of(shell_data(grid, band, std::ldexp(1.0, i), r, spec.angular_order)));
  }
  const auto ts = bilinear_times(spec);
  const bool sup_in_time = std::isinf(spec.p);
  std::vector<Real> acc(low_shells.size(), 0.0);
  std::vector<Real> prev(low_shells.size(), 0.0);
  for (std::size_t it = 0; it < ts.size(); ++it) {
    const RealField rho_high = free_density(grid, high, ts[it]);
    for (std::size_t k = 0; k < lows.size(); ++k) {
      const RealField rho_low = free_density(grid, lows[k], ts[it]);
      // || |u| |v| ||_{L^q_x} with |u| = sqrt(rho).
      const Real lq = std::pow((rho_high * rho_low).pow(0.5 * spec.q).sum() * grid.cell_area(),
                               1.0 / spec.q);
      if (sup_in_time) {
        acc[k] = std::max(acc[k], lq);
      } else {
        const Real v = std::pow(lq, spec.p);
        if (it > 0) acc[k] += 0.5 * (ts[it] - ts[it - 1]) * (v + prev[k]);
        prev[k] = v;
      }
    }
  }
  if (!sup_in_time) {
    for (auto& a : acc) a = std::pow(a, 1.0 / spec.p);
  }
  return acc;
}

} // namespace

Real bilinear_norm(const BilinearProbeSpec& spec, int i_low) {
  spec.validate();
  return measure(spec, {i_low}).front();
}

BilinearFit bilinear_probe(const BilinearProbeSpec& spec) {
  spec.validate();
  if (spec.last_octave - spec.first_octave < 3) {
    throw DomainError("bilinear probe needs at least three octaves of M/N");
  }
  std::vector<int> lows;
  for (int o = spec.first_octave; o <= spec.last_octave; ++o) lows.push_back(spec.i_high - o);
  const auto values = measure(spec, lows);
  std::vector<BilinearSample> samples;
  for (std::size_t k = 0; k < lows.size(); ++k) {
    samples.push_back({std::ldexp(1.0, lows[k] - spec.i_high), values[k]});
  }
  return fit_loglog(std::move(samples));
}

} // namespace rnls
