#ifndef RNLS_DIAGNOSTICS_HPP
#define RNLS_DIAGNOSTICS_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "rnls/random.hpp"
#include "rnls/snapshot.hpp"

namespace rnls {

// ---------------------------------------------------------------------------
// Modulation parameters
// ---------------------------------------------------------------------------

struct FrameParams {
  Vector2 x_center = Vector2::Zero();
  Vector2 xi_center = Vector2::Zero();
  /// Radius of the smallest frequency ball about xi_center holding the
  /// requested mass fraction (reference radius 1).
  Real n_scale = 0.0;
};

/// Centroids in space and frequency plus the concentration scale. Throws on zero mass.
FrameParams extract_params(const VectorField& u, Real mass_fraction = 0.5);

// ---------------------------------------------------------------------------
// Interaction Morawetz
// ---------------------------------------------------------------------------

/// Optional low-pass P_{<= i} applied to every mode before a Morawetz quantity.
typedef std::optional<int> Cutoff;

VectorField apply_cutoff(const VectorField& u, const Cutoff& cutoff);

/// Momentum density p = sum_j Im[conj(w_j) grad w_j].
std::array<RealField, 2> momentum_density(const VectorField& w);

/// Evaluates M = \int\int rho(y) (x-y)/|x-y| . p(x) dx dy by zero-padded FFT
/// convolution. The kernel is 0 at the origin and truncated to |z| <= L.
class MorawetzEvaluator {
public:
  explicit MorawetzEvaluator(const SpatialGrid& grid);

  Real operator()(const VectorField& u, const Cutoff& cutoff = std::nullopt) const;
  /// Same quantity for precomputed densities.
  Real evaluate(const RealField& rho, const std::array<RealField, 2>& momentum) const;

private:
  SpatialGrid grid_;
  SpatialGrid padded_;
  std::array<Field, 2> kernel_hat_;
};

Real interaction_morawetz(const VectorField& u, const Cutoff& cutoff = std::nullopt);

/// mass(w) ||w||_{L^2 l^2} ||grad w||_{L^2 l^2}, an upper bound for |M|.
Real morawetz_ceiling(const VectorField& u, const Cutoff& cutoff = std::nullopt);

/// || sum_j |grad|^{1/2} |w_j|^2 ||^2_{L^2_x}.
Real morawetz_density_norm(const VectorField& u, const Cutoff& cutoff = std::nullopt);

/// Trapezoid time integral of morawetz_density_norm over a trajectory.
Real morawetz_lhs(const Trajectory& trajectory, const Cutoff& cutoff = std::nullopt);

// ---------------------------------------------------------------------------
// Scattering
// ---------------------------------------------------------------------------

struct ScatterReport {
  std::vector<Real> times;
  /// Running int_0^t ||u||^4_{L^4 l^2} at each snapshot.
  std::vector<Real> l4_running;
  /// int ||u||^4_{L^4 l^2} over each of the equal time windows.
  std::vector<Real> window_values;
  /// Sum of window_values from each window to the end.
  std::vector<Real> tails;
  /// ||e^{-it_{n+1} Delta} u(t_{n+1}) - e^{-it_n Delta} u(t_n)||_{L^2 h^1}, keyed by t_{n+1}.
  std::vector<Real> gaps;

  Real total() const { return l4_running.empty() ? 0.0 : l4_running.back(); }
  /// Fraction of the total carried by the last window.
  Real last_window_fraction() const;
  Real final_gap() const { return gaps.empty() ? 0.0 : gaps.back(); }
  /// True when gaps keyed at times > onset never increase.
  bool gaps_monotone_after(Real onset) const;
  bool small_data(Real threshold) const { return last_window_fraction() < threshold; }
};

/// Streaming version of scattering_probe; feed snapshots in time order.
class ScatterProbe {
public:
  explicit ScatterProbe(int windows = 8);

  void add(Real t, const VectorField& u);
  ScatterReport report() const;

private:
  int windows_;
  std::vector<Real> times_;
  std::vector<Real> l4_values_;
  std::vector<Real> gaps_;
  std::optional<VectorField> previous_pullback_;
};

/// Minimum snapshot count accepted by scattering_probe.
inline constexpr int kScatterMinSnapshots = 8;

ScatterReport scattering_probe(const Trajectory& trajectory, int windows = 8);

// ---------------------------------------------------------------------------
// Bilinear Strichartz scaling
// ---------------------------------------------------------------------------

struct BilinearSample {
  Real ratio;  ///< M / N
  Real value;  ///< measured || ||e^{itD}u0||_{l2} ||e^{itD}v0||_{l2} ||_{L^p_t L^q_x}
};

struct BilinearFit {
  std::vector<BilinearSample> samples;
  Real slope = 0.0;
  Real intercept = 0.0;
  Real r_squared = 0.0;
  Real slope_stderr = 0.0;
};

/// Least squares of log(value) against log(ratio); needs >= 4 samples.
BilinearFit fit_loglog(std::vector<BilinearSample> samples);

struct BilinearProbeSpec {
  int i_high = 0;
  /// Low shells i_high - octave for octave in [first_octave, last_octave].
  int first_octave = 3;
  int last_octave = 6;
  /// Time exponent p (inf allowed) and spatial exponent q.
  Real p = 2.0;
  Real q = 2.0;
  Real half_width = 512.0;
  int grid_points = 1024;
  /// Observation window [0, horizon / N^2].
  Real horizon = 150.0;
  int band_radius = 1;
  int angular_order = 3;
  int linear_samples = 41;
  int geometric_samples = 150;
  std::uint64_t seed = 1;

  void validate() const;
};

/// Random frequency-localized data on the annulus |k| ~ scale, profile
/// (phi(|k|/s) - phi(2|k|/s)) times random angular harmonics, unit L^2 l^2 norm.
VectorField shell_data(const SpatialGrid& grid, const ModeBand& band, Real scale, Rng& rng,
                       int angular_order);

/// Measured bilinear norm for one low shell and the fitted slope over all octaves.
BilinearFit bilinear_probe(const BilinearProbeSpec& spec);

/// Single measurement at the given low shell (i_low may equal i_high).
Real bilinear_norm(const BilinearProbeSpec& spec, int i_low);

} // namespace rnls

#endif // RNLS_DIAGNOSTICS_HPP
