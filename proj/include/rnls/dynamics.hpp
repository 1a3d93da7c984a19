#ifndef RNLS_DYNAMICS_HPP
#define RNLS_DYNAMICS_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "rnls/state.hpp"

namespace rnls {

/// F_j = (2 rho - |u_j|^2) u_j with rho = sum_k |u_k|^2.
VectorField nonlinearity(const VectorField& u);

/// Largest band accepted by the brute-force resonance sum.
inline constexpr int kBruteForceMaxRadius = 16;

/// F_j = sum over the in-band resonance set of u_{j1} conj(u_{j2}) u_{j3}.
VectorField nonlinearity_bruteforce(const VectorField& u);

struct StepperConfig {
  Real dt = 1e-3;
  Real horizon = 1.0;
  bool dealias = true;
  int snapshot_stride = 1;

  void validate() const;
  /// Number of steps, round(T / dt).
  std::int64_t steps() const;
};

/// Strang splitting: half free flow, exact nonlinear phase rotation, half free flow.
/// The phase speed 2 rho - |u_j|^2 is constant along the nonlinear flow, so that
/// substep is exact and preserves every |u_j(x)|.
class StrangStepper {
public:
  StrangStepper(const SpatialGrid& grid, Real dt, bool dealias = true);

  Real dt() const { return dt_; }
  void step(VectorField& u) const;
  /// Free half step on every mode.
  void half_kinetic(VectorField& u) const;
  static void nonlinear_phase(VectorField& u, Real dt);

private:
  SpatialGrid grid_;
  Real dt_;
  Field half_symbol_;
};

VectorField strang_step(const VectorField& u, Real dt, bool dealias = true);

/// Which derived quantities evolve() places in each DiagnosticsRecord.
struct DiagnosticsOptions {
  bool morawetz = true;
  std::optional<int> morawetz_cutoff;
  bool params = true;
  Real mass_fraction = 0.5;
};

/// Called with (step index, time, state) at step 0 and every snapshot_stride steps.
typedef std::function<void(std::int64_t, Real, const VectorField&)> Observer;

struct EvolveResult {
  VectorField state;
  std::vector<DiagnosticsRecord> records;
};

/// Relative mass drift that aborts a run as under-resolved.
inline constexpr Real kMassDriftLimit = 1e-6;

/// Advances to the horizon. Throws ResolutionError on mass drift or non-finite values.
EvolveResult evolve(const VectorField& initial, const StepperConfig& config,
                    const std::vector<Observer>& observers = {},
                    const DiagnosticsOptions& options = {});

struct EnsembleSpec {
  int band_radius = 4;
  int weight_exponent = 1;
  int samples = 1000;
  int grid_points = 16;
  Real half_width = 4.0;
  std::uint64_t seed = 1;
};

/// Largest pointwise ratio ||F(u)(x)||_{h^a} / ||u(x)||^3_{h^a} over the ensemble.
Real pointwise_estimate_ratio(const VectorField& u, int weight_exponent);
Real nonlinear_estimate_probe(const EnsembleSpec& spec);

} // namespace rnls

#endif // RNLS_DYNAMICS_HPP
