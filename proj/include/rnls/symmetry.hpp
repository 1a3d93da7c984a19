#ifndef RNLS_SYMMETRY_HPP
#define RNLS_SYMMETRY_HPP

#include <vector>

#include "rnls/snapshot.hpp"

namespace rnls {

/// (theta, xi0, x0, lambda) acting by
///   (T_g u)(t, x) = lambda^-1 e^{i theta} e^{i x.xi0} e^{-i t |xi0|^2}
///                   u(t / lambda^2, (x - x0 - 2 xi0 t) / lambda).
struct GroupElement {
  Real theta = 0.0;
  Vector2 xi0 = Vector2::Zero();
  Vector2 x0 = Vector2::Zero();
  Real lambda = 1.0;

  static GroupElement identity() { return {}; }

  void validate() const;
  /// log2(lambda); throws unless lambda is a power of two.
  int dyadic_exponent() const;
};

/// T_{g1} T_{g2} = T_{g1 * g2} with
///   theta = theta1 + theta2 - x01.xi02 / lambda1,  xi0 = xi01 + xi02 / lambda1,
///   x0 = x01 + lambda1 x02,                        lambda = lambda1 lambda2.
GroupElement compose(const GroupElement& g1, const GroupElement& g2);

/// Relative L^2 l^2 mass a dilation may discard before it is rejected.
inline constexpr Real kDilationLossTolerance = 1e-10;

/// lambda^-1 w(x / lambda) for dyadic lambda by spectral zero-padding or truncation.
VectorField dilate(const VectorField& w, int dyadic_exponent);

/// State at time t of T_g u, given `u` = the untransformed state at time t / lambda^2.
VectorField apply(const GroupElement& g, const VectorField& u, Real t);

struct CovarianceReport {
  /// Max over interior snapshots of ||i dv/dt + Lap v - F(v)|| / ||F(v)||.
  Real max_residual = 0.0;
  /// Transformed snapshot spacing; centered differences carry an O(spacing^2) floor.
  Real snapshot_spacing = 0.0;
  int interior_points = 0;
};

/// PDE residual of the transformed trajectory, time derivative by centered
/// differences. Snapshots must be equally spaced.
CovarianceReport verify_covariance(const GroupElement& g, const Trajectory& trajectory);

} // namespace rnls

#endif // RNLS_SYMMETRY_HPP
