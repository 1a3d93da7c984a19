#include "rnls/symmetry.hpp"

#include <cmath>

#include "rnls/dynamics.hpp"

namespace rnls {

void GroupElement::validate() const {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw DomainError("group scale lambda must be > 0");
  if (!std::isfinite(theta) || !xi0.allFinite() || !x0.allFinite()) {
    throw DomainError("group element parameters must be finite");
  }
}

int GroupElement::dyadic_exponent() const {
  validate();
  int exponent = 0;
  const Real mantissa = std::frexp(lambda, &exponent);
  if (mantissa != 0.5) {
    throw DomainError("only dyadic dilations lambda = 2^m are supported, got " +
                      std::to_string(lambda));
  }
  return exponent - 1;
}

GroupElement compose(const GroupElement& g1, const GroupElement& g2) {
  GroupElement g;
  g.theta = g1.theta + g2.theta - g1.x0.dot(g2.xi0) / g1.lambda;
  g.xi0 = g1.xi0 + g2.xi0 / g1.lambda;
  g.x0 = g1.x0 + g1.lambda * g2.x0;
  g.lambda = g1.lambda * g2.lambda;
  return g;
}

namespace {

Real norm2(const Field& f) { return f.abs2().sum(); }

// lambda = 2: interpolate onto the half-spacing grid and keep the central [-L/2, L/2)^2.
Field widen(const SpatialGrid& grid, const SpatialGrid& fine, const Field& w) {
  const int n = grid.points();
  const int h = n / 2;
  const Field coarse = grid.forward(w);
  Field spec = Field::Zero(2 * n, 2 * n);
  for (int a = 0; a < n; ++a) {
    const int fa = a < h ? a : a + n;
    for (int b = 0; b < n; ++b) {
      const int fb = b < h ? b : b + n;
      spec(fa, fb) = coarse(a, b);
    }
  }
  fine.inverse_in_place(spec);
  const Real total = norm2(spec);
  Field kept = spec.block(h, h, n, n);
  if (total > 0.0 && (total - norm2(kept)) > kDilationLossTolerance * total) {
    throw ResolutionError("dilation by 2 would push mass outside the box");
  }
  return 0.5 * kept;
}

// lambda = 1/2: v_hat(k) = w_hat(k/2) / 2. The doubled box (zero-padded in space) samples
// w_hat on the half lattice; keep |index| < N/2.
Field narrow(const SpatialGrid& grid, const SpatialGrid& padded, const Field& w) {
  const int n = grid.points();
  const int h = n / 2;
  Field spec = Field::Zero(2 * n, 2 * n);
  spec.block(h, h, n, n) = w;
  padded.forward_in_place(spec);
  const Real total = norm2(spec);
  Field coarse(n, n);
  for (int a = 0; a < n; ++a) {
    const int pa = a < h ? a : a + n;
    for (int b = 0; b < n; ++b) {
      const int pb = b < h ? b : b + n;
      coarse(a, b) = spec(pa, pb);
    }
  }
  if (total > 0.0 && (total - norm2(coarse)) > kDilationLossTolerance * total) {
    throw ResolutionError("dilation by 1/2 would push frequencies past the lattice");
  }
  grid.inverse_in_place(coarse);
  return 0.5 * coarse;
}

} // namespace

VectorField dilate(const VectorField& w, int dyadic_exponent) {
  if (dyadic_exponent == 0) return w;
  const auto& grid = w.grid();
  const SpatialGrid other = dyadic_exponent > 0 ? SpatialGrid(grid.half_width(), 2 * grid.points())
                                                : SpatialGrid(2.0 * grid.half_width(), 2 * grid.points());
  VectorField out = w;
  for (int step = 0; step < std::abs(dyadic_exponent); ++step) {
    for (int s = 0; s < out.size(); ++s) {
      out.slot(s) = dyadic_exponent > 0 ? widen(grid, other, out.slot(s))
                                        : narrow(grid, other, out.slot(s));
    }
  }
  return out;
}

VectorField apply(const GroupElement& g, const VectorField& u, Real t) {
  const int exponent = g.dyadic_exponent();
  const auto& grid = u.grid();
  const auto shift = lattice_offset(grid, g.xi0);
  VectorField v = dilate(u, exponent);

  const Vector2 s = g.x0 + 2.0 * t * g.xi0;
  const Field translate = (grid.k_component(0) * (-s[0]) + grid.k_component(1) * (-s[1]))
                              .unaryExpr([](Real p) { return std::polar(1.0, p); });
  const Complex constant = std::polar(1.0, g.theta - t * g.xi0.squaredNorm());
  const Field modulation = constant * plane_wave(grid, g.xi0);
  const int n = grid.points();
  for (int sl = 0; sl < v.size(); ++sl) {
    Field spec = grid.forward(v.slot(sl));
    if (shift[0] != 0 || shift[1] != 0) {
      // The boost shifts the spectrum cyclically; content that would wrap is unresolved.
      const Real total = spec.abs2().sum();
      Real wrapped = 0.0;
      for (int a = 0; a < n; ++a) {
        const int ia = grid.frequency_index(a) + shift[0];
        for (int b = 0; b < n; ++b) {
          const int ib = grid.frequency_index(b) + shift[1];
          if (ia < -n / 2 || ia >= n / 2 || ib < -n / 2 || ib >= n / 2) wrapped += std::norm(spec(a, b));
        }
      }
      if (total > 0.0 && wrapped > kDilationLossTolerance * total) {
        throw ResolutionError("Galilean boost moves resolved frequencies past the lattice edge");
      }
    }
    if (s[0] != 0.0 || s[1] != 0.0) spec *= translate;
    grid.inverse_in_place(spec);
    v.slot(sl) = spec * modulation;
  }
  return v;
}

CovarianceReport verify_covariance(const GroupElement& g, const Trajectory& trajectory) {
  if (trajectory.size() < 3) {
    throw DomainError("covariance check needs at least 3 snapshots for centered differences");
  }
  const Real spacing = trajectory[1].t - trajectory[0].t;
  if (!(spacing > 0.0)) throw DomainError("snapshots must be strictly increasing in time");
  for (std::size_t n = 1; n < trajectory.size(); ++n) {
    const Real d = trajectory[n].t - trajectory[n - 1].t;
    if (std::abs(d - spacing) > 1e-9 * spacing) {
      throw DomainError("covariance check needs equally spaced snapshots");
    }
  }
  const Real scale2 = g.lambda * g.lambda;
  std::vector<VectorField> v;
  v.reserve(trajectory.size());
  for (const auto& snap : trajectory) v.push_back(apply(g, snap.state, scale2 * snap.t));

  CovarianceReport report;
  report.snapshot_spacing = scale2 * spacing;
  const auto& grid = trajectory.front().state.grid();
  const Field laplacian = (-grid.k_squared()).cast<Complex>();
  for (std::size_t n = 1; n + 1 < v.size(); ++n) {
    const Real tau = scale2 * (trajectory[n + 1].t - trajectory[n - 1].t);
    const VectorField f = nonlinearity(v[n]);
    VectorField r(grid, v[n].band());
    for (int s = 0; s < r.size(); ++s) {
      const Field dvdt = (v[n + 1].slot(s) - v[n - 1].slot(s)) / tau;
      r.slot(s) = Complex(0.0, 1.0) * dvdt + grid.apply_multiplier(v[n].slot(s), laplacian) - f.slot(s);
    }
    const Real fn = norm(f, SpatialExponent::kTwo, 0);
    const Real rn = norm(r, SpatialExponent::kTwo, 0);
    report.max_residual = std::max(report.max_residual, fn > 0.0 ? rn / fn : rn);
    ++report.interior_points;
  }
  return report;
}

} // namespace rnls
