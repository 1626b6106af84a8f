#pragma once

// The foliation of H^3 by the equidistant surfaces H_t = {x_1 = sinh(t) x_3}.

#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Eigenvalues>
#include <Eigen/Geometry>

#include "lhc/connections.hpp"
#include "lhc/errors.hpp"
#include "lhc/hyperbolic.hpp"

namespace lhc {

/// Relative tolerance (in units of x_3) for a point to count as lying on H_t.
inline constexpr double kLeafTol = 1e-8;

inline void require_on_leaf(double t, const PointH3& p) {
  const double res = leaf_residual(t, p) / p[2];
  if (!(res <= kLeafTol)) {
    throw LeafMembership("point is off the leaf H_t (relative residual " + std::to_string(res) + ")");
  }
}

/// Orthonormal frame of T_p H^3 adapted to H_t: two tangent vectors and the unit normal,
/// in Euclidean components (hyperbolic norm 1).
struct LeafFrame {
  Vec3 e1, e2, normal;
};

/// E_1 = x_3 e_2, E_2 = x_3 (tanh t, 0, sech t), N = x_3 (sech t, 0, -tanh t).
/// N has positive x_1-component, continuous in t.
inline LeafFrame leaf_frame(double t, const PointH3& p) {
  const double h = p[2], th = std::tanh(t), sh = 1.0 / std::cosh(t);
  return {Vec3(0.0, h, 0.0), Vec3(h * th, 0.0, h * sh), Vec3(h * sh, 0.0, -h * th)};
}

/// Unit normal field of the foliation at any point.
inline Vec3 leaf_normal(double t, const Vec3& x) {
  return x(2) * Vec3(1.0 / std::cosh(t), 0.0, -std::tanh(t));
}

struct LeafSample {
  double t;
  std::vector<PointH3> points;
  std::vector<LeafFrame> frames;
};

inline LeafSample sample_leaf(double t, const std::vector<PointH2>& params) {
  LeafSample s{t, {}, {}};
  for (const auto& q : params) {
    s.points.push_back(phi_t(t, q));
    s.frames.push_back(leaf_frame(t, s.points.back()));
  }
  return s;
}

inline double h3_inner(const PointH3& p, const Vec3& u, const Vec3& v) { return u.dot(v) / (p[2] * p[2]); }

/// S(X) = -nabla_X N on T_p H_t in the orthonormal frame (E_1, E_2),
/// by central differences of N plus the Christoffel term.
inline Mat2 shape_operator(double t, const PointH3& p, double step = 1e-4) {
  require_on_leaf(t, p);
  const LeafFrame f = leaf_frame(t, p);
  const Vec3 n = leaf_normal(t, p.x());
  Vec3 image[2];
  const Vec3* basis[2] = {&f.e1, &f.e2};
  for (int j = 0; j < 2; ++j) {
    const Vec3& x = *basis[j];
    const Vec3 dn = (leaf_normal(t, p.x() + step * x) - leaf_normal(t, p.x() - step * x)) / (2.0 * step);
    image[j] = -(dn + christoffel<3>(p.x(), x, n));
  }
  Mat2 s;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) s(i, j) = h3_inner(p, *basis[i], image[j]);
  }
  return s;
}

struct ShapeSpectrum {
  double lo = 0.0, hi = 0.0;
  double spread() const { return hi - lo; }
  double mean() const { return 0.5 * (lo + hi); }
};

inline ShapeSpectrum shape_spectrum(const Mat2& s) {
  Eigen::SelfAdjointEigenSolver<Mat2> es(0.5 * (s + s.transpose()));
  return {es.eigenvalues()(0), es.eigenvalues()(1)};
}

// ---------------------------------------------------------------------------
// Holonomy of the restricted Levi-Civita connection.

struct HolonomyOptions {
  int steps_per_leg = 400;
};

struct ConnectionComparison {
  double t = 0.0;
  double loop_radius = 0.0;
  /// Curvature coefficients from holonomy per unit H^2 area, in the phi_t-pushed frame.
  std::array<double, 3> holonomy{0.0, 0.0, 0.0};
  /// The a_3 coefficient per unit area of the induced metric (= holonomy[2] / cosh^2 t).
  double induced_a3 = 0.0;
  /// curvature_phi of (theta_1 o sigma, sinh(t) mu_0) on (b_1, b_2).
  std::array<double, 3> formula{0.0, 0.0, 0.0};
  double relative_error = 0.0;
};

namespace detail {

/// Parallel transport of the columns of v along the straight H^2-coordinate segment
/// q0 -> q1 pushed into H_t by phi_t (which is linear).
inline Eigen::Matrix3d transport_leg(double t, Vec2 q0, Vec2 q1, Eigen::Matrix3d v, int steps) {
  const double th = std::tanh(t), sh = 1.0 / std::cosh(t);
  auto lift = [&](const Vec2& q) { return Vec3(th * q(1), q(0), sh * q(1)); };
  const Vec3 c0 = lift(q0), dc = lift(q1) - c0;
  auto rhs = [&](double s, const Eigen::Matrix3d& m) {
    const Vec3 x = c0 + s * dc;
    Eigen::Matrix3d out;
    for (int j = 0; j < 3; ++j) out.col(j) = -christoffel<3>(x, dc, Vec3(m.col(j)));
    return out;
  };
  const double h = 1.0 / steps;
  for (int i = 0; i < steps; ++i) {
    const double s = i * h;
    const Eigen::Matrix3d k1 = rhs(s, v);
    const Eigen::Matrix3d k2 = rhs(s + 0.5 * h, v + 0.5 * h * k1);
    const Eigen::Matrix3d k3 = rhs(s + 0.5 * h, v + 0.5 * h * k2);
    const Eigen::Matrix3d k4 = rhs(s + h, v + h * k3);
    v += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  if (!v.allFinite()) throw IntegrationFailure("parallel transport diverged");
  return v;
}

}  // namespace detail

/// Compares the curvature of the Levi-Civita connection of H^3 restricted to
/// H_t (from the holonomy of a lasso around the coordinate square
/// [-r, r] x [1-r, 1+r] based at phi_t(i)) with the invariant-connection formula.
inline ConnectionComparison compare_restricted_connection(double t, double loop_radius,
                                                          const HolonomyOptions& opt = {}) {
  if (!std::isfinite(t)) throw DomainError("t must be finite");
  if (!(loop_radius > 0.0 && loop_radius <= 0.5)) throw DomainError("loop_radius must lie in (0, 0.5]");
  const double r = loop_radius;
  const PointH3 p = phi_t(t, basepoint_i());
  const LeafFrame f = leaf_frame(t, p);
  Eigen::Matrix3d frame;
  frame << f.e1, f.e2, f.normal;

  const std::vector<Vec2> path{{0.0, 1.0},    {r, 1.0 - r},     {r, 1.0 + r}, {-r, 1.0 + r},
                               {-r, 1.0 - r}, {r, 1.0 - r},     {0.0, 1.0}};
  Eigen::Matrix3d v = frame;
  for (std::size_t k = 0; k + 1 < path.size(); ++k) {
    v = detail::transport_leg(t, path[k], path[k + 1], v, opt.steps_per_leg);
  }
  // M_ij = g(F_i, V_j): the holonomy in the frame at p.
  const Eigen::Matrix3d m = frame.transpose() * v / (p[2] * p[2]);
  const Eigen::AngleAxisd aa{Eigen::Matrix3d(m)};
  const Vec3 axis_angle = aa.angle() * aa.axis();
  // log M = [axis_angle]_x, with (log M)_21 = axis_angle(2) etc.
  const double area = 4.0 * r * r / (1.0 - r * r);
  ConnectionComparison out;
  out.t = t;
  out.loop_radius = r;
  // R = -log(M) / area; a_3 <-> R_21, a_1 <-> R_32, a_2 <-> R_13.
  out.holonomy = {-axis_angle(0) / area, -axis_angle(1) / area, -axis_angle(2) / area};
  out.induced_a3 = out.holonomy[2] / (std::cosh(t) * std::cosh(t));
  const LieAlgebraVector phi =
      curvature_phi(InvariantPair::pu2_family(Complex(std::sinh(t), 0.0)), b1(), b2());
  out.formula = {phi[0], phi[1], phi[2]};
  out.relative_error = std::abs(out.holonomy[2] - out.formula[2]) / std::abs(out.formula[2]);
  return out;
}

// ---------------------------------------------------------------------------
// Checks on the hyperbolic cylinder picture.

struct CylinderRow {
  double t = 0.0;
  /// max |S_ij| (meaningful as a totally-geodesic check at t = 0).
  double shape_norm = 0.0;
  double umbilic_spread = 0.0;
  double eigenvalue = 0.0;
  /// Spread of the common eigenvalue across sample points (homogeneity).
  double eigenvalue_variation = 0.0;
  double symmetry_residual = 0.0;
  /// max over basepoints of |f^t(x) - geodesic_flow(x, e_1, t)|.
  double geodesic_error = 0.0;
};

inline std::vector<PointH2> leaf_parameters() {
  return {PointH2(0.0, 1.0), PointH2(0.7, 0.4), PointH2(-1.3, 2.5), PointH2(3.0, 0.9), PointH2(-0.2, 5.0)};
}

inline std::vector<PointH3> geodesic_basepoints() {
  return {PointH3(0.0, 0.0, 1.0), PointH3(0.5, -0.3, 0.8), PointH3(-1.0, 2.0, 1.5), PointH3(0.2, 0.1, 0.3),
          PointH3(3.0, -1.0, 2.0)};
}

inline CylinderRow cylinder_check(double t) {
  CylinderRow row;
  row.t = t;
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  const LeafSample leaf = sample_leaf(t, leaf_parameters());
  for (const auto& p : leaf.points) {
    const Mat2 s = shape_operator(t, p);
    const ShapeSpectrum sp = shape_spectrum(s);
    row.shape_norm = std::max(row.shape_norm, s.cwiseAbs().maxCoeff());
    row.umbilic_spread = std::max(row.umbilic_spread, sp.spread());
    row.symmetry_residual = std::max(row.symmetry_residual, (s - s.transpose()).norm());
    lo = std::min(lo, sp.mean());
    hi = std::max(hi, sp.mean());
  }
  row.eigenvalue = 0.5 * (lo + hi);
  row.eigenvalue_variation = hi - lo;
  for (const auto& x : geodesic_basepoints()) {
    const auto [q, v] = geodesic_flow(x, Vec3(x[2], 0.0, 0.0), t);
    row.geodesic_error = std::max(row.geodesic_error, (q.x() - f_t_map(t, x).x()).cwiseAbs().maxCoeff());
  }
  return row;
}

inline std::vector<CylinderRow> cylinder_checks(const std::vector<double>& t_values) {
  std::vector<CylinderRow> out;
  for (double t : t_values) out.push_back(cylinder_check(t));
  return out;
}

}  // namespace lhc
