#pragma once

// Upper half-plane H^2 and upper half-space H^3 with their conformal metrics
// g = |dx|^2 / x_N^2.

#include <cmath>
#include <complex>
#include <limits>
#include <utility>

#include <Eigen/Core>

#include "lhc/errors.hpp"
#include "lhc/lie.hpp"

namespace lhc {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;

/// Point of the upper half-plane.
class PointH2 {
 public:
  explicit PointH2(Complex z) : z_(z) {
    if (!(z.imag() > 0.0) || !std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw DomainError("PointH2 requires finite z with Im z > 0");
    }
  }
  PointH2(double x, double y) : PointH2(Complex(x, y)) {}

  Complex z() const { return z_; }
  double x() const { return z_.real(); }
  double y() const { return z_.imag(); }

 private:
  Complex z_;
};

/// Point of the upper half-space.
class PointH3 {
 public:
  explicit PointH3(const Vec3& x) : x_(x) {
    if (!(x(2) > 0.0) || !x.allFinite()) throw DomainError("PointH3 requires finite x with x_3 > 0");
  }
  PointH3(double x1, double x2, double x3) : PointH3(Vec3(x1, x2, x3)) {}

  const Vec3& x() const { return x_; }
  double operator[](int i) const { return x_(i); }

 private:
  Vec3 x_;
};

/// Tangent vector at a point of H^2; v holds the Euclidean components dx + i dy.
struct TangentH2 {
  PointH2 base;
  Complex v;

  double norm() const { return std::abs(v) / base.y(); }
};

/// Tangent vector at a point of H^3 in Euclidean components.
struct TangentH3 {
  PointH3 base;
  Vec3 v;

  double norm() const { return v.norm() / base[2]; }
};

inline double h2_distance(const PointH2& p, const PointH2& q) {
  return std::acosh(1.0 + std::norm(p.z() - q.z()) / (2.0 * p.y() * q.y()));
}

inline double h3_distance(const PointH3& p, const PointH3& q) {
  return std::acosh(1.0 + (p.x() - q.x()).squaredNorm() / (2.0 * p[2] * q[2]));
}

namespace detail {
inline void require_real_group(const GroupElement& g, const char* what) {
  if (algebra_of(g.group()) != Algebra::sl2r) {
    throw TagMismatch(std::string(what) + ": expected an SL2R/PSL2R element, got " + std::string(to_string(g.group())));
  }
}
}  // namespace detail

/// (az + b) / (cz + d).
inline PointH2 mobius_act(const GroupElement& g, const PointH2& p) {
  detail::require_real_group(g, "mobius_act");
  const Mat2 m = g.real_matrix();
  const Complex z = p.z();
  const Complex den = m(1, 0) * z + m(1, 1);
  Complex w = (m(0, 0) * z + m(0, 1)) / den;
  // Im w = Im z / |cz + d|^2; the direct quotient loses digits when the entries are large.
  w.imag(p.y() / std::norm(den));
  if (!(w.imag() > 0.0)) w.imag(std::numeric_limits<double>::min());
  return PointH2(w);
}

/// Complex derivative 1 / (cz + d)^2 of the Moebius map at z.
inline Complex mobius_derivative(const GroupElement& g, Complex z) {
  detail::require_real_group(g, "mobius_derivative");
  const Mat2 m = g.real_matrix();
  const Complex den = m(1, 0) * z + m(1, 1);
  return 1.0 / (den * den);
}

/// Push-forward of a tangent vector.
inline TangentH2 mobius_push(const GroupElement& g, const TangentH2& u) {
  return {mobius_act(g, u.base), mobius_derivative(g, u.base.z()) * u.v};
}

inline const PointH2& basepoint_i() {
  static const PointH2 p(0.0, 1.0);
  return p;
}

/// delta(g) = g_*(e_1) at g.i, with e_1 the unit vector d/dx at i.
inline TangentH2 frame_delta(const GroupElement& g) {
  return {mobius_act(g, basepoint_i()), mobius_derivative(g, kI)};
}

// ---------------------------------------------------------------------------
// Geodesics.

/// Christoffel contraction Gamma(u, w) of g = |dx|^2 / x_N^2, where the last
/// coordinate is the height. With phi = -ln x_N:
///   Gamma(u,w)^k = u^k (w.dphi) + w^k (u.dphi) - (u.w) d_k phi.
template <int N>
Eigen::Matrix<double, N, 1> christoffel(const Eigen::Matrix<double, N, 1>& x, const Eigen::Matrix<double, N, 1>& u,
                                        const Eigen::Matrix<double, N, 1>& w) {
  const double h = x(N - 1);
  const double udphi = -u(N - 1) / h, wdphi = -w(N - 1) / h;
  Eigen::Matrix<double, N, 1> out = u * wdphi + w * udphi;
  out(N - 1) += u.dot(w) / h;
  return out;
}

struct GeodesicOptions {
  double step = 1e-3;
  /// Acceptance threshold on |y_h - y_{h/2}| (max norm) over the whole run.
  double tolerance = 1e-9;
  double min_step = 1e-6;
};

namespace detail {

template <int N>
using State = Eigen::Matrix<double, 2 * N, 1>;

template <int N>
State<N> geodesic_rhs(const State<N>& s) {
  const Eigen::Matrix<double, N, 1> x = s.template head<N>();
  const Eigen::Matrix<double, N, 1> v = s.template tail<N>();
  State<N> d;
  d.template head<N>() = v;
  d.template tail<N>() = -christoffel<N>(x, v, v);
  return d;
}

template <int N, class Rhs>
State<N> rk4(State<N> s, double t, int steps, Rhs&& rhs) {
  const double h = t / steps;
  for (int i = 0; i < steps; ++i) {
    const State<N> k1 = rhs(s);
    const State<N> k2 = rhs(State<N>(s + 0.5 * h * k1));
    const State<N> k3 = rhs(State<N>(s + 0.5 * h * k2));
    const State<N> k4 = rhs(State<N>(s + h * k3));
    s += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!s.allFinite() || !(s(N - 1) > 0.0)) throw IntegrationFailure("geodesic left the half-space");
  }
  return s;
}

/// RK4 at step h and h/2 with halving until they agree, then one Richardson step.
template <int N, class Rhs>
State<N> integrate_controlled(const State<N>& s0, double t, const GeodesicOptions& opt, Rhs&& rhs) {
  if (t == 0.0) return s0;
  double h = opt.step;
  while (true) {
    if (h < opt.min_step) throw IntegrationFailure("step size fell below the minimum");
    const int n = std::max(1, static_cast<int>(std::ceil(std::abs(t) / h)));
    try {
      const State<N> coarse = rk4<N>(s0, t, n, rhs);
      const State<N> fine = rk4<N>(s0, t, 2 * n, rhs);
      const double scale = std::max(1.0, fine.template head<N>().cwiseAbs().maxCoeff());
      if ((fine - coarse).cwiseAbs().maxCoeff() <= opt.tolerance * scale) {
        return (16.0 * fine - coarse) / 15.0;
      }
    } catch (const IntegrationFailure&) {
      // retry with a smaller step
    }
    h *= 0.5;
  }
}

}  // namespace detail

/// Unit-speed geodesic through (p, v/|v|) at arclength t.
inline std::pair<PointH3, Vec3> geodesic_flow(const PointH3& p, const Vec3& v, double t,
                                              const GeodesicOptions& opt = {}) {
  const double speed = v.norm() / p[2];
  if (!(speed > 0.0) || !std::isfinite(speed)) throw DomainError("geodesic_flow needs a nonzero finite velocity");
  detail::State<3> s;
  s << p.x(), v / speed;
  const auto out = detail::integrate_controlled<3>(s, t, opt, detail::geodesic_rhs<3>);
  return {PointH3(Vec3(out.head<3>())), Vec3(out.tail<3>())};
}

inline std::pair<PointH2, Complex> geodesic_flow(const PointH2& p, Complex v, double t,
                                                 const GeodesicOptions& opt = {}) {
  const double speed = std::abs(v) / p.y();
  if (!(speed > 0.0) || !std::isfinite(speed)) throw DomainError("geodesic_flow needs a nonzero finite velocity");
  detail::State<2> s;
  s << p.x(), p.y(), v.real() / speed, v.imag() / speed;
  const auto out = detail::integrate_controlled<2>(s, t, opt, detail::geodesic_rhs<2>);
  return {PointH2(out(0), out(1)), Complex(out(2), out(3))};
}

// ---------------------------------------------------------------------------
// The maps f^t and phi_t.

/// F^t = [[1, 0, tanh t], [0, 1, 0], [0, 0, sech t]].
inline Eigen::Matrix3d f_t_matrix(double t) {
  Eigen::Matrix3d f = Eigen::Matrix3d::Identity();
  f(0, 2) = std::tanh(t);
  f(2, 2) = 1.0 / std::cosh(t);
  return f;
}

inline PointH3 f_t_map(double t, const PointH3& p) { return PointH3(Vec3(f_t_matrix(t) * p.x())); }

/// (x_1, x_2) -> f_t(0, x_1, x_2); the image lies on H_t = {x_1 = sinh(t) x_3}.
inline PointH3 phi_t(double t, const PointH2& q) { return f_t_map(t, PointH3(0.0, q.x(), q.y())); }

/// Residual of the leaf equation x_1 = sinh(t) x_3.
inline double leaf_residual(double t, const PointH3& p) { return std::abs(p[0] - std::sinh(t) * p[2]); }

// ---------------------------------------------------------------------------
// Levi-Civita connection of H^2 in the orthonormal frame (y d/dx, y d/dy).
//
// With E_1 = y d/dx, E_2 = y d/dy one finds nabla E_1 = -(dx/y) E_2 and
// nabla E_2 = (dx/y) E_1, so the u(1)-valued form is beta = i dx/y and its
// curvature d(beta) = i dx^dy / y^2 = i vol. sigma_a = a (i/2pi) beta.

/// Coefficient of i of the connection form beta on v at z.
inline double lc_beta(const PointH2& z, Complex v) { return v.real() / z.y(); }

/// sigma_a(v) = a (i/2pi) beta(v) = -a Re(v) / (2 pi y).
inline double lc_connection_form_h2(double a, const PointH2& z, Complex v) {
  return -a * v.real() / (kTwoPi * z.y());
}

/// Density of d(sigma_a) against dx^dy: -a / (2 pi y^2), i.e. a K vol / 2pi with K = -1.
inline double chern_density_h2(double a, const PointH2& z) { return -a / (kTwoPi * z.y() * z.y()); }

/// Finite-difference exterior derivative of sigma_a at z, as a density against dx^dy.
inline double numeric_d_sigma(double a, const PointH2& z, double h = 1e-4) {
  auto sx = [&](double x, double y) { return lc_connection_form_h2(a, PointH2(x, y), Complex(1.0, 0.0)); };
  auto sy = [&](double x, double y) { return lc_connection_form_h2(a, PointH2(x, y), Complex(0.0, 1.0)); };
  const double x = z.x(), y = z.y();
  const double dsy_dx = (sy(x + h, y) - sy(x - h, y)) / (2.0 * h);
  const double dsx_dy = (sx(x, y + h) - sx(x, y - h)) / (2.0 * h);
  return dsy_dx - dsx_dy;
}

}  // namespace lhc
