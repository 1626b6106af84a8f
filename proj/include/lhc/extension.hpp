#pragma once

// The central extensions G_a of PSL(2,R) by S^1.
//
// G_a is the quotient of (universal cover) x S^1 by (gamma_0^k, e^{-2 pi a k i}).
// Choosing for every g the canonical lift of its boundary action, normalized by
// phi_g(0) in [0, 2pi), identifies the universal cover with PSL(2,R) x Z under
// the product twisted by the integer cocycle
//   kappa(g1, g2) = (phi_{g1}(phi_{g2}(0)) - phi_{g1 g2}(0)) / 2pi.
// Pushing the Z factor into S^1 by n -> e^{2 pi i a n} gives G_a as
// PSL(2,R) x S^1 with (g1, w1)(g2, w2) = (g1 g2, w1 w2 e^{2 pi i a kappa(g1, g2)}).

#include <cmath>
#include <complex>
#include <string>

#include "lhc/connections.hpp"
#include "lhc/errors.hpp"
#include "lhc/hyperbolic.hpp"
#include "lhc/lie.hpp"

namespace lhc {

/// Boundary values within this distance of the cut at 0 = 2pi are snapped to 0.
inline constexpr double kBranchSnap = 1e-12;
/// Between kBranchSnap and this distance the winding is ambiguous.
inline constexpr double kBranchAmbiguity = 1e-9;

namespace detail {

/// Disk-model form [[p, q], [conj q, conj p]] of a real matrix, via z -> (z - i)/(z + i).
inline std::pair<Complex, Complex> disk_coefficients(const GroupElement& g) {
  require_real_group(g, "boundary lift");
  const Mat2 m = g.real_matrix();
  const double a = m(0, 0), b = m(0, 1), c = m(1, 0), d = m(1, 1);
  return {Complex(0.5 * (a + d), 0.5 * (b - c)), Complex(0.5 * (a - d), -0.5 * (b + c))};
}

}  // namespace detail

/// A continuous lift of the boundary action theta -> g.e^{i theta} (not yet normalized).
inline double boundary_lift_raw(const GroupElement& g, double theta) {
  const auto [p, q] = detail::disk_coefficients(g);
  return theta + 2.0 * std::arg(p) + 2.0 * std::arg(1.0 + (q / p) * std::polar(1.0, -theta));
}

/// phi_g(0) in [0, 2pi): the boundary angle of g.(w = 1), i.e. of g.infinity.
inline double canonical_boundary_angle(const GroupElement& g) {
  detail::require_real_group(g, "canonical_boundary_angle");
  const Mat2 m = g.real_matrix();
  double phi = 2.0 * std::atan2(-m(1, 0), m(0, 0));
  if (phi < 0.0) phi += kTwoPi;
  const double gap = std::min(phi, kTwoPi - phi);
  if (gap < kBranchSnap) return 0.0;
  if (gap < kBranchAmbiguity) {
    throw BranchAmbiguity("boundary angle " + std::to_string(phi) + " is too close to the branch cut");
  }
  return phi;
}

/// The canonical monotone lift phi_g: R -> R, phi_g(theta + 2pi) = phi_g(theta) + 2pi.
class BoundaryLift {
 public:
  explicit BoundaryLift(const GroupElement& g) : g_(g) {
    const double start = canonical_boundary_angle(g);
    shift_ = kTwoPi * std::round((start - boundary_lift_raw(g, 0.0)) / kTwoPi);
  }

  double operator()(double theta) const { return boundary_lift_raw(g_, theta) + shift_; }

 private:
  GroupElement g_;
  double shift_ = 0.0;
};

/// kappa(g1, g2), an exact integer (0 or 1 for these lifts).
inline int winding_cocycle(const GroupElement& g1, const GroupElement& g2) {
  const BoundaryLift l1(g1), l2(g2), l12(g1 * g2);
  const double k = (l1(l2(0.0)) - l12(0.0)) / kTwoPi;
  return static_cast<int>(std::lround(k));
}

/// Element of G_a.
class ExtElement {
 public:
  static constexpr double kPhaseTol = 1e-12;

  ExtElement(const GroupElement& base, Complex phase, double a) : base_(base.as(Group::PSL2R)), phase_(phase), a_(a) {
    if (algebra_of(base.group()) != Algebra::sl2r) throw TagMismatch("ExtElement base must be in PSL2R");
    if (!std::isfinite(a)) throw DomainError("extension parameter must be finite");
    if (std::abs(std::abs(phase) - 1.0) > kPhaseTol) throw DomainError("ExtElement phase must have modulus 1");
    phase_ /= std::abs(phase_);
  }

  static ExtElement identity(double a) { return {GroupElement::identity(Group::PSL2R), 1.0, a}; }

  const GroupElement& base() const { return base_; }
  Complex phase() const { return phase_; }
  double a() const { return a_; }

  ExtElement operator*(const ExtElement& o) const {
    if (o.a_ != a_) throw TagMismatch("ExtElement parameters differ");
    const int k = winding_cocycle(base_, o.base_);
    return {base_ * o.base_, phase_ * o.phase_ * std::polar(1.0, kTwoPi * a_ * k), a_};
  }

  ExtElement inverse() const {
    const GroupElement inv = base_.inverse();
    const int k = winding_cocycle(base_, inv);
    return {inv, std::conj(phase_) * std::polar(1.0, -kTwoPi * a_ * k), a_};
  }

  /// Distance on PSL(2,R) x S^1.
  double distance(const ExtElement& o) const {
    if (o.a_ != a_) throw TagMismatch("ExtElement parameters differ");
    return std::max(base_.distance(o.base_), std::abs(phase_ - o.phase_));
  }

 private:
  GroupElement base_;
  Complex phase_;
  double a_;
};

inline ExtElement ext_multiply(const ExtElement& x, const ExtElement& y) { return x * y; }

/// j_a(w) = (identity, w).
inline ExtElement j_a(Complex w, double a) { return {GroupElement::identity(Group::PSL2R), w, a}; }

/// q_a(g, w) = g.
inline GroupElement q_a(const ExtElement& e) { return e.base(); }

/// chi_a(h_t, w) = e^{iat} w with t in [0, 2pi) recovered from the boundary angle.
inline Complex chi_a(const ExtElement& e, double stabilizer_tol = 1e-9) {
  if (std::abs(mobius_act(e.base(), basepoint_i()).z() - kI) > stabilizer_tol) {
    throw NotInStabilizer("chi_a: base does not fix i");
  }
  const double t = canonical_boundary_angle(e.base());
  return std::polar(1.0, e.a() * t) * e.phase();
}

/// Element (h_t, w) of the subgroup over H.
inline ExtElement stabilizer_element(double t, Complex w, double a) { return {stabilizer_rotation(t), w, a}; }

/// F_{A_{chi_a,0}}(b_1, b_2) = a F_{A_{sigma,0}}(b_1, b_2), as the coefficient of i.
inline double curvature_chi_a(double a) {
  return a * curvature_phi(InvariantPair(TargetGroup::S1, 1), b1(), b2())[0];
}

}  // namespace lhc
