#pragma once

// Invariant connections on homogeneous bundles over H^2 = PSL(2,R)/H.
//
// A pair (chi, mu) consists of a morphism chi: H -> K, written chi = pi^k o sigma,
// tau_k o sigma or theta_k o sigma, and an equivariant real-linear map mu: s -> k.
// Here sigma(h_t) = e^{it}, pi^k(zeta) = zeta^k, tau_k(zeta) = diag(zeta^k, zeta^-k)
// and theta_k(zeta) = [diag(zeta^{k/2}, zeta^{-k/2})].

#include <array>
#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Core>
#include <Eigen/LU>

#include "lhc/errors.hpp"
#include "lhc/lie.hpp"

namespace lhc {

enum class TargetGroup { S1, SU2, PU2 };

constexpr std::string_view to_string(TargetGroup g) {
  switch (g) {
    case TargetGroup::S1: return "S1";
    case TargetGroup::SU2: return "SU2";
    case TargetGroup::PU2: return "PU2";
  }
  return "?";
}

constexpr Algebra target_algebra(TargetGroup g) { return g == TargetGroup::S1 ? Algebra::u1 : Algebra::su2; }

namespace detail {
inline void check_index(TargetGroup g, int k) {
  if (g != TargetGroup::S1 && k < 0) throw DomainError("chi index must be >= 0 for SU2 and PU2");
}
}  // namespace detail

/// chi_*(b_3) for the k-indexed morphism into `target`.
inline LieAlgebraVector chi_star_b3(TargetGroup target, int k) {
  detail::check_index(target, k);
  switch (target) {
    case TargetGroup::S1: return {Algebra::u1, static_cast<double>(k)};
    case TargetGroup::SU2: return 2.0 * k * a3();
    case TargetGroup::PU2: return static_cast<double>(k) * a3();
  }
  return {};
}

/// chi(h_t) as a matrix group element (SU2 or PU2).
inline GroupElement chi_of_rotation(TargetGroup target, int k, double t) {
  detail::check_index(target, k);
  const double half = target == TargetGroup::SU2 ? k * t : 0.5 * k * t;
  CMat2 m;
  m << std::polar(1.0, half), 0.0, 0.0, std::polar(1.0, -half);
  switch (target) {
    case TargetGroup::SU2: return {Group::SU2, m};
    case TargetGroup::PU2: return {Group::PU2, m};
    case TargetGroup::S1: break;
  }
  throw DomainError("chi_of_rotation: S1 values are scalars, use chi_of_rotation_s1");
}

inline Complex chi_of_rotation_s1(int k, double t) { return std::polar(1.0, k * t); }

/// Adjoint action of chi(h_t) on k.
inline LieAlgebraVector chi_adjoint(TargetGroup target, int k, double t, const LieAlgebraVector& x) {
  if (target == TargetGroup::S1) return x;
  return adjoint_action(chi_of_rotation(target, k, t), x);
}

/// An invariant pair (chi, mu) with mu stored by (mu(b_1), mu(b_2)).
class InvariantPair {
 public:
  static constexpr double kEquivarianceTol = 1e-10;

  /// The pair (chi, 0).
  InvariantPair(TargetGroup target, int k)
      : InvariantPair(target, k, LieAlgebraVector::zero(target_algebra(target)),
                      LieAlgebraVector::zero(target_algebra(target))) {}

  /// General constructor; mu must be equivariant.
  InvariantPair(TargetGroup target, int k, const LieAlgebraVector& mu_b1, const LieAlgebraVector& mu_b2)
      : target_(target), k_(k), mu_{mu_b1, mu_b2} {
    detail::check_index(target, k);
    const Algebra alg = target_algebra(target);
    if (mu_b1.algebra != alg || mu_b2.algebra != alg) throw TagMismatch("mu must take values in the target algebra");
    if (!mu_b1.is_finite() || !mu_b2.is_finite()) throw DomainError("mu must be finite");
    const double res = equivariance_residual();
    if (res > kEquivarianceTol) {
      throw DomainError("mu is not equivariant (residual " + std::to_string(res) + ")");
    }
    // For PU2 with k = 1 the equivariant maps are z mu_0, with I(mu) = z I(mu_0).
    if (target == TargetGroup::PU2 && k == 1) {
      z_ = Complex(mu_b1[1], -mu_b1[0]);
    }
  }

  /// (theta_1 o sigma, z mu_0).
  static InvariantPair pu2_family(Complex z) {
    return {TargetGroup::PU2, 1, LieAlgebraVector(Algebra::su2, -z.imag(), z.real(), 0.0),
            LieAlgebraVector(Algebra::su2, -z.real(), -z.imag(), 0.0)};
  }

  TargetGroup target() const { return target_; }
  int k() const { return k_; }
  Algebra algebra() const { return target_algebra(target_); }
  const LieAlgebraVector& mu_b1() const { return mu_[0]; }
  const LieAlgebraVector& mu_b2() const { return mu_[1]; }
  /// z with mu = z mu_0 (only meaningful for PU2, k = 1; zero otherwise).
  Complex z() const { return z_; }

  LieAlgebraVector mu(double u1, double u2) const { return u1 * mu_[0] + u2 * mu_[1]; }

  /// max over 16 angles t and both basis vectors of |mu(ad_{h_t} b) - ad_{chi(h_t)} mu(b)|.
  double equivariance_residual() const {
    double worst = 0.0;
    for (int i = 0; i < 16; ++i) {
      const double t = kTwoPi * i / 16.0 + 0.1;
      const GroupElement h = stabilizer_rotation(t);
      for (int j = 0; j < 2; ++j) {
        const auto parts = project_hs(adjoint_action(h, j == 0 ? b1() : b2()));
        const LieAlgebraVector lhs = mu(parts.s[0], parts.s[1]);
        const LieAlgebraVector rhs = chi_adjoint(target_, k_, t, mu_[static_cast<std::size_t>(j)]);
        worst = std::max(worst, max_abs_diff(lhs, rhs));
      }
    }
    return worst;
  }

 private:
  TargetGroup target_;
  int k_;
  std::array<LieAlgebraVector, 2> mu_;
  Complex z_{0.0, 0.0};
};

/// mu_0(u_1 b_1 + u_2 b_2) = u_1 a_2 - u_2 a_1.
inline InvariantPair mu0_pair() { return InvariantPair::pu2_family(Complex(1.0, 0.0)); }

/// lambda(X) = chi_*(X^h) + mu(X^s).
inline LieAlgebraVector lambda_map(const InvariantPair& pair, const LieAlgebraVector& x) {
  const HSParts p = project_hs(x);
  return p.h * chi_star_b3(pair.target(), pair.k()) + pair.mu(p.s[0], p.s[1]);
}

/// Phi(u, v) = [lambda u, lambda v] - lambda [u, v].
inline LieAlgebraVector curvature_phi(const InvariantPair& pair, const LieAlgebraVector& u,
                                      const LieAlgebraVector& v) {
  return bracket(lambda_map(pair, u), lambda_map(pair, v)) - lambda_map(pair, bracket(u, v));
}

/// Value of the invariant connection form at g on the tangent vector w (a 2x2
/// matrix tangent to SL(2,R) at g): lambda(g^{-1} w).
inline LieAlgebraVector connection_form_pullback(const InvariantPair& pair, const GroupElement& g, const CMat2& w) {
  if (algebra_of(g.group()) != Algebra::sl2r) throw TagMismatch("connection_form_pullback: g must be in SL2R/PSL2R");
  const CMat2 body = g.inverse().matrix() * w;
  return lambda_map(pair, LieAlgebraVector::from_matrix(Algebra::sl2r, body));
}

struct CurvatureOracleOptions {
  double h = 1e-3;
};

/// F(u, v) = dA(u, v) + [A(u), A(v)] at the identity, by finite differences of
/// connection_form_pullback on the chart (s, r) -> exp(su) exp(rv).
inline LieAlgebraVector numeric_curvature_oracle(const InvariantPair& pair, const LieAlgebraVector& u,
                                                 const LieAlgebraVector& v, const CurvatureOracleOptions& opt = {}) {
  const CMat2 um = u.matrix(), vm = v.matrix();
  auto point = [&](double s, double r) {
    return std::pair{exp_to_group(u, s, Group::SL2R).matrix(), exp_to_group(v, r, Group::SL2R).matrix()};
  };
  // A on d/ds and d/dr at the chart point (s, r).
  auto a_s = [&](double s, double r) {
    const auto [es, er] = point(s, r);
    return connection_form_pullback(pair, GroupElement(Group::SL2R, CMat2(es * er)), es * um * er);
  };
  auto a_r = [&](double s, double r) {
    const auto [es, er] = point(s, r);
    return connection_form_pullback(pair, GroupElement(Group::SL2R, CMat2(es * er)), es * er * vm);
  };
  auto central = [&](double h) {
    const LieAlgebraVector dar_ds = (1.0 / (2.0 * h)) * (a_r(h, 0.0) - a_r(-h, 0.0));
    const LieAlgebraVector das_dr = (1.0 / (2.0 * h)) * (a_s(0.0, h) - a_s(0.0, -h));
    return dar_ds - das_dr;
  };
  const LieAlgebraVector da = (4.0 / 3.0) * central(0.5 * opt.h) - (1.0 / 3.0) * central(opt.h);
  return da + bracket(a_s(0.0, 0.0), a_r(0.0, 0.0));
}

// ---------------------------------------------------------------------------
// Weight spaces.

/// Basis of the weight-1 space { Z in k^C : ad(chi_*(b_3)) Z = i Z }.
struct WeightSpace {
  TargetGroup target;
  int k;
  int dimension = 0;
  /// Complex coordinates in (a_1, a_2, a_3) (or the single u(1) coordinate).
  std::vector<Eigen::Vector3cd> basis;
};

inline WeightSpace weight_space(TargetGroup target, int k) {
  detail::check_index(target, k);
  WeightSpace out{target, k, 0, {}};
  if (target == TargetGroup::S1) return out;  // ad is zero on u(1), so D - i has trivial kernel
  const LieAlgebraVector c = chi_star_b3(target, k);
  Eigen::Matrix3cd d;
  for (int j = 1; j <= 3; ++j) {
    const LieAlgebraVector col = bracket(c, LieAlgebraVector::basis(Algebra::su2, j));
    for (int i = 0; i < 3; ++i) d(i, j - 1) = col[static_cast<std::size_t>(i)];
  }
  Eigen::FullPivLU<Eigen::Matrix3cd> lu(d - kI * Eigen::Matrix3cd::Identity());
  lu.setThreshold(1e-10);
  const Eigen::MatrixXcd ker = lu.kernel();
  if (lu.dimensionOfKernel() == 0) return out;
  out.dimension = static_cast<int>(ker.cols());
  for (Eigen::Index j = 0; j < ker.cols(); ++j) out.basis.emplace_back(ker.col(j));
  return out;
}

/// I(mu) = mu(b_1) - i mu(b_2) in complex (a_1, a_2, a_3) coordinates.
inline Eigen::Vector3cd identification_I(const InvariantPair& pair) {
  if (pair.algebra() != Algebra::su2) throw TagMismatch("identification_I needs an su2-valued pair");
  Eigen::Vector3cd out;
  for (int i = 0; i < 3; ++i) {
    out(i) = Complex(pair.mu_b1()[static_cast<std::size_t>(i)], -pair.mu_b2()[static_cast<std::size_t>(i)]);
  }
  return out;
}

/// |<u, v>| / (|u| |v|) for complex vectors; 1 iff proportional.
inline double complex_alignment(const Eigen::Vector3cd& u, const Eigen::Vector3cd& v) {
  return std::abs(u.dot(v)) / (u.norm() * v.norm());
}

// ---------------------------------------------------------------------------
// Moduli spaces.

enum class IndexSet { Integers, Naturals, NaturalsExceptOne };

constexpr std::string_view to_string(IndexSet s) {
  switch (s) {
    case IndexSet::Integers: return "Z";
    case IndexSet::Naturals: return "N";
    case IndexSet::NaturalsExceptOne: return "N\\{1}";
  }
  return "?";
}

/// A continuous family {[chi_k, r mu_0] | r in [0, inf)}.
struct HalfLineFamily {
  int k = 1;
  double r_min = 0.0;
};

struct ModuliDescription {
  TargetGroup target;
  /// Discrete part: classes [chi_k, 0] for k in this set.
  IndexSet discrete;
  std::optional<HalfLineFamily> half_line;

  /// Whether [chi_k, r mu_0] is a point of the moduli space (r = 0 for mu = 0).
  bool contains(int k, double r = 0.0) const {
    if (half_line && k == half_line->k) return r >= half_line->r_min;
    if (r != 0.0) return false;
    switch (discrete) {
      case IndexSet::Integers: return true;
      case IndexSet::Naturals: return k >= 0;
      case IndexSet::NaturalsExceptOne: return k >= 0 && k != 1;
    }
    return false;
  }
};

inline ModuliDescription classify_moduli(TargetGroup target) {
  switch (target) {
    case TargetGroup::S1: return {target, IndexSet::Integers, std::nullopt};
    case TargetGroup::SU2: return {target, IndexSet::Naturals, std::nullopt};
    case TargetGroup::PU2: return {target, IndexSet::NaturalsExceptOne, HalfLineFamily{1, 0.0}};
  }
  return {target, IndexSet::Naturals, std::nullopt};
}

/// B^z = z id on the oriented tangent plane, as a real matrix in (e_1, e_2).
inline Mat2 second_fundamental_form_Bz(Complex z) {
  Mat2 b;
  b << z.real(), -z.imag(), z.imag(), z.real();
  return b;
}

}  // namespace lhc
