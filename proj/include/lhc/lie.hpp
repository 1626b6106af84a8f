#pragma once

// Arithmetic in sl(2,R), su(2) and u(1) together with the matrix groups
// SL(2,R), PSL(2,R), SU(2) and PU(2).
//
// Algebra elements are stored as coordinates in fixed bases, so structure
// constants are exact:
//
//   sl(2,R):  b1 = 1/2 [[0,1],[1,0]],  b2 = 1/2 [[1,0],[0,-1]],  b3 = 1/2 [[0,1],[-1,0]]
//             [b1,b2] = -b3,  [b2,b3] = b1,  [b3,b1] = b2
//   su(2):    a1 = 1/2 [[0,i],[i,0]],  a2 = 1/2 [[0,-1],[1,0]],  a3 = 1/2 [[i,0],[0,-i]]
//             [a1,a2] = a3 and cyclic
//   u(1):     the real line spanned by the generator i; only coords[0] is used.
//
// The stabilizer of i in PSL(2,R) is H = { h_t = exp(t b3) }, and sl(2,R) splits
// as h + s with h = R b3 and s = <b1, b2>; ad(h_t) rotates s by the angle t.

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <ostream>
#include <string_view>

#include <Eigen/Core>
#include <Eigen/LU>

#include "lhc/errors.hpp"

namespace lhc {

using Complex = std::complex<double>;
using Mat2 = Eigen::Matrix2d;
using CMat2 = Eigen::Matrix2cd;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr Complex kI{0.0, 1.0};

enum class Algebra { sl2r, su2, u1 };
enum class Group { SL2R, PSL2R, SU2, PU2 };

constexpr std::string_view to_string(Algebra a) {
  switch (a) {
    case Algebra::sl2r: return "sl2r";
    case Algebra::su2: return "su2";
    case Algebra::u1: return "u1";
  }
  return "?";
}

constexpr std::string_view to_string(Group g) {
  switch (g) {
    case Group::SL2R: return "SL2R";
    case Group::PSL2R: return "PSL2R";
    case Group::SU2: return "SU2";
    case Group::PU2: return "PU2";
  }
  return "?";
}

/// Lie algebra of a group tag.
constexpr Algebra algebra_of(Group g) {
  return (g == Group::SL2R || g == Group::PSL2R) ? Algebra::sl2r : Algebra::su2;
}

constexpr bool is_projective(Group g) { return g == Group::PSL2R || g == Group::PU2; }

/// Element of sl(2,R), su(2) or u(1) in the fixed basis.
struct LieAlgebraVector {
  Algebra algebra = Algebra::sl2r;
  std::array<double, 3> coords{0.0, 0.0, 0.0};

  constexpr LieAlgebraVector() = default;
  constexpr LieAlgebraVector(Algebra alg, double c1, double c2 = 0.0, double c3 = 0.0)
      : algebra(alg), coords{c1, c2, c3} {
    if (alg == Algebra::u1) coords[1] = coords[2] = 0.0;
  }

  static constexpr LieAlgebraVector zero(Algebra alg) { return {alg, 0.0, 0.0, 0.0}; }

  /// Basis vector i in {1,2,3} (b_i or a_i); u(1) only has i = 1.
  static LieAlgebraVector basis(Algebra alg, int i) {
    const int dim = alg == Algebra::u1 ? 1 : 3;
    if (i < 1 || i > dim) throw DomainError("basis index out of range");
    LieAlgebraVector v = zero(alg);
    v.coords[static_cast<std::size_t>(i - 1)] = 1.0;
    return v;
  }

  constexpr double operator[](std::size_t i) const { return coords[i]; }

  /// 2x2 matrix representative (not defined for u(1)).
  CMat2 matrix() const {
    const double x = coords[0], y = coords[1], z = coords[2];
    CMat2 m;
    switch (algebra) {
      case Algebra::sl2r:
        m << Complex(0.5 * y), Complex(0.5 * (x + z)), Complex(0.5 * (x - z)), Complex(-0.5 * y);
        return m;
      case Algebra::su2:
        m << Complex(0.0, 0.5 * z), Complex(-0.5 * y, 0.5 * x), Complex(0.5 * y, 0.5 * x),
            Complex(0.0, -0.5 * z);
        return m;
      case Algebra::u1:
        break;
    }
    throw DomainError("u(1) elements have no 2x2 matrix representative");
  }

  /// Coordinates of a traceless matrix of sl(2,R) or su(2); the part outside
  /// the algebra (imaginary parts for sl2r, hermitian part for su2) is discarded.
  static LieAlgebraVector from_matrix(Algebra alg, const CMat2& m) {
    switch (alg) {
      case Algebra::sl2r: {
        const double p = 0.5 * (m(0, 0).real() - m(1, 1).real());
        const double q = m(0, 1).real(), r = m(1, 0).real();
        return {alg, q + r, 2.0 * p, q - r};
      }
      case Algebra::su2: {
        const double c3 = m(0, 0).imag() - m(1, 1).imag();
        const double c1 = m(0, 1).imag() + m(1, 0).imag();
        const double c2 = m(1, 0).real() - m(0, 1).real();
        return {alg, c1, c2, c3};
      }
      case Algebra::u1:
        break;
    }
    throw DomainError("u(1) elements have no 2x2 matrix representative");
  }

  bool is_finite() const {
    return std::isfinite(coords[0]) && std::isfinite(coords[1]) && std::isfinite(coords[2]);
  }

  double norm() const { return std::hypot(coords[0], coords[1], coords[2]); }

  friend bool operator==(const LieAlgebraVector&, const LieAlgebraVector&) = default;
};

namespace detail {
inline void require_same(const LieAlgebraVector& x, const LieAlgebraVector& y, const char* what) {
  if (x.algebra != y.algebra) {
    throw TagMismatch(std::string(what) + ": operands in " + std::string(to_string(x.algebra)) +
                      " and " + std::string(to_string(y.algebra)));
  }
}
}  // namespace detail

inline LieAlgebraVector operator+(const LieAlgebraVector& x, const LieAlgebraVector& y) {
  detail::require_same(x, y, "sum");
  return {x.algebra, x[0] + y[0], x[1] + y[1], x[2] + y[2]};
}

inline LieAlgebraVector operator-(const LieAlgebraVector& x, const LieAlgebraVector& y) {
  detail::require_same(x, y, "difference");
  return {x.algebra, x[0] - y[0], x[1] - y[1], x[2] - y[2]};
}

inline LieAlgebraVector operator-(const LieAlgebraVector& x) { return {x.algebra, -x[0], -x[1], -x[2]}; }

inline LieAlgebraVector operator*(double s, const LieAlgebraVector& x) {
  return {x.algebra, s * x[0], s * x[1], s * x[2]};
}

inline std::ostream& operator<<(std::ostream& os, const LieAlgebraVector& x) {
  return os << to_string(x.algebra) << "(" << x[0] << ", " << x[1] << ", " << x[2] << ")";
}

/// Largest coordinate difference; algebras must match.
inline double max_abs_diff(const LieAlgebraVector& x, const LieAlgebraVector& y) {
  detail::require_same(x, y, "max_abs_diff");
  return std::max({std::abs(x[0] - y[0]), std::abs(x[1] - y[1]), std::abs(x[2] - y[2])});
}

/// Lie bracket from the structure constants of the basis.
inline LieAlgebraVector bracket(const LieAlgebraVector& x, const LieAlgebraVector& y) {
  detail::require_same(x, y, "bracket");
  switch (x.algebra) {
    case Algebra::sl2r:
      return {Algebra::sl2r, x[1] * y[2] - x[2] * y[1], x[2] * y[0] - x[0] * y[2],
              -(x[0] * y[1] - x[1] * y[0])};
    case Algebra::su2:
      return {Algebra::su2, x[1] * y[2] - x[2] * y[1], x[2] * y[0] - x[0] * y[2],
              x[0] * y[1] - x[1] * y[0]};
    case Algebra::u1:
      return LieAlgebraVector::zero(Algebra::u1);
  }
  return LieAlgebraVector::zero(x.algebra);
}

/// Matrix group element. The determinant is renormalized to 1 on construction;
/// PSL2R and PU2 store the sign representative whose first nonzero entry
/// (row-major) has positive real part, or zero real part and positive imaginary part.
class GroupElement {
 public:
  /// Entries below this magnitude count as zero when choosing the sign representative.
  static constexpr double kSignThreshold = 1e-14;

  GroupElement() : GroupElement(Group::SL2R, CMat2(CMat2::Identity())) {}

  GroupElement(Group group, const CMat2& m) : group_(group), m_(m) { normalize(); }

  GroupElement(Group group, const Mat2& m) : GroupElement(group, CMat2(m.cast<Complex>())) {}

  static GroupElement identity(Group group) { return {group, CMat2(CMat2::Identity())}; }

  Group group() const { return group_; }
  const CMat2& matrix() const { return m_; }

  /// Real matrix; only meaningful for SL2R/PSL2R.
  Mat2 real_matrix() const { return m_.real(); }

  GroupElement operator*(const GroupElement& other) const {
    if (other.group_ != group_) {
      throw TagMismatch("product of " + std::string(to_string(group_)) + " and " +
                        std::string(to_string(other.group_)) + " elements");
    }
    return {group_, CMat2(m_ * other.m_)};
  }

  GroupElement inverse() const {
    CMat2 inv;
    inv << m_(1, 1), -m_(0, 1), -m_(1, 0), m_(0, 0);
    return {group_, inv};
  }

  /// Same element reinterpreted in another group with the same matrix type
  /// (SL2R <-> PSL2R, SU2 <-> PU2).
  GroupElement as(Group group) const {
    if (algebra_of(group) != algebra_of(group_)) throw TagMismatch("cannot reinterpret across real/unitary groups");
    return {group, m_};
  }

  /// Frobenius distance, taken modulo sign for the projective groups.
  double distance(const GroupElement& other) const {
    if (other.group_ != group_) throw TagMismatch("distance between different groups");
    const double plain = (m_ - other.m_).norm();
    if (!is_projective(group_)) return plain;
    return std::min(plain, (m_ + other.m_).norm());
  }

  double distance_to_identity() const { return distance(identity(group_)); }

  bool approx_equal(const GroupElement& other, double tol) const { return distance(other) <= tol; }

  /// Trace of the SL(2) / SU(2) lift (sign-dependent for projective groups).
  Complex trace() const { return m_.trace(); }

 private:
  void normalize() {
    const Complex det = m_.determinant();
    if (!std::isfinite(det.real()) || !std::isfinite(det.imag()) || std::abs(det) == 0.0) {
      throw DomainError("singular or non-finite matrix cannot represent a group element");
    }
    if (algebra_of(group_) == Algebra::sl2r) {
      if (det.real() <= 0.0) throw DomainError("real matrix with non-positive determinant is not in SL(2,R)");
      m_ = CMat2(m_.real().cast<Complex>()) / std::sqrt(det.real());
    } else {
      m_ /= std::sqrt(det);
    }
    if (is_projective(group_)) canonicalize_sign();
  }

  void canonicalize_sign() {
    for (int r = 0; r < 2; ++r) {
      for (int c = 0; c < 2; ++c) {
        const Complex e = m_(r, c);
        if (std::abs(e) <= kSignThreshold) continue;
        const bool negative = std::abs(e.real()) > kSignThreshold ? e.real() < 0.0 : e.imag() < 0.0;
        if (negative) m_ = -m_;
        return;
      }
    }
  }

  Group group_;
  CMat2 m_;
};

inline std::ostream& operator<<(std::ostream& os, const GroupElement& g) {
  const CMat2& m = g.matrix();
  return os << to_string(g.group()) << "[[" << m(0, 0) << ", " << m(0, 1) << "], [" << m(1, 0) << ", "
            << m(1, 1) << "]]";
}

/// Default group of a one-parameter subgroup of the algebra.
constexpr Group default_group(Algebra a) { return a == Algebra::su2 ? Group::SU2 : Group::SL2R; }

/// exp(tX) as an element of `target` (which must match the algebra).
///
/// Traceless 2x2 matrices satisfy M^2 = -det(M) I, so
/// exp(M) = cosh(s) I + sinh(s)/s M with s^2 = -det(M); a short series is used near s = 0.
inline GroupElement exp_to_group(const LieAlgebraVector& x, double t, Group target) {
  if (x.algebra == Algebra::u1) throw TagMismatch("exp_to_group: u(1) has no matrix group here");
  if (algebra_of(target) != x.algebra) {
    throw TagMismatch("exp_to_group: " + std::string(to_string(x.algebra)) + " does not exponentiate into " +
                      std::string(to_string(target)));
  }
  const CMat2 m = t * x.matrix();
  const Complex s2 = -m.determinant();
  Complex c0, c1;
  if (std::abs(s2) < 1e-8) {
    c0 = 1.0 + s2 / 2.0 + s2 * s2 / 24.0;
    c1 = 1.0 + s2 / 6.0 + s2 * s2 / 120.0;
  } else {
    const Complex s = std::sqrt(s2);
    c0 = std::cosh(s);
    c1 = std::sinh(s) / s;
  }
  return {target, CMat2(c0 * CMat2::Identity() + c1 * m)};
}

inline GroupElement exp_to_group(const LieAlgebraVector& x, double t = 1.0) {
  return exp_to_group(x, t, default_group(x.algebra));
}

/// g X g^{-1} in basis coordinates.
inline LieAlgebraVector adjoint_action(const GroupElement& g, const LieAlgebraVector& x) {
  if (algebra_of(g.group()) != x.algebra) {
    throw TagMismatch("adjoint_action: " + std::string(to_string(g.group())) + " does not act on " +
                      std::string(to_string(x.algebra)));
  }
  const CMat2& m = g.matrix();
  CMat2 inv;
  inv << m(1, 1), -m(0, 1), -m(1, 0), m(0, 0);
  return LieAlgebraVector::from_matrix(x.algebra, m * x.matrix() * inv);
}

/// Components of X in h + s: X = h * b3 + s[0] * b1 + s[1] * b2.
struct HSParts {
  double h = 0.0;
  std::array<double, 2> s{0.0, 0.0};
};

inline HSParts project_hs(const LieAlgebraVector& x) {
  if (x.algebra != Algebra::sl2r) throw TagMismatch("project_hs: expected an sl2r vector");
  return {x[2], {x[0], x[1]}};
}

inline LieAlgebraVector b1() { return LieAlgebraVector::basis(Algebra::sl2r, 1); }
inline LieAlgebraVector b2() { return LieAlgebraVector::basis(Algebra::sl2r, 2); }
inline LieAlgebraVector b3() { return LieAlgebraVector::basis(Algebra::sl2r, 3); }
inline LieAlgebraVector a1() { return LieAlgebraVector::basis(Algebra::su2, 1); }
inline LieAlgebraVector a2() { return LieAlgebraVector::basis(Algebra::su2, 2); }
inline LieAlgebraVector a3() { return LieAlgebraVector::basis(Algebra::su2, 3); }

/// h_t = exp(t b3) in PSL(2,R), the rotation by t about i.
inline GroupElement stabilizer_rotation(double t) { return exp_to_group(b3(), t, Group::PSL2R); }

/// The splitting sl(2,R) = h + s with h = R b3 and s = <b1, b2>.
struct ReductiveSplit {
  LieAlgebraVector h_basis = b3();
  std::array<LieAlgebraVector, 2> s_basis{b1(), b2()};

  /// Largest h-component of ad(h_t) applied to the s basis; zero iff s is ad(h_t)-invariant.
  double invariance_residual(double t) const {
    const GroupElement h = stabilizer_rotation(t);
    double worst = 0.0;
    for (const auto& s : s_basis) worst = std::max(worst, std::abs(project_hs(adjoint_action(h, s)).h));
    return worst;
  }
};

}  // namespace lhc
