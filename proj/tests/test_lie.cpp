#include <random>

#include <gtest/gtest.h>

#include "lhc/lie.hpp"

using namespace lhc;

namespace {

LieAlgebraVector rand_vec(Algebra alg, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double x = u(rng), y = u(rng), z = u(rng);
  return {alg, x, y, z};
}

void expect_vec(const LieAlgebraVector& got, const LieAlgebraVector& want, double tol) {
  ASSERT_EQ(got.algebra, want.algebra);
  EXPECT_LE(max_abs_diff(got, want), tol) << got << " vs " << want;
}

}  // namespace

TEST(Bracket, StructureConstantsSl2r) {
  expect_vec(bracket(b1(), b2()), -b3(), 1e-12);
  expect_vec(bracket(b2(), b3()), b1(), 1e-12);
  expect_vec(bracket(b3(), b1()), b2(), 1e-12);
}

TEST(Bracket, Su2Basis) {
  expect_vec(bracket(a1(), a2()), a3(), 1e-12);
  expect_vec(bracket(a2(), a3()), a1(), 1e-12);
  expect_vec(bracket(a3(), a1()), a2(), 1e-12);
}

TEST(Bracket, MatchesMatrixCommutator) {
  std::mt19937_64 rng(1);
  for (Algebra alg : {Algebra::sl2r, Algebra::su2}) {
    for (int i = 0; i < 20; ++i) {
      const auto x = rand_vec(alg, rng), y = rand_vec(alg, rng);
      const CMat2 c = x.matrix() * y.matrix() - y.matrix() * x.matrix();
      expect_vec(bracket(x, y), LieAlgebraVector::from_matrix(alg, c), 1e-14);
    }
  }
}

TEST(Bracket, SelfIsZeroAndAntisymmetric) {
  std::mt19937_64 rng(2);
  const auto x = rand_vec(Algebra::sl2r, rng), y = rand_vec(Algebra::sl2r, rng);
  expect_vec(bracket(x, x), LieAlgebraVector::zero(Algebra::sl2r), 0.0);
  expect_vec(bracket(x, y), -bracket(y, x), 0.0);
}

TEST(Bracket, Jacobi) {
  std::mt19937_64 rng(3);
  for (Algebra alg : {Algebra::sl2r, Algebra::su2}) {
    for (int i = 0; i < 100; ++i) {
      const auto x = rand_vec(alg, rng), y = rand_vec(alg, rng), z = rand_vec(alg, rng);
      const auto j = bracket(x, bracket(y, z)) + bracket(y, bracket(z, x)) + bracket(z, bracket(x, y));
      EXPECT_LE(j.norm(), 1e-12);
    }
  }
}

TEST(Bracket, TagMismatch) { EXPECT_THROW(bracket(b1(), a1()), TagMismatch); }

TEST(Basis, MatricesAreThePapers) {
  CMat2 m;
  m << 0.0, 0.5, 0.5, 0.0;
  EXPECT_EQ(b1().matrix(), m);
  m << 0.5, 0.0, 0.0, -0.5;
  EXPECT_EQ(b2().matrix(), m);
  m << 0.0, 0.5, -0.5, 0.0;
  EXPECT_EQ(b3().matrix(), m);
  m << 0.0, Complex(0, 0.5), Complex(0, 0.5), 0.0;
  EXPECT_EQ(a1().matrix(), m);
  m << 0.0, -0.5, 0.5, 0.0;
  EXPECT_EQ(a2().matrix(), m);
  m << Complex(0, 0.5), 0.0, 0.0, Complex(0, -0.5);
  EXPECT_EQ(a3().matrix(), m);
}

TEST(Basis, MatrixRoundTrip) {
  std::mt19937_64 rng(4);
  for (Algebra alg : {Algebra::sl2r, Algebra::su2}) {
    const auto x = rand_vec(alg, rng);
    expect_vec(LieAlgebraVector::from_matrix(alg, x.matrix()), x, 1e-15);
  }
}

TEST(GroupElement, DeterminantNormalized) {
  Mat2 m;
  m << 2.0, 1.0, 1.0, 3.0;
  const GroupElement g(Group::SL2R, m);
  EXPECT_NEAR(std::abs(g.matrix().determinant() - 1.0), 0.0, 1e-12);
  Mat2 bad;
  bad << 1.0, 0.0, 0.0, -1.0;
  EXPECT_THROW(GroupElement(Group::SL2R, bad), DomainError);
}

TEST(GroupElement, ProjectiveSignIsCanonical) {
  Mat2 m;
  m << -1.0, 2.0, 0.5, -2.0;
  const GroupElement g(Group::PSL2R, m), h(Group::PSL2R, Mat2(-m));
  EXPECT_EQ(g.matrix(), h.matrix());
  EXPECT_GT(g.matrix()(0, 0).real(), 0.0);
  // zero first entry: the sign is fixed by the next one
  Mat2 w;
  w << 0.0, -1.0, 1.0, 0.0;
  EXPECT_GT(GroupElement(Group::PSL2R, w).matrix()(0, 1).real(), 0.0);
}

TEST(GroupElement, Pu2SignUsesImaginaryPartWhenRealIsZero) {
  const auto g = exp_to_group(a3(), kPi, Group::PU2);  // diag(i, -i)
  EXPECT_GT(g.matrix()(0, 0).imag(), 0.0);
  EXPECT_LE((g.matrix() - exp_to_group(a3(), 3.0 * kPi, Group::PU2).matrix()).norm(), 1e-14);
}

TEST(Exp, IdentityAtZero) {
  EXPECT_LE(exp_to_group(b3(), 0.0).distance_to_identity(), 1e-15);
  EXPECT_LE(exp_to_group(LieAlgebraVector::zero(Algebra::su2), 3.0).distance_to_identity(), 1e-15);
}

TEST(Exp, B3GivesRotationMatrix) {
  for (int i = 0; i < 16; ++i) {
    const double t = kTwoPi * i / 16.0;
    Mat2 h;
    h << std::cos(t / 2), std::sin(t / 2), -std::sin(t / 2), std::cos(t / 2);
    EXPECT_LE(exp_to_group(b3(), t, Group::PSL2R).distance(GroupElement(Group::PSL2R, h)), 1e-14);
  }
}

TEST(Exp, A3TwoPiIsMinusIdentity) {
  const auto su = exp_to_group(a3(), kTwoPi, Group::SU2);
  EXPECT_LE((su.matrix() + CMat2::Identity()).norm(), 1e-14);
  EXPECT_LE(exp_to_group(a3(), kTwoPi, Group::PU2).distance_to_identity(), 1e-14);
}

TEST(Exp, OneParameterSubgroup) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (Algebra alg : {Algebra::sl2r, Algebra::su2}) {
    for (int i = 0; i < 50; ++i) {
      const auto x = rand_vec(alg, rng);
      const double s = u(rng), t = u(rng);
      const Group g = default_group(alg);
      EXPECT_LE(exp_to_group(x, s + t, g).distance(exp_to_group(x, s, g) * exp_to_group(x, t, g)), 1e-10);
    }
  }
}

TEST(Exp, SmallArgumentSeriesMatchesClosedForm) {
  const LieAlgebraVector x(Algebra::sl2r, 0.3, -0.2, 0.1);
  const auto near = exp_to_group(x, 1e-5), far = exp_to_group(x, 1e-3);
  // both branches agree with exp(tX) ~ I + tX + t^2 X^2 / 2
  for (const auto& [g, t] : {std::pair{near, 1e-5}, std::pair{far, 1e-3}}) {
    const CMat2 m = t * x.matrix();
    const CMat2 approx = CMat2::Identity() + m + 0.5 * m * m + m * m * m / 6.0;
    EXPECT_LE((g.matrix() - approx).norm(), 1e-12);
  }
}

TEST(Exp, WrongTargetThrows) { EXPECT_THROW(exp_to_group(b1(), 1.0, Group::SU2), TagMismatch); }

TEST(Adjoint, RotatesSPlane) {
  for (int i = 0; i < 32; ++i) {
    const double t = kTwoPi * i / 32.0;
    const double u1 = 0.7, u2 = -1.3;
    const auto out = adjoint_action(stabilizer_rotation(t), u1 * b1() + u2 * b2());
    expect_vec(out, (u1 * std::cos(t) - u2 * std::sin(t)) * b1() + (u1 * std::sin(t) + u2 * std::cos(t)) * b2(),
               1e-10);
  }
}

TEST(Adjoint, HalfTurnNegatesB1) { expect_vec(adjoint_action(stabilizer_rotation(kPi), b1()), -b1(), 1e-15); }

TEST(Adjoint, IdentityActsTrivially) {
  const LieAlgebraVector x(Algebra::su2, 0.1, 0.2, 0.3);
  expect_vec(adjoint_action(GroupElement::identity(Group::PU2), x), x, 0.0);
}

TEST(Adjoint, PreservesBrackets) {
  std::mt19937_64 rng(6);
  for (Group grp : {Group::SL2R, Group::SU2}) {
    for (int i = 0; i < 30; ++i) {
      const auto g = exp_to_group(rand_vec(algebra_of(grp), rng), 1.0, grp);
      const auto x = rand_vec(algebra_of(grp), rng), y = rand_vec(algebra_of(grp), rng);
      expect_vec(adjoint_action(g, bracket(x, y)), bracket(adjoint_action(g, x), adjoint_action(g, y)), 1e-10);
    }
  }
}

TEST(Adjoint, TagMismatch) { EXPECT_THROW(adjoint_action(stabilizer_rotation(1.0), a1()), TagMismatch); }

TEST(ProjectHs, Examples) {
  auto p = project_hs(b3());
  EXPECT_EQ(p.h, 1.0);
  EXPECT_EQ(p.s[0], 0.0);
  p = project_hs(b1() + 2.0 * b3());
  EXPECT_EQ(p.h, 2.0);
  EXPECT_EQ(p.s[0], 1.0);
  EXPECT_EQ(p.s[1], 0.0);
  p = project_hs(bracket(b1(), b2()));
  EXPECT_EQ(p.h, -1.0);
  EXPECT_EQ(p.s[0], 0.0);
  EXPECT_EQ(p.s[1], 0.0);
  EXPECT_THROW(project_hs(a1()), TagMismatch);
}

TEST(ReductiveSplit, SIsInvariant) {
  const ReductiveSplit split;
  for (int i = 0; i < 64; ++i) EXPECT_LE(split.invariance_residual(0.1 * i), 1e-12);
}
