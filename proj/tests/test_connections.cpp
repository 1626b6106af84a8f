#include <random>

#include <gtest/gtest.h>

#include "lhc/connections.hpp"

using namespace lhc;

TEST(ChiStar, Values) {
  EXPECT_EQ(chi_star_b3(TargetGroup::S1, -3)[0], -3.0);
  EXPECT_EQ(max_abs_diff(chi_star_b3(TargetGroup::SU2, 2), 4.0 * a3()), 0.0);
  EXPECT_EQ(max_abs_diff(chi_star_b3(TargetGroup::PU2, 2), 2.0 * a3()), 0.0);
  EXPECT_THROW(chi_star_b3(TargetGroup::SU2, -1), DomainError);
  EXPECT_THROW(chi_star_b3(TargetGroup::PU2, -2), DomainError);
}

TEST(ChiStar, IsDerivativeOfChi) {
  const double h = 1e-6;
  for (auto target : {TargetGroup::SU2, TargetGroup::PU2}) {
    for (int k : {0, 1, 2, 3}) {
      const GroupElement g = chi_of_rotation(target, k, h);
      const CMat2 num = (g.matrix() - chi_of_rotation(target, k, -h).matrix()) / (2.0 * h);
      EXPECT_LE((num - chi_star_b3(target, k).matrix()).norm(), 1e-8) << to_string(target) << " k=" << k;
    }
  }
}

TEST(InvariantPair, ZeroMuIsEquivariant) {
  for (int k : {-2, 0, 1, 4}) EXPECT_NO_THROW(InvariantPair(TargetGroup::S1, k));
  for (int k : {0, 1, 2}) {
    EXPECT_NO_THROW(InvariantPair(TargetGroup::SU2, k));
    EXPECT_NO_THROW(InvariantPair(TargetGroup::PU2, k));
  }
}

TEST(InvariantPair, Pu2FamilyIsEquivariant) {
  for (Complex z : {Complex(1, 0), Complex(0, 1), Complex(-0.3, 2.1), Complex(5, -5)}) {
    const auto p = InvariantPair::pu2_family(z);
    EXPECT_LE(p.equivariance_residual(), 1e-12);
    EXPECT_LE(std::abs(p.z() - z), 1e-15);
  }
}

TEST(InvariantPair, RejectsNonEquivariantMu) {
  EXPECT_THROW(InvariantPair(TargetGroup::PU2, 1, a3(), LieAlgebraVector::zero(Algebra::su2)), DomainError);
  EXPECT_THROW(InvariantPair(TargetGroup::PU2, 2, a2(), -1.0 * a1()), DomainError);
  EXPECT_THROW(InvariantPair(TargetGroup::SU2, 1, a2(), -1.0 * a1()), DomainError);
  EXPECT_THROW(InvariantPair(TargetGroup::PU2, 1, b1(), b2()), TagMismatch);
}

TEST(Lambda, RestrictsToChiStarOnH) {
  const auto p = InvariantPair::pu2_family(Complex(0.4, -0.2));
  EXPECT_LE(max_abs_diff(lambda_map(p, b3()), a3()), 1e-15);
  EXPECT_LE(max_abs_diff(lambda_map(p, b1()), p.mu_b1()), 1e-15);
}

TEST(Curvature, S1IsK) {
  for (int k : {-2, -1, 0, 1, 3}) EXPECT_NEAR(curvature_phi(InvariantPair(TargetGroup::S1, k), b1(), b2())[0], k, 1e-15);
}

TEST(Curvature, Pu2Family) {
  // [mu b1, mu b2] = |z|^2 a3 and -lambda[b1, b2] = lambda(b3) = a3
  for (Complex z : {Complex(0, 0), Complex(1, 0), Complex(0.3, -0.7), Complex(2, 1)}) {
    const auto phi = curvature_phi(InvariantPair::pu2_family(z), b1(), b2());
    EXPECT_NEAR(phi[0], 0.0, 1e-15);
    EXPECT_NEAR(phi[1], 0.0, 1e-15);
    EXPECT_NEAR(phi[2], 1.0 + std::norm(z), 1e-14);
  }
}

TEST(Curvature, VanishesOnH) {
  const auto p = InvariantPair::pu2_family(Complex(0.5, 0.5));
  EXPECT_LE(curvature_phi(p, b3(), b1()).norm(), 1e-15);
  EXPECT_LE(curvature_phi(p, b2(), b3()).norm(), 1e-15);
}

TEST(Curvature, MatchesFiniteDifferenceOracle) {
  std::vector<InvariantPair> pairs{InvariantPair(TargetGroup::S1, 2), InvariantPair(TargetGroup::SU2, 1),
                                   InvariantPair(TargetGroup::PU2, 3), InvariantPair::pu2_family(Complex(0.7, -1.2))};
  for (const auto& p : pairs) {
    const auto exact = curvature_phi(p, b1(), b2());
    const auto num = numeric_curvature_oracle(p, b1(), b2());
    EXPECT_LE(max_abs_diff(exact, num), 1e-5);
  }
}

TEST(WeightSpace, Dimensions) {
  EXPECT_EQ(weight_space(TargetGroup::S1, 1).dimension, 0);
  EXPECT_EQ(weight_space(TargetGroup::PU2, 1).dimension, 1);
  for (int k : {0, 2, 3}) EXPECT_EQ(weight_space(TargetGroup::PU2, k).dimension, 0) << k;
  for (int k : {0, 1, 2}) EXPECT_EQ(weight_space(TargetGroup::SU2, k).dimension, 0) << k;
}

TEST(WeightSpace, SpannedByImageOfMu0) {
  const auto w = weight_space(TargetGroup::PU2, 1);
  ASSERT_EQ(w.basis.size(), 1u);
  EXPECT_NEAR(complex_alignment(w.basis[0], identification_I(mu0_pair())), 1.0, 1e-12);
  const Complex z(0.3, -2.0);
  const Eigen::Vector3cd iz = identification_I(InvariantPair::pu2_family(z));
  EXPECT_LE((iz - z * identification_I(mu0_pair())).norm(), 1e-14);
}

TEST(Moduli, Classification) {
  const auto s1 = classify_moduli(TargetGroup::S1);
  EXPECT_EQ(s1.discrete, IndexSet::Integers);
  EXPECT_FALSE(s1.half_line.has_value());
  EXPECT_TRUE(s1.contains(-4));

  const auto su2 = classify_moduli(TargetGroup::SU2);
  EXPECT_EQ(su2.discrete, IndexSet::Naturals);
  EXPECT_TRUE(su2.contains(0));
  EXPECT_FALSE(su2.contains(-1));
  EXPECT_FALSE(su2.contains(1, 0.5));

  const auto pu2 = classify_moduli(TargetGroup::PU2);
  EXPECT_EQ(pu2.discrete, IndexSet::NaturalsExceptOne);
  ASSERT_TRUE(pu2.half_line.has_value());
  EXPECT_EQ(pu2.half_line->k, 1);
  EXPECT_TRUE(pu2.contains(1, 0.0));
  EXPECT_TRUE(pu2.contains(1, 3.5));
  EXPECT_FALSE(pu2.contains(1, -0.1));
  EXPECT_TRUE(pu2.contains(2));
  EXPECT_FALSE(pu2.contains(2, 1.0));
}

TEST(Moduli, PhaseOfZIsGauge) {
  // Conjugating by chi(h_s) rotates z by a phase, so only |z| is an invariant.
  const Complex z(1.2, 0.5);
  const double s = 0.8;
  const auto p = InvariantPair::pu2_family(z);
  const auto rotated = InvariantPair::pu2_family(z * std::polar(1.0, s));
  const LieAlgebraVector m = chi_adjoint(TargetGroup::PU2, 1, s, p.mu_b1());
  EXPECT_LE(max_abs_diff(m, rotated.mu_b1()), 1e-14);
  EXPECT_NEAR(curvature_phi(p, b1(), b2())[2], curvature_phi(rotated, b1(), b2())[2], 1e-14);
}

TEST(SecondFundamentalForm, IsMultiplicationByZ) {
  const Complex z(0.6, -0.8);
  const Mat2 b = second_fundamental_form_Bz(z);
  const Eigen::Vector2d v(0.3, 1.1);
  const Eigen::Vector2d bv = b * v;
  const Complex w = z * Complex(v(0), v(1));
  EXPECT_NEAR(bv(0), w.real(), 1e-15);
  EXPECT_NEAR(bv(1), w.imag(), 1e-15);
}
