#include <random>

#include <gtest/gtest.h>

#include "lhc/hyperbolic.hpp"

using namespace lhc;

namespace {

GroupElement rand_psl(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double x = u(rng), y = u(rng), z = u(rng);
  return exp_to_group(LieAlgebraVector(Algebra::sl2r, x, y, z), 1.0, Group::PSL2R);
}

PointH2 rand_h2(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> ux(-2.0, 2.0), uy(0.2, 3.0);
  const double x = ux(rng);
  return {x, uy(rng)};
}

}  // namespace

TEST(Points, RejectInvalid) {
  EXPECT_THROW(PointH2(0.0, 0.0), DomainError);
  EXPECT_THROW(PointH2(1.0, -1.0), DomainError);
  EXPECT_THROW(PointH3(0.0, 0.0, 0.0), DomainError);
}

TEST(Mobius, Examples) {
  const PointH2 z(0.3, 0.8);
  EXPECT_EQ(mobius_act(GroupElement::identity(Group::PSL2R), z).z(), z.z());
  for (double t : {0.0, 0.5, 2.0, 5.0}) EXPECT_LE(std::abs(mobius_act(stabilizer_rotation(t), basepoint_i()).z() - kI), 1e-15);
  Mat2 m;
  m << 1.0, 1.0, 0.0, 1.0;
  EXPECT_LE(std::abs(mobius_act(GroupElement(Group::PSL2R, m), basepoint_i()).z() - Complex(1.0, 1.0)), 1e-15);
}

TEST(Mobius, IsAnIsometry) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 100; ++i) {
    const auto g = rand_psl(rng);
    const auto z = rand_h2(rng), w = rand_h2(rng);
    EXPECT_NEAR(h2_distance(mobius_act(g, z), mobius_act(g, w)), h2_distance(z, w), 1e-10);
  }
}

TEST(Mobius, RejectsUnitaryElements) {
  EXPECT_THROW(mobius_act(GroupElement::identity(Group::SU2), basepoint_i()), TagMismatch);
}

TEST(FrameDelta, Examples) {
  const auto e = frame_delta(GroupElement::identity(Group::PSL2R));
  EXPECT_EQ(e.base.z(), kI);
  EXPECT_LE(std::abs(e.v - 1.0), 1e-15);
  for (double t : {0.3, 1.0, 2.5, 4.0}) {
    const auto d = frame_delta(stabilizer_rotation(t));
    EXPECT_LE(std::abs(d.base.z() - kI), 1e-15);
    EXPECT_LE(std::abs(d.v - std::polar(1.0, t)), 1e-14);
  }
}

TEST(FrameDelta, UnitAndEquivariant) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> ut(0.0, kTwoPi);
  for (int i = 0; i < 50; ++i) {
    const auto g = rand_psl(rng);
    const double t = ut(rng);
    const auto d = frame_delta(g), dt = frame_delta(g * stabilizer_rotation(t));
    EXPECT_NEAR(d.norm(), 1.0, 1e-12);
    EXPECT_LE(std::abs(dt.base.z() - d.base.z()), 1e-10);
    EXPECT_LE(std::abs(dt.v - std::polar(1.0, t) * d.v), 1e-10);
  }
}

TEST(Geodesic, VerticalLine) {
  for (double t : {-2.0, -0.5, 1.0, 3.0}) {
    const auto [p, v] = geodesic_flow(PointH3(0, 0, 1), Vec3(0, 0, 1), t);
    EXPECT_LE((p.x() - Vec3(0, 0, std::exp(t))).cwiseAbs().maxCoeff(), 1e-9 * std::exp(t));
  }
}

TEST(Geodesic, Semicircle) {
  for (double t : {-2.0, -1.0, 0.5, 2.0}) {
    const auto [p, v] = geodesic_flow(PointH3(0, 0, 1), Vec3(1, 0, 0), t);
    EXPECT_LE((p.x() - Vec3(std::tanh(t), 0, 1.0 / std::cosh(t))).cwiseAbs().maxCoeff(), 1e-9);
  }
}

TEST(Geodesic, ZeroTimeNormalizes) {
  const auto [p, v] = geodesic_flow(PointH3(1, 2, 0.5), Vec3(3, 0, 4), 0.0);
  EXPECT_EQ(p.x(), Vec3(1, 2, 0.5));
  EXPECT_NEAR(v.norm() / p[2], 1.0, 1e-15);
  EXPECT_THROW(geodesic_flow(PointH3(0, 0, 1), Vec3(0, 0, 0), 1.0), DomainError);
}

TEST(Geodesic, ConservesSpeed) {
  for (double t = -3.0; t <= 3.0; t += 0.75) {
    const auto [p, v] = geodesic_flow(PointH3(0.2, -0.4, 0.7), Vec3(0.3, 0.9, -0.2), t);
    EXPECT_LE(std::abs(v.norm() / p[2] - 1.0), 1e-8);
  }
}

TEST(Geodesic, H2AgreesWithMobiusImageOfImaginaryAxis) {
  // g maps the geodesic t -> i e^t to a geodesic through g.i
  std::mt19937_64 rng(13);
  for (int i = 0; i < 5; ++i) {
    const auto g = rand_psl(rng);
    const double t = 1.3;
    const auto start = mobius_push(g, TangentH2{basepoint_i(), kI});
    const auto [p, v] = geodesic_flow(start.base, start.v, t);
    EXPECT_LE(std::abs(p.z() - mobius_act(g, PointH2(0.0, std::exp(t))).z()), 1e-8);
  }
}

TEST(FtMap, Examples) {
  const PointH3 p(0.3, -1.0, 2.0);
  EXPECT_EQ(f_t_map(0.0, p).x(), p.x());
  for (double t : {-1.0, 0.4, 2.0}) {
    EXPECT_LE((f_t_map(t, PointH3(0, 0, 1)).x() - Vec3(std::tanh(t), 0, 1 / std::cosh(t))).norm(), 1e-15);
    EXPECT_LE(leaf_residual(t, f_t_map(t, PointH3(0.0, 0.7, 1.9))), 1e-12);
  }
}

TEST(FtMap, FollowsGeodesics) {
  for (const Vec3& x : {Vec3(0, 0, 1), Vec3(0.5, -0.3, 0.8), Vec3(-1, 2, 1.5), Vec3(0.2, 0.1, 0.3), Vec3(3, -1, 2)}) {
    for (double t = -2.0; t <= 2.0; t += 0.5) {
      const PointH3 p(x);
      const auto [q, v] = geodesic_flow(p, Vec3(x(2), 0, 0), t);
      EXPECT_LE((q.x() - f_t_map(t, p).x()).cwiseAbs().maxCoeff(), 1e-6);
    }
  }
}

TEST(PhiT, Examples) {
  EXPECT_EQ(phi_t(0.0, basepoint_i()).x(), Vec3(0, 0, 1));
  for (double t : {-0.7, 0.5, 1.5}) {
    EXPECT_LE((phi_t(t, basepoint_i()).x() - Vec3(std::tanh(t), 0, 1 / std::cosh(t))).norm(), 1e-15);
    EXPECT_LE(leaf_residual(t, phi_t(t, PointH2(2.0, 0.3))), 1e-12);
  }
}

TEST(LeviCivita, ZeroAndLinearInA) {
  const PointH2 z(0.4, 1.3);
  EXPECT_EQ(lc_connection_form_h2(0.0, z, Complex(1.0, 2.0)), 0.0);
  EXPECT_NEAR(lc_connection_form_h2(2.5, z, Complex(1.0, 2.0)), 2.5 * lc_connection_form_h2(1.0, z, Complex(1.0, 2.0)),
              1e-15);
}

TEST(LeviCivita, ExteriorDerivativeIsChernForm) {
  // d sigma_1 = (1/2pi) K vol with K = -1, i.e. -1/(2 pi y^2) dx^dy
  EXPECT_NEAR(numeric_d_sigma(1.0, basepoint_i()), -1.0 / kTwoPi, 1e-6);
  std::mt19937_64 rng(14);
  for (int i = 0; i < 10; ++i) {
    const auto z = rand_h2(rng);
    EXPECT_NEAR(numeric_d_sigma(1.0, z), chern_density_h2(1.0, z), 1e-6);
  }
}

TEST(LeviCivita, FrameIsParallelForBeta) {
  // The connection form transforms as beta' = beta + d(arg of the frame rotation):
  // pulling back by an isometry g changes sigma by an exact form, so g^*sigma - sigma
  // integrates to zero around a closed triangle.
  Mat2 m;
  m << 2.0, 1.0, 1.0, 1.0;
  const GroupElement g(Group::PSL2R, m);
  const Complex pts[3] = {Complex(0, 1), Complex(0.5, 2), Complex(-0.4, 0.6)};
  double loop = 0.0;
  const int n = 4000;
  for (int e = 0; e < 3; ++e) {
    const Complex a = pts[e], b = pts[(e + 1) % 3];
    for (int k = 0; k < n; ++k) {
      const Complex z = a + (b - a) * ((k + 0.5) / n);
      const Complex v = (b - a) / static_cast<double>(n);
      const PointH2 p(z);
      loop += lc_connection_form_h2(1.0, mobius_act(g, p), mobius_derivative(g, z) * v) -
              lc_connection_form_h2(1.0, p, v);
    }
  }
  EXPECT_NEAR(loop, 0.0, 1e-6);
}
