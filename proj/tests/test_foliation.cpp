#include <gtest/gtest.h>

#include "lhc/foliation.hpp"

using namespace lhc;

TEST(Leaf, Membership) {
  EXPECT_NO_THROW(require_on_leaf(0.7, phi_t(0.7, PointH2(0.3, 2.0))));
  EXPECT_THROW(require_on_leaf(0.7, PointH3(0.0, 0.0, 1.0)), LeafMembership);
}

TEST(Leaf, FrameIsOrthonormal) {
  for (double t : {-1.0, 0.0, 0.5, 2.0}) {
    const PointH3 p = phi_t(t, PointH2(0.4, 1.7));
    const LeafFrame f = leaf_frame(t, p);
    EXPECT_NEAR(h3_inner(p, f.e1, f.e1), 1.0, 1e-14);
    EXPECT_NEAR(h3_inner(p, f.e2, f.e2), 1.0, 1e-14);
    EXPECT_NEAR(h3_inner(p, f.normal, f.normal), 1.0, 1e-14);
    EXPECT_NEAR(h3_inner(p, f.e1, f.e2), 0.0, 1e-14);
    EXPECT_NEAR(h3_inner(p, f.e1, f.normal), 0.0, 1e-14);
    EXPECT_NEAR(h3_inner(p, f.e2, f.normal), 0.0, 1e-14);
  }
}

TEST(Shape, TotallyGeodesicAtZero) {
  const auto leaf = sample_leaf(0.0, leaf_parameters());
  for (const auto& p : leaf.points) EXPECT_LE(shape_operator(0.0, p).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(Shape, UmbilicWithConstantEigenvalue) {
  for (double t : {-1.0, 0.3, 0.8813735870195430, 1.5}) {
    const CylinderRow row = cylinder_check(t);
    EXPECT_LE(row.umbilic_spread, 1e-7) << t;
    EXPECT_LE(row.eigenvalue_variation, 1e-7) << t;
    EXPECT_LE(row.symmetry_residual, 1e-7) << t;
    EXPECT_NEAR(std::abs(row.eigenvalue), std::abs(std::tanh(t)), 1e-7) << t;
    EXPECT_LE(row.geodesic_error, 1e-6) << t;
  }
}

TEST(Shape, RejectsOffLeafPoints) { EXPECT_THROW(shape_operator(1.0, PointH3(0.0, 0.0, 1.0)), LeafMembership); }

TEST(Holonomy, FlatDirectionsAndFormula) {
  const double t = std::asinh(1.0);
  const auto c = compare_restricted_connection(t, 0.05);
  EXPECT_NEAR(c.formula[2], 2.0, 1e-14);
  EXPECT_LE(c.relative_error, 0.02);
  // off-axis terms come from the finite loop and shrink with it
  const auto fine = compare_restricted_connection(t, 0.025);
  EXPECT_LE(std::abs(c.holonomy[1]), 0.01 * c.formula[2]);
  EXPECT_GT(std::abs(c.holonomy[1]) / std::abs(fine.holonomy[1]), 3.0);
  EXPECT_GT(std::abs(c.holonomy[0]) / std::abs(fine.holonomy[0]), 3.0);
  EXPECT_NEAR(c.induced_a3, c.holonomy[2] / 2.0, 1e-14);
}

TEST(Holonomy, ConvergesUnderRefinement) {
  const double t = 1.5;
  const double e1 = compare_restricted_connection(t, 0.1).relative_error;
  const double e2 = compare_restricted_connection(t, 0.05).relative_error;
  EXPECT_GT(e1 / e2, 3.0);
}

TEST(Holonomy, GeodesicLeaf) {
  const auto c = compare_restricted_connection(0.0, 0.05);
  EXPECT_NEAR(c.formula[2], 1.0, 1e-15);
  EXPECT_LE(c.relative_error, 1e-6);
}

TEST(Holonomy, Validation) {
  EXPECT_THROW(compare_restricted_connection(1.0, 0.0), DomainError);
  EXPECT_THROW(compare_restricted_connection(1.0, 0.7), DomainError);
  EXPECT_THROW(compare_restricted_connection(std::nan(""), 0.1), DomainError);
}
