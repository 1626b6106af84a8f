#pragma once

// Verification suites behind the command-line tool.

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "lhc/connections.hpp"
#include "lhc/extension.hpp"
#include "lhc/foliation.hpp"
#include "lhc/fuchsian.hpp"
#include "lhc/hyperbolic.hpp"
#include "lhc/io.hpp"
#include "lhc/lie.hpp"
#include "lhc/report.hpp"

namespace lhc {

enum class Command { moduli, verify, descend, foliation, gauss_bonnet };

constexpr const char* to_string(Command c) {
  switch (c) {
    case Command::moduli: return "moduli";
    case Command::verify: return "verify";
    case Command::descend: return "descend";
    case Command::foliation: return "foliation";
    case Command::gauss_bonnet: return "gauss-bonnet";
  }
  return "?";
}

/// Exit statuses of the tool.
enum ExitCode : int { kExitPass = 0, kExitFail = 1, kExitUsage = 2, kExitWrite = 3, kExitInternal = 4 };

/// Raised for invalid configurations; maps to kExitUsage.
class UsageError : public Error {
 public:
  using Error::Error;
};

/// Named tolerances with defaults; overrides must name an existing entry.
class Tolerances {
 public:
  Tolerances()
      : values_{{"structure", 1e-12},     {"jacobi", 1e-12},          {"adjoint", 1e-10},
                {"exp", 1e-10},           {"split", 1e-12},           {"isometry", 1e-10},
                {"speed", 1e-8},          {"geodesic", 1e-6},         {"delta", 1e-10},
                {"chern_form", 1e-6},     {"weight", 1e-10},          {"curvature_oracle", 1e-5},
                {"curvature_exact", 1e-8}, {"phase", 1e-12},          {"morphism", 1e-10},
                {"shape", 1e-6},          {"eigenvalue", 1e-5},       {"holonomy_rel", 2e-2},
                {"convergence_min", 3.0}, {"gauss_bonnet_rel", 1e-3}, {"constancy", 1e-6},
                {"cocycle", 1e-5},        {"integer", 1e-5},          {"non_integer", 0.1},
                {"twist", 1e-6},          {"flat", 1e-9},             {"flat_fail", 0.1},
                {"path_independence", 1e-7}} {}

  double operator[](const std::string& name) const {
    const auto it = values_.find(name);
    if (it == values_.end()) throw UsageError("unknown tolerance '" + name + "'");
    return it->second;
  }

  void set(const std::string& name, double value) {
    if (!values_.count(name)) throw UsageError("unknown tolerance '" + name + "'");
    if (!(value > 0.0) || !std::isfinite(value)) throw UsageError("tolerance '" + name + "' must be positive");
    values_[name] = value;
  }

  const std::map<std::string, double>& all() const { return values_; }

 private:
  std::map<std::string, double> values_;
};

struct RunConfig {
  Command command = Command::verify;
  std::optional<TargetGroup> group;
  std::optional<int> chern;
  int genus = 2;
  std::optional<double> a;
  std::vector<double> t_values;
  int samples = 3;
  Tolerances tolerances;
  std::uint64_t seed = 7;
  std::string output_path;
  std::optional<std::string> generators_path;
  std::string suite = "all";
  /// Arguments as given on the command line, echoed into the report.
  std::vector<std::string> arguments;
};

struct RunResult {
  int exit_code = kExitPass;
  ReportDocument report;
  std::string message;
  std::string written_to;
};

// ---------------------------------------------------------------------------
// Helpers.

namespace suite {

using Rows = std::vector<ReportRow>;

inline LieAlgebraVector random_vector(Algebra alg, std::mt19937_64& rng, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  const double x = u(rng), y = u(rng), z = u(rng);
  return {alg, x, y, z};
}

inline GroupElement random_element(Group g, std::mt19937_64& rng, double scale = 1.5) {
  return exp_to_group(random_vector(algebra_of(g), rng, scale), 1.0, g);
}

inline PointH2 random_h2(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> ux(-2.0, 2.0), uy(0.2, 3.0);
  const double x = ux(rng), y = uy(rng);
  return {x, y};
}

inline std::string fmt(double x) {
  std::ostringstream os;
  os << std::setprecision(6) << x;
  return os.str();
}

// ---------------------------------------------------------------------------

inline Rows lie_core(const Tolerances& tol, std::mt19937_64& rng) {
  const std::string tag = "lie-core";
  Rows rows;
  const double sc = std::max({max_abs_diff(bracket(b1(), b2()), -b3()), max_abs_diff(bracket(b2(), b3()), b1()),
                              max_abs_diff(bracket(b3(), b1()), b2()), max_abs_diff(bracket(a1(), a2()), a3())});
  rows.push_back(ReportRow::residual("structure constants", tag, sc, tol["structure"]));

  double jac = 0.0;
  for (Algebra alg : {Algebra::sl2r, Algebra::su2}) {
    for (int i = 0; i < 100; ++i) {
      const auto x = random_vector(alg, rng), y = random_vector(alg, rng), z = random_vector(alg, rng);
      const auto j = bracket(x, bracket(y, z)) + bracket(y, bracket(z, x)) + bracket(z, bracket(x, y));
      jac = std::max(jac, j.norm());
    }
  }
  rows.push_back(ReportRow::residual("Jacobi identity, 100 triples per algebra", tag, jac, tol["jacobi"]));

  double rot = 0.0;
  for (int i = 0; i < 32; ++i) {
    const double t = kTwoPi * i / 32.0;
    const auto h = stabilizer_rotation(t);
    rot = std::max({rot, max_abs_diff(adjoint_action(h, b1()), std::cos(t) * b1() + std::sin(t) * b2()),
                    max_abs_diff(adjoint_action(h, b2()), -std::sin(t) * b1() + std::cos(t) * b2())});
  }
  rows.push_back(ReportRow::residual("ad(h_t) rotates (b1, b2) by t, 32 angles", tag, rot, tol["adjoint"]));

  double hom = 0.0, expo = 0.0;
  for (int i = 0; i < 50; ++i) {
    for (Group g : {Group::SL2R, Group::SU2}) {
      const auto e = random_element(g, rng);
      const auto x = random_vector(algebra_of(g), rng), y = random_vector(algebra_of(g), rng);
      hom = std::max(hom, max_abs_diff(adjoint_action(e, bracket(x, y)),
                                       bracket(adjoint_action(e, x), adjoint_action(e, y))));
      std::uniform_real_distribution<double> u(-2.0, 2.0);
      const double s = u(rng), t = u(rng);
      expo = std::max(expo, exp_to_group(x, s + t, g).distance(exp_to_group(x, s, g) * exp_to_group(x, t, g)));
    }
  }
  rows.push_back(ReportRow::residual("Ad is a Lie algebra morphism", tag, hom, tol["adjoint"]));
  rows.push_back(ReportRow::residual("exp((s+t)X) = exp(sX) exp(tX)", tag, expo, tol["exp"]));

  const ReductiveSplit split;
  double sres = 0.0;
  for (int i = 0; i < 16; ++i) sres = std::max(sres, split.invariance_residual(0.4 * i));
  rows.push_back(ReportRow::residual("s is ad(H)-invariant", tag, sres, tol["split"]));
  return rows;
}

inline Rows hyperbolic(const Tolerances& tol, std::mt19937_64& rng) {
  const std::string tag = "hyperbolic-spaces";
  Rows rows;
  double iso = 0.0;
  for (int i = 0; i < 50; ++i) {
    const auto g = random_element(Group::PSL2R, rng, 1.0);
    const auto z = random_h2(rng), w = random_h2(rng);
    iso = std::max(iso, std::abs(h2_distance(mobius_act(g, z), mobius_act(g, w)) - h2_distance(z, w)));
  }
  rows.push_back(ReportRow::residual("Moebius maps preserve distance", tag, iso, tol["isometry"]));

  double speed = 0.0;
  for (const auto& x : geodesic_basepoints()) {
    for (double t : {-3.0, -1.5, 1.0, 3.0}) {
      const auto [q, v] = geodesic_flow(x, Vec3(0.3, -0.7, 0.5), t);
      speed = std::max(speed, std::abs(v.norm() / q[2] - 1.0));
    }
  }
  rows.push_back(ReportRow::residual("geodesic speed conserved on [-3, 3]", tag, speed, tol["speed"]));

  double geo = 0.0;
  for (const auto& x : geodesic_basepoints()) {
    for (int i = 0; i <= 8; ++i) {
      const double t = -2.0 + 0.5 * i;
      const auto [q, v] = geodesic_flow(x, Vec3(x[2], 0.0, 0.0), t);
      geo = std::max(geo, (q.x() - f_t_map(t, x).x()).cwiseAbs().maxCoeff());
    }
  }
  rows.push_back(ReportRow::residual("f^t agrees with the geodesic flow, t in [-2, 2]", tag, geo, tol["geodesic"]));

  double eq = 0.0;
  for (int i = 0; i < 20; ++i) {
    const auto g = random_element(Group::PSL2R, rng, 1.0);
    const double t = std::uniform_real_distribution<double>(0.0, kTwoPi)(rng);
    const auto lhs = frame_delta(g * stabilizer_rotation(t));
    const auto rhs = frame_delta(g);
    eq = std::max({eq, std::abs(lhs.base.z() - rhs.base.z()), std::abs(lhs.v - std::polar(1.0, t) * rhs.v)});
    eq = std::max(eq, std::abs(rhs.norm() - 1.0));
  }
  rows.push_back(ReportRow::residual("frame_delta is equivariant and unit", tag, eq, tol["delta"]));

  double dsig = 0.0;
  for (int i = 0; i < 10; ++i) {
    const auto z = random_h2(rng);
    dsig = std::max(dsig, std::abs(numeric_d_sigma(1.0, z) - chern_density_h2(1.0, z)));
  }
  rows.push_back(ReportRow::residual("d(sigma_1) equals the Chern form of A_LC", tag, dsig, tol["chern_form"]));
  return rows;
}

inline Rows weight_rows(TargetGroup g, const Tolerances& tol) {
  const std::string tag = "invariant-connections";
  Rows rows;
  const int lo = g == TargetGroup::S1 ? -2 : 0;
  for (int k = lo; k <= 5; ++k) {
    const WeightSpace w = weight_space(g, k);
    const int expected = (g == TargetGroup::PU2 && k == 1) ? 1 : 0;
    rows.push_back(ReportRow::make("weight space dimension " + std::string(to_string(g)) + " k=" + std::to_string(k),
                                   tag, expected, w.dimension, 0.0));
    if (g == TargetGroup::PU2 && k == 1 && w.dimension == 1) {
      rows.push_back(ReportRow::make("PU2 k=1 weight space is spanned by I(mu_0)", tag, 1.0,
                                     complex_alignment(w.basis[0], identification_I(mu0_pair())), tol["weight"]));
    }
  }
  return rows;
}

inline InvariantPair random_pair(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> which(0, 2), kk(0, 4);
  switch (which(rng)) {
    case 0: return InvariantPair(TargetGroup::S1, kk(rng) - 2);
    case 1: return InvariantPair(TargetGroup::SU2, kk(rng));
    default: {
      std::uniform_real_distribution<double> r(0.0, 3.0), ph(0.0, kTwoPi);
      const int k = kk(rng);
      if (k != 1) return InvariantPair(TargetGroup::PU2, k);
      const double rr = r(rng), p = ph(rng);
      return InvariantPair::pu2_family(std::polar(rr, p));
    }
  }
}

inline Rows connections(const Tolerances& tol, std::mt19937_64& rng) {
  const std::string tag = "invariant-connections";
  Rows rows;
  for (TargetGroup g : {TargetGroup::S1, TargetGroup::SU2, TargetGroup::PU2}) {
    const Rows w = weight_rows(g, tol);
    rows.insert(rows.end(), w.begin(), w.end());
  }
  double diff = 0.0, anti = 0.0;
  const std::array<LieAlgebraVector, 3> basis{b1(), b2(), b3()};
  for (int i = 0; i < 20; ++i) {
    const InvariantPair p = random_pair(rng);
    std::vector<std::pair<LieAlgebraVector, LieAlgebraVector>> uv;
    for (int a = 0; a < 3; ++a) {
      for (int b = a + 1; b < 3; ++b) uv.emplace_back(basis[a], basis[b]);
    }
    uv.emplace_back(random_vector(Algebra::sl2r, rng), random_vector(Algebra::sl2r, rng));
    for (const auto& [u, v] : uv) {
      const auto exact = curvature_phi(p, u, v);
      const auto num = numeric_curvature_oracle(p, u, v);
      diff = std::max(diff, max_abs_diff(exact, num));
      anti = std::max(anti, max_abs_diff(num, -numeric_curvature_oracle(p, v, u)));
    }
  }
  rows.push_back(ReportRow::residual("curvature formula matches the finite-difference oracle, 20 pairs", tag, diff,
                                     tol["curvature_oracle"]));
  rows.push_back(ReportRow::residual("oracle curvature is antisymmetric", tag, anti, tol["curvature_oracle"]));

  double law = 0.0;
  std::uniform_real_distribution<double> ph(0.0, kTwoPi), rr(0.0, 3.0);
  for (int i = 0; i < 50; ++i) {
    const Complex z = std::polar(rr(rng), ph(rng));
    const auto c = curvature_phi(InvariantPair::pu2_family(z), b1(), b2());
    law = std::max({law, std::abs(c[2] - (1.0 + std::norm(z))), std::abs(c[0]), std::abs(c[1])});
  }
  rows.push_back(
      ReportRow::residual("PU2 curvature is (1+|z|^2) a3 for 50 phases", tag, law, tol["curvature_exact"]));

  double lin = 0.0;
  for (int k = -3; k <= 3; ++k) {
    lin = std::max(lin, std::abs(curvature_phi(InvariantPair(TargetGroup::S1, k), b1(), b2())[0] - k));
  }
  rows.push_back(ReportRow::residual("S1 curvature scales linearly in k", tag, lin, tol["curvature_exact"]));

  double bz = 0.0;
  for (int i = 0; i < 10; ++i) {
    const double r = rr(rng), t = ph(rng);
    Mat2 expect;
    expect << std::cos(t), -std::sin(t), std::sin(t), std::cos(t);
    bz = std::max(bz, (second_fundamental_form_Bz(std::polar(r, t)) - r * expect).cwiseAbs().maxCoeff());
  }
  rows.push_back(ReportRow::residual("B^z is r times rotation by t", tag, bz, tol["curvature_exact"]));
  return rows;
}

inline Rows extension(const Tolerances& tol, std::mt19937_64& rng) {
  const std::string tag = "circle-extension";
  Rows rows;
  int failures = 0;
  for (int i = 0; i < 200; ++i) {
    const auto g1 = random_element(Group::PSL2R, rng), g2 = random_element(Group::PSL2R, rng),
               g3 = random_element(Group::PSL2R, rng);
    const int lhs = winding_cocycle(g1, g2) + winding_cocycle(g1 * g2, g3);
    const int rhs = winding_cocycle(g2, g3) + winding_cocycle(g1, g2 * g3);
    if (lhs != rhs) ++failures;
  }
  rows.push_back(ReportRow::make("winding cocycle identity, 200 triples (failures)", tag, 0.0, failures, 0.0));
  rows.push_back(ReportRow::make("kappa(h_pi, h_pi)", tag, 1.0,
                                 winding_cocycle(stabilizer_rotation(kPi), stabilizer_rotation(kPi)), 0.0));

  const double a = 0.37;
  std::uniform_real_distribution<double> ph(0.0, kTwoPi);
  auto rand_ext = [&] { return ExtElement(random_element(Group::PSL2R, rng), std::polar(1.0, ph(rng)), a); };
  double assoc = 0.0, central = 0.0;
  for (int i = 0; i < 200; ++i) {
    const auto x = rand_ext(), y = rand_ext(), z = rand_ext();
    assoc = std::max(assoc, ((x * y) * z).distance(x * (y * z)));
  }
  for (int i = 0; i < 100; ++i) {
    const auto x = rand_ext();
    const auto j = j_a(std::polar(1.0, ph(rng)), a);
    central = std::max(central, (x * j).distance(j * x));
  }
  rows.push_back(ReportRow::residual("ext_multiply is associative, 200 triples", tag, assoc, tol["phase"]));
  rows.push_back(ReportRow::residual("j_a(S^1) is central, 100 elements", tag, central, tol["phase"]));

  double morph = 0.0;
  for (int i = 0; i < 100; ++i) {
    const auto x = stabilizer_element(ph(rng), std::polar(1.0, ph(rng)), a);
    const auto y = stabilizer_element(ph(rng), std::polar(1.0, ph(rng)), a);
    morph = std::max(morph, std::abs(chi_a(x * y) - chi_a(x) * chi_a(y)));
  }
  const auto hp = stabilizer_element(kPi, 1.0, a);
  morph = std::max(morph, std::abs(chi_a(hp * hp) - std::polar(1.0, kTwoPi * a)));
  rows.push_back(ReportRow::residual("chi_a is a morphism, including wrap-around", tag, morph, tol["morphism"]));

  double lin = 0.0;
  for (int i = 0; i < 10; ++i) lin = std::max(lin, std::abs(curvature_chi_a(0.3 * i - 1.0) - (0.3 * i - 1.0)));
  rows.push_back(ReportRow::residual("curvature of chi_a is a times that of sigma", tag, lin, tol["curvature_exact"]));
  return rows;
}

inline Rows gauss_bonnet(const FuchsianGroup& g, const std::vector<double>& a_values, const Tolerances& tol,
                         Json* data = nullptr) {
  const std::string tag = "fuchsian-descent";
  Rows rows;
  for (double a : a_values) {
    const double target = chern_target(a, g.genus());
    const double area = gauss_bonnet_chern(a, g);
    const double stokes = gauss_bonnet_stokes(a, g);
    const Relation rel = target == 0.0 ? Relation::within : Relation::relative;
    const double t = target == 0.0 ? 1e-12 : tol["gauss_bonnet_rel"];
    rows.push_back(ReportRow::make("Chern integral over the fundamental polygon, a=" + fmt(a), tag, target, area, t, rel));
    rows.push_back(ReportRow::make("boundary integral of sigma_a, a=" + fmt(a), tag, target, stokes, t, rel));
    if (data) (*data)["gauss_bonnet"].push_back({{"a", a}, {"target", target}, {"area_integral", area},
                                                 {"boundary_integral", stokes}});
  }
  return rows;
}

inline Json descent_json(const DescentReport& r) {
  Json lam = Json::array();
  for (const auto& e : r.lambda_values) {
    lam.push_back({{"i", e.i}, {"j", e.j}, {"value", e.value}, {"deviation", e.deviation}});
  }
  Json cyc = Json::array();
  for (const auto& t : r.cycle) {
    cyc.push_back({{"left", t.left}, {"letter", t.letter}, {"sign", t.sign}, {"lambda", t.lambda}});
  }
  return {{"a", r.a},
          {"chern_target", r.chern_target},
          {"lambda_values", lam},
          {"fundamental_cycle", cyc},
          {"pairing", r.pairing},
          {"distance_to_integer", r.distance_to_integer},
          {"obstruction_vanishes", r.obstruction_vanishes},
          {"constancy_residual", r.constancy_residual}};
}

inline DescentOptions descent_options(const Tolerances& tol) {
  DescentOptions o;
  o.constancy_tol = tol["constancy"];
  o.integer_tol = tol["integer"];
  return o;
}

/// Rows for one value of a: constancy, pairing vs the Chern integral, verdict vs integrality.
inline Rows descent_for(double a, const FuchsianGroup& g, const std::vector<PointH2>& samples, const Tolerances& tol,
                        Json* data = nullptr) {
  const std::string tag = "fuchsian-descent";
  Rows rows;
  const DescentReport r = descend(a, g, samples, descent_options(tol));
  const std::string sa = ", a=" + fmt(a);
  rows.push_back(ReportRow::residual("lambda constancy" + sa, tag, r.constancy_residual, tol["constancy"]));
  const double chern = gauss_bonnet_chern(a, g);
  rows.push_back(ReportRow::make("pairing equals minus the Chern integral" + sa, tag, -kPairingSign * chern,
                                 r.pairing, std::max(tol["integer"], tol["gauss_bonnet_rel"] * std::abs(chern))));
  const bool chern_integral = distance_to_integer(chern) < tol["gauss_bonnet_rel"];
  rows.push_back(ReportRow::make("obstruction vanishes iff the Chern number is an integer" + sa, tag,
                                 chern_integral ? 1.0 : 0.0, r.obstruction_vanishes ? 1.0 : 0.0, 0.0));
  if (r.obstruction_vanishes) {
    rows.push_back(ReportRow::residual("pairing is an integer" + sa, tag, r.distance_to_integer, tol["integer"]));
  } else {
    rows.push_back(ReportRow::make("pairing is away from the integers" + sa, tag, tol["non_integer"],
                                   r.distance_to_integer, 0.0, Relation::above));
  }
  if (data) (*data)["descent"].push_back(descent_json(r));
  return rows;
}

inline Rows descent(const FuchsianGroup& g, const std::vector<PointH2>& samples, const Tolerances& tol,
                    std::mt19937_64& rng, Json* data = nullptr) {
  const std::string tag = "fuchsian-descent";
  Rows rows;
  rows.push_back(ReportRow::residual("relator holds", tag, g.relator_residual(), FuchsianGroup::kRelatorTol));
  rows.push_back(ReportRow::make("generators are hyperbolic (min |trace|)", tag, 2.0, g.min_abs_trace(), 0.0,
                                 Relation::above));
  rows.push_back(ReportRow::make("fundamental cycle has zero boundary (surviving terms)", tag, 0.0,
                                 static_cast<double>(chain_boundary(g, fundamental_cycle(g)).size()), 0.0));

  const auto opt = descent_options(tol);
  double path = 0.0;
  for (int i = 0; i < 5; ++i) {
    const auto gamma = g.element(random_word(g, rng, 3));
    const auto x = random_h2(rng), m = random_h2(rng);
    const double direct = psi_potential(1.0, gamma, x);
    const double two_leg = line_integral([&](const PointH2& z, Complex v) { return nu_form(1.0, gamma, z, v); },
                                         basepoint_i(), m) +
                           line_integral([&](const PointH2& z, Complex v) { return nu_form(1.0, gamma, z, v); }, m, x);
    path = std::max(path, std::abs(direct - two_leg));
  }
  rows.push_back(ReportRow::residual("psi is path independent", tag, path, tol["path_independence"]));

  double cocycle = 0.0;
  for (int i = 0; i < 50; ++i) {
    const auto g1 = g.element(random_word(g, rng, 3)), g2 = g.element(random_word(g, rng, 3)),
               g3 = g.element(random_word(g, rng, 3));
    const double s = cech_lambda(1.0, g1, g2, samples, opt).mean + cech_lambda(1.0, g1 * g2, g3, samples, opt).mean -
                     cech_lambda(1.0, g2, g3, samples, opt).mean - cech_lambda(1.0, g1, g2 * g3, samples, opt).mean;
    cocycle = std::max(cocycle, std::abs(s));
  }
  rows.push_back(ReportRow::residual("lambda is a group 2-cocycle, 50 triples", tag, cocycle, tol["cocycle"]));

  for (double a : {-1.0, -0.5, 1.0 / 3.0, 0.7}) {
    const Rows r = descent_for(a, g, samples, tol, data);
    rows.insert(rows.end(), r.begin(), r.end());
  }

  double twist = 0.0;
  int flips = 0;
  for (double a : {-0.5, 0.7}) {
    const PairingResult base = pair_fundamental_class(a, g, samples, opt);
    const bool vanishes = distance_to_integer(base.value) < tol["integer"];
    for (int i = 0; i < 10; ++i) {
      const auto [rho, offsets] = random_character(g, rng);
      const double twisted = sum_terms(twist_by_character(base.terms, CharacterLift(g, rho, offsets)));
      twist = std::max(twist, distance_to_integer(twisted - base.value));
      if ((distance_to_integer(twisted) < tol["integer"]) != vanishes) ++flips;
    }
  }
  rows.push_back(ReportRow::residual("twisting changes the pairing by integers", tag, twist, tol["twist"]));
  rows.push_back(ReportRow::make("twisting never changes the verdict (flips)", tag, 0.0, flips, 0.0));
  return rows;
}

/// Torus-valued representation: images exp(s_k a_3).
inline std::vector<GroupElement> torus_representation(const std::array<double, 4>& s) {
  std::vector<GroupElement> im;
  for (double x : s) im.push_back(exp_to_group(a3(), x, Group::PU2));
  for (double x : s) im.push_back(exp_to_group(a3(), -x, Group::PU2));
  return im;
}

/// a_1 -> exp(pi/2 a_1), b_1 -> exp(pi/2 a_2), a_2 = b_2 -> identity: the commutator
/// of two quarter turns about orthogonal axes is far from the identity.
inline std::vector<GroupElement> noncommuting_representation() {
  const auto x = exp_to_group(a1(), kPi / 2.0, Group::PU2), y = exp_to_group(a2(), kPi / 2.0, Group::PU2);
  const auto e = GroupElement::identity(Group::PU2);
  return {x, y, e, e, x.inverse(), y.inverse(), e, e};
}

inline Rows flat(const Tolerances& tol, std::mt19937_64& rng) {
  const std::string tag = "fuchsian-descent";
  Rows rows;
  std::uniform_real_distribution<double> u(-kPi, kPi);
  double worst = 0.0;
  for (int i = 0; i < 10; ++i) {
    const auto c = verify_surface_group_rep(torus_representation({u(rng), u(rng), u(rng), u(rng)}), tol["flat"]);
    worst = std::max(worst, std::max(c.residual, c.inverse_residual));
  }
  rows.push_back(ReportRow::residual("torus-valued representations satisfy the relator", tag, worst, tol["flat"]));
  const auto bad = verify_surface_group_rep(noncommuting_representation(), tol["flat"]);
  rows.push_back(ReportRow::make("non-commuting counterexample fails (residual)", tag, tol["flat_fail"], bad.residual,
                                 0.0, Relation::above));
  return rows;
}

inline Rows foliation(const std::vector<double>& t_values, const Tolerances& tol, Json* data = nullptr) {
  const std::string tag = "umbilic-foliation";
  Rows rows;
  for (const auto& c : cylinder_checks(t_values)) {
    const std::string st = ", t=" + fmt(c.t);
    if (c.t == 0.0) rows.push_back(ReportRow::residual("H_0 is totally geodesic", tag, c.shape_norm, tol["shape"]));
    rows.push_back(ReportRow::residual("H_t is umbilic" + st, tag, c.umbilic_spread, tol["shape"]));
    rows.push_back(ReportRow::residual("shape operator is symmetric" + st, tag, c.symmetry_residual, tol["shape"]));
    rows.push_back(ReportRow::make("|principal curvature| equals |tanh t|" + st, tag, std::abs(std::tanh(c.t)),
                                   std::abs(c.eigenvalue), tol["eigenvalue"]));
    rows.push_back(ReportRow::residual("principal curvature is constant on the leaf" + st, tag,
                                       c.eigenvalue_variation, tol["shape"]));
    rows.push_back(ReportRow::residual("t -> f^t(x) follows geodesics" + st, tag, c.geodesic_error, tol["geodesic"]));
    const auto big = compare_restricted_connection(c.t, 0.05);
    const auto small = compare_restricted_connection(c.t, 0.025);
    rows.push_back(ReportRow::make("holonomy a3 coefficient equals 1 + sinh^2 t" + st, tag, big.formula[2],
                                   big.holonomy[2], tol["holonomy_rel"], Relation::relative));
    const double e1 = std::abs(big.holonomy[2] - big.formula[2]), e2 = std::abs(small.holonomy[2] - small.formula[2]);
    if (e1 > 1e-9) {
      rows.push_back(ReportRow::make("holonomy error shrinks quadratically (ratio at r=0.05/0.025)" + st, tag,
                                     tol["convergence_min"], e1 / e2, 0.0, Relation::above));
    }
    if (data) {
      (*data)["foliation"].push_back({{"t", c.t},
                                      {"principal_curvature", c.eigenvalue},
                                      {"umbilic_spread", c.umbilic_spread},
                                      {"geodesic_error", c.geodesic_error},
                                      {"holonomy_a3_pushed_frame", big.holonomy[2]},
                                      {"holonomy_a3_induced_metric", big.induced_a3},
                                      {"holonomy_a1", big.holonomy[0]},
                                      {"holonomy_a2", big.holonomy[1]},
                                      {"formula_a3", big.formula[2]},
                                      {"loop_radius", big.loop_radius},
                                      {"relative_error", big.relative_error},
                                      {"relative_error_half_radius", small.relative_error}});
    }
  }
  return rows;
}

inline Json moduli_json(const ModuliDescription& m) {
  Json j{{"target", to_string(m.target)},
         {"discrete", {{"index_set", to_string(m.discrete)}, {"mu", "0"}}}};
  if (m.half_line) {
    j["half_line"] = {{"k", m.half_line->k}, {"parameter", "r"}, {"mu", "r mu_0"}, {"range", "[0, inf)"},
                      {"r_min", m.half_line->r_min}};
  } else {
    j["half_line"] = nullptr;
  }
  return j;
}

inline Rows moduli(TargetGroup g, const Tolerances& tol, Json* data = nullptr) {
  const std::string tag = "invariant-connections";
  Rows rows = weight_rows(g, tol);
  const ModuliDescription m = classify_moduli(g);
  if (g == TargetGroup::PU2) {
    for (double r : {0.0, 0.5, 1.0, 2.0}) {
      rows.push_back(ReportRow::make("curvature a3 coefficient on M_1, r=" + fmt(r), tag, 1.0 + r * r,
                                     curvature_phi(InvariantPair::pu2_family(r), b1(), b2())[2],
                                     tol["curvature_exact"]));
    }
  }
  if (data) (*data)["moduli"].push_back(moduli_json(m));
  return rows;
}

}  // namespace suite

// ---------------------------------------------------------------------------

inline std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

/// Default report location: $LHC_REPORT_DIR/lhc-<command>.json, else the working directory.
inline std::string default_output_path(Command c) {
  const std::string name = std::string("lhc-") + to_string(c) + ".json";
  if (const char* dir = std::getenv("LHC_REPORT_DIR"); dir && *dir) {
    return (std::filesystem::path(dir) / name).string();
  }
  return name;
}

inline const std::vector<std::string>& verify_suites() {
  static const std::vector<std::string> s{"all",        "lie",     "hyperbolic", "connections",
                                          "extension", "descent", "flat",       "foliation"};
  return s;
}

/// Runs the configured command, writes the report, and maps the outcome to an exit status.
inline RunResult run(const RunConfig& cfg) {
  RunResult res;
  ReportDocument& doc = res.report;
  doc.command = to_string(cfg.command);
  doc.arguments = cfg.arguments;
  doc.metadata.timestamp = utc_timestamp();
  doc.metadata.seed = cfg.seed;
  std::mt19937_64 rng(cfg.seed);
  const Tolerances& tol = cfg.tolerances;

  auto append = [&](const suite::Rows& r) { doc.rows.insert(doc.rows.end(), r.begin(), r.end()); };

  try {
    if (cfg.samples < 3) throw UsageError("--samples must be at least 3");
    auto group = [&]() -> FuchsianGroup {
      if (cfg.generators_path) {
        FuchsianGroup g = load_generators(*cfg.generators_path);
        if (g.genus() != cfg.genus) throw UsageError("--genus does not match the generator file");
        return g;
      }
      if (cfg.genus != 2) throw UsageError("only genus 2 has a built-in group; pass --generators for other genera");
      return octagon_group();
    };
    const auto samples = default_samples(cfg.samples);

    switch (cfg.command) {
      case Command::moduli: {
        std::vector<TargetGroup> gs;
        if (cfg.group) gs.push_back(*cfg.group);
        else gs = {TargetGroup::S1, TargetGroup::SU2, TargetGroup::PU2};
        doc.data["moduli"] = Json::array();
        for (TargetGroup g : gs) append(suite::moduli(g, tol, &doc.data));
        break;
      }
      case Command::verify: {
        const auto& names = verify_suites();
        if (std::find(names.begin(), names.end(), cfg.suite) == names.end()) {
          throw UsageError("unknown suite '" + cfg.suite + "'");
        }
        const bool all = cfg.suite == "all";
        if (all || cfg.suite == "lie") append(suite::lie_core(tol, rng));
        if (all || cfg.suite == "hyperbolic") append(suite::hyperbolic(tol, rng));
        if (all || cfg.suite == "connections") append(suite::connections(tol, rng));
        if (all || cfg.suite == "extension") append(suite::extension(tol, rng));
        if (all || cfg.suite == "descent") {
          const FuchsianGroup g = group();
          append(suite::descent(g, samples, tol, rng));
          append(suite::gauss_bonnet(g, {1.0, -0.5, 1.0 / 3.0}, tol));
        }
        if (all || cfg.suite == "flat") append(suite::flat(tol, rng));
        if (all || cfg.suite == "foliation") append(suite::foliation({0.0, 0.5, 1.0, 1.5}, tol));
        break;
      }
      case Command::descend: {
        if (cfg.chern.has_value() == cfg.a.has_value()) throw UsageError("descend needs exactly one of --chern or --a");
        const FuchsianGroup g = group();
        const double a = cfg.chern ? a_from_chern(*cfg.chern, g.genus()) : *cfg.a;
        doc.data["descent"] = Json::array();
        append(suite::descent_for(a, g, samples, tol, &doc.data));
        break;
      }
      case Command::foliation: {
        const std::vector<double> ts = cfg.t_values.empty() ? std::vector<double>{0.0, 0.5, 1.0, 1.5} : cfg.t_values;
        doc.data["foliation"] = Json::array();
        append(suite::foliation(ts, tol, &doc.data));
        break;
      }
      case Command::gauss_bonnet: {
        const FuchsianGroup g = group();
        const std::vector<double> as = cfg.a ? std::vector<double>{*cfg.a} : std::vector<double>{1.0, -0.5, 1.0 / 3.0};
        doc.data["gauss_bonnet"] = Json::array();
        append(suite::gauss_bonnet(g, as, tol, &doc.data));
        break;
      }
    }
    res.exit_code = doc.pass() ? kExitPass : kExitFail;
  } catch (const UsageError& e) {
    res.exit_code = kExitUsage;
    res.message = e.what();
    return res;
  } catch (const DomainError& e) {
    res.exit_code = kExitUsage;
    res.message = e.what();
    return res;
  } catch (const std::exception& e) {
    res.exit_code = kExitInternal;
    res.message = e.what();
    doc.data["error"] = e.what();
  }

  const std::string path = cfg.output_path.empty() ? default_output_path(cfg.command) : cfg.output_path;
  try {
    emit_report(doc, path);
    res.written_to = path;
  } catch (const ReportWriteError& e) {
    res.exit_code = kExitWrite;
    res.message = e.what();
  }
  return res;
}

}  // namespace lhc
