#pragma once

// Genus-2 Fuchsian group, the primitive sigma_a of the Chern form, potentials
// psi_gamma, the Cech cocycle lambda and its pairing with the fundamental class.

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <Eigen/LU>

#include "lhc/errors.hpp"
#include "lhc/hyperbolic.hpp"
#include "lhc/lie.hpp"
#include "lhc/quadrature.hpp"

namespace lhc {

/// Signed 1-based generator indices; -j stands for the inverse of generator j.
using Word = std::vector<int>;

/// Sign relating the pairing to the Chern integral: pairing = kPairingSign * (-chern).
/// Fixed once at a = -1/2, where the Chern integral is +1 and the pairing is -1.
inline constexpr double kPairingSign = 1.0;

class FuchsianGroup {
 public:
  static constexpr double kRelatorTol = 1e-9;

  /// `polygon` is an optional fundamental polygon (vertices in H^2, any
  /// orientation) and `center` a point from which it is star-shaped.
  FuchsianGroup(std::vector<GroupElement> generators, Word relator, int genus, std::vector<PointH2> polygon = {},
                PointH2 center = basepoint_i())
      : generators_(std::move(generators)),
        relator_(std::move(relator)),
        genus_(genus),
        polygon_(std::move(polygon)),
        center_(center) {
    if (generators_.empty()) throw DomainError("FuchsianGroup needs generators");
    for (auto& g : generators_) {
      if (algebra_of(g.group()) != Algebra::sl2r) throw TagMismatch("Fuchsian generators must be real");
      g = g.as(Group::PSL2R);
    }
    const int n = static_cast<int>(generators_.size());
    for (int letter : relator_) {
      if (letter == 0 || std::abs(letter) > n) throw DomainError("relator letter out of range");
    }
    if (genus_ < 1) throw DomainError("genus must be positive");
    // Pair up generators that are inverse to each other.
    inverse_of_.assign(static_cast<std::size_t>(n), -1);
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (inverse_of_[i] < 0 && inverse_of_[j] < 0 &&
            (generators_[i] * generators_[j]).distance_to_identity() < kRelatorTol) {
          inverse_of_[i] = j;
          inverse_of_[j] = i;
        }
      }
    }
    for (int i = 0; i < n; ++i) {
      if (inverse_of_[i] < 0 || i < inverse_of_[i]) free_.push_back(i);
    }
    std::vector<int> exponent(free_.size(), 0);
    for (int letter : relator_) {
      const auto [f, s] = free_letter(letter);
      exponent[static_cast<std::size_t>(f)] += s;
    }
    if (std::any_of(exponent.begin(), exponent.end(), [](int e) { return e != 0; })) {
      throw DomainError("relator must have zero exponent sum in every generator");
    }
  }

  const std::vector<GroupElement>& generators() const { return generators_; }
  const Word& relator() const { return relator_; }
  int genus() const { return genus_; }
  const std::vector<PointH2>& polygon() const { return polygon_; }
  const PointH2& center() const { return center_; }

  /// Number of generators up to inversion.
  int free_rank() const { return static_cast<int>(free_.size()); }

  /// Index into the free generators and sign of a word letter.
  std::pair<int, int> free_letter(int letter) const {
    const int j = std::abs(letter) - 1;
    const int sign = letter > 0 ? 1 : -1;
    const auto it = std::find(free_.begin(), free_.end(), j);
    if (it != free_.end()) return {static_cast<int>(it - free_.begin()), sign};
    const int partner = inverse_of_[static_cast<std::size_t>(j)];
    const auto jt = std::find(free_.begin(), free_.end(), partner);
    return {static_cast<int>(jt - free_.begin()), -sign};
  }

  /// Generator index (1-based) of the k-th free generator.
  int free_generator(int k) const { return free_.at(static_cast<std::size_t>(k)) + 1; }

  GroupElement letter(int l) const {
    const GroupElement& g = generators_.at(static_cast<std::size_t>(std::abs(l) - 1));
    return l > 0 ? g : g.inverse();
  }

  GroupElement element(const Word& w) const {
    GroupElement out = GroupElement::identity(Group::PSL2R);
    for (int l : w) out = out * letter(l);
    return out;
  }

  double relator_residual() const { return element(relator_).distance_to_identity(); }

  /// Minimum |trace| over the generators.
  double min_abs_trace() const {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& g : generators_) m = std::min(m, std::abs(g.trace().real()));
    return m;
  }

  /// Raises ConstructionFailure (built-in groups) or DomainError (user input)
  /// if the relator does not hold or a generator is not hyperbolic.
  void validate(bool built_in) const {
    const double res = relator_residual();
    std::string problem;
    if (!(res <= kRelatorTol)) problem = "relator residual " + std::to_string(res) + " exceeds tolerance";
    else if (!(min_abs_trace() > 2.0)) problem = "a generator is not hyperbolic";
    if (problem.empty()) return;
    if (built_in) throw ConstructionFailure(problem);
    throw DomainError(problem);
  }

 private:
  std::vector<GroupElement> generators_;
  Word relator_;
  int genus_;
  std::vector<PointH2> polygon_;
  PointH2 center_;
  std::vector<int> inverse_of_;
  std::vector<int> free_;
};

// ---------------------------------------------------------------------------
// The regular octagon group.

namespace detail {

inline CMat2 disk_rotation(double theta) {
  CMat2 r;
  r << std::polar(1.0, 0.5 * theta), 0.0, 0.0, std::polar(1.0, -0.5 * theta);
  return r;
}

inline CMat2 disk_translation(double d) {
  CMat2 t;
  t << std::cosh(0.5 * d), std::sinh(0.5 * d), std::sinh(0.5 * d), std::cosh(0.5 * d);
  return t;
}

/// Half-plane matrix of a disk isometry, via w = (z - i)/(z + i).
inline GroupElement disk_to_half_plane(const CMat2& m) {
  CMat2 c, ci;
  c << 1.0, -kI, 1.0, kI;
  ci = c.inverse();
  const CMat2 h = ci * m * c;
  if (h.imag().cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, h.cwiseAbs().maxCoeff())) {
    // An SU(1,1) matrix can come back as i times a real one; fix the phase.
    const Complex ph = std::sqrt(h.determinant());
    return {Group::PSL2R, Mat2((h / ph).real())};
  }
  return {Group::PSL2R, Mat2(h.real())};
}

inline Complex disk_to_half_plane_point(Complex w) { return kI * (1.0 + w) / (1.0 - w); }

}  // namespace detail

/// Side pairings of the regular octagon with vertex angle pi/4, centered at i.
/// Generators: a_1, b_1, a_2, b_2 followed by their inverses; relator [a_1,b_1][a_2,b_2].
inline FuchsianGroup octagon_group() {
  const double rho = std::acosh(1.0 + std::sqrt(2.0));  // inradius
  const double circumradius = std::acosh(3.0 + 2.0 * std::sqrt(2.0));
  // side j is centered at angle j pi/4; g_j maps side partner(j) onto side j
  const int partner[8] = {2, 3, 0, 1, 6, 7, 4, 5};
  auto side_pairing = [&](int j) {
    const int i = partner[j];
    const CMat2 m = detail::disk_rotation(j * kPi / 4.0) * detail::disk_translation(2.0 * rho) *
                    detail::disk_rotation(kPi) * detail::disk_rotation(-i * kPi / 4.0);
    return detail::disk_to_half_plane(m);
  };
  const int order[8] = {0, 3, 4, 7, 2, 1, 6, 5};
  std::vector<GroupElement> gens;
  for (int j : order) gens.push_back(side_pairing(j));
  std::vector<PointH2> polygon;
  const double r = std::tanh(0.5 * circumradius);
  for (int k = 0; k < 8; ++k) {
    polygon.emplace_back(detail::disk_to_half_plane_point(std::polar(r, (2 * k + 1) * kPi / 8.0)));
  }
  FuchsianGroup g(std::move(gens), Word{1, 2, -1, -2, 3, 4, -3, -4}, 2, std::move(polygon), basepoint_i());
  g.validate(true);
  return g;
}

/// Area of a geodesic polygon from its angle defect (angles at the vertices).
inline double octagon_area() { return 6.0 * kPi - 8.0 * (kPi / 4.0); }

// ---------------------------------------------------------------------------
// Geodesic segments and line integrals.

/// The geodesic from p to q, parametrized by s in [0, 1].
class GeodesicSegment {
 public:
  GeodesicSegment(const PointH2& p, const PointH2& q) : x0_(p.x()), y0_(p.y()) {
    const Complex qp = (q.z() - x0_) / y0_;
    const Complex w = (qp - kI) / (qp + kI);
    length_ = 2.0 * std::atanh(std::min(std::abs(w), 1.0 - 1e-16));
    const double t = std::abs(w) > 0.0 ? std::arg(w) : 0.0;
    c_ = -std::sin(0.5 * t);
    d_ = std::cos(0.5 * t);
    a_ = d_;
    b_ = -c_;
  }

  double length() const { return length_; }

  Complex point(double s) const {
    const Complex zeta = kI * std::exp(s * length_);
    return y0_ * (a_ * zeta + b_) / (c_ * zeta + d_) + x0_;
  }

  Complex velocity(double s) const {
    const Complex zeta = kI * std::exp(s * length_);
    const Complex den = c_ * zeta + d_;
    return y0_ * zeta * length_ / (den * den);
  }

 private:
  double x0_, y0_;
  double length_ = 0.0;
  double a_ = 1.0, b_ = 0.0, c_ = 0.0, d_ = 1.0;
};

/// Integral of a 1-form f(z, v) along the geodesic from p to q.
template <class Form>
double line_integral(Form&& f, const PointH2& p, const PointH2& q, const QuadratureOptions& opt = {}) {
  const GeodesicSegment seg(p, q);
  if (seg.length() == 0.0) return 0.0;
  return integrate([&](double s) { return f(PointH2(seg.point(s)), seg.velocity(s)); }, 0.0, 1.0, opt);
}

/// nu_gamma = gamma^* sigma_a - sigma_a.
inline double nu_form(double a, const GroupElement& gamma, const PointH2& z, Complex v) {
  return lc_connection_form_h2(a, mobius_act(gamma, z), mobius_derivative(gamma, z.z()) * v) -
         lc_connection_form_h2(a, z, v);
}

/// psi_gamma(x) = integral of nu_gamma from the basepoint to x along the geodesic.
inline double psi_potential(double a, const GroupElement& gamma, const PointH2& x,
                            const PointH2& basepoint = basepoint_i(), const QuadratureOptions& opt = {}) {
  return line_integral([&](const PointH2& z, Complex v) { return nu_form(a, gamma, z, v); }, basepoint, x, opt);
}

// ---------------------------------------------------------------------------
// The Cech cocycle.

struct LambdaValue {
  double mean = 0.0;
  double max_deviation = 0.0;
};

struct DescentOptions {
  /// Maximum spread of lambda across sample points.
  double constancy_tol = 1e-6;
  /// Distance to Z below which the obstruction counts as vanishing.
  double integer_tol = 1e-5;
  QuadratureOptions quadrature{};
  PointH2 basepoint = basepoint_i();
};

/// n deterministic sample points: i and points on the hyperbolic circle of radius ~0.85 around it.
inline std::vector<PointH2> default_samples(int n) {
  if (n < 3) throw DomainError("at least 3 sample points are needed");
  std::vector<PointH2> out{basepoint_i()};
  for (int k = 0; k + 1 < n; ++k) {
    const Complex w = std::polar(0.4, kTwoPi * k / (n - 1) + 0.3);
    out.emplace_back(detail::disk_to_half_plane_point(w));
  }
  return out;
}

/// lambda_{g1,g2}(x) = psi_{g1}(g2 x) - psi_{g1 g2}(x) + psi_{g2}(x) at each sample; mean and spread.
inline LambdaValue cech_lambda(double a, const GroupElement& g1, const GroupElement& g2,
                               const std::vector<PointH2>& samples, const DescentOptions& opt = {}) {
  if (samples.size() < 3) throw DomainError("cech_lambda needs at least 3 sample points");
  const GroupElement g12 = g1 * g2;
  std::vector<double> vals;
  for (const auto& x : samples) {
    vals.push_back(psi_potential(a, g1, mobius_act(g2, x), opt.basepoint, opt.quadrature) -
                   psi_potential(a, g12, x, opt.basepoint, opt.quadrature) +
                   psi_potential(a, g2, x, opt.basepoint, opt.quadrature));
  }
  LambdaValue out;
  for (double v : vals) out.mean += v;
  out.mean /= static_cast<double>(vals.size());
  for (double v : vals) out.max_deviation = std::max(out.max_deviation, std::abs(v - out.mean));
  if (!(out.max_deviation < opt.constancy_tol)) {
    throw NonConstancy("lambda varies by " + std::to_string(out.max_deviation) + " across samples");
  }
  return out;
}

/// One term sign * [left | g] of the fundamental 2-cycle, g a single generator letter.
struct FoxTerm {
  Word left;
  int letter = 1;
  int sign = 1;
  double lambda = 0.0;
  double deviation = 0.0;
};

/// The Fox 2-cycle of the relator r = s_1 ... s_n in the bar resolution:
/// +[w_{k-1} | s] for a positive letter s_k = s, -[w_k | s] for s_k = s^{-1},
/// where w_k = s_1 ... s_k. Its boundary vanishes because r has zero exponent sums.
inline std::vector<FoxTerm> fundamental_cycle(const FuchsianGroup& g) {
  std::vector<FoxTerm> out;
  Word prefix;
  for (int l : g.relator()) {
    if (l > 0) {
      out.push_back({prefix, l, +1, 0.0, 0.0});
      prefix.push_back(l);
    } else {
      prefix.push_back(l);
      out.push_back({prefix, -l, -1, 0.0, 0.0});
    }
  }
  return out;
}

/// Formal boundary of a bar 2-chain, d[x|y] = [y] - [xy] + [x], with group elements
/// merged numerically and the identity dropped. Returns the surviving coefficients.
inline std::vector<std::pair<GroupElement, int>> chain_boundary(const FuchsianGroup& g,
                                                                const std::vector<FoxTerm>& chain) {
  std::vector<std::pair<GroupElement, int>> acc;
  auto add = [&](const GroupElement& e, int c) {
    if (e.distance_to_identity() < 1e-8) return;
    for (auto& [x, k] : acc) {
      if (x.distance(e) < 1e-8) {
        k += c;
        return;
      }
    }
    acc.emplace_back(e, c);
  };
  for (const auto& t : chain) {
    const GroupElement x = g.element(t.left), y = g.letter(t.letter);
    add(y, t.sign);
    add(x * y, -t.sign);
    add(x, t.sign);
  }
  std::erase_if(acc, [](const auto& p) { return p.second == 0; });
  return acc;
}

struct PairingResult {
  double value = 0.0;
  double max_deviation = 0.0;
  std::vector<FoxTerm> terms;
};

inline double distance_to_integer(double x) { return std::abs(x - std::round(x)); }

inline double sum_terms(const std::vector<FoxTerm>& terms) {
  double s = 0.0;
  for (const auto& t : terms) s += t.sign * t.lambda;
  return s;
}

/// lambda evaluated on the fundamental cycle; an integer iff the obstruction vanishes.
inline PairingResult pair_fundamental_class(double a, const FuchsianGroup& g, const std::vector<PointH2>& samples,
                                            const DescentOptions& opt = {}) {
  PairingResult out;
  out.terms = fundamental_cycle(g);
  for (auto& t : out.terms) {
    const LambdaValue v = cech_lambda(a, g.element(t.left), g.letter(t.letter), samples, opt);
    t.lambda = v.mean;
    t.deviation = v.max_deviation;
    out.max_deviation = std::max(out.max_deviation, v.max_deviation);
  }
  out.value = sum_terms(out.terms);
  return out;
}

inline PairingResult pair_fundamental_class(double a, const FuchsianGroup& g) {
  return pair_fundamental_class(a, g, default_samples(3));
}

// ---------------------------------------------------------------------------
// Gauss-Bonnet.

struct AreaOptions {
  double rel_tol = 1e-6;
};

namespace detail {

struct DiskPolygon {
  std::vector<Complex> vertices;  // counterclockwise, around the origin
};

inline DiskPolygon to_disk(const FuchsianGroup& g) {
  if (g.polygon().size() < 3) throw DomainError("the group carries no fundamental polygon");
  const Complex p = g.center().z();
  DiskPolygon out;
  for (const auto& v : g.polygon()) out.vertices.push_back((v.z() - p) / (v.z() - std::conj(p)));
  double signed_area = 0.0;
  const std::size_t n = out.vertices.size();
  for (std::size_t k = 0; k < n; ++k) {
    const Complex u = out.vertices[k], w = out.vertices[(k + 1) % n];
    signed_area += u.real() * w.imag() - w.real() * u.imag();
  }
  if (signed_area < 0.0) std::reverse(out.vertices.begin(), out.vertices.end());
  return out;
}

/// Center of the circle orthogonal to the unit circle through u and w.
inline Complex orthogonal_circle_center(Complex u, Complex w) {
  Eigen::Matrix2d m;
  m << 2.0 * u.real(), 2.0 * u.imag(), 2.0 * w.real(), 2.0 * w.imag();
  const Eigen::Vector2d rhs(1.0 + std::norm(u), 1.0 + std::norm(w));
  if (std::abs(m.determinant()) < 1e-14) throw DomainError("polygon side passes through the center");
  const Eigen::Vector2d c = m.partialPivLu().solve(rhs);
  return {c(0), c(1)};
}

}  // namespace detail

/// Integral of the Chern form of A_{chi_a,0} (a times that of A_LC) over the
/// fundamental polygon, in polar coordinates of the disk model centered at the
/// polygon's center.
inline double gauss_bonnet_chern(double a, const FuchsianGroup& g, const AreaOptions& opt = {}) {
  const detail::DiskPolygon poly = detail::to_disk(g);
  const Complex p = g.center().z();
  const double yp = p.imag();
  // chern density in half-plane coordinates times |dz/dw|^2 = 4 (Im p)^2 / |1 - w|^4
  auto density = [&](Complex w) {
    const Complex z = (p - w * std::conj(p)) / (1.0 - w);
    const double jac = 4.0 * yp * yp / std::pow(std::abs(1.0 - w), 4);
    return chern_density_h2(1.0, PointH2(z)) * jac;
  };
  const double scale = kTwoPi;  // |integral| of the unit-a density is O(area / 2pi)
  QuadratureOptions inner{opt.rel_tol * 1e-2, 1e-10, 15};
  QuadratureOptions outer{opt.rel_tol * scale * 1e-1, 1e-10, 15};
  const std::size_t n = poly.vertices.size();
  double total = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const Complex u = poly.vertices[k], w = poly.vertices[(k + 1) % n];
    const Complex c = detail::orthogonal_circle_center(u, w);
    double phi0 = std::arg(u), phi1 = std::arg(w);
    while (phi1 <= phi0) phi1 += kTwoPi;
    auto exit_radius = [&](double phi) {
      const double proj = (c * std::polar(1.0, -phi)).real();
      return proj - std::sqrt(std::max(0.0, proj * proj - 1.0));
    };
    total += integrate(
        [&](double phi) {
          const Complex dir = std::polar(1.0, phi);
          return integrate([&](double r) { return density(r * dir) * r; }, 0.0, exit_radius(phi), inner);
        },
        phi0, phi1, outer);
  }
  return a * total;
}

/// The same integral via Stokes: the integral of sigma_a around the polygon boundary.
inline double gauss_bonnet_stokes(double a, const FuchsianGroup& g, const QuadratureOptions& opt = {}) {
  const detail::DiskPolygon poly = detail::to_disk(g);
  const Complex p = g.center().z();
  const std::size_t n = poly.vertices.size();
  double total = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    auto to_h2 = [&](Complex w) { return PointH2((p - w * std::conj(p)) / (1.0 - w)); };
    total += line_integral([&](const PointH2& z, Complex v) { return lc_connection_form_h2(a, z, v); },
                           to_h2(poly.vertices[k]), to_h2(poly.vertices[(k + 1) % n]), opt);
  }
  return total;
}

/// c_1 target 2a(1 - g).
inline double chern_target(double a, int genus) { return 2.0 * a * (1.0 - genus); }

/// a = c / (2(1 - g)).
inline double a_from_chern(int c, int genus) {
  if (genus == 1) throw DomainError("genus 1 has no hyperbolic structure");
  return static_cast<double>(c) / (2.0 * (1.0 - genus));
}

// ---------------------------------------------------------------------------
// Twisting by characters.

/// Images of the free generators in S^1.
struct CharacterS1 {
  std::vector<Complex> values;
};

/// Real lifts of a character: l(word) = frac(sum of signed offsets); not a homomorphism,
/// so d l is an integer-valued coboundary.
class CharacterLift {
 public:
  CharacterLift(const FuchsianGroup& g, const CharacterS1& rho, std::vector<double> offsets)
      : group_(&g), offsets_(std::move(offsets)) {
    if (static_cast<int>(offsets_.size()) != g.free_rank() || rho.values.size() != offsets_.size()) {
      throw DomainError("one character value and one offset per free generator are required");
    }
    for (std::size_t k = 0; k < offsets_.size(); ++k) {
      if (std::abs(std::polar(1.0, kTwoPi * offsets_[k]) - rho.values[k]) > 1e-9) {
        throw DomainError("offset is not a lift of the character value");
      }
    }
  }

  double operator()(const Word& w) const {
    double s = 0.0;
    for (int l : w) {
      const auto [f, sign] = group_->free_letter(l);
      s += sign * offsets_[static_cast<std::size_t>(f)];
    }
    return s - std::floor(s);
  }

 private:
  const FuchsianGroup* group_;
  std::vector<double> offsets_;
};

/// lambda' = lambda + l(u) + l(v) - l(uv) on each term of the cycle.
inline std::vector<FoxTerm> twist_by_character(const std::vector<FoxTerm>& terms, const CharacterLift& lift) {
  std::vector<FoxTerm> out = terms;
  for (auto& t : out) {
    Word uv = t.left;
    uv.push_back(t.letter);
    t.lambda += lift(t.left) + lift(Word{t.letter}) - lift(uv);
  }
  return out;
}

/// A random character and lifts with offsets in [-3, 3).
inline std::pair<CharacterS1, std::vector<double>> random_character(const FuchsianGroup& g, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  CharacterS1 rho;
  std::vector<double> offsets;
  for (int k = 0; k < g.free_rank(); ++k) {
    offsets.push_back(u(rng));
    rho.values.push_back(std::polar(1.0, kTwoPi * offsets.back()));
  }
  return {rho, offsets};
}

/// Random word of length in [1, max_len] over all generators.
inline Word random_word(const FuchsianGroup& g, std::mt19937_64& rng, int max_len) {
  std::uniform_int_distribution<int> len(1, max_len);
  std::uniform_int_distribution<int> gen(1, static_cast<int>(g.generators().size()));
  std::bernoulli_distribution inv(0.5);
  Word w;
  const int n = len(rng);
  for (int i = 0; i < n; ++i) w.push_back(inv(rng) ? -gen(rng) : gen(rng));
  return w;
}

// ---------------------------------------------------------------------------
// Descent report.

struct LambdaEntry {
  int i = 0, j = 0;  // 1-based generator indices
  double value = 0.0;
  double deviation = 0.0;
};

struct DescentReport {
  double a = 0.0;
  double chern_target = 0.0;
  std::vector<LambdaEntry> lambda_values;
  std::vector<FoxTerm> cycle;
  double pairing = 0.0;
  double distance_to_integer = 0.0;
  bool obstruction_vanishes = false;
  double constancy_residual = 0.0;
};

inline DescentReport descend(double a, const FuchsianGroup& g, const std::vector<PointH2>& samples,
                             const DescentOptions& opt = {}) {
  DescentReport r;
  r.a = a;
  r.chern_target = chern_target(a, g.genus());
  for (int i = 0; i < g.free_rank(); ++i) {
    for (int j = 0; j < g.free_rank(); ++j) {
      const int gi = g.free_generator(i), gj = g.free_generator(j);
      const LambdaValue v = cech_lambda(a, g.letter(gi), g.letter(gj), samples, opt);
      r.lambda_values.push_back({gi, gj, v.mean, v.max_deviation});
      r.constancy_residual = std::max(r.constancy_residual, v.max_deviation);
    }
  }
  const PairingResult p = pair_fundamental_class(a, g, samples, opt);
  r.cycle = p.terms;
  r.pairing = p.value;
  r.constancy_residual = std::max(r.constancy_residual, p.max_deviation);
  r.distance_to_integer = distance_to_integer(p.value);
  r.obstruction_vanishes = r.distance_to_integer < opt.integer_tol;
  return r;
}

// ---------------------------------------------------------------------------
// Flat PU(2) connections.

struct SurfaceRepCheck {
  bool pass = false;
  /// Distance of the relator image to the identity in PU(2).
  double residual = 0.0;
  /// Largest distance between an image and the inverse of its partner's image.
  double inverse_residual = 0.0;
};

/// Substitutes the images of the 8 generators into the genus-2 relator
/// [a_1,b_1][a_2,b_2], with generators 5..8 the inverses of 1..4.
inline SurfaceRepCheck verify_surface_group_rep(const std::vector<GroupElement>& images, double tol = 1e-9) {
  if (images.size() != 8) throw DomainError("verify_surface_group_rep expects 8 images");
  std::vector<GroupElement> im;
  for (const auto& g : images) {
    if (algebra_of(g.group()) != Algebra::su2) throw TagMismatch("images must lie in PU2");
    im.push_back(g.as(Group::PU2));
  }
  SurfaceRepCheck out;
  for (int k = 0; k < 4; ++k) {
    out.inverse_residual = std::max(out.inverse_residual, (im[k] * im[k + 4]).distance_to_identity());
  }
  const Word relator{1, 2, -1, -2, 3, 4, -3, -4};
  GroupElement prod = GroupElement::identity(Group::PU2);
  for (int l : relator) {
    const GroupElement& g = im[static_cast<std::size_t>(std::abs(l) - 1)];
    prod = prod * (l > 0 ? g : g.inverse());
  }
  out.residual = prod.distance_to_identity();
  out.pass = out.residual <= tol && out.inverse_residual <= tol;
  return out;
}

}  // namespace lhc
