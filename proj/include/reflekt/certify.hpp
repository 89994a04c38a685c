#ifndef REFLEKT_CERTIFY_HPP
#define REFLEKT_CERTIFY_HPP

#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "reflekt/jacobi.hpp"
#include "reflekt/lattice.hpp"

namespace reflekt {

enum class Verdict { uniruled, kodaira_zero, inconclusive };

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::uniruled:
      return "uniruled";
    case Verdict::kodaira_zero:
      return "kodaira-zero";
    default:
      return "inconclusive";
  }
}

/// Orbit descriptor of a rational quadratic divisor: either Humbert data
/// H_D(l) for polarization t, or orthogonal orbit data (norm, div), with a
/// multiplicity and the reflection flag used by classify().
struct DivisorDatum {
  enum class Kind { humbert, orbit };
  Kind kind = Kind::orbit;
  // humbert data
  Integer D = 0, l = 0, t = 0;
  // orbit data
  Rational norm = 0;
  Integer divisor = 0;
  Integer multiplicity = 1;
  std::optional<bool> reflective;  // sigma_v in Gamma (or -sigma_v), when computed

  std::string str() const {
    if (kind == Kind::humbert)
      return multiplicity.str() + "*H_" + D.str() + "(" + l.str() + ")";
    return multiplicity.str() + "*D_v(v^2=" + num(norm).str() + ", div=" + divisor.str() + ")";
  }
};

/// Humbert reflectivity test: the divisor H_D(l) of discriminant
/// D = l^2 - 4tn > 0 is reflective iff D divides gcd(4t, 2l). Returns the
/// accepted datum or nothing; D <= 0 is a domain error (not a divisor index).
inline std::optional<DivisorDatum> humbert_reflective(long t, long n, long l, const Integer& a) {
  if (a == 0) throw std::invalid_argument("humbert_reflective: zero multiplicity");
  long d = l * l - 4 * t * n;
  if (d <= 0) throw std::domain_error("humbert_reflective: D = l^2 - 4tn must be positive");
  Integer g = gcd(Integer(4 * t), Integer(2 * l));
  if (g % d != 0) return std::nullopt;
  DivisorDatum out;
  out.kind = DivisorDatum::Kind::humbert;
  out.D = d;
  out.l = l;
  out.t = t;
  out.multiplicity = a;
  return out;
}

/// The hyperbolic lattice U + <-2t> in basis (e, f, w), and the primitive
/// vector carrying the divisor of Fourier index (n, l): the dual vector
/// n e + f + (l/2t) w rescaled into the lattice.
struct OrbitVector {
  IntegerLattice l1;        // U + <-2t>
  std::vector<long> coords; // primitive, in basis (e, f, w)
  Rational norm;
  Integer divisor;
};

inline OrbitVector humbert_to_orbit(long t, long n, long l) {
  if (l * l - 4 * t * n <= 0) throw std::domain_error("humbert_to_orbit: D must be positive");
  IntegerLattice l1 = lat_direct_sum(lat_U(), lat_single(Integer(-2) * t));
  // v = n e + f + (l/2t) w; clear denominators and strip the content
  long den = 2 * t / std::gcd(std::labs(l), 2 * t);
  long a = n * den, b = den, c = l * den / (2 * t);
  long g = std::gcd(std::gcd(std::labs(a), b), std::labs(c));
  a /= g;
  b /= g;
  c /= g;
  LatticeVector v = make_vector(l1, std::vector<long>{a, b, c});
  return OrbitVector{std::move(l1), {a, b, c}, v.norm, v.divisor};
}

inline DivisorDatum orbit_datum(const OrbitVector& v, const Integer& mult) {
  DivisorDatum d;
  d.kind = DivisorDatum::Kind::orbit;
  d.norm = v.norm;
  d.divisor = v.divisor;
  d.multiplicity = mult;
  return d;
}

/// Borcherds lift weight of a weight-0 nearly holomorphic input: a(0,0)/2.
inline Integer borcherds_lift_weight(const JacobiForm& f) {
  if (f.weight != 0) throw std::invalid_argument("borcherds_lift_weight: input must have weight 0");
  Integer a00 = f.is_scalar_index() ? f.coeff(0, 0) : f.series.coeff_int(0, ExpVec::zero());
  if (a00 % 2 != 0) throw std::domain_error("borcherds_lift_weight: a(0,0) must be even");
  return a00 / 2;
}

struct Classification {
  bool reflective = false;
  bool strongly_reflective = false;
};

/// A divisor list is reflective iff every component carries a positive
/// reflection flag; strongly reflective iff additionally all multiplicities
/// are 1. The empty list is rejected: a holomorphic modular form has
/// nonempty divisor on these groups (Koecher principle, m > 0).
inline Classification classify(const std::vector<DivisorDatum>& divisors) {
  if (divisors.empty()) throw std::domain_error("classify: empty divisor list (m must be > 0)");
  Classification c;
  c.reflective = true;
  c.strongly_reflective = true;
  for (const auto& d : divisors) {
    if (!d.reflective.has_value()) throw std::invalid_argument("classify: missing reflection flag");
    if (!*d.reflective) c.reflective = false;
    if (d.multiplicity < 1) throw std::invalid_argument("classify: multiplicity must be >= 1");
    if (d.multiplicity != 1) c.strongly_reflective = false;
  }
  if (!c.reflective) c.strongly_reflective = false;
  return c;
}

/// Verdict of the numeric uniruledness criterion:
///   k > m*n                                  -> uniruled
///   strongly reflective, k = n, not cusp     -> uniruled (kappa = -infinity)
///   strongly reflective, k = n, cusp         -> kodaira-zero for ker(chi*det)
///   otherwise                                -> inconclusive
inline Verdict verdict(const Integer& k, int n, const Integer& m, bool cusp = false,
                       bool strongly_reflective = false) {
  if (n < 3) throw std::domain_error("verdict: dimension must be >= 3");
  if (k < 1 || m < 1) throw std::invalid_argument("verdict: k and m must be >= 1");
  if (strongly_reflective && m != 1)
    throw std::invalid_argument("verdict: strongly reflective forms have m = 1");
  if (k > m * n) return Verdict::uniruled;
  if (strongly_reflective && k == n) return cusp ? Verdict::kodaira_zero : Verdict::uniruled;
  return Verdict::inconclusive;
}

/// A certificate records what was mechanically checked and what is taken on
/// trust; it is a hypothesis audit, not a proof object.
struct Certificate {
  std::string lattice;
  std::string group;
  Integer weight = 0;
  int dimension = 0;
  std::vector<DivisorDatum> divisors;
  Integer max_multiplicity = 1;
  bool cusp = false;
  Verdict result = Verdict::inconclusive;
  std::vector<std::string> checked;
  std::vector<std::string> trusted;
};

inline Certificate make_certificate(std::string lattice, std::string group, const Integer& k,
                                    int n, std::vector<DivisorDatum> divisors, bool cusp,
                                    bool strongly_reflective) {
  Certificate c;
  c.lattice = std::move(lattice);
  c.group = std::move(group);
  c.weight = k;
  c.dimension = n;
  c.divisors = std::move(divisors);
  c.max_multiplicity = 0;
  for (const auto& d : c.divisors) c.max_multiplicity = std::max(c.max_multiplicity, d.multiplicity);
  c.cusp = cusp;
  c.result = verdict(k, n, c.max_multiplicity, cusp, strongly_reflective);
  return c;
}

/// End-to-end certification of the polarization-21 moduli space: build the
/// index-21 input form, extract its singular part, map to Humbert and orbit
/// divisor data, verify reflectivity and the reflection flags, and apply the
/// weight-vs-multiplicity criterion (12 > 3*3).
inline Certificate xi21_pipeline(long prec = 10) {
  const long t = 21;
  JacobiForm xi = build_xi021(prec);
  SingularPart sp = singular_part(xi);
  if (!sp.complete) throw std::runtime_error("xi21_pipeline: singular part not certified complete");

  IntegerLattice l21 = parse_lattice("2U+<-42>");
  std::vector<DivisorDatum> divisors;
  std::vector<std::string> checked;
  std::vector<std::string> trusted;
  checked.push_back("singular part complete at stored precision " + std::to_string(xi.series.prec()));

  bool any_unstable = false;
  for (const auto& sc : sp.coefficients) {
    long n = sc.n;
    long l = to_long(num(sc.l[0]), "xi21_pipeline");
    auto humbert = humbert_reflective(t, n, l, sc.a);
    if (!humbert)
      throw std::runtime_error("xi21_pipeline: singular index fails the Humbert divisor test");
    OrbitVector ov = humbert_to_orbit(t, n, l);

    // reflection flags computed in the full rank-5 lattice
    QVec coords(5, Rational(0));
    coords[2] = ov.coords[0];
    coords[3] = ov.coords[1];
    coords[4] = ov.coords[2];
    LatticeVector v = make_vector(l21, coords);
    Reflection refl = reflection(l21, v);
    if (!refl.integral)
      throw std::runtime_error("xi21_pipeline: reflection not integral on the lattice");
    if (!refl.stable) any_unstable = true;

    DivisorDatum d = *humbert;
    d.norm = ov.norm;
    d.divisor = ov.divisor;
    d.reflective = true;  // integral reflection in a negative-norm vector lies in O+
    divisors.push_back(d);
    checked.push_back("divisor " + d.str() + ": D | gcd(4t, 2l); orbit (v^2=" + num(d.norm).str() +
                      ", div=" + d.divisor.str() + "); sigma_v integral" +
                      (refl.stable ? ", stable" : ", discriminant action nontrivial"));
  }

  Integer k = borcherds_lift_weight(xi);
  checked.push_back("lift weight a(0,0)/2 = " + k.str());
  Classification cls = classify(divisors);
  checked.push_back(std::string("divisor classification: reflective=") +
                    (cls.reflective ? "yes" : "no") + ", strongly_reflective=" +
                    (cls.strongly_reflective ? "yes" : "no"));
  if (any_unstable)
    checked.push_back("a reflection acts nontrivially on the discriminant group: the full "
                      "orthogonal group is generated over the stable one by sigma_v and -1");
  trusted.push_back("the multiplicative lift of a weight-0 nearly holomorphic reflective input is "
                    "a holomorphic modular form of weight a(0,0)/2 for the stable orthogonal "
                    "group, with divisor multiplicities given by the singular coefficients");
  trusted.push_back("characters appearing in the criterion are of finite order");

  Certificate c = make_certificate("2U+<-42>", "O+(L_21)", k, 3, std::move(divisors),
                                   /*cusp=*/false, cls.strongly_reflective);
  c.checked = std::move(checked);
  c.trusted = std::move(trusted);
  Integer mn = c.max_multiplicity * 3;
  c.checked.push_back("criterion: weight " + k.str() + " > m*n = " + mn.str() + " -> " +
                      verdict_name(c.result));
  return c;
}

}  // namespace reflekt

#endif
