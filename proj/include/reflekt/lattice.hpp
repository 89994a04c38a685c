#ifndef REFLEKT_LATTICE_HPP
#define REFLEKT_LATTICE_HPP

#include <cctype>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "reflekt/matrix.hpp"

namespace reflekt {

/// Even integral lattice given by its Gram matrix. `u_summands` counts the
/// hyperbolic-plane summands the lattice was assembled with at unit scale;
/// the Eichler criterion is only applied when this is >= 2 (structural tag,
/// no splitting detection is attempted).
struct IntegerLattice {
  IMat gram;
  bool even = true;
  int u_summands = 0;
  std::string label;

  int rank() const { return static_cast<int>(gram.size()); }
};

inline IntegerLattice lat_U() {
  return IntegerLattice{IMat{{0, 1}, {1, 0}}, true, 1, "U"};
}

inline IntegerLattice lat_single(const Integer& m) {
  if (m == 0) throw std::invalid_argument("lat_single: degenerate");
  return IntegerLattice{IMat{{m}}, m % 2 == 0, 0, "<" + m.str() + ">"};
}

inline IntegerLattice lat_A(int n) {
  if (n < 1) throw std::invalid_argument("lat_A: n >= 1");
  IMat g(static_cast<std::size_t>(n), IVec(static_cast<std::size_t>(n), 0));
  for (int i = 0; i < n; ++i) {
    g[i][i] = 2;
    if (i + 1 < n) g[i][i + 1] = g[i + 1][i] = -1;
  }
  return IntegerLattice{std::move(g), true, 0, "A" + std::to_string(n)};
}

/// D1 is the index-2 sublattice of Z, i.e. <4>; D2 = A1+A1; D3 = A3 pattern.
inline IntegerLattice lat_D(int n) {
  if (n < 1) throw std::invalid_argument("lat_D: n >= 1");
  if (n == 1) {
    auto l = lat_single(4);
    l.label = "D1";
    return l;
  }
  IMat g(static_cast<std::size_t>(n), IVec(static_cast<std::size_t>(n), 0));
  for (int i = 0; i < n; ++i) g[i][i] = 2;
  for (int i = 0; i + 1 < n - 1; ++i) g[i][i + 1] = g[i + 1][i] = -1;
  if (n >= 3)
    g[n - 3][n - 1] = g[n - 1][n - 3] = -1;
  return IntegerLattice{std::move(g), true, 0, "D" + std::to_string(n)};
}

inline IntegerLattice lat_E(int n) {
  if (n < 6 || n > 8) throw std::invalid_argument("lat_E: n in {6,7,8}");
  IMat g(static_cast<std::size_t>(n), IVec(static_cast<std::size_t>(n), 0));
  for (int i = 0; i < n; ++i) g[i][i] = 2;
  auto edge = [&](int i, int j) { g[i - 1][j - 1] = g[j - 1][i - 1] = -1; };
  edge(1, 3);
  edge(2, 4);
  edge(3, 4);
  edge(4, 5);
  edge(5, 6);
  if (n >= 7) edge(6, 7);
  if (n >= 8) edge(7, 8);
  return IntegerLattice{std::move(g), true, 0, "E" + std::to_string(n)};
}

inline IntegerLattice lat_direct_sum(const IntegerLattice& a, const IntegerLattice& b) {
  std::size_t n = a.gram.size(), m = b.gram.size();
  IMat g(n + m, IVec(n + m, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g[i][j] = a.gram[i][j];
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) g[n + i][n + j] = b.gram[i][j];
  return IntegerLattice{std::move(g), a.even && b.even, a.u_summands + b.u_summands,
                        a.label + "+" + b.label};
}

inline IntegerLattice lat_rescale(const IntegerLattice& l, const Integer& m) {
  if (m == 0) throw std::invalid_argument("lat_rescale: zero scale");
  IntegerLattice r = l;
  for (auto& row : r.gram)
    for (auto& x : row) x *= m;
  r.even = true;
  for (std::size_t i = 0; i < r.gram.size(); ++i)
    if (r.gram[i][i] % 2 != 0) r.even = false;
  r.u_summands = (m == 1) ? l.u_summands : 0;
  r.label = (m == 1) ? l.label : l.label + "(" + m.str() + ")";
  return r;
}

/// m * (dual lattice): Gram = m * G^{-1}; throws unless the result is an
/// integer matrix. Used for genus-level identities like L(A2)^v(3).
inline IntegerLattice lat_dual_rescaled(const IntegerLattice& l, const Integer& m) {
  QMat inv = inverse(to_qmat(l.gram));
  std::size_t n = inv.size();
  IMat g(n, IVec(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Rational x = inv[i][j] * m;
      if (!is_integral(x)) throw std::domain_error("lat_dual_rescaled: not integral");
      g[i][j] = num(x);
    }
  bool even = true;
  for (std::size_t i = 0; i < n; ++i)
    if (g[i][i] % 2 != 0) even = false;
  return IntegerLattice{std::move(g), even, 0, l.label + "^v(" + m.str() + ")"};
}

inline Integer lat_det(const IntegerLattice& l) { return det(l.gram); }

inline std::pair<int, int> signature(const IntegerLattice& l) {
  if (det(l.gram) == 0) throw std::domain_error("signature: degenerate Gram matrix");
  return signature_of(to_qmat(l.gram));
}

/// Vector in lattice coordinates (rational coordinates describe elements of
/// the dual); norm and div are computed once at construction.
struct LatticeVector {
  QVec coords;
  QVec pairings;   // G * coords, integral for elements of L^v
  Rational norm;
  Integer divisor;  // positive generator of the pairing ideal (v, L)
};

inline LatticeVector make_vector(const IntegerLattice& l, const QVec& coords) {
  std::size_t n = l.gram.size();
  if (coords.size() != n) throw std::invalid_argument("make_vector: dimension mismatch");
  QVec pair = mat_vec(to_qmat(l.gram), coords);
  Rational norm = 0;
  for (std::size_t i = 0; i < n; ++i) norm += coords[i] * pair[i];
  Integer d = 0;
  bool any = false;
  for (const auto& p : pair) {
    if (!is_integral(p)) throw std::domain_error("make_vector: not an element of the dual lattice");
    d = gcd(d, abs(num(p)));
    any = any || p != 0;
  }
  if (!any) throw std::domain_error("make_vector: zero pairing vector");
  return LatticeVector{coords, pair, norm, d};
}

inline LatticeVector make_vector(const IntegerLattice& l, const std::vector<long>& coords) {
  QVec q;
  q.reserve(coords.size());
  for (long c : coords) q.emplace_back(c);
  return make_vector(l, q);
}

inline Integer lat_div(const IntegerLattice& l, const QVec& v) { return make_vector(l, v).divisor; }

/// Discriminant group L^v / L from the Smith normal form of the Gram matrix,
/// with generators lifted to dual vectors and the discriminant quadratic form
/// evaluated mod 2Z.
struct DiscriminantGroup {
  std::vector<Integer> invariant_factors;  // > 1, ascending divisibility chain
  std::vector<QVec> generators;            // dual vectors, lattice coordinates
  std::vector<Rational> qform;             // q(gen) in [0, 2)
  Integer order = 1;
  SmithResult snf;                          // of the Gram matrix (all slots)

  std::string structure() const {
    if (invariant_factors.empty()) return "trivial";
    std::string s;
    for (std::size_t i = 0; i < invariant_factors.size(); ++i) {
      if (i) s += " x ";
      s += "C" + invariant_factors[i].str();
    }
    return s;
  }
};

inline DiscriminantGroup discriminant_group(const IntegerLattice& l) {
  DiscriminantGroup g;
  g.snf = smith_normal_form(l.gram);
  std::size_t n = l.gram.size();
  QMat gram_q = to_qmat(l.gram);
  for (std::size_t i = 0; i < n; ++i) {
    Integer d = g.snf.d[i][i];
    g.order *= d;
    if (d <= 1) continue;
    g.invariant_factors.push_back(d);
    QVec gen(n, Rational(0));
    for (std::size_t k = 0; k < n; ++k) gen[k] = Rational(g.snf.v[k][i], d);
    QVec pair = mat_vec(gram_q, gen);
    Rational q = 0;
    for (std::size_t k = 0; k < n; ++k) q += gen[k] * pair[k];
    g.generators.push_back(std::move(gen));
    g.qform.push_back(l.even ? mod_span(q, Rational(2)) : q);
  }
  g.order = abs(g.order);
  return g;
}

/// Canonical coordinates of the class of a dual vector x in L^v/L: the image
/// of the pairing vector G x under the SNF row transform, reduced mod the
/// invariant factors (slots with d_i = 1 drop out).
inline std::vector<Integer> disc_class(const IntegerLattice& l, const DiscriminantGroup& g,
                                       const QVec& x) {
  std::size_t n = l.gram.size();
  QVec pair = mat_vec(to_qmat(l.gram), x);
  IVec m(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (!is_integral(pair[i])) throw std::domain_error("disc_class: vector not in dual lattice");
    m[i] = num(pair[i]);
  }
  IVec um = mat_vec(g.snf.u, m);
  std::vector<Integer> cls;
  for (std::size_t i = 0; i < n; ++i) {
    Integer d = g.snf.d[i][i];
    if (d <= 1) continue;
    cls.push_back(mod_floor(um[i], d));
  }
  return cls;
}

inline std::vector<Integer> disc_class_negate(const DiscriminantGroup& g,
                                              const std::vector<Integer>& cls) {
  std::vector<Integer> r;
  r.reserve(cls.size());
  for (std::size_t i = 0; i < cls.size(); ++i)
    r.push_back(mod_floor(-cls[i], g.invariant_factors[i]));
  return r;
}

/// Reflection sigma_r : x -> x - 2(r,x)/(r,r) r, as a rational matrix in the
/// lattice basis, with integrality (preserves L) and stability (trivial on
/// L^v/L) flags, plus whether the induced discriminant action is +-id.
struct Reflection {
  QMat matrix;
  bool integral = false;
  bool stable = false;          // acts as identity on the discriminant group
  bool disc_minus_id = false;   // acts as -identity on the discriminant group
};

inline Reflection reflection(const IntegerLattice& l, const LatticeVector& r) {
  if (r.norm == 0) throw std::domain_error("reflection: isotropic vector");
  std::size_t n = l.gram.size();
  QMat m(n, QVec(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) {
    m[i][i] = 1;
    for (std::size_t j = 0; j < n; ++j) m[i][j] -= Rational(2) * r.coords[i] * r.pairings[j] / r.norm;
  }
  Reflection out;
  out.integral = true;
  for (const auto& row : m)
    for (const auto& x : row)
      if (!is_integral(x)) out.integral = false;
  out.matrix = m;
  if (out.integral) {
    DiscriminantGroup g = discriminant_group(l);
    out.stable = true;
    out.disc_minus_id = true;
    for (const auto& gen : g.generators) {
      QVec img = mat_vec(m, gen);
      auto c0 = disc_class(l, g, gen);
      auto c1 = disc_class(l, g, img);
      if (c1 != c0) out.stable = false;
      if (c1 != disc_class_negate(g, c0)) out.disc_minus_id = false;
    }
  }
  return out;
}

/// Orbit invariant for the Eichler criterion: (norm, div, class of v/div).
/// Defined for primitive vectors of L or of L^v (then div = 1 classes apply).
struct EichlerInvariant {
  Rational norm;
  Integer divisor;
  std::vector<Integer> cls;

  bool operator==(const EichlerInvariant&) const = default;
};

inline bool is_primitive(const IntegerLattice& l, const LatticeVector& v) {
  // integral coordinates: content of the coordinate vector; dual vectors:
  // content of the pairing vector (v/p stays in L^v iff p divides it)
  bool integral_coords = true;
  for (const auto& c : v.coords)
    if (!is_integral(c)) integral_coords = false;
  Integer content = 0;
  if (integral_coords) {
    for (const auto& c : v.coords) content = gcd(content, abs(num(c)));
  } else {
    (void)l;
    for (const auto& p : v.pairings) content = gcd(content, abs(num(p)));
  }
  return content == 1;
}

inline EichlerInvariant eichler_invariants(const IntegerLattice& l, const DiscriminantGroup& g,
                                           const LatticeVector& v) {
  if (!is_primitive(l, v)) throw std::domain_error("eichler_invariants: vector not primitive");
  QVec reduced(v.coords.size());
  for (std::size_t i = 0; i < v.coords.size(); ++i) reduced[i] = v.coords[i] / v.divisor;
  return EichlerInvariant{v.norm, v.divisor, disc_class(l, g, reduced)};
}

/// Two primitive vectors are in one orbit of the stable orthogonal group iff
/// their invariants agree; requires a lattice assembled with at least 2U.
inline bool same_stable_orbit(const IntegerLattice& l, const DiscriminantGroup& g,
                              const LatticeVector& a, const LatticeVector& b) {
  if (l.u_summands < 2)
    throw std::domain_error("same_stable_orbit: Eichler criterion needs a 2U summand");
  return eichler_invariants(l, g, a) == eichler_invariants(l, g, b);
}

/// Gram matrix of the paramodular lattice L_t = 2U + <-2t> in the classical
/// basis order (antidiagonal hyperbolic blocks around the core).
inline IMat paramodular_gram(const Integer& t) {
  IMat s(5, IVec(5, 0));
  s[0][4] = s[4][0] = 1;
  s[1][3] = s[3][1] = 1;
  s[2][2] = -2 * t;
  return s;
}

// ---------------------------------------------------------------------------
// Lattice spec mini-language: terms separated by '+', each term one of
//   kU      k copies of the hyperbolic plane
//   <m>     rank-1 lattice generated by a vector of norm m
//   An/Dn/En  root lattices (k prefix allowed: 2A3)
// optionally followed by (m) to rescale the term. Whitespace insignificant.
// ---------------------------------------------------------------------------

namespace detail {

struct LatParser {
  std::string_view s;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool eat(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  std::optional<long> number() {
    skip_ws();
    std::size_t start = pos;
    if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
    std::size_t digits = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == digits) {
      pos = start;
      return std::nullopt;
    }
    return std::stol(std::string(s.substr(start, pos - start)));
  }

  IntegerLattice term() {
    skip_ws();
    long count = 1;
    if (auto n = number()) {
      count = *n;
      if (count < 1) throw std::invalid_argument("lattice spec: bad multiplicity");
    }
    skip_ws();
    if (pos >= s.size()) throw std::invalid_argument("lattice spec: dangling term");
    IntegerLattice base(
        [&]() -> IntegerLattice {
          char c = s[pos];
          if (c == 'U') {
            ++pos;
            return lat_U();
          }
          if (c == '<') {
            ++pos;
            auto m = number();
            if (!m || !eat('>')) throw std::invalid_argument("lattice spec: bad <m> term");
            return lat_single(*m);
          }
          if (c == 'A' || c == 'D' || c == 'E') {
            ++pos;
            auto n = number();
            if (!n || *n < 1) throw std::invalid_argument("lattice spec: bad root lattice");
            if (c == 'A') return lat_A(static_cast<int>(*n));
            if (c == 'D') return lat_D(static_cast<int>(*n));
            return lat_E(static_cast<int>(*n));
          }
          throw std::invalid_argument("lattice spec: unexpected character");
        }());
    skip_ws();
    if (pos < s.size() && s[pos] == '(') {
      ++pos;
      auto m = number();
      if (!m || !eat(')')) throw std::invalid_argument("lattice spec: bad rescale");
      base = lat_rescale(base, *m);
    }
    IntegerLattice acc = base;
    for (long i = 1; i < count; ++i) acc = lat_direct_sum(acc, base);
    return acc;
  }

  IntegerLattice parse() {
    IntegerLattice acc = term();
    while (true) {
      skip_ws();
      if (pos >= s.size()) break;
      if (!eat('+')) throw std::invalid_argument("lattice spec: expected '+'");
      acc = lat_direct_sum(acc, term());
    }
    return acc;
  }
};

}  // namespace detail

inline IntegerLattice parse_lattice(std::string_view spec) {
  detail::LatParser p{spec};
  IntegerLattice l = p.parse();
  l.label = std::string(spec);
  return l;
}

}  // namespace reflekt

#endif
