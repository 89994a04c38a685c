#ifndef REFLEKT_SHORTVEC_HPP
#define REFLEKT_SHORTVEC_HPP

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <vector>

#include "reflekt/lattice.hpp"

namespace reflekt {

/// Enumeration node budget; REFLEKT_MAX_ENUM overrides the default cap.
inline std::uint64_t enumeration_cap() {
  if (const char* e = std::getenv("REFLEKT_MAX_ENUM")) {
    char* end = nullptr;
    std::uint64_t v = std::strtoull(e, &end, 10);
    if (end != e && v > 0) return v;
  }
  return 10'000'000ULL;
}

struct EnumerationCapExceeded : std::runtime_error {
  EnumerationCapExceeded() : std::runtime_error("short-vector enumeration exceeded node cap") {}
};

namespace detail {

/// Quadratic completion of a positive definite rational form:
/// Q(x) = sum_i q[i] (x_i + sum_{j>i} u[i][j] x_j)^2, exact.
struct QuadraticCompletion {
  QVec q;
  QMat u;
};

inline QuadraticCompletion complete_squares(QMat g) {
  std::size_t n = g.size();
  QuadraticCompletion c;
  c.q.assign(n, Rational(0));
  c.u.assign(n, QVec(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) {
    if (g[i][i] <= 0) throw std::domain_error("complete_squares: form not positive definite");
    c.q[i] = g[i][i];
    for (std::size_t j = i + 1; j < n; ++j) c.u[i][j] = g[i][j] / g[i][i];
    for (std::size_t k = i + 1; k < n; ++k)
      for (std::size_t l = i + 1; l < n; ++l) g[k][l] -= g[i][k] * g[i][l] / g[i][i];
  }
  return c;
}

/// Largest integer k with q (k + c)^2 <= t (and the smallest), guided by a
/// double approximation and fixed up by exact comparisons.
inline std::pair<long, long> integer_range(const Rational& q, const Rational& c, const Rational& t) {
  if (t < 0) return {1, 0};  // empty
  double qd = static_cast<double>(q);
  double cd = static_cast<double>(c);
  double td = static_cast<double>(t);
  double s = td <= 0 ? 0.0 : std::sqrt(td / qd);
  auto fits = [&](long k) { return q * (c + k) * (c + k) <= t; };
  long lo = static_cast<long>(std::floor(-cd - s));
  long hi = static_cast<long>(std::ceil(-cd + s));
  while (fits(lo - 1)) --lo;
  while (!fits(lo) && lo <= hi) ++lo;
  while (fits(hi + 1)) ++hi;
  while (!fits(hi) && hi >= lo) --hi;
  return {lo, hi};
}

}  // namespace detail

struct ShortVector {
  std::vector<long> coords;
  Rational norm;
};

/// All nonzero integer vectors x with 0 < x^T G x <= bound, for positive
/// definite rational G. Complete enumeration (Fincke-Pohst), results sorted
/// lexicographically; both signs of each vector are present.
inline std::vector<ShortVector> short_vectors_of_form(const QMat& gram, const Rational& bound,
                                                      std::uint64_t cap = enumeration_cap()) {
  std::size_t n = gram.size();
  auto c = detail::complete_squares(gram);
  std::vector<ShortVector> out;
  std::vector<long> x(n, 0);
  std::uint64_t nodes = 0;

  // recurse from the last coordinate; at level i the remaining budget is t
  auto rec = [&](auto&& self, std::size_t level, const Rational& t) -> void {
    if (++nodes > cap) throw EnumerationCapExceeded{};
    std::size_t i = level - 1;
    Rational center = 0;
    for (std::size_t j = i + 1; j < n; ++j) center += c.u[i][j] * x[j];
    auto [lo, hi] = detail::integer_range(c.q[i], center, t);
    for (long k = lo; k <= hi; ++k) {
      x[i] = k;
      Rational used = c.q[i] * (center + k) * (center + k);
      if (i == 0) {
        bool nonzero = false;
        for (long v : x) nonzero = nonzero || v != 0;
        if (nonzero) {
          Rational norm = bound - (t - used);
          // recompute exactly from scratch to keep the result self-contained
          Rational exact = 0;
          for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) exact += gram[a][b] * x[a] * x[b];
          (void)norm;
          out.push_back(ShortVector{x, exact});
        }
      } else {
        self(self, i, t - used);
      }
    }
    x[i] = 0;
  };
  if (n > 0) rec(rec, n, bound);
  std::sort(out.begin(), out.end(),
            [](const ShortVector& a, const ShortVector& b) { return a.coords < b.coords; });
  return out;
}

/// Short vectors of a definite lattice with |norm| <= bound. Negative
/// definite Grams are negated first; mixed signatures are refused.
inline std::vector<ShortVector> short_vectors(const IntegerLattice& l, const Rational& bound,
                                              std::uint64_t cap = enumeration_cap()) {
  auto [pos, neg] = signature(l);
  bool negate = false;
  if (pos > 0 && neg > 0) throw std::domain_error("short_vectors: lattice must be definite");
  if (neg > 0) negate = true;
  QMat g = to_qmat(l.gram);
  if (negate)
    for (auto& row : g)
      for (auto& v : row) v = -v;
  auto vs = short_vectors_of_form(g, bound, cap);
  if (negate)
    for (auto& v : vs) v.norm = -v.norm;
  return vs;
}

inline std::size_t root_count(const IntegerLattice& l) {
  std::size_t c = 0;
  for (const auto& v : short_vectors(l, 2))
    if (abs(v.norm) == 2) ++c;
  return c;
}

/// Minimal norms per discriminant class of a positive definite lattice,
/// found by short-vector enumeration in the dual, sorted into classes.
struct ClassMinimum {
  std::vector<Integer> cls;  // canonical class coordinates
  Rational min_norm;
  QVec representative;  // lattice coordinates of a minimizing dual vector
};

inline std::vector<ClassMinimum> min_norm_per_class(const IntegerLattice& l,
                                                    std::uint64_t cap = enumeration_cap()) {
  auto [pos, neg] = signature(l);
  if (neg > 0) throw std::domain_error("min_norm_per_class: lattice must be positive definite");
  DiscriminantGroup dg = discriminant_group(l);
  std::size_t total = static_cast<std::size_t>(to_long(dg.order, "min_norm_per_class"));
  QMat ginv = inverse(to_qmat(l.gram));
  std::size_t n = l.gram.size();

  std::map<std::vector<Integer>, ClassMinimum> best;
  // zero class is represented by the zero vector
  best[std::vector<Integer>(dg.invariant_factors.size(), Integer(0))] =
      ClassMinimum{std::vector<Integer>(dg.invariant_factors.size(), Integer(0)), Rational(0),
                   QVec(n, Rational(0))};

  // enumerate dual vectors (pairing coordinates m, norm m^T G^{-1} m) with a
  // growing bound until every class has a representative
  for (Rational bound = 2;; bound += 1) {
    auto vs = short_vectors_of_form(ginv, bound, cap);
    for (const auto& v : vs) {
      IVec m(n);
      for (std::size_t i = 0; i < n; ++i) m[i] = v.coords[i];
      IVec um = mat_vec(dg.snf.u, m);
      std::vector<Integer> cls;
      for (std::size_t i = 0; i < n; ++i) {
        Integer d = dg.snf.d[i][i];
        if (d <= 1) continue;
        cls.push_back(mod_floor(um[i], d));
      }
      auto it = best.find(cls);
      if (it == best.end() || v.norm < it->second.min_norm) {
        QVec lattice_coords = mat_vec(ginv, [&] {
          QVec q(n);
          for (std::size_t i = 0; i < n; ++i) q[i] = m[i];
          return q;
        }());
        best[cls] = ClassMinimum{cls, v.norm, std::move(lattice_coords)};
      }
    }
    if (best.size() >= total) break;
    if (bound > 64) throw std::runtime_error("min_norm_per_class: covering bound not reached");
  }
  std::vector<ClassMinimum> out;
  out.reserve(best.size());
  for (auto& [k, v] : best) out.push_back(std::move(v));
  return out;
}

inline Rational max_min_norm(const std::vector<ClassMinimum>& cm) {
  Rational m = 0;
  for (const auto& c : cm) m = std::max(m, c.min_norm);
  return m;
}

}  // namespace reflekt

#endif
