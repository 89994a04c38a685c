#ifndef REFLEKT_CLASSICAL_HPP
#define REFLEKT_CLASSICAL_HPP

#include <stdexcept>

#include "reflekt/qrseries.hpp"

namespace reflekt {

/// sigma_k(n) = sum of k-th powers of divisors of n.
inline Integer divisor_sigma(int k, long n) {
  Integer s = 0;
  for (long d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    Integer dk = boost::multiprecision::pow(Integer(d), static_cast<unsigned>(k));
    s += dk;
    long e = n / d;
    if (e != d) s += boost::multiprecision::pow(Integer(e), static_cast<unsigned>(k));
  }
  return s;
}

/// Euler product prod (1 - q^n) as a series, via the pentagonal number sum.
inline QRSeries euler_product(long prec, int arity = 1) {
  std::vector<LaurentPoly> cs(static_cast<std::size_t>(prec), LaurentPoly(arity));
  for (long k = 0;; ++k) {
    long g1 = k * (3 * k - 1) / 2;
    long g2 = k * (3 * k + 1) / 2;
    if (g1 >= prec && g2 >= prec) break;
    Integer sgn = (k % 2 == 0) ? 1 : -1;
    if (g1 < prec) cs[static_cast<std::size_t>(g1)] += LaurentPoly::constant(arity, sgn);
    if (k > 0 && g2 < prec) cs[static_cast<std::size_t>(g2)] += LaurentPoly::constant(arity, sgn);
  }
  return QRSeries::make(arity, 0, {}, 0, std::move(cs), prec);
}

/// eta^e as a series with prefactor q^(e/24); e >= 0, prec >= 1. Computed
/// from Euler's pentagonal expansion of eta/q^(1/24) raised to e.
inline QRSeries eta_power(int e, long prec, int arity = 1) {
  if (e < 0) throw std::invalid_argument("eta_power: exponent must be >= 0");
  if (prec < 1) throw std::invalid_argument("eta_power: prec >= 1");
  QRSeries core = euler_product(prec, arity).pow(static_cast<unsigned long>(e));
  return core.with_extra_prefactor(e);
}

/// Ramanujan Delta = eta^24, integral q-expansion starting q - 24q^2 + ...
inline QRSeries delta12(long prec, int arity = 1) { return eta_power(24, prec, arity); }

/// Normalized Eisenstein series E_4 or E_6.
inline QRSeries eisenstein(int weight, long prec, int arity = 1) {
  Integer c;
  if (weight == 4)
    c = 240;
  else if (weight == 6)
    c = -504;
  else
    throw std::invalid_argument("eisenstein: weight must be 4 or 6");
  std::vector<LaurentPoly> cs(static_cast<std::size_t>(prec), LaurentPoly(arity));
  cs[0] = LaurentPoly::constant(arity, 1);
  for (long n = 1; n < prec; ++n)
    cs[static_cast<std::size_t>(n)] = LaurentPoly::constant(arity, c * divisor_sigma(weight - 1, n));
  return QRSeries::make(arity, 0, {}, 0, std::move(cs), prec);
}

/// The odd Jacobi theta function
///   theta(tau,z) = q^(1/8) r^(1/2) sum_{n in Z} (-1)^n q^(n(n+1)/2) r^n,
/// leading term q^(1/8)(r^(1/2) - r^(-1/2)). `var` selects which elliptic
/// variable carries z when arity > 1.
inline QRSeries theta_odd(long prec, int arity = 1, int var = 0) {
  if (prec < 1) throw std::invalid_argument("theta_odd: prec >= 1");
  std::vector<LaurentPoly> cs(static_cast<std::size_t>(prec), LaurentPoly(arity));
  for (long n = 0;; ++n) {
    long tri = n * (n + 1) / 2;
    if (tri >= prec) break;
    Integer sgn = (n % 2 == 0) ? 1 : -1;
    cs[static_cast<std::size_t>(tri)].add_term(ExpVec::single(var, static_cast<int32_t>(n)), sgn);
    cs[static_cast<std::size_t>(tri)].add_term(ExpVec::single(var, static_cast<int32_t>(-n - 1)), -sgn);
  }
  std::array<int, kMaxVars> rp{};
  rp[var] = 1;
  return QRSeries::make(arity, 3, rp, 0, std::move(cs), prec);
}

/// theta as the Jacobi triple product
///   q^(1/8) r^(1/2) prod_{n>=1} (1-q^n)(1-q^n r)(1-q^(n-1) r^(-1)).
/// Used as the independent oracle against the sum form.
inline QRSeries theta_odd_product(long prec, int arity = 1, int var = 0) {
  QRSeries acc = QRSeries::one(arity, prec);
  for (long n = 1; n <= prec; ++n) {
    // factor (1 - q^n)
    {
      std::vector<LaurentPoly> cs(static_cast<std::size_t>(prec), LaurentPoly(arity));
      cs[0] = LaurentPoly::constant(arity, 1);
      if (n < prec) cs[static_cast<std::size_t>(n)] = LaurentPoly::constant(arity, -1);
      acc = acc * QRSeries::make(arity, 0, {}, 0, std::move(cs), prec);
    }
    // factor (1 - q^n r)
    {
      std::vector<LaurentPoly> cs(static_cast<std::size_t>(prec), LaurentPoly(arity));
      cs[0] = LaurentPoly::constant(arity, 1);
      if (n < prec) cs[static_cast<std::size_t>(n)].add_term(ExpVec::single(var, 1), -1);
      acc = acc * QRSeries::make(arity, 0, {}, 0, std::move(cs), prec);
    }
    // factor (1 - q^(n-1) r^-1)
    {
      std::vector<LaurentPoly> cs(static_cast<std::size_t>(prec), LaurentPoly(arity));
      cs[0] = LaurentPoly::constant(arity, 1);
      if (n - 1 < prec) cs[static_cast<std::size_t>(n - 1)].add_term(ExpVec::single(var, -1), -1);
      acc = acc * QRSeries::make(arity, 0, {}, 0, std::move(cs), prec);
    }
    acc = acc.truncated(prec);
  }
  std::array<int, kMaxVars> rp{};
  rp[var] = 1;
  return acc.with_extra_prefactor(3, rp);
}

/// Even theta constants on the doubled-q grid (series in qq where qq^2 = q):
///   theta2(tau,z) = q^(1/8) r^(1/2) sum q^(n(n+1)/2) r^n   -> exponents n(n+1) in qq
///   theta3(tau,z) = sum q^(n^2/2) r^n                      -> exponents n^2 in qq
///   theta4(tau,z) = sum (-1)^n q^(n^2/2) r^n
/// `prec2` is the precision in qq. Deflate by 2 after combining to return to
/// the q grid.
inline QRSeries theta2_qq(long prec2, int arity = 1, int var = 0) {
  std::vector<LaurentPoly> cs(static_cast<std::size_t>(prec2), LaurentPoly(arity));
  for (long n = 0;; ++n) {
    long ex = n * (n + 1);
    if (ex >= prec2) break;
    cs[static_cast<std::size_t>(ex)].add_term(ExpVec::single(var, static_cast<int32_t>(n)), 1);
    cs[static_cast<std::size_t>(ex)].add_term(ExpVec::single(var, static_cast<int32_t>(-n - 1)), 1);
  }
  std::array<int, kMaxVars> rp{};
  rp[var] = 1;
  return QRSeries::make(arity, 6, rp, 0, std::move(cs), prec2);  // qq^(1/4) = qq^(6/24)
}

inline QRSeries theta34_qq(bool alternating, long prec2, int arity = 1, int var = 0) {
  std::vector<LaurentPoly> cs(static_cast<std::size_t>(prec2), LaurentPoly(arity));
  cs[0] = LaurentPoly::constant(arity, 1);
  for (long n = 1;; ++n) {
    long ex = n * n;
    if (ex >= prec2) break;
    Integer c = (alternating && n % 2 != 0) ? -1 : 1;
    cs[static_cast<std::size_t>(ex)].add_term(ExpVec::single(var, static_cast<int32_t>(n)), c);
    cs[static_cast<std::size_t>(ex)].add_term(ExpVec::single(var, static_cast<int32_t>(-n)), c);
  }
  return QRSeries::make(arity, 0, {}, 0, std::move(cs), prec2);
}

inline QRSeries theta3_qq(long prec2, int arity = 1, int var = 0) {
  return theta34_qq(false, prec2, arity, var);
}
inline QRSeries theta4_qq(long prec2, int arity = 1, int var = 0) {
  return theta34_qq(true, prec2, arity, var);
}

}  // namespace reflekt

#endif
