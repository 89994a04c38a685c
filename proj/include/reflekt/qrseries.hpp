#ifndef REFLEKT_QRSERIES_HPP
#define REFLEKT_QRSERIES_HPP

#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "reflekt/laurent.hpp"

namespace reflekt {

/// Truncated Laurent series in q whose coefficients are Laurent polynomials
/// in up to 8 elliptic variables, with a fractional prefactor
///
///     q^(pref24/24) * r1^(rpref[0]/2) * ... * rm^(rpref[m-1]/2)
///
/// in front of an integral-exponent core
///
///     sum_{k=val}^{prec-1} c_k(r) q^k  +  O(q^prec).
///
/// eta and theta are the only sources of fractional exponents and they enter
/// multiplicatively, so a single global prefactor suffices. After
/// normalization pref24 lies in [0,24) and every rpref entry in {0,1}; two
/// normalized series are addable iff their prefactors agree exactly.
///
/// Precision bookkeeping is pessimistic: coefficients at q-exponent >= prec
/// are unknown and every operation propagates the correct min-combination.
/// All values are immutable in spirit; operations return fresh series.
class QRSeries {
 public:
  explicit QRSeries(int arity = 1) : arity_(arity), val_(0), prec_(0) {}

  /// Series that is identically zero on [0, prec).
  static QRSeries zero(int arity, long prec) {
    QRSeries s(arity);
    s.val_ = prec;
    s.prec_ = prec;
    return s;
  }

  static QRSeries constant(int arity, Integer c, long prec) {
    QRSeries s(arity);
    s.val_ = 0;
    s.prec_ = prec;
    if (prec > 0) {
      s.coeffs_.assign(static_cast<std::size_t>(prec), LaurentPoly(arity));
      s.coeffs_[0] = LaurentPoly::constant(arity, std::move(c));
    }
    s.trim();
    return s;
  }

  static QRSeries one(int arity, long prec) { return constant(arity, 1, prec); }

  /// Build from explicit data; normalizes prefactors and valuation.
  static QRSeries make(int arity, int pref24, std::array<int, kMaxVars> rpref2, long val,
                       std::vector<LaurentPoly> coeffs, long prec) {
    QRSeries s(arity);
    s.pref24_ = pref24;
    s.rpref2_ = rpref2;
    s.val_ = val;
    s.prec_ = prec;
    s.coeffs_ = std::move(coeffs);
    if (static_cast<long>(s.coeffs_.size()) != prec - val)
      throw std::invalid_argument("QRSeries::make: coeffs size must equal prec - val");
    s.normalize();
    return s;
  }

  int arity() const { return arity_; }
  int pref24() const { return pref24_; }
  const std::array<int, kMaxVars>& rpref2() const { return rpref2_; }
  long val() const { return val_; }
  long prec() const { return prec_; }
  bool is_zero() const { return coeffs_.empty(); }

  /// True q-exponent of stored index k is val + k (plus pref24/24).
  const LaurentPoly& coeff(long n) const {
    if (n >= prec_) throw std::out_of_range("QRSeries::coeff: beyond known precision");
    if (n < val_) return zero_poly(arity_);
    return coeffs_[static_cast<std::size_t>(n - val_)];
  }

  bool knows(long n) const { return n < prec_; }

  Integer coeff_int(long n, const ExpVec& ev) const { return coeff(n).coeff(ev); }
  Integer coeff_int(long n, int l) const { return coeff(n).coeff(ExpVec::single(0, l)); }

  friend QRSeries operator+(const QRSeries& a, const QRSeries& b) {
    if (a.is_zero()) return adopt_prefactor(b, a, std::min(a.prec_, b.prec_));
    if (b.is_zero()) return adopt_prefactor(a, b, std::min(a.prec_, b.prec_));
    a.require_compatible(b);
    QRSeries r(a.arity_);
    r.pref24_ = a.pref24_;
    r.rpref2_ = a.rpref2_;
    r.val_ = std::min(a.val_, b.val_);
    r.prec_ = std::min(a.prec_, b.prec_);
    r.coeffs_.assign(static_cast<std::size_t>(r.prec_ - r.val_), LaurentPoly(a.arity_));
    for (long n = r.val_; n < r.prec_; ++n) {
      LaurentPoly c = a.safe_coeff(n);
      c += b.safe_coeff(n);
      r.coeffs_[static_cast<std::size_t>(n - r.val_)] = std::move(c);
    }
    r.trim();
    return r;
  }

  QRSeries operator-() const {
    QRSeries r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
  }
  friend QRSeries operator-(const QRSeries& a, const QRSeries& b) { return a + (-b); }

  friend QRSeries operator*(const QRSeries& a, const QRSeries& b) {
    a.require_same_arity(b);
    QRSeries r(a.arity_);
    r.pref24_ = a.pref24_ + b.pref24_;
    for (int i = 0; i < kMaxVars; ++i) r.rpref2_[i] = a.rpref2_[i] + b.rpref2_[i];
    r.prec_ = std::min(a.prec_ + b.val_, a.val_ + b.prec_);
    r.val_ = a.val_ + b.val_;
    if (a.is_zero() || b.is_zero()) {
      r.val_ = r.prec_;
      r.normalize();
      return r;
    }
    r.coeffs_.assign(static_cast<std::size_t>(std::max(r.prec_ - r.val_, 0L)), LaurentPoly(a.arity_));
    for (long i = a.val_; i < a.prec_; ++i) {
      const LaurentPoly& ca = a.coeff(i);
      if (ca.is_zero()) continue;
      for (long j = b.val_; j < b.prec_ && i + j < r.prec_; ++j) {
        const LaurentPoly& cb = b.coeff(j);
        if (cb.is_zero()) continue;
        r.coeffs_[static_cast<std::size_t>(i + j - r.val_)] += ca * cb;
      }
    }
    r.normalize();
    return r;
  }

  QRSeries& operator*=(const Integer& c) {
    if (c == 0) {
      val_ = prec_;
      coeffs_.clear();
      return *this;
    }
    for (auto& p : coeffs_) p *= c;
    return *this;
  }
  friend QRSeries operator*(QRSeries a, const Integer& c) { return a *= c; }
  friend QRSeries operator*(const Integer& c, QRSeries a) { return a *= c; }

  /// Quotient a/b with b having unit leading coefficient: its lowest-order
  /// q-coefficient must be a single monomial with coefficient +-1. This is
  /// the public contract; see divided_exact_leading for the internal variant
  /// that additionally allows +-c with exact per-coefficient division.
  friend QRSeries operator/(const QRSeries& a, const QRSeries& b) {
    return divide(a, b, /*allow_nonunit=*/false);
  }

  /// Like operator/ but the divisor's leading coefficient may be +-c times a
  /// monomial; every produced coefficient must then be exactly divisible by c.
  static QRSeries divided_exact_leading(const QRSeries& a, const QRSeries& b) {
    return divide(a, b, /*allow_nonunit=*/true);
  }

  /// Exact division of all coefficients by an integer; throws on remainder.
  QRSeries divided_exact(const Integer& c) const {
    QRSeries r = *this;
    for (auto& p : r.coeffs_) p.divide_exact(c);
    return r;
  }

  QRSeries pow(unsigned long e) const {
    if (e == 0) return one_like(*this);
    QRSeries base = *this;
    QRSeries acc = base;
    e -= 1;
    while (e > 0) {
      if (e & 1UL) acc = acc * base;
      base = (e >>= 1) > 0 ? base * base : base;
    }
    return acc;
  }

  /// Multiply by the fractional prefactor q^(p/24) * prod r_i^(rp_i/2).
  QRSeries with_extra_prefactor(int p24, const std::array<int, kMaxVars>& rp2 = {}) const {
    QRSeries r = *this;
    r.pref24_ += p24;
    for (int i = 0; i < kMaxVars; ++i) r.rpref2_[i] += rp2[i];
    r.normalize();
    return r;
  }

  /// Multiply by q^k (exact, shifts both valuation and precision).
  QRSeries shifted_q(long k) const {
    QRSeries r = *this;
    r.val_ += k;
    r.prec_ += k;
    return r;
  }

  QRSeries truncated(long new_prec) const {
    if (new_prec > prec_) throw std::invalid_argument("QRSeries::truncated: cannot raise precision");
    QRSeries r = *this;
    r.prec_ = new_prec;
    if (r.val_ >= new_prec) {
      r.val_ = new_prec;
      r.coeffs_.clear();
    } else {
      r.coeffs_.resize(static_cast<std::size_t>(new_prec - r.val_));
    }
    return r;
  }

  /// Substitute q -> q^k (k >= 1). Exponents, valuation, precision and the
  /// fractional prefactor all scale by k.
  QRSeries inflated_q(int k) const {
    if (k < 1) throw std::invalid_argument("QRSeries::inflated_q: k >= 1");
    QRSeries r(arity_);
    r.pref24_ = pref24_ * k;
    r.rpref2_ = rpref2_;
    r.val_ = val_ * k;
    r.prec_ = prec_ * k;
    r.coeffs_.assign(static_cast<std::size_t>(r.prec_ - r.val_), LaurentPoly(arity_));
    for (long n = val_; n < prec_; ++n)
      r.coeffs_[static_cast<std::size_t>((n - val_) * k)] = coeff(n);
    r.normalize();
    return r;
  }

  /// Substitute q -> q^(1/k); requires pref24 == 0 and support concentrated
  /// on exponents divisible by k.
  QRSeries deflated_q(int k) const {
    if (k < 1) throw std::invalid_argument("QRSeries::deflated_q: k >= 1");
    if (pref24_ != 0) throw std::domain_error("QRSeries::deflated_q: fractional q-prefactor");
    for (long n = val_; n < prec_; ++n)
      if (n % k != 0 && !coeff(n).is_zero())
        throw std::domain_error("QRSeries::deflated_q: support not divisible by k");
    QRSeries r(arity_);
    r.rpref2_ = rpref2_;
    long lo = val_ >= 0 ? (val_ + k - 1) / k : val_ / k;  // ceil(val/k)
    r.val_ = lo;
    r.prec_ = (prec_ + k - 1) / k;
    r.coeffs_.assign(static_cast<std::size_t>(r.prec_ - r.val_), LaurentPoly(arity_));
    for (long m = r.val_; m < r.prec_; ++m)
      if (m * k >= val_ && m * k < prec_) r.coeffs_[static_cast<std::size_t>(m - r.val_)] = coeff(m * k);
    r.trim();
    return r;
  }

  /// Linear substitution on the elliptic variables: new exponent vector is
  /// M * old (M is new_arity x arity, integer entries). Applies to the
  /// half-integer r-prefactor as well, with carries normalized away.
  QRSeries remapped_r(int new_arity, const std::vector<std::vector<int>>& m) const {
    QRSeries r(new_arity);
    r.pref24_ = pref24_;
    r.val_ = val_;
    r.prec_ = prec_;
    for (int i = 0; i < new_arity; ++i) {
      long s = 0;
      for (int j = 0; j < arity_; ++j) s += static_cast<long>(m[i][j]) * rpref2_[j];
      r.rpref2_[i] = static_cast<int>(s);
    }
    r.coeffs_.reserve(coeffs_.size());
    for (const auto& p : coeffs_) r.coeffs_.push_back(p.remapped(new_arity, m));
    r.normalize();
    return r;
  }

  /// Embed a one-variable series as variable `var` of an m-variable series.
  QRSeries embedded(int new_arity, int var) const {
    if (arity_ != 1) throw std::invalid_argument("QRSeries::embedded: source must be univariate");
    std::vector<std::vector<int>> m(static_cast<std::size_t>(new_arity), std::vector<int>(1, 0));
    m[static_cast<std::size_t>(var)][0] = 1;
    return remapped_r(new_arity, m);
  }

  /// Exact equality of normalized representations (prefactor, valuation,
  /// precision and all stored coefficients).
  bool operator==(const QRSeries& o) const {
    return arity_ == o.arity_ && pref24_ == o.pref24_ && rpref2_ == o.rpref2_ && val_ == o.val_ &&
           prec_ == o.prec_ && coeffs_ == o.coeffs_;
  }

  /// Agreement of two series on the overlap of their known ranges; ignores
  /// precision differences. Prefactors must match exactly unless a side is
  /// identically zero there.
  static bool agree(const QRSeries& a, const QRSeries& b) {
    if (a.arity_ != b.arity_) return false;
    if (!a.is_zero() && !b.is_zero() && (a.pref24_ != b.pref24_ || a.rpref2_ != b.rpref2_)) return false;
    long hi = std::min(a.prec_, b.prec_);
    long lo = std::min(a.val_, b.val_);
    for (long n = lo; n < hi; ++n)
      if (a.safe_coeff(n) != b.safe_coeff(n)) return false;
    return true;
  }

  /// One line per stored q-exponent: "q^k : <terms>". Deterministic.
  std::string dump() const {
    std::ostringstream os;
    std::array<int, kMaxVars> hs{};
    for (int i = 0; i < arity_; ++i) hs[i] = rpref2_[i];
    for (long n = val_; n < prec_; ++n) {
      os << "q^" << q_exponent_string(n) << " : " << coeff(n).to_string(hs) << "\n";
    }
    return os.str();
  }

 private:
  static QRSeries divide(const QRSeries& a, const QRSeries& b, bool allow_nonunit) {
    a.require_same_arity(b);
    if (b.is_zero()) throw std::domain_error("QRSeries: division by zero series");
    const LaurentPoly& lead = b.coeff(b.val_);
    if (lead.term_count() != 1)
      throw std::domain_error("QRSeries: divisor leading coefficient is not a monomial");
    const auto& [lead_ev, lead_c] = *lead.terms().begin();
    if (!allow_nonunit && lead_c != 1 && lead_c != -1)
      throw std::domain_error("QRSeries: division refused, leading coefficient not a unit");

    QRSeries r(a.arity_);
    r.pref24_ = a.pref24_ - b.pref24_;
    for (int i = 0; i < kMaxVars; ++i) r.rpref2_[i] = a.rpref2_[i] - b.rpref2_[i];
    r.val_ = a.val_ - b.val_;
    r.prec_ = std::min(a.prec_ - b.val_, a.val_ + b.prec_ - 2 * b.val_);
    if (a.is_zero()) {
      r.val_ = r.prec_;
      r.normalize();
      return r;
    }
    long n_terms = r.prec_ - r.val_;
    if (n_terms <= 0) throw std::domain_error("QRSeries: no precision left after division");
    std::vector<LaurentPoly> q(static_cast<std::size_t>(n_terms), LaurentPoly(a.arity_));
    ExpVec neg_lead = -lead_ev;
    for (long k = 0; k < n_terms; ++k) {
      LaurentPoly acc = a.safe_coeff(a.val_ + k);  // A_k
      for (long j = 0; j < k; ++j) {
        const LaurentPoly& bj = b.safe_coeff(b.val_ + (k - j));
        if (!bj.is_zero() && !q[static_cast<std::size_t>(j)].is_zero())
          acc -= q[static_cast<std::size_t>(j)] * bj;
      }
      // divide by lead_c * r^lead_ev
      LaurentPoly shifted = acc.shifted(neg_lead);
      shifted.divide_exact(lead_c);
      q[static_cast<std::size_t>(k)] = std::move(shifted);
    }
    r.coeffs_ = std::move(q);
    r.normalize();
    return r;
  }

  static QRSeries one_like(const QRSeries& a) {
    return QRSeries::constant(a.arity_, 1, a.prec_ - std::min(a.val_, 0L));
  }

  /// For zero +- something: the zero side has no prefactor of its own.
  static QRSeries adopt_prefactor(const QRSeries& nonzero, const QRSeries& zero, long prec) {
    (void)zero;
    QRSeries r = nonzero;
    long p = std::min(prec, r.prec_);
    return r.truncated(p);
  }

  static const LaurentPoly& zero_poly(int arity) {
    static const std::array<LaurentPoly, kMaxVars> zs = {
        LaurentPoly(1), LaurentPoly(2), LaurentPoly(3), LaurentPoly(4),
        LaurentPoly(5), LaurentPoly(6), LaurentPoly(7), LaurentPoly(8)};
    return zs[static_cast<std::size_t>(arity - 1)];
  }

  LaurentPoly safe_coeff(long n) const {
    if (n < val_ || n >= prec_) return LaurentPoly(arity_);
    return coeffs_[static_cast<std::size_t>(n - val_)];
  }

  void require_same_arity(const QRSeries& o) const {
    if (arity_ != o.arity_) throw std::invalid_argument("QRSeries: arity mismatch");
  }
  void require_compatible(const QRSeries& o) const {
    require_same_arity(o);
    if (pref24_ != o.pref24_ || rpref2_ != o.rpref2_)
      throw std::domain_error("QRSeries: irreconcilable fractional prefactors");
  }

  std::string q_exponent_string(long n) const {
    if (pref24_ == 0) return std::to_string(n);
    int g = std::gcd(24, pref24_);
    long den = 24 / g;
    long num = n * den + pref24_ / g;
    return "(" + std::to_string(num) + "/" + std::to_string(den) + ")";
  }

  /// Restore invariants: pref24 in [0,24), rpref entries in {0,1}, no leading
  /// zero coefficients, coeffs.size() == prec - val.
  void normalize() {
    long carry = pref24_ >= 0 ? pref24_ / 24 : -((-pref24_ + 23) / 24);
    pref24_ -= static_cast<int>(24 * carry);
    val_ += carry;
    prec_ += carry;

    ExpVec shift{};
    bool any_shift = false;
    for (int i = 0; i < arity_; ++i) {
      int c = rpref2_[i] >= 0 ? rpref2_[i] / 2 : -((-rpref2_[i] + 1) / 2);
      rpref2_[i] -= 2 * c;
      if (c != 0) {
        shift[i] = c;
        any_shift = true;
      }
    }
    if (any_shift)
      for (auto& p : coeffs_) p = p.shifted(shift);
    trim();
  }

  void trim() {
    std::size_t drop = 0;
    while (drop < coeffs_.size() && coeffs_[drop].is_zero()) ++drop;
    if (drop > 0) {
      coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(drop));
      val_ += static_cast<long>(drop);
    }
    if (coeffs_.empty()) val_ = prec_;
  }

  int arity_;
  int pref24_ = 0;
  std::array<int, kMaxVars> rpref2_{};
  long val_;
  long prec_;
  std::vector<LaurentPoly> coeffs_;
};

}  // namespace reflekt

#endif
