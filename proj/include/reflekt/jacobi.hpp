#ifndef REFLEKT_JACOBI_HPP
#define REFLEKT_JACOBI_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "reflekt/classical.hpp"
#include "reflekt/matrix.hpp"

namespace reflekt {

enum class Holomorphy { holomorphic, weak, nearly_holomorphic };

/// Positive definite index lattice of a multivariable Jacobi form. Fourier
/// exponents are stored in pairing coordinates; `dual_norm` evaluates the
/// dual quadratic form on a true exponent vector (stored exponent plus the
/// half-integer prefactor). `norm_floor`, when certified, bounds
/// 2n - (l,l) from below over the entire expansion, not just the stored part.
struct LatticeIndex {
  std::string label;
  int rank = 1;
  QMat dual_norm;
  Rational norm_floor = 0;
  bool has_floor = false;
};

struct JacobiForm {
  int weight = 0;
  int scalar_index = 0;  // used when lattice_index is absent
  std::optional<LatticeIndex> lattice_index;
  QRSeries series;
  Holomorphy cls = Holomorphy::weak;

  bool is_scalar_index() const { return !lattice_index.has_value(); }

  /// a(n, l) for scalar-index forms.
  Integer coeff(long n, long l) const {
    return series.coeff_int(n, static_cast<int>(l));
  }
};

/// One Fourier coefficient of negative hyperbolic norm. For scalar index t
/// the norm is 4tn - l^2; for lattice index it is 2n - (l,l) in the dual
/// quadratic form. `l` holds true exponents (half-integers allowed).
struct SingularCoefficient {
  long n = 0;
  std::vector<Rational> l;
  Integer a;
  Rational norm;
};

struct SingularPart {
  std::vector<SingularCoefficient> coefficients;
  bool complete = false;  // completeness certified from stored precision
};

// ---------------------------------------------------------------------------
// Construction context: the named forms of one fixed working precision.
// ---------------------------------------------------------------------------

class JacobiRing {
 public:
  explicit JacobiRing(long prec) : prec_(prec) {
    if (prec < 2) throw std::invalid_argument("JacobiRing: prec >= 2");
  }

  long prec() const { return prec_; }

  const QRSeries& e4() {
    if (!e4_) e4_ = eisenstein(4, prec_);
    return *e4_;
  }
  const QRSeries& e6() {
    if (!e6_) e6_ = eisenstein(6, prec_);
    return *e6_;
  }
  const QRSeries& delta() {
    if (!delta_) delta_ = delta12(prec_ + 1);  // valuation 1: keep prec_ usable terms
    return *delta_;
  }

  /// phi_{-2,1} = -theta^2/eta^6, sign-normalized so the q^0 term is
  /// -(r - 2 + r^-1).
  const JacobiForm& phi_m21() {
    if (!phi_m21_) {
      QRSeries th = theta_odd(prec_ + 1);
      QRSeries quot = (th * th) / eta_power(6, prec_ + 1);
      phi_m21_ = JacobiForm{-2, 1, std::nullopt, -quot, Holomorphy::weak};
    }
    return *phi_m21_;
  }

  /// phi_{0,1}, built from the even theta quotient 4 sum_i (th_i(z)/th_i(0))^2
  /// on the doubled-q grid; the odd-grid terms cancel in the sum.
  const JacobiForm& phi01() {
    if (!phi01_) {
      long p2 = 2 * prec_ + 2;
      QRSeries t2 = theta2_qq(p2), t3 = theta3_qq(p2), t4 = theta4_qq(p2);
      QRSeries a2 = at_r_one(t2), a3 = at_r_one(t3), a4 = at_r_one(t4);
      QRSeries num = (t2 * t2) * ((a3 * a4).pow(2)) + (t3 * t3) * ((a2 * a4).pow(2)) +
                     (t4 * t4) * ((a2 * a3).pow(2));
      num *= Integer(4);
      QRSeries den = (a2 * a3 * a4).pow(2);
      QRSeries phi = QRSeries::divided_exact_leading(num, den).deflated_q(2);
      phi01_ = JacobiForm{0, 1, std::nullopt, phi.truncated(std::min(phi.prec(), prec_)),
                          Holomorphy::weak};
    }
    return *phi01_;
  }

  /// Weak generators of weight 0 and index t <= 4 with integral coefficients,
  /// q^0 terms r^-1+10+r, r^-1+4+r, r^-1+2+r, r^-1+1+r. phi_{0,2} and
  /// phi_{0,3} are pinned by their q^0 terms inside the weak-form module
  /// spanned by phi01^a phi_m21^b E4^c E6^d; phi_{0,4} comes from the ring
  /// relation 4 phi04 = phi01 phi03 - phi02^2 with exact division by 4.
  const JacobiForm& weak(int t) {
    switch (t) {
      case 1:
        return phi01();
      case 2:
        if (!phi02_)
          phi02_ = solve_weak(0, 2, {{{0, 2}, 0}, {{0, 1}, 1}});
        return *phi02_;
      case 3:
        if (!phi03_)
          phi03_ = solve_weak(0, 3, {{{0, 3}, 0}, {{0, 2}, 0}, {{0, 1}, 1}});
        return *phi03_;
      case 4:
        if (!phi04_) {
          const QRSeries& p1 = weak(1).series;
          const QRSeries& p2 = weak(2).series;
          const QRSeries& p3 = weak(3).series;
          QRSeries s = p1 * p3 - p2 * p2;
          phi04_ = JacobiForm{0, 4, std::nullopt, s.divided_exact(4), Holomorphy::weak};
        }
        return *phi04_;
      default:
        throw std::invalid_argument("weak generator: t must be 1..4");
    }
  }

  /// Jacobi-Eisenstein series of weight 4 and index t in {1,2,3}: the unique
  /// holomorphic form with a(0,0)=1, obtained by a linear solve imposing the
  /// vanishing of all q^0 coefficients with l != 0.
  const JacobiForm& eisenstein_jacobi(int t) {
    if (t < 1 || t > 3) throw std::invalid_argument("jacobi_eisenstein: t must be 1..3");
    auto& slot = e4t_[t];
    if (!slot) {
      std::vector<std::pair<std::pair<long, long>, Integer>> conds;
      conds.push_back({{0, 0}, 1});
      for (long l = 1; l <= t; ++l) conds.push_back({{0, l}, 0});
      JacobiForm f = solve_weak(4, t, conds);
      f.cls = Holomorphy::holomorphic;
      slot = std::move(f);
    }
    return *slot;
  }

  /// The nearly holomorphic form of weight 0 and index 21 given by the
  /// defining polynomial in the generators; q-valuation -1, a(0,0) = 24.
  JacobiForm xi021() {
    const QRSeries& E4 = e4();
    const QRSeries& p1 = weak(1).series;
    const QRSeries& p2 = weak(2).series;
    const QRSeries& p3 = weak(3).series;
    const QRSeries& p4 = weak(4).series;
    const QRSeries& E41 = eisenstein_jacobi(1).series;
    const QRSeries& E42 = eisenstein_jacobi(2).series;
    const QRSeries& E43 = eisenstein_jacobi(3).series;

    auto I = [](long v) { return Integer(v); };
    QRSeries p3_2 = p3.pow(2), p3_3 = p3_2 * p3, p3_4 = p3_2.pow(2), p3_5 = p3_4 * p3;
    QRSeries p4_2 = p4.pow(2), p4_3 = p4_2 * p4;
    QRSeries p2_2 = p2.pow(2), p2_3 = p2_2 * p2;

    // block multiplied by E_{4,3}/Delta_12
    QRSeries inner = E4 * p4 *
                         (I(-6) * E4 * p3_2 * p4_2 + I(10) * E41 * p3_3 * p4 + E42 * p4_3 -
                          I(5) * E42 * p3_4) +
                     E41 * E42 * p3 * (p3_4 - I(4) * p4_3);
    QRSeries head = (E43 * inner) / delta();

    QRSeries tail =
        I(-228) * p1.pow(3) * p3_2 * p4_3 +
        p1.pow(2) * p3 * p4 *
            (I(958) * p4_3 + I(240) * p2_2 * p4_2 + I(2137) * p2 * p3_2 * p4 + I(11) * p3_4) +
        p1 * (I(24) * p2 * p3_4 * p3_2 - I(27) * p2_2 * p3_4 * p4 +
              (I(-4080) * p2_3 * p3_2 - I(6273) * p3_4) * p4_2 - I(8826) * p2 * p3_2 * p4_3 +
              I(30) * p4_3 * p4_2) -
        I(75) * p3 * p2 * p4_2.pow(2) + (I(7668) * p3 * p2_3 + I(24796) * p3_3) * p4_3 +
        (I(1920) * p3 * p2_3 * p2_2 + I(6513) * p3_3 * p2_2) * p4_2 +
        (I(24) * p3_3 * p2_2.pow(2) + I(96) * p3_5 * p2) * p4 - I(24) * p3_5 * p2_3 -
        I(72) * p3_5 * p3_2;

    QRSeries xi = head + tail;
    return JacobiForm{0, 21, std::nullopt, xi, Holomorphy::nearly_holomorphic};
  }

 private:
  static QRSeries at_r_one(const QRSeries& s) {
    QRSeries r = s;
    std::vector<std::vector<int>> to_zero(1, std::vector<int>(1, 0));
    return r.remapped_r(1, to_zero);
  }

  /// Monomials phi01^a phi_m21^b E4^c E6^d of given weight and index span the
  /// weak forms; solve for the combination matching the given coefficient
  /// conditions at (n, l). Throws if the system is inconsistent, non-unique,
  /// or if the resulting series is not integral.
  JacobiForm solve_weak(int weight, int index,
                        const std::vector<std::pair<std::pair<long, long>, Integer>>& conds) {
    struct Mono {
      int a, b, c, d;
    };
    std::vector<Mono> monos;
    for (int b = 0; b <= index; ++b) {
      int a = index - b;
      int rest = weight + 2 * b;  // 4c + 6d = rest
      if (rest < 0) continue;
      for (int d = 0; 6 * d <= rest; ++d) {
        if ((rest - 6 * d) % 4 != 0) continue;
        monos.push_back({a, b, (rest - 6 * d) / 4, d});
      }
    }
    if (monos.empty()) throw std::domain_error("solve_weak: empty basis");

    std::vector<QRSeries> series;
    series.reserve(monos.size());
    for (const auto& m : monos) {
      QRSeries s = phi01().series.pow(static_cast<unsigned long>(m.a));
      if (m.b > 0) s = s * phi_m21().series.pow(static_cast<unsigned long>(m.b));
      if (m.c > 0) s = s * e4().pow(static_cast<unsigned long>(m.c));
      if (m.d > 0) s = s * e6().pow(static_cast<unsigned long>(m.d));
      series.push_back(std::move(s));
    }

    QMat a(conds.size(), QVec(monos.size(), Rational(0)));
    QVec b(conds.size(), Rational(0));
    for (std::size_t i = 0; i < conds.size(); ++i) {
      auto [nl, value] = conds[i];
      for (std::size_t j = 0; j < monos.size(); ++j)
        a[i][j] = Rational(series[j].coeff_int(nl.first, static_cast<int>(nl.second)));
      b[i] = Rational(value);
    }
    QVec coef = solve_overdetermined(std::move(a), std::move(b));

    Integer denom = 1;
    for (const auto& c : coef) denom = lcm(denom, den(c));
    QRSeries acc = QRSeries::zero(1, prec_);
    for (std::size_t j = 0; j < monos.size(); ++j) {
      Integer scaled = num(coef[j]) * div_exact(denom, den(coef[j]), "solve_weak");
      if (scaled == 0) continue;
      acc = acc + series[j] * scaled;
    }
    QRSeries result = acc.divided_exact(denom);
    return JacobiForm{weight, index, std::nullopt, std::move(result), Holomorphy::weak};
  }

  long prec_;
  std::optional<QRSeries> e4_, e6_, delta_;
  std::optional<JacobiForm> phi_m21_, phi01_, phi02_, phi03_, phi04_;
  std::map<int, std::optional<JacobiForm>> e4t_;
};

// ---------------------------------------------------------------------------
// Named constructions (spec operations).
// ---------------------------------------------------------------------------

inline JacobiForm weak_generator(int t, long prec) { return JacobiRing(prec).weak(t); }

inline JacobiForm jacobi_eisenstein(int t, long prec) {
  return JacobiRing(prec).eisenstein_jacobi(t);
}

/// Build xi_{0,21} to the requested precision (default working precision 10,
/// the displayed expansion runs through q^5). Inputs are constructed at
/// prec+2 so that the division by Delta_12 leaves at least `prec` terms.
inline JacobiForm build_xi021(long prec = 10) {
  if (prec < 2) throw std::invalid_argument("build_xi021: prec >= 2");
  JacobiRing ring(prec + 2);
  JacobiForm xi = ring.xi021();
  if (xi.series.prec() < prec) throw std::runtime_error("build_xi021: precision underflow");
  xi.series = xi.series.truncated(prec);
  return xi;
}

/// Input form of Delta_{12-m, D_m}: eta^(24-3m) theta(tau,z_1)...theta(tau,z_m),
/// weight 12-m, index lattice D_m (each theta contributes index 1/2 in its own
/// variable; exponents are stored against a half-integer prefactor). The
/// certified norm floor 2 - m/4 comes from the exponent-cost identity
/// norm = 2 - m/4 + 2 j_eta, so the expansion carries no negative-norm terms.
inline JacobiForm theta_product_Dm(int m, long prec) {
  if (m < 1 || m > kMaxVars) throw std::invalid_argument("theta_product_Dm: m must be 1..8");
  QRSeries s = eta_power(24 - 3 * m, prec, m);
  for (int i = 0; i < m; ++i) s = s * theta_odd(prec, m, i);
  LatticeIndex idx;
  idx.label = "D" + std::to_string(m);
  idx.rank = m;
  idx.dual_norm.assign(static_cast<std::size_t>(m), QVec(static_cast<std::size_t>(m), Rational(0)));
  for (int i = 0; i < m; ++i) idx.dual_norm[i][i] = 1;
  idx.norm_floor = Rational(8 - m, 4);
  idx.has_floor = true;
  return JacobiForm{12 - m, 0, std::move(idx), std::move(s), Holomorphy::holomorphic};
}

/// Input form of Delta_{9,A2}: eta^15 theta(z_1) theta(z_2) theta(z_2 - z_1),
/// weight 9, index lattice A2. Exponents are integral after normalization and
/// live in pairing coordinates, so the dual form is the inverse A2 Gram. The
/// norm floor 5/4 again follows from the exponent-cost identity.
inline JacobiForm theta_product_A2(long prec) {
  QRSeries s = eta_power(15, prec, 2);
  s = s * theta_odd(prec, 2, 0);
  s = s * theta_odd(prec, 2, 1);
  QRSeries cross = theta_odd(prec, 1, 0).remapped_r(2, {{-1}, {1}});
  s = s * cross;
  LatticeIndex idx;
  idx.label = "A2";
  idx.rank = 2;
  idx.dual_norm = {{Rational(2, 3), Rational(1, 3)}, {Rational(1, 3), Rational(2, 3)}};
  idx.norm_floor = Rational(5, 4);
  idx.has_floor = true;
  return JacobiForm{9, 0, std::move(idx), std::move(s), Holomorphy::holomorphic};
}

// ---------------------------------------------------------------------------
// Singular part: the complete list of negative-norm Fourier coefficients.
// ---------------------------------------------------------------------------

/// Hyperbolic norm of coefficient (n, stored exponent) of a lattice-index
/// form, with the half-integer prefactor folded in.
inline Rational lattice_norm_of(const JacobiForm& f, long n, const ExpVec& ev) {
  const auto& idx = *f.lattice_index;
  const auto& rp = f.series.rpref2();
  QVec l(static_cast<std::size_t>(idx.rank));
  for (int i = 0; i < idx.rank; ++i) l[i] = Rational(2 * ev[i] + rp[i], 2);
  Rational q = 0;
  for (int i = 0; i < idx.rank; ++i)
    for (int j = 0; j < idx.rank; ++j) q += idx.dual_norm[i][j] * l[i] * l[j];
  return Rational(2 * n) - q;
}

/// For scalar index t: coefficients depend on (l mod 2t, l^2 - 4tn), and a
/// nearly holomorphic form with pole order P has no nonzero coefficient of
/// norm below -(t^2 + 4tP). Every candidate class has a representative with
/// n <= (t^2-1)/(4t), so stored precision beyond that certifies completeness.
inline SingularPart singular_part(const JacobiForm& f) {
  SingularPart out;
  if (f.is_scalar_index()) {
    long t = f.scalar_index;
    if (t <= 0) throw std::invalid_argument("singular_part: index must be positive");
    long pole = std::max(0L, -f.series.val());
    bool enough = (t * t - 1) / (4 * t) < f.series.prec();
    if (enough) {
      for (long l0 = 0; l0 <= t; ++l0) {
        long r = mod_floor(l0 * l0, 4 * t);
        for (long d = (r == 0 ? 4 * t : r); d <= l0 * l0 + 4 * t * pole; d += 4 * t) {
          long n = (l0 * l0 - d) / (4 * t);
          if (n < f.series.val()) continue;  // zero by valuation
          Integer a = f.coeff(n, l0);
          if (a == 0) continue;
          out.coefficients.push_back(
              SingularCoefficient{n, {Rational(l0)}, a, Rational(-d)});
        }
      }
      out.complete = true;
      // consistency: every stored negative-norm coefficient must match its
      // class representative (elliptic periodicity of genuine Jacobi forms)
      for (long n = f.series.val(); n < f.series.prec(); ++n) {
        for (const auto& [ev, a] : f.series.coeff(n).terms()) {
          long l = ev[0];
          long norm = 4 * t * n - l * l;
          if (norm >= 0) continue;
          long l0 = mod_floor(l, 2 * t);
          if (l0 > t) l0 = 2 * t - l0;
          bool found = false;
          for (const auto& s : out.coefficients)
            if (s.norm == norm && s.l[0] == l0 && s.a == a) found = true;
          if (!found)
            throw std::runtime_error("singular_part: periodicity violation in stored range");
        }
      }
    } else {
      // precision cannot certify the class list; report the stored scan only
      for (long n = f.series.val(); n < f.series.prec(); ++n)
        for (const auto& [ev, a] : f.series.coeff(n).terms()) {
          long l = ev[0];
          long norm = 4 * t * n - l * l;
          if (norm < 0 && l >= 0)
            out.coefficients.push_back(SingularCoefficient{n, {Rational(l)}, a, Rational(norm)});
        }
      out.complete = false;
    }
  } else {
    const auto& idx = *f.lattice_index;
    for (long n = f.series.val(); n < f.series.prec(); ++n)
      for (const auto& [ev, a] : f.series.coeff(n).terms()) {
        Rational norm = lattice_norm_of(f, n, ev);
        if (norm >= 0) continue;
        QVec l(static_cast<std::size_t>(idx.rank));
        const auto& rp = f.series.rpref2();
        for (int i = 0; i < idx.rank; ++i) l[i] = Rational(2 * ev[i] + rp[i], 2);
        out.coefficients.push_back(SingularCoefficient{n, std::move(l), a, norm});
      }
    out.complete = idx.has_floor && idx.norm_floor >= 0 && out.coefficients.empty();
    if (idx.has_floor && idx.norm_floor >= 0 && !out.coefficients.empty())
      throw std::runtime_error("singular_part: certified norm floor violated");
  }
  return out;
}

}  // namespace reflekt

#endif
