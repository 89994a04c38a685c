#ifndef REFLEKT_LAURENT_HPP
#define REFLEKT_LAURENT_HPP

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "reflekt/integer.hpp"

namespace reflekt {

/// Hard cap on the number of elliptic variables (D8 is the widest tower).
inline constexpr int kMaxVars = 8;

/// Exponent vector of a Laurent monomial r1^e0 * ... * rm^e{m-1}.
/// Slots at index >= arity are kept at zero so lexicographic comparison of
/// the raw array is a total order compatible across equal arities.
struct ExpVec {
  std::array<int32_t, kMaxVars> e{};

  static ExpVec zero() { return ExpVec{}; }
  static ExpVec single(int var, int32_t exp) {
    ExpVec v;
    v.e[var] = exp;
    return v;
  }

  int32_t operator[](int i) const { return e[i]; }
  int32_t& operator[](int i) { return e[i]; }

  ExpVec operator+(const ExpVec& o) const {
    ExpVec r;
    for (int i = 0; i < kMaxVars; ++i) r.e[i] = e[i] + o.e[i];
    return r;
  }
  ExpVec operator-() const {
    ExpVec r;
    for (int i = 0; i < kMaxVars; ++i) r.e[i] = -e[i];
    return r;
  }
  auto operator<=>(const ExpVec&) const = default;
};

/// Laurent polynomial in 1..8 variables with Integer coefficients.
/// Invariants: no zero coefficients are stored; every exponent vector uses
/// only the first `arity` slots.
class LaurentPoly {
 public:
  using Terms = std::map<ExpVec, Integer>;

  explicit LaurentPoly(int arity = 1) : arity_(check_arity(arity)) {}

  static LaurentPoly constant(int arity, Integer c) {
    LaurentPoly p(arity);
    if (c != 0) p.terms_.emplace(ExpVec::zero(), std::move(c));
    return p;
  }
  static LaurentPoly monomial(int arity, const ExpVec& ev, Integer c) {
    LaurentPoly p(arity);
    if (c != 0) p.terms_.emplace(ev, std::move(c));
    return p;
  }

  int arity() const { return arity_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  const Terms& terms() const { return terms_; }

  const Integer& coeff(const ExpVec& ev) const {
    static const Integer kZero = 0;
    auto it = terms_.find(ev);
    return it == terms_.end() ? kZero : it->second;
  }

  void add_term(const ExpVec& ev, const Integer& c) {
    if (c == 0) return;
    auto [it, fresh] = terms_.emplace(ev, c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  LaurentPoly& operator+=(const LaurentPoly& o) {
    require_same_arity(o);
    for (const auto& [ev, c] : o.terms_) add_term(ev, c);
    return *this;
  }
  LaurentPoly& operator-=(const LaurentPoly& o) {
    require_same_arity(o);
    for (const auto& [ev, c] : o.terms_) add_term(ev, -c);
    return *this;
  }
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  LaurentPoly operator-() const {
    LaurentPoly r(arity_);
    for (const auto& [ev, c] : terms_) r.terms_.emplace(ev, -c);
    return r;
  }

  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    a.require_same_arity(b);
    LaurentPoly r(a.arity_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) r.add_term(ea + eb, ca * cb);
    return r;
  }

  LaurentPoly& operator*=(const Integer& c) {
    if (c == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [ev, v] : terms_) v *= c;
    return *this;
  }
  friend LaurentPoly operator*(LaurentPoly a, const Integer& c) { return a *= c; }
  friend LaurentPoly operator*(const Integer& c, LaurentPoly a) { return a *= c; }

  /// Exact division of every coefficient; throws on remainder.
  LaurentPoly& divide_exact(const Integer& c) {
    for (auto& [ev, v] : terms_) v = div_exact(v, c, "LaurentPoly::divide_exact");
    return *this;
  }

  /// Multiply by the monomial r^shift.
  LaurentPoly shifted(const ExpVec& shift) const {
    LaurentPoly r(arity_);
    for (const auto& [ev, c] : terms_) r.terms_.emplace(ev + shift, c);
    return r;
  }

  /// Substitute variables by monomials: new exponent = M * old exponent,
  /// where M is new_arity x arity. Used for z -> 2z, z -> z2 - z1, and for
  /// embedding a one-variable series into a wider variable set.
  LaurentPoly remapped(int new_arity, const std::vector<std::vector<int>>& m) const {
    check_arity(new_arity);
    if (static_cast<int>(m.size()) != new_arity)
      throw std::invalid_argument("LaurentPoly::remapped: bad matrix rows");
    LaurentPoly r(new_arity);
    for (const auto& [ev, c] : terms_) {
      ExpVec nev;
      for (int i = 0; i < new_arity; ++i) {
        long s = 0;
        for (int j = 0; j < arity_; ++j) s += static_cast<long>(m[i][j]) * ev[j];
        nev[i] = static_cast<int32_t>(s);
      }
      r.add_term(nev, c);  // remaps may collide, accumulate
    }
    return r;
  }

  /// Is the polynomial invariant under e -> -e (all variables negated)?
  bool symmetric_under_negation() const {
    for (const auto& [ev, c] : terms_)
      if (coeff(-ev) != c) return false;
    return true;
  }

  Integer sum_of_coefficients() const {
    Integer s = 0;
    for (const auto& [ev, c] : terms_) s += c;
    return s;
  }

  int32_t max_abs_exponent() const {
    int32_t m = 0;
    for (const auto& [ev, c] : terms_)
      for (int i = 0; i < arity_; ++i) m = std::max(m, std::abs(ev[i]));
    return m;
  }

  bool operator==(const LaurentPoly& o) const = default;

  /// Deterministic rendering, terms in ascending lexicographic exponent
  /// order: "42*r^-9 + 168*r^-8 + ... + 24". Half-integer exponents are
  /// rendered by the caller via `half_shift` (see QRSeries::dump_line).
  std::string to_string(const std::array<int, kMaxVars>& half_shift = {}) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [ev, c] : terms_) {
      Integer a = c;
      if (first) {
        if (a < 0) {
          os << "-";
          a = -a;
        }
      } else {
        os << (a < 0 ? " - " : " + ");
        if (a < 0) a = -a;
      }
      first = false;
      std::string mono = monomial_string(ev, half_shift);
      if (mono.empty())
        os << a.str();
      else if (a == 1)
        os << mono;
      else
        os << a.str() << "*" << mono;
    }
    return os.str();
  }

 private:
  static int check_arity(int a) {
    if (a < 1 || a > kMaxVars) throw std::invalid_argument("LaurentPoly: arity must be 1..8");
    return a;
  }
  void require_same_arity(const LaurentPoly& o) const {
    if (arity_ != o.arity_) throw std::invalid_argument("LaurentPoly: arity mismatch");
  }

  std::string monomial_string(const ExpVec& ev, const std::array<int, kMaxVars>& half_shift) const {
    std::ostringstream os;
    bool any = false;
    for (int i = 0; i < arity_; ++i) {
      long num2 = 2L * ev[i] + half_shift[i];  // exponent doubled
      if (num2 == 0) continue;
      if (any) os << "*";
      any = true;
      os << (arity_ == 1 ? std::string("r") : "r" + std::to_string(i + 1));
      if (num2 == 2) continue;  // exponent 1
      os << "^";
      if (num2 % 2 == 0)
        os << (num2 / 2);
      else
        os << "(" << num2 << "/2)";
    }
    return os.str();
  }

  int arity_;
  Terms terms_;
};

}  // namespace reflekt

#endif
