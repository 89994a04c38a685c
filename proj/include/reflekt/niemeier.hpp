#ifndef REFLEKT_NIEMEIER_HPP
#define REFLEKT_NIEMEIER_HPP

#include <algorithm>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "reflekt/shortvec.hpp"

namespace reflekt {

struct ADE {
  char type = 'A';  // 'A', 'D' or 'E'
  int n = 1;

  auto operator<=>(const ADE&) const = default;
  std::string str() const { return std::string(1, type) + std::to_string(n); }
  int rank() const { return n; }
  long root_number() const {
    switch (type) {
      case 'A':
        return static_cast<long>(n) * (n + 1);
      case 'D':
        return 2L * n * (n - 1);
      default:
        return n == 6 ? 72 : n == 7 ? 126 : 240;
    }
  }
  /// Coxeter number; total roots of a Niemeier system equal 24h.
  int coxeter() const {
    switch (type) {
      case 'A':
        return n + 1;
      case 'D':
        return 2 * n - 2;
      default:
        return n == 6 ? 12 : n == 7 ? 18 : 30;
    }
  }
};

/// A root system label: multiset of ADE components (empty = Leech).
struct RootSystem {
  std::vector<ADE> comps;  // kept sorted

  static RootSystem of(std::vector<ADE> cs) {
    std::sort(cs.begin(), cs.end());
    return RootSystem{std::move(cs)};
  }
  bool empty() const { return comps.empty(); }
  int total_rank() const {
    int r = 0;
    for (const auto& c : comps) r += c.rank();
    return r;
  }
  long root_number() const {
    long r = 0;
    for (const auto& c : comps) r += c.root_number();
    return r;
  }
  std::string str() const {
    if (comps.empty()) return "Leech";
    std::ostringstream os;
    for (std::size_t i = 0; i < comps.size();) {
      std::size_t j = i;
      while (j < comps.size() && comps[j] == comps[i]) ++j;
      if (i) os << "+";
      if (j - i > 1) os << (j - i);
      os << comps[i].str();
      i = j;
    }
    return os.str();
  }
  auto operator<=>(const RootSystem&) const = default;
};

/// The 24 Niemeier root systems, Leech first, then ascending Coxeter number.
inline const std::vector<RootSystem>& niemeier_table() {
  static const std::vector<RootSystem> table = [] {
    auto A = [](int n) { return ADE{'A', n}; };
    auto D = [](int n) { return ADE{'D', n}; };
    auto E = [](int n) { return ADE{'E', n}; };
    auto rep = [](ADE c, int k) { return std::vector<ADE>(static_cast<std::size_t>(k), c); };
    auto cat = [](std::vector<ADE> a, const std::vector<ADE>& b) {
      a.insert(a.end(), b.begin(), b.end());
      return a;
    };
    std::vector<RootSystem> t;
    t.push_back(RootSystem::of({}));
    t.push_back(RootSystem::of(rep(A(1), 24)));
    t.push_back(RootSystem::of(rep(A(2), 12)));
    t.push_back(RootSystem::of(rep(A(3), 8)));
    t.push_back(RootSystem::of(rep(A(4), 6)));
    t.push_back(RootSystem::of(cat(rep(A(5), 4), rep(D(4), 1))));
    t.push_back(RootSystem::of(rep(D(4), 6)));
    t.push_back(RootSystem::of(rep(A(6), 4)));
    t.push_back(RootSystem::of(cat(rep(A(7), 2), rep(D(5), 2))));
    t.push_back(RootSystem::of(rep(A(8), 3)));
    t.push_back(RootSystem::of(cat(rep(A(9), 2), rep(D(6), 1))));
    t.push_back(RootSystem::of(rep(D(6), 4)));
    t.push_back(RootSystem::of({A(11), D(7), E(6)}));
    t.push_back(RootSystem::of(rep(E(6), 4)));
    t.push_back(RootSystem::of(rep(A(12), 2)));
    t.push_back(RootSystem::of(rep(D(8), 3)));
    t.push_back(RootSystem::of({A(15), D(9)}));
    t.push_back(RootSystem::of({A(17), E(7)}));
    t.push_back(RootSystem::of(cat(rep(E(7), 2), rep(D(10), 1))));
    t.push_back(RootSystem::of(rep(D(12), 2)));
    t.push_back(RootSystem::of({A(24)}));
    t.push_back(RootSystem::of({D(16), E(8)}));
    t.push_back(RootSystem::of(rep(E(8), 3)));
    t.push_back(RootSystem::of({D(24)}));
    return t;
  }();
  return table;
}

inline RootSystem parse_root_system(std::string_view s) {
  std::string str;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) str += c;
  if (str.empty() || str == "0" || str == "Leech" || str == "leech" || str == "empty")
    return RootSystem::of({});
  std::vector<ADE> comps;
  std::size_t pos = 0;
  while (pos < str.size()) {
    long count = 1;
    std::size_t d0 = pos;
    while (pos < str.size() && std::isdigit(static_cast<unsigned char>(str[pos]))) ++pos;
    if (pos > d0) count = std::stol(str.substr(d0, pos - d0));
    if (pos >= str.size() || (str[pos] != 'A' && str[pos] != 'D' && str[pos] != 'E'))
      throw std::invalid_argument("root system: expected A/D/E component");
    char type = str[pos++];
    std::size_t d1 = pos;
    while (pos < str.size() && std::isdigit(static_cast<unsigned char>(str[pos]))) ++pos;
    if (pos == d1) throw std::invalid_argument("root system: missing rank");
    int n = std::stoi(str.substr(d1, pos - d1));
    for (long i = 0; i < count; ++i) comps.push_back(ADE{type, n});
    if (pos < str.size()) {
      if (str[pos] != '+') throw std::invalid_argument("root system: expected '+'");
      ++pos;
    }
  }
  return RootSystem::of(std::move(comps));
}

inline std::optional<std::size_t> niemeier_lookup(const RootSystem& r) {
  const auto& t = niemeier_table();
  for (std::size_t i = 0; i < t.size(); ++i)
    if (t[i] == r) return i;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Coordinate models of the components. A_n lives in Z^(n+1) (roots e_i-e_j),
// D_n in Z^n (roots +-e_i+-e_j), E_n in doubled Z^8 coordinates with inner
// product dot/4 (integer halves). Components of one system sit in orthogonal
// blocks, so all cross pairings vanish and are never materialized.
// ---------------------------------------------------------------------------

struct ComponentModel {
  ADE label;
  int ambient = 0;
  int pair_den = 1;
  std::vector<std::vector<int>> roots;
  std::vector<std::vector<int>> simple;  // simple roots of the full component
};

inline long dot(const std::vector<int>& a, const std::vector<int>& b) {
  long s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += static_cast<long>(a[i]) * b[i];
  return s;
}

namespace detail {

inline ComponentModel model_A(int n) {
  ComponentModel m;
  m.label = ADE{'A', n};
  m.ambient = n + 1;
  m.pair_den = 1;
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) {
      if (i == j) continue;
      std::vector<int> r(static_cast<std::size_t>(n + 1), 0);
      r[static_cast<std::size_t>(i)] = 1;
      r[static_cast<std::size_t>(j)] = -1;
      m.roots.push_back(std::move(r));
    }
  for (int i = 0; i < n; ++i) {
    std::vector<int> r(static_cast<std::size_t>(n + 1), 0);
    r[static_cast<std::size_t>(i)] = 1;
    r[static_cast<std::size_t>(i + 1)] = -1;
    m.simple.push_back(std::move(r));
  }
  return m;
}

inline ComponentModel model_D(int n) {
  ComponentModel m;
  m.label = ADE{'D', n};
  m.ambient = n;
  m.pair_den = 1;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int si = -1; si <= 1; si += 2)
        for (int sj = -1; sj <= 1; sj += 2) {
          std::vector<int> r(static_cast<std::size_t>(n), 0);
          r[static_cast<std::size_t>(i)] = si;
          r[static_cast<std::size_t>(j)] = sj;
          m.roots.push_back(std::move(r));
        }
  for (int i = 0; i + 1 < n; ++i) {
    std::vector<int> r(static_cast<std::size_t>(n), 0);
    r[static_cast<std::size_t>(i)] = 1;
    r[static_cast<std::size_t>(i + 1)] = -1;
    m.simple.push_back(std::move(r));
  }
  std::vector<int> last(static_cast<std::size_t>(n), 0);
  last[static_cast<std::size_t>(n - 2)] = 1;
  last[static_cast<std::size_t>(n - 1)] = 1;
  m.simple.push_back(std::move(last));
  return m;
}

inline std::vector<std::vector<int>> e8_roots_doubled() {
  std::vector<std::vector<int>> roots;
  for (int i = 0; i < 8; ++i)
    for (int j = i + 1; j < 8; ++j)
      for (int si = -2; si <= 2; si += 4)
        for (int sj = -2; sj <= 2; sj += 4) {
          std::vector<int> r(8, 0);
          r[static_cast<std::size_t>(i)] = si;
          r[static_cast<std::size_t>(j)] = sj;
          roots.push_back(std::move(r));
        }
  for (int mask = 0; mask < 256; ++mask) {
    int minus = __builtin_popcount(static_cast<unsigned>(mask));
    if (minus % 2 != 0) continue;
    std::vector<int> r(8, 1);
    for (int b = 0; b < 8; ++b)
      if (mask & (1 << b)) r[static_cast<std::size_t>(b)] = -1;
    roots.push_back(std::move(r));
  }
  return roots;
}

/// Bourbaki simple roots of E8 in doubled coordinates.
inline std::vector<std::vector<int>> e8_simple_doubled() {
  std::vector<std::vector<int>> s;
  s.push_back({1, -1, -1, -1, -1, -1, -1, 1});  // alpha1
  s.push_back({2, 2, 0, 0, 0, 0, 0, 0});        // alpha2
  s.push_back({-2, 2, 0, 0, 0, 0, 0, 0});       // alpha3
  s.push_back({0, -2, 2, 0, 0, 0, 0, 0});       // alpha4
  s.push_back({0, 0, -2, 2, 0, 0, 0, 0});       // alpha5
  s.push_back({0, 0, 0, -2, 2, 0, 0, 0});       // alpha6
  s.push_back({0, 0, 0, 0, -2, 2, 0, 0});       // alpha7
  s.push_back({0, 0, 0, 0, 0, -2, 2, 0});       // alpha8
  return s;
}

inline ComponentModel model_E(int n) {
  ComponentModel m;
  m.label = ADE{'E', n};
  m.ambient = 8;
  m.pair_den = 4;
  auto all = e8_roots_doubled();
  auto simple = e8_simple_doubled();
  simple.resize(static_cast<std::size_t>(n));
  if (n == 8) {
    m.roots = std::move(all);
    m.simple = std::move(simple);
    return m;
  }
  // roots of the subsystem spanned by the first n Bourbaki simple roots:
  // exactly those E8 roots whose projection onto that span has full norm 2
  QMat gram(static_cast<std::size_t>(n), QVec(static_cast<std::size_t>(n), Rational(0)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      gram[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          Rational(dot(simple[static_cast<std::size_t>(i)], simple[static_cast<std::size_t>(j)]), 4);
  QMat ginv = inverse(gram);
  for (auto& r : all) {
    QVec t(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) t[static_cast<std::size_t>(i)] = Rational(dot(r, simple[static_cast<std::size_t>(i)]), 4);
    QVec y = mat_vec(ginv, t);
    Rational pp = 0;
    for (int i = 0; i < n; ++i) pp += y[static_cast<std::size_t>(i)] * t[static_cast<std::size_t>(i)];
    if (pp == 2) m.roots.push_back(r);
  }
  m.simple = std::move(simple);
  return m;
}

}  // namespace detail

inline const ComponentModel& component_model(ADE c) {
  static std::map<std::pair<char, int>, ComponentModel> cache;
  auto key = std::make_pair(c.type, c.n);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  ComponentModel m;
  if (c.type == 'A')
    m = detail::model_A(c.n);
  else if (c.type == 'D')
    m = detail::model_D(c.n);
  else
    m = detail::model_E(c.n);
  return cache.emplace(key, std::move(m)).first->second;
}

// ---------------------------------------------------------------------------
// Embeddings of a definite root sum S into a Niemeier root system R:
// component-wise (equal label), chain A_k in A_n / D_k in D_n, and A_k in
// D_n, with several S-components allowed inside one R-component on disjoint
// coordinate blocks. Placements are generated in packed canonical form.
// ---------------------------------------------------------------------------

struct Placement {
  ADE s_comp;
  std::size_t r_comp = 0;
  int offset = 0;  // starting coordinate inside the R-component (A/D targets)

  std::string str() const {
    std::ostringstream os;
    os << s_comp.str() << "->#" << r_comp << "@" << offset;
    return os.str();
  }
};

struct Embedding {
  RootSystem s;
  RootSystem r;
  std::vector<Placement> placements;

  std::string str() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < placements.size(); ++i) {
      if (i) os << ", ";
      os << placements[i].str();
    }
    return os.str();
  }
};

/// Simple-root coordinates of a placement inside its target component.
inline std::vector<std::vector<int>> placement_simple_roots(const Placement& p, const ComponentModel& target) {
  std::vector<std::vector<int>> out;
  const int amb = target.ambient;
  auto unit2 = [&](int i, int j, int vi, int vj) {
    std::vector<int> r(static_cast<std::size_t>(amb), 0);
    r[static_cast<std::size_t>(i)] = vi;
    r[static_cast<std::size_t>(j)] = vj;
    return r;
  };
  if (target.label.type == 'E') {
    if (p.s_comp != target.label) throw std::invalid_argument("placement: E targets take equal labels only");
    return target.simple;
  }
  if (p.s_comp.type == 'A') {
    for (int i = 0; i < p.s_comp.n; ++i) out.push_back(unit2(p.offset + i, p.offset + i + 1, 1, -1));
    return out;
  }
  if (p.s_comp.type == 'D' && target.label.type == 'D') {
    int k = p.s_comp.n;
    if (k < 2) throw std::invalid_argument("placement: D_k needs k >= 2");
    for (int i = 0; i + 1 < k; ++i) out.push_back(unit2(p.offset + i, p.offset + i + 1, 1, -1));
    out.push_back(unit2(p.offset + k - 2, p.offset + k - 1, 1, 1));
    return out;
  }
  throw std::invalid_argument("placement: unsupported component pair");
}

/// Coordinates consumed by a placement inside an A/D target.
inline int placement_width(const Placement& p, const ComponentModel& target) {
  if (target.label.type == 'E') return target.ambient;
  if (p.s_comp.type == 'A') return p.s_comp.n + 1;
  return p.s_comp.n;  // D in D
}

inline bool placement_admissible(ADE s, ADE r) {
  if (s == r) return true;
  if (r.type == 'A') return s.type == 'A' && s.n < r.n;
  if (r.type == 'D') return (s.type == 'A' && s.n + 1 <= r.n) || (s.type == 'D' && s.n < r.n);
  return false;  // partial embeddings into E components are not searched
}

/// All canonical embeddings of S into R; identical target components and
/// equivalent block layouts are generated once. Sorted deterministically.
inline std::vector<Embedding> embed_component(const RootSystem& s, const RootSystem& r) {
  if (s.empty()) return {Embedding{s, r, {}}};
  struct State {
    std::vector<int> used;             // coordinates consumed per r-component
    std::vector<Placement> placed;
  };
  const auto& rc = r.comps;
  std::vector<Embedding> found;
  std::set<std::string> seen;

  // order S components descending so packing is canonical
  std::vector<ADE> order = s.comps;
  std::sort(order.begin(), order.end(), [](const ADE& a, const ADE& b) {
    if (a.type != b.type) return a.type > b.type;  // E, D, A
    return a.n > b.n;
  });

  State st;
  st.used.assign(rc.size(), 0);
  auto rec = [&](auto&& self, std::size_t si) -> void {
    if (si == order.size()) {
      Embedding e{s, r, st.placed};
      std::ostringstream sig;
      // signature up to permutation of identical target components
      std::map<std::pair<std::string, std::string>, int> shape;
      for (std::size_t ci = 0; ci < rc.size(); ++ci) {
        std::vector<std::string> load;
        for (const auto& p : st.placed)
          if (p.r_comp == ci) load.push_back(p.s_comp.str() + "@" + std::to_string(p.offset));
        std::sort(load.begin(), load.end());
        std::string l;
        for (const auto& x : load) l += x + ";";
        ++shape[{rc[ci].str(), l}];
      }
      for (const auto& [k, v] : shape) sig << k.first << "|" << k.second << "|" << v << "&";
      if (seen.insert(sig.str()).second) found.push_back(std::move(e));
      return;
    }
    ADE comp = order[si];
    for (std::size_t ci = 0; ci < rc.size(); ++ci) {
      if (!placement_admissible(comp, rc[ci])) continue;
      const ComponentModel& target = component_model(rc[ci]);
      if (comp == rc[ci]) {
        if (st.used[ci] != 0) continue;  // whole component consumed
        st.used[ci] = target.ambient;
        st.placed.push_back(Placement{comp, ci, 0});
        self(self, si + 1);
        st.placed.pop_back();
        st.used[ci] = 0;
        continue;
      }
      Placement p{comp, ci, st.used[ci]};
      int w = placement_width(p, target);
      int capacity = rc[ci].type == 'A' ? rc[ci].n + 1 : rc[ci].n;
      if (st.used[ci] + w > capacity) continue;
      st.used[ci] += w;
      st.placed.push_back(p);
      self(self, si + 1);
      st.placed.pop_back();
      st.used[ci] -= w;
    }
  };
  rec(rec, 0);
  std::sort(found.begin(), found.end(),
            [](const Embedding& a, const Embedding& b) { return a.str() < b.str(); });
  return found;
}

/// Search the whole Niemeier table for admissible embeddings; returns
/// (table index, embedding) pairs in table order.
inline std::vector<std::pair<std::size_t, Embedding>> embed_search(const RootSystem& s) {
  std::vector<std::pair<std::size_t, Embedding>> out;
  const auto& t = niemeier_table();
  for (std::size_t i = 0; i < t.size(); ++i)
    for (auto& e : embed_component(s, t[i])) out.emplace_back(i, std::move(e));
  return out;
}

/// Roots of R orthogonal to the embedded image of S (roots of N(R) are roots
/// of R, so the enumeration runs over the table models).
struct OrthogonalCount {
  long roots = 0;   // full count, both signs
  long pairs = 0;   // roots / 2
};

inline OrthogonalCount orthogonal_root_count(const Embedding& e) {
  OrthogonalCount c;
  for (std::size_t ci = 0; ci < e.r.comps.size(); ++ci) {
    const ComponentModel& m = component_model(e.r.comps[ci]);
    std::vector<std::vector<int>> placed;
    for (const auto& p : e.placements)
      if (p.r_comp == ci)
        for (auto& sr : placement_simple_roots(p, m)) placed.push_back(sr);
    if (placed.empty()) {
      c.roots += static_cast<long>(m.roots.size());
      continue;
    }
    for (const auto& rho : m.roots) {
      bool orth = true;
      for (const auto& sr : placed)
        if (dot(rho, sr) != 0) {
          orth = false;
          break;
        }
      if (orth) ++c.roots;
    }
  }
  c.pairs = c.roots / 2;
  return c;
}

inline IntegerLattice root_sum_lattice(const RootSystem& s) {
  if (s.empty()) throw std::invalid_argument("root_sum_lattice: empty sum");
  std::optional<IntegerLattice> acc;
  for (const auto& c : s.comps) {
    IntegerLattice l = c.type == 'A' ? lat_A(c.n) : c.type == 'D' ? lat_D(c.n) : lat_E(c.n);
    acc = acc ? lat_direct_sum(*acc, l) : l;
  }
  return *acc;
}

struct ReflectivityCheck {
  bool strongly_reflective = false;
  Rational max_class_norm = 0;  // pillar (a): max over classes of min norm
  std::vector<std::string> trace;
};

/// Verify the two pillars of the strong-reflectivity argument for the
/// quasi-pullback of the degree-12 form along the embedded S:
///  (a) every discriminant class of S has a representative of norm <= 2;
///  (b) no root of R projects onto the S-span with projected norm in (0, 2),
///      and every norm-2 projection is itself a root lying inside S.
/// Pillar (b) is exactly the completion search: a projection p with
/// 0 < (p,p) < 2 completes the class-minimal vector to a root of N(R).
inline ReflectivityCheck strong_reflectivity_check(const RootSystem& s, const Embedding& e) {
  ReflectivityCheck out;
  bool pillars = true;
  if (s.empty()) {
    out.trace.push_back("empty S: quasi-pullback is the full degree-12 form");
  } else {
    IntegerLattice sl = root_sum_lattice(s);
    auto cls = min_norm_per_class(sl);
    out.max_class_norm = max_min_norm(cls);
    if (out.max_class_norm > 2) {
      pillars = false;
      out.trace.push_back("class without representative of norm <= 2 (max " +
                          num(out.max_class_norm).str() + "/" + den(out.max_class_norm).str() +
                          ")");
    } else {
      out.trace.push_back("all discriminant classes have representatives of norm <= 2");
    }

    // pillar (b): scan projections of all roots of R
    for (std::size_t ci = 0; ci < e.r.comps.size() && pillars; ++ci) {
      const ComponentModel& m = component_model(e.r.comps[ci]);
      std::vector<std::vector<int>> placed;
      for (const auto& p : e.placements)
        if (p.r_comp == ci)
          for (auto& sr : placement_simple_roots(p, m)) placed.push_back(sr);
      if (placed.empty()) continue;
      std::size_t k = placed.size();
      QMat gram(k, QVec(k, Rational(0)));
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
          gram[i][j] = Rational(dot(placed[i], placed[j]), m.pair_den);
      QMat ginv = inverse(gram);
      for (const auto& rho : m.roots) {
        QVec t(k);
        bool zero = true;
        for (std::size_t i = 0; i < k; ++i) {
          t[i] = Rational(dot(rho, placed[i]), m.pair_den);
          if (t[i] != 0) zero = false;
        }
        if (zero) continue;
        QVec y = mat_vec(ginv, t);
        Rational pp = 0;
        for (std::size_t i = 0; i < k; ++i) pp += y[i] * t[i];
        if (pp > 2) throw std::logic_error("strong_reflectivity_check: projection norm above 2");
        if (pp < 2) {
          pillars = false;
          out.trace.push_back("root of " + e.r.comps[ci].str() + " projects to norm " +
                              num(pp).str() + "/" + den(pp).str() +
                              " in (0,2): completion to a -2-root exists");
          break;
        }
        // pp == 2: the root lies in the span; it must belong to S itself
        bool integral = true;
        for (const auto& c : y)
          if (!is_integral(c)) integral = false;
        if (!integral) {
          pillars = false;
          out.trace.push_back("norm-2 dual vector outside S completes to a root of " +
                              e.r.comps[ci].str());
          break;
        }
      }
    }
    if (pillars)
      out.trace.push_back("no completion of a fractional class representative to a root exists");
  }
  out.strongly_reflective = pillars;
  if (pillars) out.trace.push_back("divisor: all (-2)-vector divisors, multiplicity 1");
  return out;
}

struct EmbeddingOption {
  Embedding embedding;
  long orthogonal_roots = 0;
  long n_pairs = 0;
  long weight = 12;
};

struct QuasiPullbackReport {
  RootSystem s;
  RootSystem niemeier;
  Embedding embedding;
  long orthogonal_roots = 0;
  long n_pairs = 0;         // N = roots/2
  long weight = 12;         // 12 + N
  bool cusp = false;        // N > 0
  bool strongly_reflective = false;
  Rational max_class_norm = 0;
  std::vector<std::string> trace;
  std::vector<std::string> flags;
  std::vector<EmbeddingOption> options;  // all canonical embeddings
  std::size_t max_n_option = 0;          // index of the option maximizing N
};

/// Quasi-pullback report for S embedded in the Niemeier system R: orthogonal
/// root count N, weight 12 + N, cusp flag (N > 0), the strong-reflectivity
/// verification, and the list of all canonical embedding options (weight
/// depends on the choice; the maximizing one is flagged).
inline QuasiPullbackReport quasi_pullback(const RootSystem& s, const RootSystem& r,
                                          std::size_t choice = 0) {
  auto idx = niemeier_lookup(r);
  if (!idx) throw std::invalid_argument("quasi_pullback: not a Niemeier root system");
  QuasiPullbackReport rep;
  rep.s = s;
  rep.niemeier = r;
  auto embs = embed_component(s, r);
  if (embs.empty()) throw std::domain_error("quasi_pullback: no admissible embedding found");
  if (choice >= embs.size()) throw std::invalid_argument("quasi_pullback: embedding choice out of range");

  for (std::size_t i = 0; i < embs.size(); ++i) {
    auto cnt = orthogonal_root_count(embs[i]);
    rep.options.push_back(EmbeddingOption{embs[i], cnt.roots, cnt.pairs, 12 + cnt.pairs});
    if (cnt.pairs > rep.options[rep.max_n_option].n_pairs) rep.max_n_option = i;
  }
  rep.embedding = embs[choice];
  rep.orthogonal_roots = rep.options[choice].orthogonal_roots;
  rep.n_pairs = rep.options[choice].n_pairs;
  rep.weight = rep.options[choice].weight;
  rep.cusp = rep.n_pairs > 0;

  ReflectivityCheck rc = strong_reflectivity_check(s, rep.embedding);
  rep.strongly_reflective = rc.strongly_reflective;
  rep.max_class_norm = rc.max_class_norm;
  rep.trace = rc.trace;

  // surfaced discrepancy for the classical A7 example: the quoted weight-60
  // figure (96 orthogonal roots) disagrees with the component-wise count
  if (s == RootSystem::of({ADE{'A', 7}}) &&
      r == RootSystem::of({ADE{'A', 7}, ADE{'A', 7}, ADE{'D', 5}, ADE{'D', 5}})) {
    long quoted_roots = 96, quoted_weight = 12 + quoted_roots / 2;
    if (rep.orthogonal_roots != quoted_roots)
      rep.flags.push_back(
          "enumerated orthogonal root count " + std::to_string(rep.orthogonal_roots) + " (weight " +
          std::to_string(rep.weight) + ") disagrees with the quoted reference figure " +
          std::to_string(quoted_roots) + " (weight " + std::to_string(quoted_weight) +
          "); both weights exceed n = 9, so the uniruledness verdict is unaffected");
  }
  return rep;
}

/// Minimal norm over the nonzero vectors of A_n^v equals n/(n+1); this is the
/// primitivity step of the strong-reflectivity argument.
inline bool primitivity_bound_check(int n, Rational* value = nullptr) {
  IntegerLattice a = lat_A(n);
  QMat ginv = inverse(to_qmat(a.gram));
  Rational best = 0;
  for (const auto& v : short_vectors_of_form(ginv, 2))
    if (best == 0 || v.norm < best) best = v.norm;
  if (value) *value = best;
  return best == Rational(n, n + 1);
}

}  // namespace reflekt

#endif
