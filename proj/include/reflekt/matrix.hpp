#ifndef REFLEKT_MATRIX_HPP
#define REFLEKT_MATRIX_HPP

#include <utility>
#include <vector>

#include "reflekt/integer.hpp"

namespace reflekt {

using IMat = std::vector<std::vector<Integer>>;
using QMat = std::vector<std::vector<Rational>>;
using IVec = std::vector<Integer>;
using QVec = std::vector<Rational>;

inline IMat identity_imat(std::size_t n) {
  IMat m(n, IVec(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

inline QMat to_qmat(const IMat& a) {
  QMat q(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    q[i].reserve(a[i].size());
    for (const auto& x : a[i]) q[i].emplace_back(x);
  }
  return q;
}

inline IVec mat_vec(const IMat& a, const IVec& v) {
  IVec r(a.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) r[i] += a[i][j] * v[j];
  return r;
}

inline QVec mat_vec(const QMat& a, const QVec& v) {
  QVec r(a.size(), Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) r[i] += a[i][j] * v[j];
  return r;
}

inline IMat mat_mul(const IMat& a, const IMat& b) {
  std::size_t n = a.size(), m = b[0].size(), k = b.size();
  IMat r(n, IVec(m, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l) {
      if (a[i][l] == 0) continue;
      for (std::size_t j = 0; j < m; ++j) r[i][j] += a[i][l] * b[l][j];
    }
  return r;
}

inline QMat mat_mul(const QMat& a, const QMat& b) {
  std::size_t n = a.size(), m = b[0].size(), k = b.size();
  QMat r(n, QVec(m, Rational(0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l) {
      if (a[i][l] == 0) continue;
      for (std::size_t j = 0; j < m; ++j) r[i][j] += a[i][l] * b[l][j];
    }
  return r;
}

/// Determinant by fraction-free Bareiss elimination. Exact.
inline Integer det(IMat a) {
  std::size_t n = a.size();
  if (n == 0) return 1;
  Integer sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && a[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(a[k], a[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        a[i][j] = div_exact(a[i][j] * a[k][k] - a[i][k] * a[k][j], prev, "det");
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

/// Exact inverse of a rational matrix via Gauss-Jordan; throws if singular.
inline QMat inverse(QMat a) {
  std::size_t n = a.size();
  QMat inv(n, QVec(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) throw std::domain_error("inverse: singular matrix");
    std::swap(a[c], a[p]);
    std::swap(inv[c], inv[p]);
    Rational piv = a[c][c];
    for (std::size_t j = 0; j < n; ++j) {
      a[c][j] /= piv;
      inv[c][j] /= piv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a[i][c] == 0) continue;
      Rational f = a[i][c];
      for (std::size_t j = 0; j < n; ++j) {
        a[i][j] -= f * a[c][j];
        inv[i][j] -= f * inv[c][j];
      }
    }
  }
  return inv;
}

/// Solve A x = b exactly over the rationals; throws if singular.
inline QVec solve(QMat a, QVec b) {
  std::size_t n = a.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) throw std::domain_error("solve: singular matrix");
    std::swap(a[c], a[p]);
    std::swap(b[c], b[p]);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (a[i][c] == 0) continue;
      Rational f = a[i][c] / a[c][c];
      for (std::size_t j = c; j < n; ++j) a[i][j] -= f * a[c][j];
      b[i] -= f * b[c];
    }
  }
  QVec x(n, Rational(0));
  for (std::size_t i = n; i-- > 0;) {
    Rational s = b[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= a[i][j] * x[j];
    x[i] = s / a[i][i];
  }
  return x;
}

/// Least general solver: A (n x m) c = b with n >= m, requiring an exact and
/// unique solution. Throws if the system is inconsistent or rank-deficient.
inline QVec solve_overdetermined(QMat a, QVec b) {
  std::size_t n = a.size();
  std::size_t m = n == 0 ? 0 : a[0].size();
  std::size_t row = 0;
  std::vector<std::size_t> pivot_col;
  for (std::size_t c = 0; c < m && row < n; ++c) {
    std::size_t p = row;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) continue;
    std::swap(a[row], a[p]);
    std::swap(b[row], b[p]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == row || a[i][c] == 0) continue;
      Rational f = a[i][c] / a[row][c];
      for (std::size_t j = c; j < m; ++j) a[i][j] -= f * a[row][j];
      b[i] -= f * b[row];
    }
    pivot_col.push_back(c);
    ++row;
  }
  if (pivot_col.size() != m) throw std::domain_error("solve_overdetermined: non-unique solution");
  for (std::size_t i = row; i < n; ++i)
    if (b[i] != 0) throw std::domain_error("solve_overdetermined: inconsistent system");
  QVec x(m, Rational(0));
  for (std::size_t r = 0; r < row; ++r) x[pivot_col[r]] = b[r] / a[r][pivot_col[r]];
  return x;
}

struct SmithResult {
  IMat d;  // diagonal, d1 | d2 | ... , nonnegative
  IMat u;  // unimodular, u * a * v = d
  IMat v;
};

/// Smith normal form over Z by integer row/column reduction.
inline SmithResult smith_normal_form(IMat a) {
  std::size_t n = a.size();
  std::size_t m = n == 0 ? 0 : a[0].size();
  IMat u = identity_imat(n), v = identity_imat(m);

  auto row_op = [&](std::size_t i, std::size_t j, const Integer& f) {
    for (std::size_t k = 0; k < m; ++k) a[i][k] -= f * a[j][k];
    for (std::size_t k = 0; k < n; ++k) u[i][k] -= f * u[j][k];
  };
  auto col_op = [&](std::size_t i, std::size_t j, const Integer& f) {
    for (std::size_t k = 0; k < n; ++k) a[k][i] -= f * a[k][j];
    for (std::size_t k = 0; k < m; ++k) v[k][i] -= f * v[k][j];
  };
  auto row_swap = [&](std::size_t i, std::size_t j) {
    std::swap(a[i], a[j]);
    std::swap(u[i], u[j]);
  };
  auto col_swap = [&](std::size_t i, std::size_t j) {
    for (std::size_t k = 0; k < n; ++k) std::swap(a[k][i], a[k][j]);
    for (std::size_t k = 0; k < m; ++k) std::swap(v[k][i], v[k][j]);
  };

  auto diagonalize = [&]() {
    std::size_t t = 0;
    while (t < n && t < m) {
      // move a nonzero entry of minimal absolute value into the pivot
      bool found = false;
      std::size_t bi = t, bj = t;
      Integer best = 0;
      for (std::size_t i = t; i < n; ++i)
        for (std::size_t j = t; j < m; ++j)
          if (a[i][j] != 0 && (!found || abs(a[i][j]) < best)) {
            found = true;
            best = abs(a[i][j]);
            bi = i;
            bj = j;
          }
      if (!found) break;
      row_swap(t, bi);
      col_swap(t, bj);

      bool clean = false;
      while (!clean) {
        clean = true;
        for (std::size_t i = t + 1; i < n; ++i) {
          if (a[i][t] == 0) continue;
          Integer f = a[i][t] / a[t][t];
          row_op(i, t, f);
          if (a[i][t] != 0) {
            row_swap(t, i);
            clean = false;
          }
        }
        for (std::size_t j = t + 1; j < m; ++j) {
          if (a[t][j] == 0) continue;
          Integer f = a[t][j] / a[t][t];
          col_op(j, t, f);
          if (a[t][j] != 0) {
            col_swap(t, j);
            clean = false;
          }
        }
      }
      ++t;
    }
    return t;
  };

  // diagonalize, then repair the divisibility chain d1 | d2 | ... by folding
  // an offending column back in and rediagonalizing; each pass strictly
  // improves the gcd at the first violation, so this terminates quickly.
  std::size_t rank = diagonalize();
  for (int guard = 0;; ++guard) {
    if (guard > 1000) throw std::runtime_error("smith_normal_form: no convergence");
    bool ok = true;
    for (std::size_t i = 0; i + 1 < rank && ok; ++i)
      if (a[i][i] != 0 && a[i + 1][i + 1] % a[i][i] != 0) {
        col_op(i, i + 1, Integer(-1));  // col_i += col_{i+1}
        ok = false;
      }
    if (ok) break;
    rank = diagonalize();
  }

  for (std::size_t i = 0; i < rank; ++i) {
    if (a[i][i] < 0) {
      for (std::size_t k = 0; k < m; ++k) v[k][i] = -v[k][i];
      a[i][i] = -a[i][i];
    }
  }
  return SmithResult{std::move(a), std::move(u), std::move(v)};
}

/// Signature (p, q) of a nondegenerate symmetric rational matrix by exact
/// symmetric diagonalization. No floating point.
inline std::pair<int, int> signature_of(QMat g) {
  std::size_t n = g.size();
  int pos = 0, neg = 0;
  std::vector<bool> done(n, false);
  for (std::size_t step = 0; step < n; ++step) {
    // pick an unprocessed index with nonzero diagonal, fixing one up if needed
    std::size_t piv = n;
    for (std::size_t i = 0; i < n; ++i)
      if (!done[i] && g[i][i] != 0) {
        piv = i;
        break;
      }
    if (piv == n) {
      // all remaining diagonals vanish; find a nonzero off-diagonal pair
      std::size_t bi = n, bj = n;
      for (std::size_t i = 0; i < n && bi == n; ++i) {
        if (done[i]) continue;
        for (std::size_t j = i + 1; j < n; ++j)
          if (!done[j] && g[i][j] != 0) {
            bi = i;
            bj = j;
            break;
          }
      }
      if (bi == n) throw std::domain_error("signature_of: degenerate form");
      // basis change b_i += b_j turns the zero diagonal into 2 g[i][j]
      for (std::size_t k = 0; k < n; ++k) g[bi][k] += g[bj][k];
      for (std::size_t k = 0; k < n; ++k) g[k][bi] += g[k][bj];
      piv = bi;
    }
    Rational d = g[piv][piv];
    if (d > 0)
      ++pos;
    else
      ++neg;
    done[piv] = true;
    // two-sided update: g'[i][j] = g[i][j] - g[i][piv] g[piv][j] / d
    QVec rowp = g[piv];
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i] || rowp[i] == 0) continue;
      Rational fi = rowp[i] / d;
      for (std::size_t j = 0; j < n; ++j) {
        if (done[j]) continue;
        g[i][j] -= fi * rowp[j];
      }
    }
  }
  return {pos, neg};
}

}  // namespace reflekt

#endif
