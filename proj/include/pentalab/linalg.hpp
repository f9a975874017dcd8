/// @file linalg.hpp
/// @brief Small dense matrices over any scalar backend: products, determinants,
/// inverses, exact linear solves, 1-dimensional nullspaces.
#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "pentalab/dual.hpp"
#include "pentalab/scalar.hpp"

namespace pentalab {

template <class T>
struct is_dual_scalar : std::false_type {};
template <class S>
struct is_dual_scalar<Dual<S>> : std::true_type {};

template <class S>
using Vec = std::vector<S>;

namespace detail {

/// True only when the value is zero including any tangent part, so skipping
/// it in a product never drops derivative information.
template <class S>
bool hard_zero(const S& v) {
  if constexpr (is_dual_scalar<S>::value)
    return v == ScalarTraits<S>::zero();
  else
    return ScalarTraits<S>::is_zero(v);
}

}  // namespace detail

template <class S>
struct Mat {
  std::size_t rows = 0, cols = 0;
  std::vector<Vec<S>> a;

  Mat() = default;
  Mat(std::size_t r, std::size_t c)
      : rows(r), cols(c), a(r, Vec<S>(c, ScalarTraits<S>::zero())) {}

  static Mat identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.a[i][i] = ScalarTraits<S>::one();
    return m;
  }

  Vec<S>& operator[](std::size_t r) { return a[r]; }
  const Vec<S>& operator[](std::size_t r) const { return a[r]; }

  friend Mat operator*(const Mat& x, const Mat& y) {
    Mat out(x.rows, y.cols);
    for (std::size_t i = 0; i < x.rows; ++i)
      for (std::size_t k = 0; k < x.cols; ++k) {
        if (detail::hard_zero(x.a[i][k])) continue;
        for (std::size_t j = 0; j < y.cols; ++j)
          out.a[i][j] += x.a[i][k] * y.a[k][j];
      }
    return out;
  }

  friend Vec<S> operator*(const Mat& x, const Vec<S>& v) {
    Vec<S> out(x.rows, ScalarTraits<S>::zero());
    for (std::size_t i = 0; i < x.rows; ++i)
      for (std::size_t k = 0; k < x.cols; ++k) out[i] += x.a[i][k] * v[k];
    return out;
  }

  friend bool operator==(const Mat& x, const Mat& y) {
    if (x.rows != y.rows || x.cols != y.cols) return false;
    for (std::size_t i = 0; i < x.rows; ++i)
      for (std::size_t j = 0; j < x.cols; ++j)
        if (!(x.a[i][j] == y.a[i][j])) return false;
    return true;
  }

  Mat transposed() const {
    Mat t(cols, rows);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) t.a[j][i] = a[i][j];
    return t;
  }
};

namespace detail {

/// Largest |entry| (via pivot_mag), used to scale float negligibility tests.
template <class S>
double mat_scale(const Mat<S>& m) {
  double s = 0.0;
  for (const auto& row : m.a)
    for (const auto& v : row) s = std::max(s, ScalarTraits<S>::pivot_mag(v));
  return s;
}

/// In-place forward elimination with partial pivoting. Returns pivot columns;
/// `perm_sign` (if given) accumulates the row-swap sign.
template <class S>
std::vector<std::size_t> eliminate(Mat<S>& m, int* perm_sign = nullptr) {
  const double scale = mat_scale(m);
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  if (perm_sign) *perm_sign = 1;
  for (std::size_t c = 0; c < m.cols && r < m.rows; ++c) {
    std::size_t best = r;
    double best_mag = ScalarTraits<S>::pivot_mag(m.a[r][c]);
    for (std::size_t i = r + 1; i < m.rows; ++i) {
      double mag = ScalarTraits<S>::pivot_mag(m.a[i][c]);
      if (mag > best_mag) {
        best = i;
        best_mag = mag;
      }
    }
    if (ScalarTraits<S>::negligible(m.a[best][c], scale)) continue;
    if (best != r) {
      std::swap(m.a[best], m.a[r]);
      if (perm_sign) *perm_sign = -*perm_sign;
    }
    for (std::size_t i = r + 1; i < m.rows; ++i) {
      if (ScalarTraits<S>::is_zero(m.a[i][c])) continue;
      S f = m.a[i][c] / m.a[r][c];
      for (std::size_t j = c; j < m.cols; ++j) m.a[i][j] -= f * m.a[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace detail

template <class S>
std::size_t rank(Mat<S> m) {
  return detail::eliminate(m).size();
}

/// Determinant by elimination; sound over fields (and over duals whose
/// primal matrix is nonsingular).
template <class S>
S det_gauss(Mat<S> m) {
  int sign = 1;
  auto pivots = detail::eliminate(m, &sign);
  if (pivots.size() < m.rows) return ScalarTraits<S>::zero();
  S d = ScalarTraits<S>::one();
  for (std::size_t i = 0; i < m.rows; ++i) d *= m.a[i][i];
  return sign < 0 ? -d : d;
}

/// Division-free determinant: memoized cofactor expansion over column subsets.
/// Required for dual numbers, whose zero-primal values are zero divisors.
template <class S>
S det_cofactor(const Mat<S>& m) {
  const std::size_t n = m.rows;
  const std::uint32_t full = (n >= 32) ? 0 : ((1u << n) - 1);
  std::vector<S> memo(full + 1, ScalarTraits<S>::zero());
  std::vector<bool> have(full + 1, false);
  memo[0] = ScalarTraits<S>::one();
  have[0] = true;
  // f(mask) = det of the last popcount(mask) rows restricted to columns in mask.
  auto rec = [&](auto&& self, std::uint32_t mask) -> const S& {
    if (have[mask]) return memo[mask];
    const int cnt = __builtin_popcount(mask);
    const std::size_t row = n - std::size_t(cnt);
    S acc = ScalarTraits<S>::zero();
    int parity = 0;
    for (std::uint32_t rest = mask; rest; rest &= rest - 1, ++parity) {
      const int c = __builtin_ctz(rest);
      const S& sub = self(self, mask & ~(1u << c));
      S term = m.a[row][std::size_t(c)] * sub;
      acc += (parity % 2 == 0) ? term : -term;
    }
    memo[mask] = acc;
    have[mask] = true;
    return memo[mask];
  };
  return rec(rec, full);
}

template <class S>
S det(const Mat<S>& m) {
  if constexpr (is_dual_scalar<S>::value)
    return det_cofactor(m);
  else
    return det_gauss(m);
}

template <class S>
Mat<S> inverse(const Mat<S>& m) {
  const std::size_t n = m.rows;
  Mat<S> aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug.a[i][j] = m.a[i][j];
    aug.a[i][n + i] = ScalarTraits<S>::one();
  }
  auto pivots = detail::eliminate(aug);
  if (pivots.size() < n || pivots.back() >= n) throw SingularMatrix();
  // back-substitution
  Mat<S> inv(n, n);
  for (std::size_t col = 0; col < n; ++col) {
    for (std::size_t i = n; i-- > 0;) {
      S v = aug.a[i][n + col];
      for (std::size_t j = i + 1; j < n; ++j) v -= aug.a[i][j] * inv.a[j][col];
      inv.a[i][col] = v / aug.a[i][i];
    }
  }
  return inv;
}

/// Solves A x = b when the solution exists and is unique; nullopt otherwise
/// (rank-deficient or inconsistent). A may be rectangular.
template <class S>
std::optional<Vec<S>> solve_exact(const Mat<S>& A, const Vec<S>& b) {
  Mat<S> aug(A.rows, A.cols + 1);
  for (std::size_t i = 0; i < A.rows; ++i) {
    for (std::size_t j = 0; j < A.cols; ++j) aug.a[i][j] = A.a[i][j];
    aug.a[i][A.cols] = b[i];
  }
  const double scale = detail::mat_scale(aug);
  auto pivots = detail::eliminate(aug);
  if (!pivots.empty() && pivots.back() == A.cols) return std::nullopt;  // inconsistent
  if (pivots.size() < A.cols) return std::nullopt;                      // underdetermined
  // rows below the pivot rows must be negligible, else inconsistent
  for (std::size_t i = pivots.size(); i < A.rows; ++i)
    if (!ScalarTraits<S>::negligible(aug.a[i][A.cols], scale)) return std::nullopt;
  Vec<S> x(A.cols, ScalarTraits<S>::zero());
  for (std::size_t i = A.cols; i-- > 0;) {
    S v = aug.a[i][A.cols];
    for (std::size_t j = i + 1; j < A.cols; ++j) v -= aug.a[i][j] * x[j];
    x[i] = v / aug.a[i][i];
  }
  return x;
}

/// One nullspace vector when the nullspace is exactly 1-dimensional.
template <class S>
std::optional<Vec<S>> nullspace1(const Mat<S>& A) {
  Mat<S> m = A;
  auto pivots = detail::eliminate(m);
  if (pivots.size() + 1 != A.cols) return std::nullopt;
  std::vector<bool> is_pivot(A.cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::size_t free_col = 0;
  while (free_col < A.cols && is_pivot[free_col]) ++free_col;
  Vec<S> x(A.cols, ScalarTraits<S>::zero());
  x[free_col] = ScalarTraits<S>::one();
  // pivot row i has pivot at pivots[i]; substitute from the bottom up
  for (std::size_t i = pivots.size(); i-- > 0;) {
    S v = ScalarTraits<S>::zero();
    for (std::size_t j = pivots[i] + 1; j < A.cols; ++j) v -= m.a[i][j] * x[j];
    x[pivots[i]] = v / m.a[i][pivots[i]];
  }
  return x;
}

}  // namespace pentalab
