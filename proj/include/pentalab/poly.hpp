/// @file poly.hpp
/// @brief Dense Laurent polynomials in the spectral variable and small square
/// matrices over them. Arithmetic is exact whenever the coefficient scalars
/// are exact; only ring operations on the coefficients are required, so the
/// coefficient type may itself be a polynomial or a dual number.
#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "pentalab/error.hpp"
#include "pentalab/scalar.hpp"

namespace pentalab {

/// Laurent polynomial sum_m c[m - low] * L^m where L is the indeterminate.
/// Invariant: the coefficient vector is empty (zero polynomial, low() == 0)
/// or has nonzero first and last entries.
template <class S>
class Poly {
 public:
  Poly() = default;
  explicit Poly(const S& c, long e = 0) : low_(e), c_{c} { normalize(); }

  static Poly from_coeffs(long low, std::vector<S> coeffs) {
    Poly p;
    p.low_ = low;
    p.c_ = std::move(coeffs);
    p.normalize();
    return p;
  }

  bool is_zero() const { return c_.empty(); }
  /// Lowest exponent carrying a nonzero coefficient; 0 for the zero polynomial.
  long low() const { return low_; }
  /// Highest exponent carrying a nonzero coefficient; -1 for the zero
  /// polynomial (callers should test is_zero first when that collides).
  long degree() const { return low_ + long(c_.size()) - 1; }

  S coeff(long e) const {
    if (e < low_ || e > degree()) return S{};
    return c_[std::size_t(e - low_)];
  }

  /// Multiplies by L^e.
  Poly shifted(long e) const {
    Poly p = *this;
    if (!p.c_.empty()) p.low_ += e;
    return p;
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const long lo = a.low_ < b.low_ ? a.low_ : b.low_;
    const long hi = a.degree() > b.degree() ? a.degree() : b.degree();
    Poly out;
    out.low_ = lo;
    out.c_.resize(std::size_t(hi - lo + 1), S{});
    for (std::size_t m = 0; m < a.c_.size(); ++m)
      out.c_[std::size_t(a.low_ - lo) + m] = out.c_[std::size_t(a.low_ - lo) + m] + a.c_[m];
    for (std::size_t m = 0; m < b.c_.size(); ++m)
      out.c_[std::size_t(b.low_ - lo) + m] = out.c_[std::size_t(b.low_ - lo) + m] + b.c_[m];
    out.normalize();
    return out;
  }

  Poly operator-() const {
    Poly p = *this;
    for (auto& v : p.c_) v = S{} - v;
    return p;
  }

  friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    Poly out;
    out.low_ = a.low_ + b.low_;
    out.c_.assign(a.c_.size() + b.c_.size() - 1, S{});
    for (std::size_t m = 0; m < a.c_.size(); ++m) {
      if (a.c_[m] == S{}) continue;
      for (std::size_t l = 0; l < b.c_.size(); ++l)
        out.c_[m + l] = out.c_[m + l] + a.c_[m] * b.c_[l];
    }
    out.normalize();
    return out;
  }

  friend Poly operator*(const Poly& a, const S& v) { return a * Poly(v); }
  friend Poly operator*(const S& v, const Poly& a) { return Poly(v) * a; }

  friend bool operator==(const Poly& a, const Poly& b) {
    return a.low_ == b.low_ && a.c_ == b.c_;
  }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  /// Value at a point; negative exponents require a nonzero point.
  S eval(const S& at) const {
    S acc{};
    for (std::size_t m = c_.size(); m-- > 0;) acc = acc * at + c_[m];
    if (low_ > 0)
      for (long e = 0; e < low_; ++e) acc = acc * at;
    if (low_ < 0) {
      if (at == S{}) throw PoleEncountered();
      for (long e = 0; e > low_; --e) acc = acc / at;
    }
    return acc;
  }

 private:
  void normalize() {
    while (!c_.empty() && c_.back() == S{}) c_.pop_back();
    std::size_t lead = 0;
    while (lead < c_.size() && c_[lead] == S{}) ++lead;
    if (lead > 0) {
      c_.erase(c_.begin(), c_.begin() + long(lead));
      low_ += long(lead);
    }
    if (c_.empty()) low_ = 0;
  }

  long low_ = 0;
  std::vector<S> c_;
};

/// Square matrix with Laurent-polynomial entries in one spectral variable.
template <class S>
struct PolyMatrix {
  long k = 0;
  std::vector<Poly<S>> e;

  PolyMatrix() = default;
  explicit PolyMatrix(long k_) : k(k_), e(std::size_t(k_) * std::size_t(k_)) {}

  Poly<S>& at(long r, long c) { return e[std::size_t(r * k + c)]; }
  const Poly<S>& at(long r, long c) const { return e[std::size_t(r * k + c)]; }

  static PolyMatrix identity(long k_) {
    PolyMatrix m(k_);
    for (long i = 0; i < k_; ++i) m.at(i, i) = Poly<S>(ScalarTraits<S>::one());
    return m;
  }

  friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
    PolyMatrix out(a.k);
    for (long i = 0; i < a.k; ++i)
      for (long l = 0; l < a.k; ++l) {
        if (a.at(i, l).is_zero()) continue;
        for (long j = 0; j < a.k; ++j)
          out.at(i, j) = out.at(i, j) + a.at(i, l) * b.at(l, j);
      }
    return out;
  }

  friend bool operator==(const PolyMatrix& a, const PolyMatrix& b) {
    return a.k == b.k && a.e == b.e;
  }
  friend bool operator!=(const PolyMatrix& a, const PolyMatrix& b) { return !(a == b); }
};

/// Determinant by cofactor expansion along rows, memoized over column
/// subsets; division-free, suitable for the small sizes used here.
template <class S>
Poly<S> poly_det(const PolyMatrix<S>& m) {
  const long k = m.k;
  std::vector<char> seen(std::size_t(1) << k, 0);
  std::vector<Poly<S>> memo(std::size_t(1) << k);
  auto rec = [&](auto&& self, unsigned mask) -> Poly<S> {
    if (mask == 0) return Poly<S>(ScalarTraits<S>::one());
    if (seen[mask]) return memo[mask];
    const long row = k - __builtin_popcount(mask);
    Poly<S> acc;
    long sign = 0;
    for (unsigned rest = mask; rest; rest &= rest - 1) {
      const long col = __builtin_ctz(rest);
      const Poly<S>& entry = m.at(row, col);
      if (!entry.is_zero()) {
        Poly<S> term = entry * self(self, mask & ~(1u << col));
        acc = (sign % 2 == 0) ? acc + term : acc - term;
      }
      ++sign;
    }
    seen[mask] = 1;
    memo[mask] = acc;
    return acc;
  };
  return rec(rec, (unsigned(1) << k) - 1);
}

}  // namespace pentalab
