/// @file state.hpp
/// @brief Phase-space states for the lattice maps: (x, y) coordinates,
/// (p, q) cluster-like coordinates, corner cross-ratio coordinates, and raw
/// edge weights, plus the conversions between them.
///
/// All index arithmetic is cyclic modulo n. Vectors are stored 0-based;
/// entry j of a vector is the subscript-(j+1) coordinate in the 1-based
/// labeling used in messages and file formats.
#pragma once

#include <cstddef>
#include <vector>

#include "pentalab/error.hpp"
#include "pentalab/scalar.hpp"

namespace pentalab {

inline std::size_t cyc(long i, long n) { return std::size_t(((i % n) + n) % n); }

/// Span parameters of the map family. The defining pair is (k, n) with
/// 2 <= k <= n; r and rp are the left/right reach of the update stencil,
/// r = floor(k/2) - 1 and rp = k - 2 - r (so rp = r for even k, r + 1 for
/// odd k).
struct MapParams {
  long k, n, r, rp;
  MapParams(long k_, long n_) : k(k_), n(n_), r(k_ / 2 - 1), rp(k_ - 2 - (k_ / 2 - 1)) {
    if (k < 2 || k > n) throw BadSpan(k, n);
  }
};

template <class S>
struct XYState {
  long k = 0, n = 0;
  std::vector<S> x, y;

  friend bool operator==(const XYState& a, const XYState& b) {
    return a.k == b.k && a.n == b.n && a.x == b.x && a.y == b.y;
  }
};

template <class S>
struct PQState {
  long k = 0, n = 0;
  std::vector<S> p, q;

  friend bool operator==(const PQState& a, const PQState& b) {
    return a.k == b.k && a.n == b.n && a.p == b.p && a.q == b.q;
  }
};

/// Corner coordinates of the k = 3 system: one (X, Y) pair per index.
template <class S>
struct CornerState {
  long n = 0;
  std::vector<S> X, Y;

  friend bool operator==(const CornerState& a, const CornerState& b) {
    return a.n == b.n && a.X == b.X && a.Y == b.Y;
  }
};

/// Weights of the four edge types of the cylinder network with n columns.
template <class S>
struct EdgeWeights {
  long k = 0, n = 0;
  std::vector<S> a, b, c, d;
};

/// sigma_i = x_i + y_i; throws SigmaVanishes with the 1-based index when a
/// sum is zero, since every map in the family divides by these.
template <class S>
std::vector<S> sigmas(const XYState<S>& s) {
  std::vector<S> out;
  out.reserve(s.x.size());
  for (std::size_t i = 0; i < s.x.size(); ++i) {
    S v = s.x[i] + s.y[i];
    if (ScalarTraits<S>::is_zero(v)) throw SigmaVanishes(long(i) + 1);
    out.push_back(v);
  }
  return out;
}

/// p_i = y_i / x_i and q_i = x_{i+r+1} / y_{i+r}.
template <class S>
PQState<S> xy_to_pq(const XYState<S>& s) {
  MapParams mp(s.k, s.n);
  PQState<S> out;
  out.k = s.k;
  out.n = s.n;
  out.p.reserve(s.n);
  out.q.reserve(s.n);
  for (long i = 0; i < s.n; ++i) out.p.push_back(s.y[cyc(i, s.n)] / s.x[cyc(i, s.n)]);
  for (long i = 0; i < s.n; ++i)
    out.q.push_back(s.x[cyc(i + mp.r + 1, s.n)] / s.y[cyc(i + mp.r, s.n)]);
  return out;
}

/// Inverse of xy_to_pq on the level set prod_i p_i q_i = 1, anchored by the
/// first x coordinate. Off that level set no (x, y) preimage exists.
template <class S>
XYState<S> pq_to_xy(const PQState<S>& s, const S& x1) {
  MapParams mp(s.k, s.n);
  S cas = ScalarTraits<S>::one();
  for (long i = 0; i < s.n; ++i) cas = cas * s.p[std::size_t(i)] * s.q[std::size_t(i)];
  if (!(cas == ScalarTraits<S>::one())) throw NotOnCasimirLevel();
  XYState<S> out;
  out.k = s.k;
  out.n = s.n;
  out.x.resize(std::size_t(s.n));
  out.y.resize(std::size_t(s.n));
  S cur = x1;
  for (long i = 0; i < s.n; ++i) {
    out.x[std::size_t(i)] = cur;
    out.y[std::size_t(i)] = cur * s.p[std::size_t(i)];
    // x_{i+1} = x_i p_i q_{i-r}
    cur = cur * s.p[std::size_t(i)] * s.q[cyc(i - mp.r, s.n)];
  }
  return out;
}

/// Corner coordinates exist only for span 3: Y_i = x_i and
/// X_{i+1} = -y_i / (x_i x_{i+1}).
template <class S>
CornerState<S> xy_to_corner(const XYState<S>& s) {
  (void)MapParams(s.k, s.n);
  if (s.k != 3) throw WrongSpan(s.k);
  CornerState<S> out;
  out.n = s.n;
  out.X.resize(std::size_t(s.n));
  out.Y.resize(std::size_t(s.n));
  for (long i = 0; i < s.n; ++i) {
    out.Y[std::size_t(i)] = s.x[std::size_t(i)];
    S den = s.x[std::size_t(i)] * s.x[cyc(i + 1, s.n)];
    if (ScalarTraits<S>::is_zero(den)) throw CornerDenominatorVanishes(i + 1);
    out.X[cyc(i + 1, s.n)] = -s.y[std::size_t(i)] / den;
  }
  return out;
}

/// x_i = Y_i and y_i = -Y_i X_{i+1} Y_{i+1}.
template <class S>
XYState<S> corner_to_xy(const CornerState<S>& s) {
  XYState<S> out;
  out.k = 3;
  out.n = s.n;
  out.x.resize(std::size_t(s.n));
  out.y.resize(std::size_t(s.n));
  for (long i = 0; i < s.n; ++i) {
    out.x[std::size_t(i)] = s.Y[std::size_t(i)];
    out.y[std::size_t(i)] =
        -s.Y[std::size_t(i)] * s.X[cyc(i + 1, s.n)] * s.Y[cyc(i + 1, s.n)];
  }
  return out;
}

/// Collapses the four edge-weight families of the n-column cylinder network
/// to the (x, y) coordinates:
///   y_i = d_i / (b_i ... b_{i-k+2} c_i ... c_{i-k+1})
///   x_i = a_i / (b_{i-1} ... b_{i-k+2} c_{i-1} ... c_{i-k+1})
template <class S>
XYState<S> edgeweights_to_xy(const EdgeWeights<S>& w) {
  MapParams mp(w.k, w.n);
  XYState<S> out;
  out.k = w.k;
  out.n = w.n;
  out.x.resize(std::size_t(w.n));
  out.y.resize(std::size_t(w.n));
  for (long i = 0; i < w.n; ++i) {
    S bx = ScalarTraits<S>::one(), cx = ScalarTraits<S>::one();
    for (long m = 1; m <= w.k - 2; ++m) bx = bx * w.b[cyc(i - m, w.n)];
    for (long m = 1; m <= w.k - 1; ++m) cx = cx * w.c[cyc(i - m, w.n)];
    out.x[std::size_t(i)] = w.a[std::size_t(i)] / (bx * cx);
    S by = bx * w.b[std::size_t(i)];
    S cy = cx * w.c[std::size_t(i)];
    out.y[std::size_t(i)] = w.d[std::size_t(i)] / (by * cy);
  }
  return out;
}

}  // namespace pentalab
