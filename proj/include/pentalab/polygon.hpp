/// @file polygon.hpp
/// @brief Twisted polygons behind the (x, y) coordinates: corrugated polygons
/// in (k-1)-dimensional projective space with the (k-1)-diagonal map and
/// projective duality, and polygons in the projective plane carrying the
/// deeper diagonal maps. Lifts are stored as explicit coordinate vectors,
/// labeled 0 .. n+k-1; genericity errors report the starting label of the
/// offending window. Span 2 is refused throughout: its geometry is the
/// point-pair system handled by the leapfrog module.
#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "pentalab/error.hpp"
#include "pentalab/linalg.hpp"
#include "pentalab/scalar.hpp"
#include "pentalab/state.hpp"

namespace pentalab {

/// Twisted polygon in (k-1)-dimensional projective space whose lift windows
/// (V_i, V_{i+1}, V_{i+k-1}, V_{i+k}) all have rank 3, so that consecutive
/// (k-1)-diagonals intersect. lifts holds n+k vectors of length k; the last
/// k are monodromy * (first k).
template <class S>
struct CorrugatedPolygon {
  long k = 0, n = 0;
  std::vector<Vec<S>> lifts;
  Mat<S> monodromy;
};

/// Twisted polygon in the projective plane with diagonal depth k >= 3.
/// lifts holds n+k vectors of length 3. The monodromy is the wrap matrix
/// taking the first lift triple to the triple n steps later; polygons built
/// by projecting the k-dimensional recurrence are generally not transported
/// lift-by-lift by any single 3x3 matrix, only that defining triple is.
template <class S>
struct PlanePolygon {
  long k = 0, n = 0;
  std::vector<Vec<S>> lifts;
  Mat<S> monodromy;
};

namespace detail {

/// Coefficients (A, B, C) of the window relation
///   V_{i+k} = A V_i + B V_{i+1} + C V_{i+k-1};
/// nullopt when the four columns do not have rank exactly 3 or V_{i+k} has
/// no component along the other three.
template <class S>
std::optional<std::array<S, 3>> window_relation(const std::vector<Vec<S>>& L, long i, long k) {
  const std::size_t dim = L[std::size_t(i)].size();
  Mat<S> m(dim, 4);
  for (std::size_t r = 0; r < dim; ++r) {
    m[r][0] = L[std::size_t(i)][r];
    m[r][1] = L[std::size_t(i + 1)][r];
    m[r][2] = L[std::size_t(i + k - 1)][r];
    m[r][3] = L[std::size_t(i + k)][r];
  }
  auto ns = nullspace1(m);
  if (!ns) return std::nullopt;
  if (ScalarTraits<S>::is_zero((*ns)[3])) return std::nullopt;
  const S d = ScalarTraits<S>::zero() - (*ns)[3];
  return std::array<S, 3>{(*ns)[0] / d, (*ns)[1] / d, (*ns)[2] / d};
}

template <class S>
struct Extraction {
  XYState<S> state;
  std::vector<std::array<S, 3>> rel;
};

/// Reads the n window relations and rescales the lifts (dividing lift j by
/// t_j) so that the V_{i+k-1} coefficient becomes 1 while the wrap ratios
/// t_{j+n}/t_j come out equal for j = 0..k-1; the surviving coefficients are
/// then an n-periodic coordinate set. With c_j the running product of the C
/// coefficients (c_{k-1} = 1), the unique solution with t_0 = 1 is
/// t_j = c_{j+n}/c_n below k and t_j = c_{n+k-1} c_j / c_n from k-1 on.
template <class S>
Extraction<S> extract_engine(long k, long n, const std::vector<Vec<S>>& lifts) {
  Extraction<S> out;
  out.rel.reserve(std::size_t(n));
  for (long i = 0; i < n; ++i) {
    auto r = window_relation(lifts, i, k);
    if (!r || ScalarTraits<S>::is_zero((*r)[2])) throw GenericityLost(i);
    out.rel.push_back(*r);
  }
  std::vector<S> c(std::size_t(n + k), ScalarTraits<S>::zero());
  c[std::size_t(k - 1)] = ScalarTraits<S>::one();
  for (long j = k; j < n + k; ++j)
    c[std::size_t(j)] = c[std::size_t(j - 1)] * out.rel[std::size_t(j - k)][2];
  const S u = c[std::size_t(n + k - 1)];
  std::vector<S> t(std::size_t(n + k));
  for (long j = 0; j < k; ++j) t[std::size_t(j)] = c[std::size_t(j + n)] / c[std::size_t(n)];
  for (long j = k; j < n + k; ++j) t[std::size_t(j)] = u * c[std::size_t(j)] / c[std::size_t(n)];
  XYState<S>& s = out.state;
  s.k = k;
  s.n = n;
  s.x.resize(std::size_t(n));
  s.y.resize(std::size_t(n));
  for (long i = 0; i < n; ++i) {
    s.x[std::size_t(i)] = out.rel[std::size_t(i)][1] * t[std::size_t(i + 1)] / t[std::size_t(i + k)];
    s.y[cyc(i - 1, n)] = out.rel[std::size_t(i)][0] * t[std::size_t(i)] / t[std::size_t(i + k)];
  }
  return out;
}

/// Checks that the window relations repeat with period n once the lifts are
/// transported by `mono`, i.e. that the polygon really is twisted by the
/// stored matrix and the extracted coordinates close up.
template <class S>
void check_wrap_relations(long k, long n, const std::vector<Vec<S>>& lifts, const Mat<S>& mono,
                          const std::vector<std::array<S, 3>>& rel) {
  std::vector<Vec<S>> ext = lifts;
  ext.reserve(std::size_t(n + 2 * k));
  for (long j = k; j < 2 * k; ++j) ext.push_back(mono * lifts[std::size_t(j)]);
  for (long i = n; i < n + k; ++i) {
    auto r = window_relation(ext, i, k);
    if (!r) throw NonPeriodicCoefficients();
    for (int e = 0; e < 3; ++e)
      if (!ScalarTraits<S>::eq((*r)[std::size_t(e)], rel[std::size_t(i - n)][std::size_t(e)]))
        throw NonPeriodicCoefficients();
  }
}

/// Label offset aligning the diagonal-intersection step with the coordinate
/// step map: the intersection attached to window i becomes vertex i + rp + 1
/// of the image (equivalently, vertex i is the intersection at window
/// i - rp - 1 mod n), mirroring the built-in index shift of the step map.
/// Returned as the nonnegative representative n - rp - 1.
inline long diagonal_label_shift(long k, long n) {
  MapParams mp(k, n);
  return n - mp.rp - 1;
}

/// Shared core of the diagonal maps: vertex i of the image is the
/// intersection of diagonals (V_m, V_{m+k-1}) and (V_{m+1}, V_{m+k}) at
/// m = i + shift, computed from the window relation as A V_m + C V_{m+k-1}.
/// Lifts beyond the stored range are generated by repeating the relations
/// with period n, which agrees with monodromy transport whenever the stored
/// lifts are twisted, so the image tail stays an exact monodromy image of
/// the image head.
template <class S>
std::vector<Vec<S>> diagonal_step_lifts(long k, long n, const std::vector<Vec<S>>& lifts,
                                        long shift) {
  const std::size_t dim = lifts[0].size();
  std::vector<std::array<S, 3>> rel;
  rel.resize(std::size_t(n));
  for (long i = 0; i < n; ++i) {
    auto r = window_relation(lifts, i, k);
    if (!r) throw DegenerateIntersection(i);
    rel[std::size_t(i)] = *r;
  }
  std::vector<Vec<S>> L = lifts;
  const long need = n + 2 * k + shift;
  L.reserve(std::size_t(need));
  for (long j = n + k; j < need; ++j) {
    const auto& r = rel[std::size_t((j - k) % n)];
    Vec<S> w(dim, ScalarTraits<S>::zero());
    for (std::size_t e = 0; e < dim; ++e)
      w[e] = r[0] * L[std::size_t(j - k)][e] + r[1] * L[std::size_t(j - k + 1)][e] +
             r[2] * L[std::size_t(j - 1)][e];
    L.push_back(std::move(w));
  }
  std::vector<Vec<S>> out;
  out.reserve(std::size_t(n + k));
  for (long i = 0; i < n + k; ++i) {
    const long m = i + shift;
    const auto& r = rel[std::size_t(m % n)];
    Vec<S> w(dim, ScalarTraits<S>::zero());
    bool nonzero = false;
    for (std::size_t e = 0; e < dim; ++e) {
      w[e] = r[0] * L[std::size_t(m)][e] + r[2] * L[std::size_t(m + k - 1)][e];
      nonzero = nonzero || !ScalarTraits<S>::is_zero(w[e]);
    }
    if (!nonzero) throw DegenerateIntersection(i);
    out.push_back(std::move(w));
  }
  return out;
}

}  // namespace detail

/// Builds the twisted polygon whose lifts obey
///   V_{i+k} = y_{i-1} V_i + x_i V_{i+1} + V_{i+k-1}
/// from k independent seed vectors V_0..V_{k-1}; the monodromy expresses
/// V_n..V_{n+k-1} in the seed basis.
template <class S>
CorrugatedPolygon<S> polygon_from_xy(const XYState<S>& s, const std::vector<Vec<S>>& seed) {
  MapParams mp(s.k, s.n);
  if (s.k == 2) throw UnsupportedSpan(2);
  const long k = s.k, n = s.n;
  if (long(seed.size()) != k) throw Error(ErrorKind::invalid_input, "need k seed vectors");
  for (const auto& v : seed)
    if (long(v.size()) != k) throw Error(ErrorKind::invalid_input, "seed vectors must have length k");
  Mat<S> base{std::size_t(k), std::size_t(k)};
  for (long r = 0; r < k; ++r)
    for (long c = 0; c < k; ++c) base[std::size_t(r)][std::size_t(c)] = seed[std::size_t(c)][std::size_t(r)];
  if (ScalarTraits<S>::is_zero(det(base))) throw DegenerateSeed();
  CorrugatedPolygon<S> P;
  P.k = k;
  P.n = n;
  P.lifts = seed;
  P.lifts.reserve(std::size_t(n + k));
  for (long i = 0; i < n; ++i) {
    Vec<S> w(std::size_t(k), ScalarTraits<S>::zero());
    for (std::size_t e = 0; e < std::size_t(k); ++e)
      w[e] = s.y[cyc(i - 1, n)] * P.lifts[std::size_t(i)][e] +
             s.x[cyc(i, n)] * P.lifts[std::size_t(i + 1)][e] + P.lifts[std::size_t(i + k - 1)][e];
    P.lifts.push_back(std::move(w));
  }
  Mat<S> tail{std::size_t(k), std::size_t(k)};
  for (long r = 0; r < k; ++r)
    for (long c = 0; c < k; ++c)
      tail[std::size_t(r)][std::size_t(c)] = P.lifts[std::size_t(n + c)][std::size_t(r)];
  P.monodromy = tail * inverse(base);
  for (long i = 1; i < n; ++i) {
    Mat<S> win{std::size_t(k), std::size_t(k)};
    for (long r = 0; r < k; ++r)
      for (long c = 0; c < k; ++c)
        win[std::size_t(r)][std::size_t(c)] = P.lifts[std::size_t(i + c)][std::size_t(r)];
    if (ScalarTraits<S>::is_zero(det(win))) throw GenericityLost(i);
  }
  return P;
}

/// Inverse of polygon_from_xy up to lift rescaling: recovers the n-periodic
/// coordinates from the window relations and verifies, via the stored
/// monodromy, that they close up over one period.
template <class S>
XYState<S> extract_xy(const CorrugatedPolygon<S>& P) {
  MapParams mp(P.k, P.n);
  if (P.k == 2) throw UnsupportedSpan(2);
  auto ex = detail::extract_engine(P.k, P.n, P.lifts);
  detail::check_wrap_relations(P.k, P.n, P.lifts, P.monodromy, ex.rel);
  return ex.state;
}

/// The (k-1)-diagonal map: vertex i of the image is the intersection of the
/// diagonals (V_i, V_{i+k-1}) and (V_{i+1}, V_{i+k}), relabeled so that
/// extract_xy(fk_step(P)) = tk_step(extract_xy(P)) exactly.
template <class S>
CorrugatedPolygon<S> fk_step(const CorrugatedPolygon<S>& P) {
  MapParams mp(P.k, P.n);
  if (P.k == 2) throw UnsupportedSpan(2);
  CorrugatedPolygon<S> out;
  out.k = P.k;
  out.n = P.n;
  out.lifts =
      detail::diagonal_step_lifts(P.k, P.n, P.lifts, detail::diagonal_label_shift(P.k, P.n));
  out.monodromy = P.monodromy;
  return out;
}

/// Projective duality: lift i of the dual is the normal vector of the
/// hyperplane spanned by V_i..V_{i+k-2}, with monodromy inverse-transpose.
template <class S>
CorrugatedPolygon<S> dual_polygon(const CorrugatedPolygon<S>& P) {
  MapParams mp(P.k, P.n);
  if (P.k == 2) throw UnsupportedSpan(2);
  const long k = P.k, n = P.n;
  CorrugatedPolygon<S> out;
  out.k = k;
  out.n = n;
  out.monodromy = inverse(P.monodromy).transposed();
  out.lifts.reserve(std::size_t(n + k));
  for (long i = 0; i < n; ++i) {
    Mat<S> rows(std::size_t(k - 1), std::size_t(k));
    for (long r = 0; r < k - 1; ++r)
      for (long c = 0; c < k; ++c)
        rows[std::size_t(r)][std::size_t(c)] = P.lifts[std::size_t(i + r)][std::size_t(c)];
    auto u = nullspace1(rows);
    if (!u) throw DegenerateHyperplane(i);
    out.lifts.push_back(std::move(*u));
  }
  for (long j = 0; j < k; ++j) out.lifts.push_back(out.monodromy * out.lifts[std::size_t(j)]);
  return out;
}

/// Plane polygon whose lift sequence solves the same k-step recurrence in 3
/// coordinates: the seed is 3 independent length-k vectors, read as initial
/// values of three scalar solutions (equivalently a projection of the
/// standard k-dimensional lift sequence). Distinct seeds land on the same
/// coordinates, exhibiting the non-injective fibers of psi.
template <class S>
PlanePolygon<S> plane_polygon_from_xy(const XYState<S>& s, const std::vector<Vec<S>>& seed) {
  MapParams mp(s.k, s.n);
  if (s.k < 3) throw UnsupportedSpan(s.k);
  const long k = s.k, n = s.n;
  if (seed.size() != 3) throw Error(ErrorKind::invalid_input, "need 3 seed vectors");
  for (const auto& v : seed)
    if (long(v.size()) != k) throw Error(ErrorKind::invalid_input, "seed vectors must have length k");
  Mat<S> pr(3, std::size_t(k));
  for (std::size_t r = 0; r < 3; ++r)
    for (long c = 0; c < k; ++c) pr[r][std::size_t(c)] = seed[r][std::size_t(c)];
  if (rank(pr) < 3) throw DegenerateSeed();
  // standard-basis solutions of the recurrence, then the 3 projections
  std::vector<Vec<S>> unit;
  unit.reserve(std::size_t(n + k));
  for (long j = 0; j < k; ++j) {
    Vec<S> e(std::size_t(k), ScalarTraits<S>::zero());
    e[std::size_t(j)] = ScalarTraits<S>::one();
    unit.push_back(std::move(e));
  }
  for (long i = 0; i < n; ++i) {
    Vec<S> w(std::size_t(k), ScalarTraits<S>::zero());
    for (std::size_t e = 0; e < std::size_t(k); ++e)
      w[e] = s.y[cyc(i - 1, n)] * unit[std::size_t(i)][e] +
             s.x[cyc(i, n)] * unit[std::size_t(i + 1)][e] + unit[std::size_t(i + k - 1)][e];
    unit.push_back(std::move(w));
  }
  PlanePolygon<S> P;
  P.k = k;
  P.n = n;
  P.lifts.reserve(std::size_t(n + k));
  for (long i = 0; i < n + k; ++i) P.lifts.push_back(pr * unit[std::size_t(i)]);
  Mat<S> base(3, 3), tail(3, 3);
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 3; ++c) {
      base[r][c] = P.lifts[c][r];
      tail[r][c] = P.lifts[std::size_t(n) + c][r];
    }
  try {
    P.monodromy = tail * inverse(base);
  } catch (const SingularMatrix&) {
    throw GenericityLost(0);
  }
  return P;
}

/// Coordinates of a plane polygon from its window relations. The wrap
/// crosscheck runs only when the stored monodromy transports every leading
/// lift exactly onto the trailing one; projected polygons are generally not
/// twisted by a single 3x3 matrix and skip it.
template <class S>
XYState<S> psi(const PlanePolygon<S>& P) {
  MapParams mp(P.k, P.n);
  if (P.k < 3) throw UnsupportedSpan(P.k);
  auto ex = detail::extract_engine(P.k, P.n, P.lifts);
  bool twisted = true;
  for (long j = 0; j < P.k && twisted; ++j) {
    Vec<S> w = P.monodromy * P.lifts[std::size_t(j)];
    for (std::size_t e = 0; e < 3 && twisted; ++e)
      if (!ScalarTraits<S>::eq(w[e], P.lifts[std::size_t(P.n + j)][e])) twisted = false;
  }
  if (twisted) detail::check_wrap_relations(P.k, P.n, P.lifts, P.monodromy, ex.rel);
  return ex.state;
}

/// The depth-k diagonal map on plane polygons, with the same relabeling as
/// fk_step so that psi(gk_step(P)) = tk_step(psi(P)) exactly.
template <class S>
PlanePolygon<S> gk_step(const PlanePolygon<S>& P) {
  MapParams mp(P.k, P.n);
  if (P.k < 3) throw UnsupportedSpan(P.k);
  PlanePolygon<S> out;
  out.k = P.k;
  out.n = P.n;
  out.lifts =
      detail::diagonal_step_lifts(P.k, P.n, P.lifts, detail::diagonal_label_shift(P.k, P.n));
  out.monodromy = P.monodromy;
  return out;
}

}  // namespace pentalab
