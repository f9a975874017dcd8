/// @file test_geometry.cpp
/// @brief Oracles for the polygon layer: rank checks on the corrugation
/// windows, exact round trips between polygons and coordinates, gauge and
/// seed independence, the diagonal maps as conjugates of the coordinate
/// step, the cross-product construction at span 3, projective duality with
/// its regression-pinned shift, and the non-injective plane fibration.

#include <gtest/gtest.h>

#include <array>
#include <vector>

#include "pentalab/dynamics.hpp"
#include "pentalab/polygon.hpp"
#include "pentalab/random.hpp"
#include "pentalab/rational.hpp"
#include "pentalab/state.hpp"

using namespace pentalab;
using R = Rational;

namespace {

XYState<R> shifted(const XYState<R>& s, long by) {
  XYState<R> out = s;
  for (long i = 0; i < s.n; ++i) {
    out.x[std::size_t(i)] = s.x[cyc(i + by, s.n)];
    out.y[std::size_t(i)] = s.y[cyc(i + by, s.n)];
  }
  return out;
}

XYState<R> negated(const XYState<R>& s) {
  XYState<R> out = s;
  for (long i = 0; i < s.n; ++i) {
    out.x[std::size_t(i)] = -s.x[std::size_t(i)];
    out.y[std::size_t(i)] = -s.y[std::size_t(i)];
  }
  return out;
}

std::vector<Vec<R>> random_seed(long cnt, long dim, Rng& rng) {
  while (true) {
    std::vector<Vec<R>> v;
    for (long i = 0; i < cnt; ++i) {
      Vec<R> w;
      for (long e = 0; e < dim; ++e) w.push_back(random_rational(rng));
      v.push_back(std::move(w));
    }
    Mat<R> m{std::size_t(cnt), std::size_t(dim)};
    for (long i = 0; i < cnt; ++i)
      for (long e = 0; e < dim; ++e) m[std::size_t(i)][std::size_t(e)] = v[std::size_t(i)][std::size_t(e)];
    if (long(rank(m)) == std::min(cnt, dim)) return v;
  }
}

Mat<R> random_invertible(std::size_t dim, Rng& rng) {
  while (true) {
    Mat<R> m{dim, dim};
    for (std::size_t r = 0; r < dim; ++r)
      for (std::size_t c = 0; c < dim; ++c) m[r][c] = random_rational(rng);
    if (!det(m).is_zero()) return m;
  }
}

std::vector<Vec<R>> identity_seed(long k) {
  std::vector<Vec<R>> seed;
  for (long j = 0; j < k; ++j) {
    Vec<R> e(std::size_t(k), R(0));
    e[std::size_t(j)] = R(1);
    seed.push_back(std::move(e));
  }
  return seed;
}

/// Rank of the submatrix whose columns are the listed lifts.
std::size_t lift_rank(const std::vector<Vec<R>>& lifts, const std::vector<long>& idx) {
  const std::size_t dim = lifts[0].size();
  Mat<R> m{dim, idx.size()};
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < idx.size(); ++c) m[r][c] = lifts[std::size_t(idx[c])][r];
  return rank(m);
}

bool proportional(const Vec<R>& a, const Vec<R>& b) {
  bool a_zero = true, b_zero = true;
  for (const auto& e : a) a_zero = a_zero && e.is_zero();
  for (const auto& e : b) b_zero = b_zero && e.is_zero();
  if (a_zero || b_zero) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j)
      if (a[i] * b[j] != a[j] * b[i]) return false;
  return true;
}

/// Projective position of the fifth lift in the frame normalized so that the
/// fourth is the sum of the first three; distinguishes inequivalent polygons.
std::array<R, 2> frame_invariant(const PlanePolygon<R>& P) {
  Mat<R> base{3, 3};
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 3; ++c) base[r][c] = P.lifts[c][r];
  auto a = solve_exact(base, P.lifts[3]);
  EXPECT_TRUE(a.has_value());
  Mat<R> framed{3, 3};
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 3; ++c) framed[r][c] = base[r][c] * (*a)[c];
  auto b = solve_exact(framed, P.lifts[4]);
  EXPECT_TRUE(b.has_value());
  EXPECT_FALSE((*b)[2].is_zero());
  return {(*b)[0] / (*b)[2], (*b)[1] / (*b)[2]};
}

}  // namespace

TEST(PolygonFromXY, StandardBasisSeedSatisfiesWindowRanks) {
  XYState<R> s;
  s.k = 3;
  s.n = 5;
  s.x = {R(2), R(1), R(1), R(1), R(1)};
  s.y = std::vector<R>(5, R(1));
  auto P = polygon_from_xy(s, identity_seed(3));
  ASSERT_EQ(P.lifts.size(), 8u);
  for (long i = 0; i < 5; ++i)
    EXPECT_EQ(lift_rank(P.lifts, {i, i + 1, i + 2, i + 3}), 3u) << "window " << i;
  for (long i = 0; i + 2 < 8; ++i)
    EXPECT_EQ(lift_rank(P.lifts, {i, i + 1, i + 2}), 3u) << "triple " << i;
  for (long j = 0; j < 3; ++j)
    EXPECT_EQ(P.monodromy * P.lifts[std::size_t(j)], P.lifts[std::size_t(5 + j)]);
}

TEST(PolygonFromXY, RoundTripIsExact) {
  Rng rng(91001);
  for (long k : {3L, 4L, 5L})
    for (long n : {k + 2, 2 * k + 2})
      for (int t = 0; t < 3; ++t) {
        auto s = random_positive_xy_state(k, n, rng);
        auto P = polygon_from_xy(s, random_seed(k, k, rng));
        EXPECT_EQ(extract_xy(P), s) << "k=" << k << " n=" << n;
      }
}

TEST(PolygonFromXY, SeedChangeActsLinearly) {
  Rng rng(91002);
  const long k = 4, n = 7;
  auto s = random_positive_xy_state(k, n, rng);
  auto seed = random_seed(k, k, rng);
  Mat<R> g = random_invertible(std::size_t(k), rng);
  std::vector<Vec<R>> moved;
  for (const auto& v : seed) moved.push_back(g * v);
  auto P = polygon_from_xy(s, seed);
  auto Q = polygon_from_xy(s, moved);
  for (std::size_t i = 0; i < P.lifts.size(); ++i) EXPECT_EQ(Q.lifts[i], g * P.lifts[i]);
  EXPECT_EQ(Q.monodromy, g * P.monodromy * inverse(g));
  EXPECT_EQ(extract_xy(Q), s);
}

TEST(PolygonFromXY, RejectsDegenerateOrMalformedSeeds) {
  Rng rng(91003);
  auto s = random_positive_xy_state(3, 6, rng);
  auto seed = identity_seed(3);
  seed[2] = seed[1];
  EXPECT_THROW(polygon_from_xy(s, seed), DegenerateSeed);
  EXPECT_THROW(polygon_from_xy(s, std::vector<Vec<R>>{seed[0], seed[1]}), Error);
  auto bad_len = identity_seed(3);
  bad_len[0].push_back(R(1));
  EXPECT_THROW(polygon_from_xy(s, bad_len), Error);
}

TEST(PolygonFromXY, ReportsLostGenericity) {
  XYState<R> s;
  s.k = 3;
  s.n = 5;
  s.x = std::vector<R>(5, R(1));
  s.y = {R(1), R(1), R(1), R(1), R(0)};
  try {
    polygon_from_xy(s, identity_seed(3));
    FAIL() << "expected GenericityLost";
  } catch (const GenericityLost& e) {
    EXPECT_EQ(e.index, 1);
    EXPECT_EQ(e.kind, ErrorKind::genericity);
  }
}

TEST(ExtractXY, GaugeIndependence) {
  Rng rng(91004);
  const long k = 4, n = 9;
  auto s = random_positive_xy_state(k, n, rng);
  auto P = polygon_from_xy(s, random_seed(k, k, rng));
  std::vector<R> t;
  for (long j = 0; j < n; ++j) t.push_back(random_positive_rational(rng));
  // periodic gauge: vertex scales repeat, monodromy untouched
  auto Q = P;
  for (long j = 0; j < n + k; ++j)
    for (auto& e : Q.lifts[std::size_t(j)]) e = e * t[std::size_t(j % n)];
  EXPECT_EQ(extract_xy(Q), s);
  // twist-compatible gauge: tail scales gain a common factor, monodromy follows
  const R c(5, 3);
  auto W = P;
  for (long j = 0; j < n + k; ++j) {
    R f = t[std::size_t(j % n)];
    if (j >= n) f = f * c;
    for (auto& e : W.lifts[std::size_t(j)]) e = e * f;
  }
  for (std::size_t r = 0; r < W.monodromy.rows; ++r)
    for (std::size_t col = 0; col < W.monodromy.cols; ++col)
      W.monodromy[r][col] = W.monodromy[r][col] * c;
  EXPECT_EQ(extract_xy(W), s);
}

TEST(ExtractXY, DetectsInconsistentTailOrMonodromy) {
  Rng rng(91005);
  const long k = 3, n = 6;
  auto s = random_positive_xy_state(k, n, rng);
  auto P = polygon_from_xy(s, random_seed(k, k, rng));
  auto Q = P;
  for (auto& e : Q.lifts[std::size_t(n)]) e = e * R(2);
  EXPECT_THROW(extract_xy(Q), NonPeriodicCoefficients);
  auto W = P;
  for (std::size_t r = 0; r < W.monodromy.rows; ++r)
    for (std::size_t c = 0; c < W.monodromy.cols; ++c) W.monodromy[r][c] = W.monodromy[r][c] * R(2);
  EXPECT_THROW(extract_xy(W), NonPeriodicCoefficients);
}

TEST(ExtractXY, RejectsNonCorrugatedPolygons) {
  Rng rng(91006);
  const long k = 4, n = 6;
  CorrugatedPolygon<R> P;
  P.k = k;
  P.n = n;
  P.monodromy = random_invertible(std::size_t(k), rng);
  for (long i = 0; i < n; ++i) {
    Vec<R> v;
    for (long e = 0; e < k; ++e) v.push_back(random_rational(rng));
    P.lifts.push_back(std::move(v));
  }
  for (long j = 0; j < k; ++j) P.lifts.push_back(P.monodromy * P.lifts[std::size_t(j)]);
  EXPECT_THROW(extract_xy(P), GenericityLost);
}

TEST(FkStep, ConjugatesWithTheCoordinateStep) {
  Rng rng(91007);
  for (long k : {3L, 4L, 5L})
    for (long n : {2 * k - 1, 12L})
      for (int t = 0; t < 10; ++t) {
        auto s = random_positive_xy_state(k, n, rng);
        auto P = polygon_from_xy(s, random_seed(k, k, rng));
        EXPECT_EQ(extract_xy(fk_step(P)), tk_step(s)) << "k=" << k << " n=" << n;
      }
  auto s = random_positive_xy_state(6, 13, rng);
  auto P = polygon_from_xy(s, random_seed(6, 6, rng));
  EXPECT_EQ(extract_xy(fk_step(P)), tk_step(s));
}

TEST(FkStep, MatchesCrossProductConstructionAtSpanThree) {
  Rng rng(91008);
  const long n = 6;
  auto s = random_positive_xy_state(3, n, rng);
  auto P = polygon_from_xy(s, random_seed(3, 3, rng));
  auto Q = fk_step(P);
  auto cross = [](const Vec<R>& a, const Vec<R>& b) {
    return Vec<R>{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
                  a[0] * b[1] - a[1] * b[0]};
  };
  const long sh = detail::diagonal_label_shift(3, n);
  std::vector<Vec<R>> ext = P.lifts;
  while (long(ext.size()) <= n - 1 + sh + 3)
    ext.push_back(P.monodromy * ext[ext.size() - std::size_t(n)]);
  for (long i = 0; i < n; ++i) {
    const long m = i + sh;
    Vec<R> w = cross(cross(ext[std::size_t(m)], ext[std::size_t(m + 2)]),
                     cross(ext[std::size_t(m + 1)], ext[std::size_t(m + 3)]));
    EXPECT_TRUE(proportional(w, Q.lifts[std::size_t(i)])) << "vertex " << i;
  }
}

TEST(FkStep, PreservesMonodromyAndTailTransport) {
  Rng rng(91009);
  const long k = 5, n = 11;
  auto s = random_positive_xy_state(k, n, rng);
  auto P = polygon_from_xy(s, random_seed(k, k, rng));
  auto Q = fk_step(P);
  EXPECT_EQ(Q.monodromy, P.monodromy);
  ASSERT_EQ(Q.lifts.size(), std::size_t(n + k));
  for (long j = 0; j < k; ++j)
    EXPECT_EQ(Q.monodromy * Q.lifts[std::size_t(j)], Q.lifts[std::size_t(n + j)]);
}

TEST(FkStep, ImageRemainsCorrugated) {
  Rng rng(91010);
  const long k = 5, n = 11;
  auto s = random_positive_xy_state(k, n, rng);
  auto Q = fk_step(polygon_from_xy(s, random_seed(k, k, rng)));
  for (long i = 0; i < n; ++i)
    EXPECT_EQ(lift_rank(Q.lifts, {i, i + 1, i + k - 1, i + k}), 3u) << "window " << i;
  for (long i = 0; i + k - 1 < n + k; ++i) {
    std::vector<long> idx;
    for (long j = 0; j < k; ++j) idx.push_back(i + j);
    EXPECT_EQ(lift_rank(Q.lifts, idx), std::size_t(k)) << "k-window " << i;
  }
}

TEST(FkStep, ReportsDegenerateWindows) {
  Rng rng(91011);
  const long k = 4, n = 7;
  auto s = random_positive_xy_state(k, n, rng);
  auto P = polygon_from_xy(s, random_seed(k, k, rng));
  for (long e = 0; e < k; ++e) P.lifts[std::size_t(k)][std::size_t(e)] = random_rational(rng);
  try {
    fk_step(P);
    FAIL() << "expected DegenerateIntersection";
  } catch (const DegenerateIntersection& e) {
    EXPECT_EQ(e.index, 0);
    EXPECT_EQ(e.kind, ErrorKind::genericity);
  }
}

TEST(DualPolygon, LiftsAreWindowNormals) {
  Rng rng(91012);
  const long k = 5, n = 9;
  auto s = random_positive_xy_state(k, n, rng);
  auto P = polygon_from_xy(s, random_seed(k, k, rng));
  auto D = dual_polygon(P);
  for (long i = 0; i < n; ++i)
    for (long r = 0; r < k - 1; ++r) {
      R dot(0);
      for (long e = 0; e < k; ++e)
        dot = dot + D.lifts[std::size_t(i)][std::size_t(e)] * P.lifts[std::size_t(i + r)][std::size_t(e)];
      EXPECT_TRUE(dot.is_zero()) << "i=" << i << " r=" << r;
    }
}

TEST(DualPolygon, ConjugationRegression) {
  Rng rng(91013);
  const std::vector<std::pair<long, long>> pairs = {{3, 5}, {3, 8}, {4, 7}, {5, 9}, {6, 13}};
  for (auto [k, n] : pairs) {
    MapParams mp(k, n);
    for (int t = 0; t < 2; ++t) {
      auto s = random_positive_xy_state(k, n, rng);
      auto P = polygon_from_xy(s, random_seed(k, k, rng));
      XYState<R> want = dk_apply(s);
      if (k % 2 == 1) want = negated(want);
      EXPECT_EQ(extract_xy(dual_polygon(P)), shifted(want, mp.r)) << "k=" << k << " n=" << n;
    }
  }
}

TEST(DualPolygon, DoubleDualIsAShiftedCopy) {
  Rng rng(91014);
  for (auto [k, n] : std::vector<std::pair<long, long>>{{3, 6}, {4, 8}, {5, 10}}) {
    auto s = random_positive_xy_state(k, n, rng);
    auto P = polygon_from_xy(s, random_seed(k, k, rng));
    auto DD = dual_polygon(dual_polygon(P));
    EXPECT_EQ(extract_xy(DD), shifted(s, k - 2)) << "k=" << k;
    for (long i = 0; i < n; ++i)
      EXPECT_TRUE(proportional(DD.lifts[std::size_t(i)], P.lifts[std::size_t(i + k - 2)]))
          << "k=" << k << " lift " << i;
  }
}

TEST(PlanePolygons, RoundTripThroughPsi) {
  Rng rng(91015);
  for (long k : {3L, 4L, 5L})
    for (long n : {k + 3, 2 * k + 2})
      for (int t = 0; t < 3; ++t) {
        auto s = random_positive_xy_state(k, n, rng);
        EXPECT_EQ(psi(plane_polygon_from_xy(s, random_seed(3, k, rng))), s)
            << "k=" << k << " n=" << n;
      }
}

TEST(PlanePolygons, SpanThreeIsTheCorrugatedConstruction) {
  Rng rng(91016);
  auto s = random_positive_xy_state(3, 7, rng);
  auto C = polygon_from_xy(s, identity_seed(3));
  auto P = plane_polygon_from_xy(s, identity_seed(3));
  EXPECT_EQ(C.lifts, P.lifts);
  EXPECT_EQ(C.monodromy, P.monodromy);
  EXPECT_EQ(psi(P), extract_xy(C));
  EXPECT_EQ(fk_step(C).lifts, gk_step(P).lifts);
}

TEST(GkStep, ConjugatesOnProjectedPolygons) {
  Rng rng(91017);
  for (long k : {3L, 4L, 5L})
    for (long n : {2 * k - 1, 11L})
      for (int t = 0; t < 5; ++t) {
        auto s = random_positive_xy_state(k, n, rng);
        auto P = plane_polygon_from_xy(s, random_seed(3, k, rng));
        EXPECT_EQ(psi(gk_step(P)), tk_step(s)) << "k=" << k << " n=" << n;
      }
}

TEST(GkStep, ConjugatesOnTwistedPolygons) {
  Rng rng(91018);
  for (long k : {4L, 5L}) {
    const long n = k + 4;
    PlanePolygon<R> P;
    P.k = k;
    P.n = n;
    P.monodromy = random_invertible(3, rng);
    for (long i = 0; i < n; ++i) {
      Vec<R> v;
      for (int e = 0; e < 3; ++e) v.push_back(random_rational(rng));
      P.lifts.push_back(std::move(v));
    }
    for (long j = 0; j < k; ++j) P.lifts.push_back(P.monodromy * P.lifts[std::size_t(j)]);
    auto s = psi(P);
    EXPECT_EQ(psi(gk_step(P)), tk_step(s)) << "k=" << k;
  }
}

TEST(Psi, InvariantUnderProjectiveMaps) {
  Rng rng(91019);
  const long k = 4, n = 9;
  auto s = random_positive_xy_state(k, n, rng);
  auto P = plane_polygon_from_xy(s, random_seed(3, k, rng));
  Mat<R> g = random_invertible(3, rng);
  auto Q = P;
  for (auto& v : Q.lifts) v = g * v;
  Q.monodromy = g * Q.monodromy * inverse(g);
  EXPECT_EQ(psi(Q), psi(P));
}

TEST(Psi, FibersCollapseDistinctPolygons) {
  Rng rng(91020);
  const long k = 4, n = 8;
  auto s = random_positive_xy_state(k, n, rng);
  auto P = plane_polygon_from_xy(s, random_seed(3, k, rng));
  auto Q = plane_polygon_from_xy(s, random_seed(3, k, rng));
  EXPECT_EQ(psi(P), s);
  EXPECT_EQ(psi(Q), s);
  EXPECT_NE(frame_invariant(P), frame_invariant(Q));
}

TEST(PlanePolygons, RejectsMalformedSeeds) {
  Rng rng(91021);
  auto s = random_positive_xy_state(4, 8, rng);
  auto seed = random_seed(3, 4, rng);
  auto dep = seed;
  dep[2] = dep[0];
  EXPECT_THROW(plane_polygon_from_xy(s, dep), DegenerateSeed);
  EXPECT_THROW(plane_polygon_from_xy(s, std::vector<Vec<R>>{seed[0], seed[1]}), Error);
}

TEST(Geometry, SpanTwoIsRefusedEverywhere) {
  Rng rng(91022);
  auto s = random_positive_xy_state(2, 6, rng);
  EXPECT_THROW(polygon_from_xy(s, identity_seed(2)), UnsupportedSpan);
  EXPECT_THROW(plane_polygon_from_xy(s, random_seed(3, 2, rng)), UnsupportedSpan);
  CorrugatedPolygon<R> C;
  C.k = 2;
  C.n = 6;
  EXPECT_THROW(extract_xy(C), UnsupportedSpan);
  EXPECT_THROW(fk_step(C), UnsupportedSpan);
  EXPECT_THROW(dual_polygon(C), UnsupportedSpan);
  PlanePolygon<R> P;
  P.k = 2;
  P.n = 6;
  EXPECT_THROW(psi(P), UnsupportedSpan);
  EXPECT_THROW(gk_step(P), UnsupportedSpan);
}
