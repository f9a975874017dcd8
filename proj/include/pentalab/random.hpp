/// @file random.hpp
/// @brief Seeded random scalars for property tests and the CLI's trial states.
#pragma once

#include <random>

#include "pentalab/rational.hpp"
#include "pentalab/scalar.hpp"
#include "pentalab/state.hpp"

namespace pentalab {

using Rng = std::mt19937_64;

/// Small nonzero rational: numerator in [-9,9]\{0}, denominator in [1,9].
inline Rational random_rational(Rng& rng) {
  std::uniform_int_distribution<long> num(-9, 9);
  std::uniform_int_distribution<long> den(1, 9);
  long p = 0;
  while (p == 0) p = num(rng);
  return Rational(p, den(rng));
}

/// Positive variant, for coordinates that must stay away from sign changes.
inline Rational random_positive_rational(Rng& rng) {
  std::uniform_int_distribution<long> num(1, 9);
  std::uniform_int_distribution<long> den(1, 9);
  return Rational(num(rng), den(rng));
}

template <class S>
S random_scalar(Rng& rng);

template <>
inline Rational random_scalar<Rational>(Rng& rng) {
  return random_rational(rng);
}

template <>
inline Real64 random_scalar<Real64>(Rng& rng) {
  return random_rational(rng).to_double();
}

template <>
inline ComplexScalar random_scalar<ComplexScalar>(Rng& rng) {
  return {random_rational(rng).to_double(), random_rational(rng).to_double()};
}

template <class S>
XYState<S> random_xy_state(long k, long n, Rng& rng) {
  XYState<S> s;
  s.k = k;
  s.n = n;
  for (long i = 0; i < n; ++i) {
    s.x.push_back(random_scalar<S>(rng));
    s.y.push_back(random_scalar<S>(rng));
  }
  return s;
}

/// All coordinates positive, so sums of coordinates never vanish and
/// subtraction-free maps can be iterated forever.
inline XYState<Rational> random_positive_xy_state(long k, long n, Rng& rng) {
  XYState<Rational> s;
  s.k = k;
  s.n = n;
  for (long i = 0; i < n; ++i) {
    s.x.push_back(random_positive_rational(rng));
    s.y.push_back(random_positive_rational(rng));
  }
  return s;
}

/// Resamples until `ok` accepts the state (or throws GenericityLost after
/// too many rejections). Use for tests that need denominators away from 0.
template <class S, class Pred>
XYState<S> random_xy_state_where(long k, long n, Rng& rng, Pred&& ok, int max_tries = 200) {
  for (int t = 0; t < max_tries; ++t) {
    XYState<S> s = random_xy_state<S>(k, n, rng);
    if (ok(s)) return s;
  }
  throw GenericityLost(0);
}

}  // namespace pentalab
