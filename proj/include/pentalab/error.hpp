/// @file error.hpp
/// @brief Exception taxonomy shared by all pentalab modules.
#pragma once

#include <stdexcept>
#include <string>

namespace pentalab {

/// Coarse classification used by the CLI to pick an exit code:
/// invalid_input -> 2, genericity -> 3, resource -> 3.
enum class ErrorKind { invalid_input, genericity, resource };

struct Error : std::runtime_error {
  ErrorKind kind;
  Error(ErrorKind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
};

// ---- arithmetic ----

struct DivisionByZero : Error {
  DivisionByZero() : Error(ErrorKind::genericity, "division by zero") {}
};

/// An intermediate division hit zero while propagating derivatives.
struct PoleEncountered : Error {
  PoleEncountered() : Error(ErrorKind::genericity, "pole encountered during evaluation") {}
};

struct ResourceLimitExceeded : Error {
  explicit ResourceLimitExceeded(const std::string& msg) : Error(ErrorKind::resource, msg) {}
};

// ---- parameter validation ----

struct BadSpan : Error {
  BadSpan(int k, int n)
      : Error(ErrorKind::invalid_input,
              "span out of range: need 2 <= k <= n, got k=" + std::to_string(k) +
                  ", n=" + std::to_string(n)) {}
};

struct WrongSpan : Error {
  explicit WrongSpan(int k)
      : Error(ErrorKind::invalid_input,
              "operation defined only for k=3, got k=" + std::to_string(k)) {}
};

struct UnsupportedSpan : Error {
  explicit UnsupportedSpan(int k)
      : Error(ErrorKind::invalid_input,
              "operation not available for k=" + std::to_string(k)) {}
};

struct NotOnCasimirLevel : Error {
  NotOnCasimirLevel()
      : Error(ErrorKind::invalid_input,
              "product of p_i q_i is not 1; x-sequence would not be n-periodic") {}
};

struct OutsideStableRange : Error {
  OutsideStableRange(int k, int n)
      : Error(ErrorKind::invalid_input,
              "outside stable range n >= 2k-1 = " + std::to_string(2 * k - 1) +
                  " (got n=" + std::to_string(n) + ")") {}
};

struct ParseError : Error {
  explicit ParseError(const std::string& msg) : Error(ErrorKind::invalid_input, msg) {}
};

// ---- genericity failures, carrying the offending 1-based index ----

struct IndexedError : Error {
  long index;
  IndexedError(const std::string& what, long i)
      : Error(ErrorKind::genericity, what + " at index " + std::to_string(i)), index(i) {}
};

struct SigmaVanishes : IndexedError {
  explicit SigmaVanishes(long i) : IndexedError("sigma_i = x_i + y_i vanishes", i) {}
};

struct PDenominatorVanishes : IndexedError {
  explicit PDenominatorVanishes(long i) : IndexedError("p-denominator vanishes", i) {}
};

struct CornerDenominatorVanishes : IndexedError {
  explicit CornerDenominatorVanishes(long i) : IndexedError("1 - X_i Y_i vanishes", i) {}
};

struct NonHomogeneous : Error {
  NonHomogeneous(int i, int j)
      : Error(ErrorKind::genericity, "coefficient I(" + std::to_string(i) + "," +
                                         std::to_string(j) + ") failed the homogeneity check") {}
};

struct DegenerateSeed : Error {
  DegenerateSeed() : Error(ErrorKind::genericity, "seed vectors are linearly dependent") {}
};

struct GenericityLost : IndexedError {
  explicit GenericityLost(long i) : IndexedError("polygon genericity lost", i) {}
};

struct NonPeriodicCoefficients : Error {
  NonPeriodicCoefficients()
      : Error(ErrorKind::genericity, "lift rescaling cannot make coefficients n-periodic") {}
};

struct DegenerateIntersection : IndexedError {
  explicit DegenerateIntersection(long i) : IndexedError("degenerate diagonal intersection", i) {}
};

struct DegenerateHyperplane : IndexedError {
  explicit DegenerateHyperplane(long i) : IndexedError("degenerate hyperplane window", i) {}
};

struct DegenerateQuadruple : Error {
  DegenerateQuadruple() : Error(ErrorKind::genericity, "cross-ratio quadruple is degenerate") {}
};

struct DegenerateConfiguration : IndexedError {
  explicit DegenerateConfiguration(long i) : IndexedError("degenerate point configuration", i) {}
};

struct InconsistentSeed : Error {
  InconsistentSeed()
      : Error(ErrorKind::invalid_input, "seed values violate the sublattice equation") {}
};

struct SingularMatrix : Error {
  SingularMatrix() : Error(ErrorKind::genericity, "matrix is singular") {}
};

}  // namespace pentalab
