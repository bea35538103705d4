#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace dcr {

using Vec = std::vector<double>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kTol = 1e-9;  // default absolute slack on unit-scaled problems

// Error taxonomy shared across modules.
struct RangeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SingularError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct StepsizeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ScheduleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct WeightError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DecompositionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NoRootError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm2(const Vec& a) { return dot(a, a); }

inline double norm(const Vec& a) { return std::sqrt(norm2(a)); }

inline Vec sub(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline Vec axpy(double alpha, const Vec& x, const Vec& y) {
  Vec r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = alpha * x[i] + y[i];
  return r;
}

// 1/(2(L-mu)) with the L = +inf convention mapping the term to zero.
inline double inv2diff(double L, double mu) {
  return std::isinf(L) ? 0.0 : 1.0 / (2.0 * (L - mu));
}

// (L+mu)/(L-mu) -> 1 as L -> inf.
inline double sum_over_diff(double L, double mu) {
  return std::isinf(L) ? 1.0 : (L + mu) / (L - mu);
}

}  // namespace dcr
