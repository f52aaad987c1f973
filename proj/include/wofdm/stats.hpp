// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace wofdm {

// Gaussian tail probability Q(x) = P(Z > x) for Z ~ N(0,1).
inline double q_function(double x) {
  return 0.5 * std::erfc(x / std::sqrt(2.0));
}

namespace detail {

// Continued fraction for the regularized incomplete beta (Lentz).
inline double betacf(double a, double b, double x) {
  constexpr int kMaxIter = 300;
  constexpr double kEps = 3e-16;
  constexpr double kFpMin = 1e-300;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kFpMin) d = kFpMin;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) break;
  }
  return h;
}

}  // namespace detail

// Regularized incomplete beta function I_x(a, b).
inline double betainc(double a, double b, double x) {
  if (a <= 0.0 || b <= 0.0) throw std::invalid_argument("betainc: a, b must be positive");
  if (x < 0.0 || x > 1.0) throw std::invalid_argument("betainc: x outside [0,1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double ln_bt = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                       a * std::log(x) + b * std::log1p(-x);
  const double bt = std::exp(ln_bt);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return bt * detail::betacf(a, b, x) / a;
  }
  return 1.0 - bt * detail::betacf(b, a, 1.0 - x) / b;
}

// Exact (Clopper-Pearson) two-sided confidence interval for a binomial
// proportion, successes x out of n at confidence level 1-alpha.
inline std::pair<double, double> clopper_pearson(std::uint64_t x, std::uint64_t n,
                                                 double alpha = 0.05) {
  if (n == 0) throw std::invalid_argument("clopper_pearson: n must be positive");
  if (x > n) throw std::invalid_argument("clopper_pearson: x > n");
  const double half = alpha / 2.0;
  // Lower bound solves P(X >= x; p) = alpha/2, i.e. I_p(x, n-x+1) = alpha/2.
  double lo = 0.0;
  if (x > 0) {
    const double a = static_cast<double>(x);
    const double b = static_cast<double>(n - x) + 1.0;
    double left = 0.0, right = 1.0;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (left + right);
      (betainc(a, b, mid) < half ? left : right) = mid;
    }
    lo = 0.5 * (left + right);
  }
  // Upper bound solves P(X <= x; p) = alpha/2, i.e. I_p(x+1, n-x) = 1 - alpha/2.
  double hi = 1.0;
  if (x < n) {
    const double a = static_cast<double>(x) + 1.0;
    const double b = static_cast<double>(n - x);
    double left = 0.0, right = 1.0;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (left + right);
      (betainc(a, b, mid) < 1.0 - half ? left : right) = mid;
    }
    hi = 0.5 * (left + right);
  }
  return {lo, hi};
}

}  // namespace wofdm
