// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace wofdm {

namespace detail {

inline bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// Iterative radix-2 Cooley-Tukey, in place. sign = -1 forward, +1 inverse
// (inverse does not apply the 1/N scale).
inline void fft_radix2(Eigen::VectorXcd& v, int sign) {
  const std::size_t n = static_cast<std::size_t>(v.size());
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(v[static_cast<Eigen::Index>(i)], v[static_cast<Eigen::Index>(j)]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = sign * 2.0 * std::numbers::pi / static_cast<double>(len);
    const std::complex<double> wlen(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (std::size_t j = 0; j < len / 2; ++j) {
        const auto a = v[static_cast<Eigen::Index>(i + j)];
        const auto b = v[static_cast<Eigen::Index>(i + j + len / 2)] * w;
        v[static_cast<Eigen::Index>(i + j)] = a + b;
        v[static_cast<Eigen::Index>(i + j + len / 2)] = a - b;
        w *= wlen;
      }
    }
  }
}

// O(N^2) transform by definition; index products reduced mod N to keep
// the twiddle arguments small.
inline Eigen::VectorXcd dft_direct(const Eigen::VectorXcd& x, int sign) {
  const Eigen::Index n = x.size();
  Eigen::VectorXcd out(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    std::complex<double> acc(0.0, 0.0);
    for (Eigen::Index m = 0; m < n; ++m) {
      const std::uint64_t idx =
          (static_cast<std::uint64_t>(k) * static_cast<std::uint64_t>(m)) %
          static_cast<std::uint64_t>(n);
      const double ang =
          sign * 2.0 * std::numbers::pi * static_cast<double>(idx) / static_cast<double>(n);
      acc += x[m] * std::complex<double>(std::cos(ang), std::sin(ang));
    }
    out[k] = acc;
  }
  return out;
}

}  // namespace detail

// Forward DFT, X_k = sum_n x_n e^{-j 2 pi k n / N} (unnormalized).
inline Eigen::VectorXcd dft_forward(const Eigen::VectorXcd& x) {
  if (x.size() == 0) throw std::invalid_argument("dft_forward: empty input");
  if (detail::is_pow2(static_cast<std::size_t>(x.size()))) {
    Eigen::VectorXcd v = x;
    detail::fft_radix2(v, -1);
    return v;
  }
  return detail::dft_direct(x, -1);
}

// Inverse DFT with the 1/N scale, x_n = (1/N) sum_k X_k e^{+j 2 pi k n / N}.
inline Eigen::VectorXcd dft_inverse(const Eigen::VectorXcd& x) {
  if (x.size() == 0) throw std::invalid_argument("dft_inverse: empty input");
  Eigen::VectorXcd v;
  if (detail::is_pow2(static_cast<std::size_t>(x.size()))) {
    v = x;
    detail::fft_radix2(v, +1);
  } else {
    v = detail::dft_direct(x, +1);
  }
  v /= static_cast<double>(x.size());
  return v;
}

}  // namespace wofdm
