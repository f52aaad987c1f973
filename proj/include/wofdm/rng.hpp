// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

namespace wofdm {

// Counter-based random numbers (Philox4x32-10). A generator is a pure
// function of (seed, stream): the same pair always yields the same
// sequence, and distinct streams are independent, so trials of a Monte
// Carlo campaign can be generated out of order or in parallel.
class PhiloxStream {
 public:
  PhiloxStream(std::uint64_t seed, std::uint64_t stream)
      : key0_(static_cast<std::uint32_t>(seed)),
        key1_(static_cast<std::uint32_t>(seed >> 32)),
        stream_lo_(static_cast<std::uint32_t>(stream)),
        stream_hi_(static_cast<std::uint32_t>(stream >> 32)) {}

  std::uint32_t next_u32() {
    if (have_ == 0) {
      block(counter_, out_);
      ++counter_;
      have_ = 4;
    }
    return out_[4 - have_--];
  }

  // Uniform in (0, 1]; never returns 0 so it is safe under log().
  double next_unit() {
    return (static_cast<double>(next_u32()) + 1.0) * 0x1p-32;
  }

  // Standard normal via Box-Muller; draws are cached in pairs.
  double next_gauss() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = next_unit();
    const double u2 = next_unit();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
  }

  // Circular complex Gaussian with total variance var (re+im together).
  std::complex<double> next_cgauss(double var_total) {
    const double s = std::sqrt(var_total / 2.0);
    return {s * next_gauss(), s * next_gauss()};
  }

  // Raw 4x32 block for a given 64-bit block counter; exposed for tests
  // against the published Philox4x32-10 test vectors.
  void block(std::uint64_t ctr, std::uint32_t out[4]) const {
    std::uint32_t c0 = static_cast<std::uint32_t>(ctr);
    std::uint32_t c1 = static_cast<std::uint32_t>(ctr >> 32);
    std::uint32_t c2 = stream_lo_;
    std::uint32_t c3 = stream_hi_;
    std::uint32_t k0 = key0_;
    std::uint32_t k1 = key1_;
    for (int round = 0; round < 10; ++round) {
      if (round > 0) {
        k0 += 0x9E3779B9u;
        k1 += 0xBB67AE85u;
      }
      const std::uint64_t p0 = 0xD2511F53ull * c0;
      const std::uint64_t p1 = 0xCD9E8D57ull * c2;
      const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
      const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
      const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
      const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
      const std::uint32_t n0 = hi1 ^ c1 ^ k0;
      const std::uint32_t n2 = hi0 ^ c3 ^ k1;
      c0 = n0;
      c1 = lo1;
      c2 = n2;
      c3 = lo0;
    }
    out[0] = c0;
    out[1] = c1;
    out[2] = c2;
    out[3] = c3;
  }

 private:
  std::uint32_t key0_, key1_;
  std::uint32_t stream_lo_, stream_hi_;
  std::uint64_t counter_ = 0;
  std::uint32_t out_[4] = {};
  int have_ = 0;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

namespace detail {
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}
}  // namespace detail

// Derive a stream id from structured parts (tag, trial, block, ...).
inline std::uint64_t stream_key(std::uint64_t a) { return detail::splitmix64(a); }

template <typename... Rest>
std::uint64_t stream_key(std::uint64_t a, Rest... rest) {
  return detail::splitmix64(a ^ stream_key(static_cast<std::uint64_t>(rest)...));
}

// Compile-time tag hash (FNV-1a) so purposes like "noise"/"data" map to
// well-separated stream ids.
constexpr std::uint64_t stream_tag(const char* s) {
  std::uint64_t h = 0xCBF29CE484222325ull;
  while (*s != '\0') {
    h ^= static_cast<std::uint64_t>(static_cast<unsigned char>(*s++));
    h *= 0x100000001B3ull;
  }
  return h;
}

}  // namespace wofdm
