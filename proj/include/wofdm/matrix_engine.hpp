// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <complex>
#include <istream>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "wofdm/channels.hpp"
#include "wofdm/sysparams.hpp"
#include "wofdm/windowing.hpp"

namespace wofdm {

namespace detail {

// e^{sign * j * 2 pi * a * b / n} with the index product reduced mod n, so
// large DFT sizes do not lose precision to argument reduction.
inline std::complex<double> unit_root(int sign, long long a, long long b, int n) {
  const long long idx = (a % n) * (b % n) % n;
  const double ang =
      sign * 2.0 * std::numbers::pi * static_cast<double>(idx) / static_cast<double>(n);
  return {std::cos(ang), std::sin(ang)};
}

// Receiver fold: intake position p of the delta-extended block lands on
// output (p - delta/2) mod N. This is the printed block form of the fold
// matrix; the delta/2-sample chunks at both ends wrap onto the opposite
// edge. (The prose gloss "adds the first delta samples to the last delta
// samples" does not match the printed matrix; the matrix is authoritative.)
inline int fold_index(int p, int n, int delta) {
  const int half = delta / 2;
  int i = (p - half) % n;
  if (i < 0) i += n;
  return i;
}

}  // namespace detail

// The six primitive matrices in their printed shapes.
struct PrimitiveMatrices {
  Eigen::MatrixXcd dft;        // W,   N x N
  Eigen::MatrixXcd idft;       // W^-1, N x N
  Eigen::MatrixXd redundancy;  // Gamma, (N+mu+rho) x N
  Eigen::MatrixXd removal;     // R, (N+delta) x (N+delta+gamma)
  Eigen::MatrixXd fold;        // P, N x (N+delta)
  Eigen::MatrixXd shift;       // K, N x N
};

inline PrimitiveMatrices build_primitives(const SystemParams& p) {
  validate(p);
  const int n = p.n;
  PrimitiveMatrices m;

  m.dft.resize(n, n);
  m.idft.resize(n, n);
  for (int k = 0; k < n; ++k) {
    for (int j = 0; j < n; ++j) {
      m.dft(k, j) = detail::unit_root(-1, k, j, n);
      m.idft(k, j) = detail::unit_root(+1, k, j, n) / static_cast<double>(n);
    }
  }

  // Gamma = [0 I_mu; I_N; I_rho 0]: prepend the last mu samples, append
  // the first rho.
  const int span = n + p.mu + p.rho;
  m.redundancy = Eigen::MatrixXd::Zero(span, n);
  for (int i = 0; i < p.mu; ++i) m.redundancy(i, n - p.mu + i) = 1.0;
  for (int i = 0; i < n; ++i) m.redundancy(p.mu + i, i) = 1.0;
  for (int i = 0; i < p.rho; ++i) m.redundancy(p.mu + n + i, i) = 1.0;

  // R = [0 I]: drop the first gamma intake samples.
  m.removal = Eigen::MatrixXd::Zero(n + p.delta, n + p.delta + p.gamma);
  for (int i = 0; i < n + p.delta; ++i) m.removal(i, p.gamma + i) = 1.0;

  // P: every column has exactly one unit entry.
  m.fold = Eigen::MatrixXd::Zero(n, n + p.delta);
  for (int c = 0; c < n + p.delta; ++c) m.fold(detail::fold_index(c, n, p.delta), c) = 1.0;

  // K: circular shift by kappa.
  m.shift = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) m.shift(i, (i + p.kappa) % n) = 1.0;

  return m;
}

// One block of the jointly formulated overlap-add + channel convolution:
// [H^(m)]_{b,c} = h_{m*hop + b - c} when that index lies in [0, nu].
struct ChannelBlock {
  int m = 0;
  Eigen::MatrixXcd mat;  // (N+delta+gamma) x (N+mu+rho)
};

inline ChannelBlock build_channel_block(const SystemParams& p, const Cir& h, int m) {
  validate(p);
  validate(h);
  const auto d = derived_lengths(p);
  if (m < 0 || m > d.m_of(h.nu()))
    throw std::invalid_argument("build_channel_block: block index outside 0..M");
  ChannelBlock blk;
  blk.m = m;
  blk.mat = Eigen::MatrixXcd::Zero(d.rx_in, d.span);
  const long long off = static_cast<long long>(m) * d.hop;
  for (int b = 0; b < d.rx_in; ++b) {
    for (int c = 0; c < d.span; ++c) {
      const long long tap = off + b - c;
      if (tap >= 0 && tap <= h.nu()) blk.mat(b, c) = h.taps[static_cast<Eigen::Index>(tap)];
    }
  }
  return blk;
}

// N-point DFT of the impulse response; taps beyond N wrap (alias).
inline Eigen::VectorXcd frequency_response(const Cir& h, int n) {
  if (n <= 0) throw std::invalid_argument("frequency_response: n must be positive");
  Eigen::VectorXcd out(n);
  for (int k = 0; k < n; ++k) {
    std::complex<double> acc(0.0, 0.0);
    for (Eigen::Index t = 0; t < h.taps.size(); ++t) {
      acc += h.taps[t] * detail::unit_root(-1, k, static_cast<long long>(t), n);
    }
    out[k] = acc;
  }
  return out;
}

// Composite receive operator G = W K P V_rx R (N x rx_in). Every intake
// sample is either dropped or routed, windowed, to one DFT input, so G
// assembles directly without forming the factors:
//   G[k, c] = W[k, (c - gamma - delta/2 - kappa) mod N] * v_rx[c - gamma].
// This is also the noise shaping matrix of the equivalent channel.
inline Eigen::MatrixXcd receive_operator(const SystemParams& p, const WindowPair& w) {
  validate(p);
  const auto d = derived_lengths(p);
  if (w.rx.size() != p.n + p.delta)
    throw std::invalid_argument("receive_operator: Rx window length mismatch");
  Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(p.n, d.rx_in);
  for (int c = p.gamma; c < d.rx_in; ++c) {
    const int pos = c - p.gamma;
    int src = detail::fold_index(pos, p.n, p.delta) - p.kappa;
    src %= p.n;
    if (src < 0) src += p.n;
    const double win = w.rx[pos];
    for (int k = 0; k < p.n; ++k) g(k, c) = detail::unit_root(-1, k, src, p.n) * win;
  }
  return g;
}

// Composite transmit operator B = V_tx Gamma W^-1 (span x N): row r of the
// extended block reads IDFT row (r - mu) mod N scaled by the Tx window.
inline Eigen::MatrixXcd transmit_operator(const SystemParams& p, const WindowPair& w) {
  validate(p);
  const auto d = derived_lengths(p);
  if (w.tx.size() != d.span)
    throw std::invalid_argument("transmit_operator: Tx window length mismatch");
  Eigen::MatrixXcd b(d.span, p.n);
  for (int r = 0; r < d.span; ++r) {
    int src = (r - p.mu) % p.n;
    if (src < 0) src += p.n;
    const double win = w.tx[r];
    for (int j = 0; j < p.n; ++j) {
      b(r, j) = detail::unit_root(+1, src, j, p.n) * (win / static_cast<double>(p.n));
    }
  }
  return b;
}

// The equivalent frequency-domain channel: Y[l] = sum_m A_m X[l-m] + G q[l].
struct EquivalentChannel {
  std::vector<Eigen::MatrixXcd> a;  // A_0 .. A_M, each N x N
  Eigen::MatrixXcd g_noise;         // N x (N+delta+gamma)

  int m_max() const { return static_cast<int>(a.size()) - 1; }
};

// A_m = G H^(m) B, exploiting the bandedness of H^(m). All M+1 blocks are
// built even when trailing ones are numerically negligible, so power
// accounting stays exact.
inline EquivalentChannel build_equivalent(const SystemParams& p, const WindowPair& w,
                                          const Cir& h) {
  validate(p);
  validate(h);
  const auto d = derived_lengths(p);
  const int m_max = d.m_of(h.nu());
  EquivalentChannel eq;
  eq.g_noise = receive_operator(p, w);
  const Eigen::MatrixXcd b = transmit_operator(p, w);

  for (int m = 0; m <= m_max; ++m) {
    Eigen::MatrixXcd mid = Eigen::MatrixXcd::Zero(p.n, d.span);
    const long long off = static_cast<long long>(m) * d.hop;
    bool any = false;
    for (int c = 0; c < d.span; ++c) {
      const long long b_lo = c - off;
      const int from = static_cast<int>(std::max<long long>(b_lo, p.gamma));
      const int to = static_cast<int>(std::min<long long>(b_lo + h.nu(), d.rx_in - 1));
      for (int row = from; row <= to; ++row) {
        const std::complex<double> tap = h.taps[static_cast<Eigen::Index>(off + row - c)];
        if (tap == std::complex<double>(0.0, 0.0)) continue;
        mid.col(c) += eq.g_noise.col(row) * tap;
        any = true;
      }
    }
    if (any) {
      eq.a.emplace_back(mid * b);
    } else {
      eq.a.emplace_back(Eigen::MatrixXcd::Zero(p.n, p.n));
    }
  }
  return eq;
}

// Literal composition A_m = W K P V_rx R H^(m) V_tx Gamma W^-1 from the
// printed factors. Reference path for the assembled operators above.
inline EquivalentChannel build_equivalent_reference(const SystemParams& p,
                                                    const WindowPair& w, const Cir& h) {
  validate(p);
  validate(h);
  const auto d = derived_lengths(p);
  const auto prim = build_primitives(p);
  if (w.tx.size() != d.span || w.rx.size() != p.n + p.delta)
    throw std::invalid_argument("build_equivalent_reference: window length mismatch");

  const Eigen::MatrixXcd v_tx = w.tx.asDiagonal().toDenseMatrix().cast<std::complex<double>>();
  const Eigen::MatrixXcd v_rx = w.rx.asDiagonal().toDenseMatrix().cast<std::complex<double>>();
  const Eigen::MatrixXcd front = prim.dft * prim.shift.cast<std::complex<double>>() *
                                 prim.fold.cast<std::complex<double>>() * v_rx *
                                 prim.removal.cast<std::complex<double>>();
  const Eigen::MatrixXcd back =
      v_tx * prim.redundancy.cast<std::complex<double>>() * prim.idft;

  EquivalentChannel eq;
  eq.g_noise = front;
  const int m_max = d.m_of(h.nu());
  for (int m = 0; m <= m_max; ++m) {
    eq.a.emplace_back(front * build_channel_block(p, h, m).mat * back);
  }
  return eq;
}

// Matrix dump: "<rows> <cols>" header, then row-major entries "re,im".
inline void write_matrix(std::ostream& out, const Eigen::MatrixXcd& m) {
  out << m.rows() << " " << m.cols() << "\n";
  char buf[96];
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g", m(r, c).real(), m(r, c).imag());
      out << buf << (c + 1 < m.cols() ? " " : "\n");
    }
  }
}

inline Eigen::MatrixXcd read_matrix(std::istream& in) {
  Eigen::Index rows = 0, cols = 0;
  if (!(in >> rows >> cols) || rows < 0 || cols < 0)
    throw std::runtime_error("matrix dump: bad shape header");
  Eigen::MatrixXcd m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      std::string tok;
      if (!(in >> tok)) throw std::runtime_error("matrix dump: truncated");
      const auto comma = tok.find(',');
      if (comma == std::string::npos) throw std::runtime_error("matrix dump: bad entry");
      m(r, c) = {std::stod(tok.substr(0, comma)), std::stod(tok.substr(comma + 1))};
    }
  }
  return m;
}

}  // namespace wofdm
