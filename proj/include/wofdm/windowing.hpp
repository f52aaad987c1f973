// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <fstream>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

#include <Eigen/Dense>

#include "wofdm/sysparams.hpp"

namespace wofdm {

// Tapering windows for one transceiver configuration.
//
//   tx = [tx_rise | 1 ... 1 | tx_fall]   length N + mu + rho, flat N+mu+rho-2*beta
//   rx = [rx_rise | 1 ... 1 | rx_fall]   length N + delta,    flat N-delta
struct WindowPair {
  Eigen::VectorXd tx;
  Eigen::VectorXd rx;
  Eigen::VectorXd tx_rise, tx_fall;
  Eigen::VectorXd rx_rise, rx_fall;
};

// Default tail shape: sine-squared ramps. rise[i] + fall[i] = 1, which
// keeps the Tx overlap-add / Rx fold cascade distortion-free.
inline std::pair<Eigen::VectorXd, Eigen::VectorXd> raised_cosine_tail(int len) {
  if (len < 0) throw std::invalid_argument("raised_cosine_tail: negative length");
  Eigen::VectorXd rise(len), fall(len);
  for (int i = 0; i < len; ++i) {
    const double s = std::sin(std::numbers::pi * (i + 1) / (2.0 * (len + 1)));
    rise[i] = s * s;
  }
  for (int i = 0; i < len; ++i) fall[i] = rise[len - 1 - i];
  return {rise, fall};
}

// True when rise[i] + fall[i] = 1 within tol for all i.
inline bool tails_complementary(const Eigen::VectorXd& rise, const Eigen::VectorXd& fall,
                                double tol = 1e-9) {
  if (rise.size() != fall.size()) return false;
  for (Eigen::Index i = 0; i < rise.size(); ++i) {
    if (std::fabs(rise[i] + fall[i] - 1.0) > tol) return false;
  }
  return true;
}

namespace detail {
inline Eigen::VectorXd assemble_window(const Eigen::VectorXd& rise,
                                       const Eigen::VectorXd& fall, int total) {
  const int t = static_cast<int>(rise.size());
  Eigen::VectorXd v = Eigen::VectorXd::Ones(total);
  v.head(t) = rise;
  v.tail(t) = fall;
  return v;
}
}  // namespace detail

inline WindowPair build_windows(const SystemParams& p,
                                const Eigen::VectorXd& tx_rise, const Eigen::VectorXd& tx_fall,
                                const Eigen::VectorXd& rx_rise, const Eigen::VectorXd& rx_fall) {
  validate(p);
  if (tx_rise.size() != p.beta || tx_fall.size() != p.beta)
    throw std::invalid_argument("build_windows: Tx tail length must equal beta");
  if (rx_rise.size() != p.delta || rx_fall.size() != p.delta)
    throw std::invalid_argument("build_windows: Rx tail length must equal delta");
  for (const auto* tail : {&tx_rise, &tx_fall, &rx_rise, &rx_fall}) {
    for (Eigen::Index i = 0; i < tail->size(); ++i) {
      const double v = (*tail)[i];
      if (!(v >= 0.0 && v <= 1.0))
        throw std::invalid_argument("build_windows: tail samples must lie in [0,1]");
    }
  }
  WindowPair w;
  w.tx_rise = tx_rise;
  w.tx_fall = tx_fall;
  w.rx_rise = rx_rise;
  w.rx_fall = rx_fall;
  w.tx = detail::assemble_window(tx_rise, tx_fall, p.n + p.mu + p.rho);
  w.rx = detail::assemble_window(rx_rise, rx_fall, p.n + p.delta);
  return w;
}

// Windows with the default sine-squared tails.
inline WindowPair default_windows(const SystemParams& p) {
  auto [tr, tf] = raised_cosine_tail(p.beta);
  auto [rr, rf] = raised_cosine_tail(p.delta);
  return build_windows(p, tr, tf, rr, rf);
}

// Window tail file: plain text, one real sample per line.
inline Eigen::VectorXd load_window_tail(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open window file: " + path);
  std::vector<double> vals;
  double x = 0.0;
  while (in >> x) vals.push_back(x);
  Eigen::VectorXd v(static_cast<Eigen::Index>(vals.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = vals[static_cast<std::size_t>(i)];
  return v;
}

inline void save_window_tail(const std::string& path, const Eigen::VectorXd& tail) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write window file: " + path);
  for (Eigen::Index i = 0; i < tail.size(); ++i) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g\n", tail[i]);
    out << buf;
  }
}

}  // namespace wofdm
