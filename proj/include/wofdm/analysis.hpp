// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "wofdm/matrix_engine.hpp"
#include "wofdm/stats.hpp"

namespace wofdm {

// Split of the equivalent channel into the desired path (diagonal of A_0),
// same-block crosstalk (off-diagonal of A_0) and the past-block tail.
struct Decomposition {
  Eigen::VectorXcd a0_diag;              // desired per-subcarrier gains
  Eigen::MatrixXcd a0_ici1;              // A_0 with zero diagonal
  std::vector<Eigen::MatrixXcd> tail;    // A_1 .. A_M
};

inline Decomposition decompose(const EquivalentChannel& eq) {
  if (eq.a.empty()) throw std::invalid_argument("decompose: empty equivalent channel");
  Decomposition d;
  d.a0_diag = eq.a[0].diagonal();
  d.a0_ici1 = eq.a[0];
  d.a0_ici1.diagonal().setZero();
  d.tail.assign(eq.a.begin() + 1, eq.a.end());
  return d;
}

// P_signal(k) = sigma_X^2 |[A_0]_{k,k}|^2.
inline Eigen::VectorXd signal_power(const Decomposition& d, double sigma_x2) {
  if (sigma_x2 <= 0.0) throw std::invalid_argument("signal_power: sigma_x2 must be positive");
  return sigma_x2 * d.a0_diag.cwiseAbs2();
}

// P_noise(k) = sigma_n^2 [G G^H]_{k,k} -- the row energies of G.
inline Eigen::VectorXd noise_power(const EquivalentChannel& eq, double sigma_n2) {
  if (sigma_n2 < 0.0) throw std::invalid_argument("noise_power: negative sigma_n2");
  return sigma_n2 * eq.g_noise.rowwise().squaredNorm();
}

struct InterferenceSplit {
  Eigen::VectorXd ici1;  // same-block, off-diagonal of A_0
  Eigen::VectorXd ici2;  // past blocks, off-diagonal of A_m
  Eigen::VectorXd isi;   // past blocks, diagonal of A_m
};

inline InterferenceSplit interference_powers(const Decomposition& d, double sigma_x2) {
  if (sigma_x2 <= 0.0)
    throw std::invalid_argument("interference_powers: sigma_x2 must be positive");
  const Eigen::Index n = d.a0_diag.size();
  InterferenceSplit s;
  s.ici1 = sigma_x2 * d.a0_ici1.rowwise().squaredNorm();
  s.isi = Eigen::VectorXd::Zero(n);
  s.ici2 = Eigen::VectorXd::Zero(n);
  for (const auto& am : d.tail) {
    const Eigen::VectorXd row = am.rowwise().squaredNorm();
    const Eigen::VectorXd diag = am.diagonal().cwiseAbs2();
    s.isi += sigma_x2 * diag;
    s.ici2 += sigma_x2 * (row - diag);
  }
  return s;
}

// SINR(k) = P_signal / (P_ISI + P_ICI1 + P_ICI2 + P_noise); an all-zero
// denominator reports +inf rather than failing.
inline Eigen::VectorXd sinr(const Eigen::VectorXd& p_signal, const InterferenceSplit& s,
                            const Eigen::VectorXd& p_noise) {
  const Eigen::Index n = p_signal.size();
  Eigen::VectorXd out(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double den = s.ici1[k] + s.ici2[k] + s.isi[k] + p_noise[k];
    out[k] = den > 0.0 ? p_signal[k] / den : std::numeric_limits<double>::infinity();
  }
  return out;
}

// Inverse Gaussian tail: Q(inverse_q(p)) = p. Rational initial guess
// refined with Halley steps on erfc, accurate to ~1e-15 relative.
inline double inverse_q(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("inverse_q: p outside (0,1)");
  // Acklam's inverse normal approximation for the lower quantile.
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double dd[] = {7.784695709041462e-03, 3.224671290700398e-01,
                              2.445134137142996e+00, 3.754408661907416e+00};
  // The result is the lower quantile of pl = 1 - p.
  const double pl = 1.0 - p;
  double x;
  if (pl < 0.02425) {
    const double q = std::sqrt(-2.0 * std::log(pl));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((dd[0] * q + dd[1]) * q + dd[2]) * q + dd[3]) * q + 1.0);
  } else if (pl > 0.97575) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((dd[0] * q + dd[1]) * q + dd[2]) * q + dd[3]) * q + 1.0);
  } else {
    const double q = pl - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  }
  // Halley refinement on Q(x) - p = 0.
  for (int it = 0; it < 3; ++it) {
    const double err = q_function(x) - p;
    const double pdf = std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
    if (pdf == 0.0) break;
    const double u = err / pdf;  // Q' = -pdf
    x += u / (1.0 - 0.5 * x * u);
  }
  return x;
}

// SINR gap for a BPSK SER target: gap = (Q^-1(SER/2) / (sqrt(2) pi))^2.
inline double sinr_gap(double target_ser) {
  if (!(target_ser > 0.0 && target_ser < 1.0))
    throw std::invalid_argument("sinr_gap: target SER outside (0,1)");
  const double q = inverse_q(target_ser / 2.0);
  const double den = std::sqrt(2.0) * std::numbers::pi;
  return (q / den) * (q / den);
}

// Rate evaluation parameters. span (N+mu+rho) normalizes the per-block
// time occupancy; hop-normalization is a labeled extension for overlapped
// systems, not the published definition.
struct RateParams {
  double target_ser = 1e-3;
  double fs_hz = 5e6;  // 1 / Ts
  double gap = 0.0;    // derived from target_ser
  int span = 0;
  int hop = 0;
  bool hop_normalized = false;
};

inline RateParams make_rate_params(double target_ser, double fs_hz, const SystemParams& p,
                                   bool hop_normalized = false) {
  RateParams rp;
  rp.target_ser = target_ser;
  rp.fs_hz = fs_hz;
  rp.gap = sinr_gap(target_ser);
  const auto d = derived_lengths(p);
  rp.span = d.span;
  rp.hop = d.hop;
  rp.hop_normalized = hop_normalized;
  return rp;
}

struct RateReport {
  Eigen::VectorXd per_subcarrier;  // C(k), bits
  double total_hz_bits = 0.0;      // R
};

// C(k) = max(0, 1/2 log2(SINR(k)/gap));  R = fs sum_k (N/N0) C(k).
inline RateReport data_rate(const Eigen::VectorXd& sinr_vec, const RateParams& rp) {
  if (rp.gap <= 0.0) throw std::invalid_argument("data_rate: gap must be positive");
  const int n0 = rp.hop_normalized ? rp.hop : rp.span;
  if (n0 <= 0) throw std::invalid_argument("data_rate: invalid block length");
  RateReport r;
  r.per_subcarrier.resize(sinr_vec.size());
  const double n = static_cast<double>(sinr_vec.size());
  for (Eigen::Index k = 0; k < sinr_vec.size(); ++k) {
    const double c = 0.5 * std::log2(sinr_vec[k] / rp.gap);
    r.per_subcarrier[k] = c > 0.0 ? c : 0.0;
    r.total_hz_bits += rp.fs_hz * (n / n0) * r.per_subcarrier[k];
  }
  return r;
}

// Everything the closed forms say about one (system, window, channel)
// triple at given symbol and noise powers.
struct InterferenceReport {
  Eigen::VectorXd p_signal, p_ici1, p_ici2, p_isi, p_noise;
  Eigen::VectorXd sinr;
  double sigma_x2 = 1.0;
  double sigma_n2 = 0.0;
};

inline InterferenceReport analyze(const EquivalentChannel& eq, double sigma_x2,
                                  double sigma_n2) {
  const Decomposition d = decompose(eq);
  InterferenceReport rep;
  rep.sigma_x2 = sigma_x2;
  rep.sigma_n2 = sigma_n2;
  rep.p_signal = signal_power(d, sigma_x2);
  const InterferenceSplit s = interference_powers(d, sigma_x2);
  rep.p_ici1 = s.ici1;
  rep.p_ici2 = s.ici2;
  rep.p_isi = s.isi;
  rep.p_noise = noise_power(eq, sigma_n2);
  rep.sinr = sinr(rep.p_signal, s, rep.p_noise);
  return rep;
}

// Report CSV: k, p_signal, p_ici1, p_ici2, p_isi, p_noise, sinr_db,
// rate_bits. Pass rate params to fill the last column, else it is 0.
inline void write_report_csv(std::ostream& out, const InterferenceReport& rep,
                             const RateParams* rp = nullptr) {
  out << "k,p_signal,p_ici1,p_ici2,p_isi,p_noise,sinr_db,rate_bits\n";
  Eigen::VectorXd rate = Eigen::VectorXd::Zero(rep.p_signal.size());
  if (rp != nullptr) rate = data_rate(rep.sinr, *rp).per_subcarrier;
  char buf[256];
  for (Eigen::Index k = 0; k < rep.p_signal.size(); ++k) {
    const double sdb = 10.0 * std::log10(rep.sinr[k]);
    std::snprintf(buf, sizeof buf, "%lld,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                  static_cast<long long>(k), rep.p_signal[k], rep.p_ici1[k], rep.p_ici2[k],
                  rep.p_isi[k], rep.p_noise[k], sdb, rate[k]);
    out << buf;
  }
}

}  // namespace wofdm
