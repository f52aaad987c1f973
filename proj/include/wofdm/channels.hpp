// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "wofdm/rng.hpp"

namespace wofdm {

// Finite channel impulse response h_0 ... h_nu on a uniform sample grid.
struct Cir {
  Eigen::VectorXcd taps;
  double ts = 200e-9;  // sample period, seconds

  int nu() const { return static_cast<int>(taps.size()) - 1; }
};

inline void validate(const Cir& h) {
  if (h.taps.size() == 0) throw std::invalid_argument("cir: no taps");
  if (h.taps.cwiseAbs().maxCoeff() == 0.0)
    throw std::invalid_argument("cir: all taps are zero");
  if (h.ts <= 0.0) throw std::invalid_argument("cir: nonpositive sample period");
}

// One path of a power-delay profile.
struct PdpEntry {
  double delay_ns = 0.0;
  double power_db = 0.0;
};

using Pdp = std::vector<PdpEntry>;

// ITU-R M.1225 tapped-delay-line profiles (the channel models the
// PED200/VEH200 ensembles are drawn from). Shipped as data/*.pdp too, so
// custom profiles can be substituted via pdp files.
inline const Pdp& itu_pedestrian_a() {
  static const Pdp pdp = {{0.0, 0.0}, {110.0, -9.7}, {190.0, -19.2}, {410.0, -22.8}};
  return pdp;
}

inline const Pdp& itu_vehicular_a() {
  static const Pdp pdp = {{0.0, 0.0},    {310.0, -1.0},  {710.0, -9.0},
                          {1090.0, -10.0}, {1730.0, -15.0}, {2510.0, -20.0}};
  return pdp;
}

enum class ChannelModel { ped200, veh200, custom };

inline std::string_view channel_model_name(ChannelModel m) {
  switch (m) {
    case ChannelModel::ped200: return "PED200";
    case ChannelModel::veh200: return "VEH200";
    case ChannelModel::custom: return "custom";
  }
  return "?";
}

// Ensemble of quasi-static fading channels: complex Gaussian taps with
// per-path variances from the profile, band-limited onto the ts grid.
struct ChannelEnsembleSpec {
  ChannelModel model = ChannelModel::ped200;
  Pdp pdp;
  int count = 0;
  std::uint64_t seed = 0;
  double fc_hz = 2e9;        // carrier, metadata only
  double speed_kmh = 0.0;    // metadata only; quasi-static per run
  double ts = 200e-9;
  int target_len = 0;        // L = nu + 1 taps on the grid
};

inline void validate(const ChannelEnsembleSpec& s) {
  if (s.count <= 0) throw std::invalid_argument("ensemble: count must be positive");
  if (s.target_len < 1) throw std::invalid_argument("ensemble: target_len must be >= 1");
  if (s.ts <= 0.0) throw std::invalid_argument("ensemble: nonpositive sample period");
  if (s.pdp.empty()) throw std::invalid_argument("ensemble: empty power-delay profile");
  if (s.model == ChannelModel::ped200 && s.target_len != 11)
    throw std::invalid_argument("ensemble: PED200 requires target_len 11");
  if (s.model == ChannelModel::veh200 && s.target_len != 21)
    throw std::invalid_argument("ensemble: VEH200 requires target_len 21");
}

inline ChannelEnsembleSpec ped200(int count, std::uint64_t seed) {
  ChannelEnsembleSpec s;
  s.model = ChannelModel::ped200;
  s.pdp = itu_pedestrian_a();
  s.count = count;
  s.seed = seed;
  s.speed_kmh = 4.0;
  s.ts = 200e-9;
  s.target_len = 11;
  return s;
}

inline ChannelEnsembleSpec veh200(int count, std::uint64_t seed) {
  ChannelEnsembleSpec s;
  s.model = ChannelModel::veh200;
  s.pdp = itu_vehicular_a();
  s.count = count;
  s.seed = seed;
  s.speed_kmh = 100.0;
  s.ts = 200e-9;
  s.target_len = 21;
  return s;
}

inline ChannelEnsembleSpec custom_ensemble(Pdp pdp, double ts, int target_len, int count,
                                           std::uint64_t seed) {
  ChannelEnsembleSpec s;
  s.model = ChannelModel::custom;
  s.pdp = std::move(pdp);
  s.count = count;
  s.seed = seed;
  s.ts = ts;
  s.target_len = target_len;
  return s;
}

namespace detail {

// Interpolation kernel mapping a path at fractional delay onto the grid:
// Hann-windowed sinc with half-width equal to the grid length, so path
// energy leaks into realistic filter tails instead of being truncated.
inline double interp_kernel(double t, int half_width) {
  const double a = static_cast<double>(half_width);
  if (std::fabs(t) >= a) return 0.0;
  const double s = (t == 0.0) ? 1.0
                              : std::sin(std::numbers::pi * t) / (std::numbers::pi * t);
  return s * 0.5 * (1.0 + std::cos(std::numbers::pi * t / a));
}

}  // namespace detail

// One quasi-static realization, deterministic in (spec.seed, index).
// Normalized so the ensemble-average total power E[sum |h_n|^2] is 1.
inline Cir itu_tdl_realization(const ChannelEnsembleSpec& spec, int index) {
  validate(spec);
  const int len = spec.target_len;
  const std::size_t paths = spec.pdp.size();

  // Per-path variances, profile normalized to unit total power.
  std::vector<double> var(paths);
  double total = 0.0;
  for (std::size_t i = 0; i < paths; ++i) {
    var[i] = std::pow(10.0, spec.pdp[i].power_db / 10.0);
    total += var[i];
  }
  for (double& v : var) v /= total;

  // Deterministic scale making E[sum_n |h_n|^2] exactly 1 on this grid.
  double grid_power = 0.0;
  for (std::size_t i = 0; i < paths; ++i) {
    const double d = spec.pdp[i].delay_ns * 1e-9 / spec.ts;
    double k2 = 0.0;
    for (int n = 0; n < len; ++n) {
      const double k = detail::interp_kernel(n - d, len);
      k2 += k * k;
    }
    grid_power += var[i] * k2;
  }
  if (grid_power <= 0.0)
    throw std::invalid_argument("ensemble: profile has no energy on the tap grid");
  const double scale = 1.0 / std::sqrt(grid_power);

  PhiloxStream rng(spec.seed, stream_key(stream_tag("itu-tdl"),
                                         static_cast<std::uint64_t>(spec.model),
                                         static_cast<std::uint64_t>(index)));
  Cir h;
  h.ts = spec.ts;
  h.taps = Eigen::VectorXcd::Zero(len);
  for (std::size_t i = 0; i < paths; ++i) {
    const std::complex<double> g = rng.next_cgauss(var[i]);
    const double d = spec.pdp[i].delay_ns * 1e-9 / spec.ts;
    for (int n = 0; n < len; ++n) {
      h.taps[n] += g * (scale * detail::interp_kernel(n - d, len));
    }
  }
  validate(h);
  return h;
}

// Deterministic test channels:
//   delta                -> [1]
//   unit_delay           -> [0, 1]
//   two_ray(a,d)         -> [1, 0 x(d-1), a]
//   long_exponential(nu) -> h_n = e^{-2n/nu}, n = 0..nu, unit energy
inline Cir deterministic_channel(const std::string& name, double ts = 200e-9) {
  Cir h;
  h.ts = ts;
  if (name == "delta") {
    h.taps = Eigen::VectorXcd::Ones(1);
    return h;
  }
  if (name == "unit_delay") {
    h.taps = Eigen::VectorXcd::Zero(2);
    h.taps[1] = 1.0;
    return h;
  }
  const auto open = name.find('(');
  const auto close = name.rfind(')');
  if (open != std::string::npos && close == name.size() - 1) {
    const std::string fn = name.substr(0, open);
    std::istringstream args(name.substr(open + 1, close - open - 1));
    if (fn == "two_ray") {
      double a = 0.0;
      char comma = 0;
      int d = 0;
      if ((args >> a >> comma >> d) && comma == ',' && d >= 1) {
        h.taps = Eigen::VectorXcd::Zero(d + 1);
        h.taps[0] = 1.0;
        h.taps[d] = a;
        return h;
      }
    } else if (fn == "long_exponential") {
      int nu = 0;
      if ((args >> nu) && nu >= 1) {
        h.taps = Eigen::VectorXcd(nu + 1);
        for (int n = 0; n <= nu; ++n) h.taps[n] = std::exp(-2.0 * n / nu);
        h.taps /= std::sqrt(h.taps.squaredNorm());
        return h;
      }
    }
  }
  throw std::invalid_argument("unknown deterministic channel: " + name);
}

// i.i.d. circular complex Gaussian, per-sample variance var_total over
// re+im together; deterministic in (seed, index).
inline Eigen::VectorXcd awgn(int len, double var_total, std::uint64_t seed,
                             std::uint64_t index) {
  if (len < 0) throw std::invalid_argument("awgn: negative length");
  if (var_total < 0.0) throw std::invalid_argument("awgn: negative variance");
  Eigen::VectorXcd q(len);
  if (var_total == 0.0) {
    q.setZero();
    return q;
  }
  PhiloxStream rng(seed, stream_key(stream_tag("awgn"), index));
  for (int i = 0; i < len; ++i) q[i] = rng.next_cgauss(var_total);
  return q;
}

// CIR file: header "# ts=<seconds>", then one "re,im" pair per line.
inline void save_cir(const std::string& path, const Cir& h) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write cir file: " + path);
  char buf[96];
  std::snprintf(buf, sizeof buf, "# ts=%.17g\n", h.ts);
  out << buf;
  for (Eigen::Index i = 0; i < h.taps.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", h.taps[i].real(), h.taps[i].imag());
    out << buf;
  }
}

inline Cir load_cir(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open cir file: " + path);
  Cir h;
  std::vector<std::complex<double>> taps;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto pos = line.find("ts=");
      if (pos != std::string::npos) h.ts = std::stod(line.substr(pos + 3));
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      throw std::runtime_error("cir file: malformed line '" + line + "'");
    taps.emplace_back(std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1)));
  }
  h.taps = Eigen::VectorXcd(static_cast<Eigen::Index>(taps.size()));
  for (Eigen::Index i = 0; i < h.taps.size(); ++i) h.taps[i] = taps[static_cast<std::size_t>(i)];
  validate(h);
  return h;
}

// PDP file: lines of "<delay_ns> <power_dB>"; '#' starts a comment.
inline Pdp load_pdp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open pdp file: " + path);
  Pdp pdp;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    PdpEntry e;
    if (ls >> e.delay_ns >> e.power_db) pdp.push_back(e);
  }
  if (pdp.empty()) throw std::runtime_error("pdp file has no entries: " + path);
  return pdp;
}

inline void save_pdp(const std::string& path, const Pdp& pdp) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write pdp file: " + path);
  for (const auto& e : pdp) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%.17g %.17g\n", e.delay_ns, e.power_db);
    out << buf;
  }
}

}  // namespace wofdm
