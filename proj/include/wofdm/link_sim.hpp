// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <deque>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <Eigen/Dense>

#include "wofdm/channels.hpp"
#include "wofdm/fft.hpp"
#include "wofdm/matrix_engine.hpp"
#include "wofdm/stats.hpp"
#include "wofdm/sysparams.hpp"
#include "wofdm/windowing.hpp"

namespace wofdm {

// Transform-domain blocks entering the transmitter; BPSK mapping.
struct SymbolStream {
  std::vector<Eigen::VectorXcd> blocks;
};

// BPSK block for (seed, trial, block); +1/-1 per subcarrier, sigma_X^2 = 1.
// Deterministic and system-independent, so campaigns can compare systems
// on common data.
inline Eigen::VectorXcd bpsk_block(std::uint64_t seed, std::uint64_t trial,
                                   std::uint64_t block, int n) {
  PhiloxStream rng(seed, stream_key(stream_tag("data"), trial, block));
  Eigen::VectorXcd x(n);
  for (int k = 0; k < n; ++k) x[k] = (rng.next_u32() >> 31) ? 1.0 : -1.0;
  return x;
}

namespace detail {

// IDFT, redundancy extension and Tx window for one block.
inline Eigen::VectorXcd extended_block(const Eigen::VectorXcd& x, const SystemParams& p,
                                       const WindowPair& w) {
  const Eigen::VectorXcd xt = dft_inverse(x);
  const int span = p.n + p.mu + p.rho;
  Eigen::VectorXcd ext(span);
  ext.head(p.mu) = xt.tail(p.mu);
  ext.segment(p.mu, p.n) = xt;
  ext.tail(p.rho) = xt.head(p.rho);
  return ext.cwiseProduct(w.tx.cast<std::complex<double>>());
}

// Linear convolution with the channel taps.
inline Eigen::VectorXcd convolve(const Eigen::VectorXcd& x, const Eigen::VectorXcd& h) {
  Eigen::VectorXcd y = Eigen::VectorXcd::Zero(x.size() + h.size() - 1);
  for (Eigen::Index t = 0; t < h.size(); ++t) {
    if (h[t] == std::complex<double>(0.0, 0.0)) continue;
    y.segment(t, x.size()) += h[t] * x;
  }
  return y;
}

// Receive chain on one intake window: drop gamma, window, fold, circular
// shift, DFT. Sample-domain counterpart of W K P V_rx R.
inline Eigen::VectorXcd receive_chain(const Eigen::VectorXcd& intake,
                                      const SystemParams& p, const WindowPair& w) {
  Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(p.n);
  for (int pos = 0; pos < p.n + p.delta; ++pos) {
    acc[fold_index(pos, p.n, p.delta)] += w.rx[pos] * intake[p.gamma + pos];
  }
  Eigen::VectorXcd z(p.n);
  for (int i = 0; i < p.n; ++i) z[i] = acc[(i + p.kappa) % p.n];
  return dft_forward(z);
}

}  // namespace detail

// Transmit chain over a whole stream: per-block IDFT, CP/CS extension,
// windowing, and the beta-sample overlap-and-add at hop spacing. Output
// length is (L-1)*hop + span.
inline Eigen::VectorXcd modulate_stream(const SymbolStream& stream, const SystemParams& p,
                                        const WindowPair& w) {
  validate(p);
  if (stream.blocks.empty()) throw std::invalid_argument("modulate_stream: no blocks");
  const auto d = derived_lengths(p);
  const int blocks = static_cast<int>(stream.blocks.size());
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(
      static_cast<Eigen::Index>(blocks - 1) * d.hop + d.span);
  for (int l = 0; l < blocks; ++l) {
    if (stream.blocks[static_cast<std::size_t>(l)].size() != p.n)
      throw std::invalid_argument("modulate_stream: block size mismatch");
    out.segment(static_cast<Eigen::Index>(l) * d.hop, d.span) +=
        detail::extended_block(stream.blocks[static_cast<std::size_t>(l)], p, w);
  }
  return out;
}

// Channel convolution plus AWGN of per-sample variance sigma_n2.
inline Eigen::VectorXcd apply_channel(const Eigen::VectorXcd& samples, const Cir& h,
                                      double sigma_n2, std::uint64_t seed,
                                      std::uint64_t index) {
  validate(h);
  Eigen::VectorXcd y = detail::convolve(samples, h.taps);
  if (sigma_n2 > 0.0) y += awgn(static_cast<int>(y.size()), sigma_n2, seed, index);
  return y;
}

// Transform-domain output for block l. The intake window
// [l*hop, l*hop + rx_in) must be covered by the received vector.
inline Eigen::VectorXcd demodulate_block(const Eigen::VectorXcd& received, int l,
                                         const SystemParams& p, const WindowPair& w) {
  validate(p);
  const auto d = derived_lengths(p);
  const Eigen::Index start = static_cast<Eigen::Index>(l) * d.hop;
  if (l < 0 || start + d.rx_in > received.size())
    throw std::out_of_range("demodulate_block: intake window not covered");
  return detail::receive_chain(received.segment(start, d.rx_in), p, w);
}

// Zero-forcing one-tap equalization and BPSK decision. Subcarriers with
// |H_k| below the erasure threshold are flagged and decided on the raw
// observation; under symmetric noise that is a fair coin.
struct DetectResult {
  std::vector<std::uint8_t> bits;
  std::vector<std::uint8_t> erased;
};

inline DetectResult equalize_detect(const Eigen::VectorXcd& y, const Eigen::VectorXcd& h_freq,
                                    double erasure_threshold = 1e-12) {
  if (y.size() != h_freq.size())
    throw std::invalid_argument("equalize_detect: size mismatch");
  DetectResult r;
  r.bits.resize(static_cast<std::size_t>(y.size()));
  r.erased.resize(static_cast<std::size_t>(y.size()));
  for (Eigen::Index k = 0; k < y.size(); ++k) {
    const bool erased = std::abs(h_freq[k]) < erasure_threshold;
    const std::complex<double> v = erased ? y[k] : y[k] / h_freq[k];
    r.bits[static_cast<std::size_t>(k)] = v.real() >= 0.0 ? 1 : 0;
    r.erased[static_cast<std::size_t>(k)] = erased ? 1 : 0;
  }
  return r;
}

// Incremental transmit/channel pipeline. Blocks are pushed in order; the
// pipeline keeps only the channel images that can still reach an intake,
// so arbitrarily long streams run in constant memory.
class StreamSim {
 public:
  StreamSim(const SystemParams& p, const WindowPair& w, const Cir& h)
      : p_(p), w_(w), h_(h), d_(derived_lengths(p)) {
    validate(h);
    // Blocks ahead of l that can reach intake l (nonzero only when the
    // intake outruns the hop), and how far back an image can still reach.
    lookahead_ = (d_.rx_in - 1) / d_.hop;
    const int past_reach = (d_.span + h.nu() - 1) / d_.hop + 1;
    keep_ = std::max(d_.m_of(h.nu()), past_reach) + lookahead_ + 2;
  }

  int lookahead() const { return lookahead_; }

  void push(const Eigen::VectorXcd& x) {
    images_.push_back(detail::convolve(detail::extended_block(x, p_, w_), h_.taps));
    ++pushed_;
    if (static_cast<int>(images_.size()) > keep_) images_.pop_front();
  }

  // Noiseless intake for block l assembled from the retained images.
  Eigen::VectorXcd intake(int l) const {
    if (l < 0 || l >= pushed_) throw std::out_of_range("intake: block not pushed");
    const int first_kept = pushed_ - static_cast<int>(images_.size());
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(d_.rx_in);
    const long long start = static_cast<long long>(l) * d_.hop;
    for (int src = first_kept; src < pushed_; ++src) {
      const long long img_start = static_cast<long long>(src) * d_.hop;
      const auto& img = images_[static_cast<std::size_t>(src - first_kept)];
      const long long lo = std::max<long long>(start, img_start);
      const long long hi = std::min<long long>(start + d_.rx_in, img_start + img.size());
      for (long long t = lo; t < hi; ++t) {
        v[static_cast<Eigen::Index>(t - start)] +=
            img[static_cast<Eigen::Index>(t - img_start)];
      }
    }
    return v;
  }

  Eigen::VectorXcd receive(const Eigen::VectorXcd& intake_samples) const {
    return detail::receive_chain(intake_samples, p_, w_);
  }

 private:
  SystemParams p_;
  WindowPair w_;
  Cir h_;
  DerivedLengths d_;
  int lookahead_ = 0;
  int keep_ = 0;
  int pushed_ = 0;
  std::deque<Eigen::VectorXcd> images_;
};

// One transceiver entering a campaign.
struct SystemSetup {
  std::string label;
  SystemParams params;
  WindowPair windows;
};

inline SystemSetup preset_setup(SystemKind kind, int n, int mu, int beta, int delta) {
  SystemSetup s;
  s.params = make_preset(kind, n, mu, beta, delta);
  s.windows = default_windows(s.params);
  s.label = std::string(kind_name(kind));
  return s;
}

// Channel source for a campaign: one fixed response, or ensemble
// realizations indexed by trial.
struct ChannelSource {
  bool is_ensemble = false;
  Cir fixed;
  ChannelEnsembleSpec spec;
  std::string name = "fixed";

  static ChannelSource from_cir(Cir h, std::string label = "fixed") {
    ChannelSource s;
    s.is_ensemble = false;
    s.fixed = std::move(h);
    s.name = std::move(label);
    return s;
  }

  static ChannelSource from_ensemble(ChannelEnsembleSpec spec) {
    ChannelSource s;
    s.is_ensemble = true;
    s.name = std::string(channel_model_name(spec.model));
    s.spec = std::move(spec);
    return s;
  }

  Cir realize(int trial) const {
    return is_ensemble ? itu_tdl_realization(spec, trial) : fixed;
  }

  // Ensemble realizations are normalized to unit mean total power.
  double mean_energy() const {
    return is_ensemble ? 1.0 : fixed.taps.squaredNorm();
  }
};

struct SimConfig {
  std::vector<SystemSetup> systems;
  ChannelSource channel;
  std::vector<double> snr_db;
  int trials = 1;
  int blocks_per_trial = 100;
  std::uint64_t seed = 1;
  double sigma_x2 = 1.0;
  int warmup_override = -1;        // -1: discard M+1 blocks
  bool per_realization_snr = false;
  int threads = 0;                 // 0: hardware concurrency
};

struct SerCell {
  std::uint64_t bit_errors = 0;
  std::uint64_t bits = 0;
  std::uint64_t erasures = 0;
  double ser = 0.0;
  double ci_low = 0.0;
  double ci_high = 1.0;
};

struct SimResult {
  std::vector<std::string> system_labels;
  std::vector<double> snr_db;
  std::vector<std::vector<SerCell>> cells;  // [system][snr]
  std::string channel_name;
  std::uint64_t seed = 0;
  int trials = 0;
  int blocks_per_trial = 0;
  int trial_failures = 0;
};

// SNR is the received per-sample signal-to-noise ratio: the transmit
// chain carries sigma_X^2/N per time-domain sample, so
//   sigma_n^2 = sigma_X^2 * E[sum |h|^2] / (N * snr).
// With this mapping a flat channel at sufficient CP gives per-subcarrier
// SINR equal to snr exactly.
inline double noise_variance_for_snr(double snr_db, double sigma_x2, double channel_energy,
                                     int n) {
  const double snr = std::pow(10.0, snr_db / 10.0);
  return sigma_x2 * channel_energy / (static_cast<double>(n) * snr);
}

namespace detail {

struct TrialCounts {
  // [system][snr] error/bit/erasure counts
  std::vector<std::vector<SerCell>> cells;
  bool failed = false;
};

inline TrialCounts run_single_trial(const SimConfig& cfg, int trial) {
  TrialCounts out;
  const std::size_t n_sys = cfg.systems.size();
  const std::size_t n_snr = cfg.snr_db.size();
  out.cells.assign(n_sys, std::vector<SerCell>(n_snr));
  try {
    const Cir h = cfg.channel.realize(trial);
    const double energy =
        cfg.per_realization_snr ? h.taps.squaredNorm() : cfg.channel.mean_energy();

    for (std::size_t si = 0; si < n_sys; ++si) {
      const auto& sys = cfg.systems[si];
      const auto d = derived_lengths(sys.params);
      const int m = d.m_of(h.nu());
      const int warmup = cfg.warmup_override >= 0 ? cfg.warmup_override : m + 1;
      if (cfg.blocks_per_trial < m + 2)
        throw std::invalid_argument("campaign: blocks_per_trial must be at least M+2");

      std::vector<double> sigma_n(n_snr);
      for (std::size_t qi = 0; qi < n_snr; ++qi) {
        sigma_n[qi] = std::sqrt(
            noise_variance_for_snr(cfg.snr_db[qi], cfg.sigma_x2, energy, sys.params.n));
      }
      const Eigen::VectorXcd h_freq = frequency_response(h, sys.params.n);
      const double amp = std::sqrt(cfg.sigma_x2);

      StreamSim sim(sys.params, sys.windows, h);
      const int look = sim.lookahead();
      for (int l = 0; l < cfg.blocks_per_trial + look; ++l) {
        if (l < cfg.blocks_per_trial) {
          sim.push(amp * bpsk_block(cfg.seed, static_cast<std::uint64_t>(trial),
                                    static_cast<std::uint64_t>(l), sys.params.n));
        }
        const int tgt = l - look;
        if (tgt < warmup || tgt >= cfg.blocks_per_trial) continue;

        Eigen::VectorXcd intake = sim.intake(tgt);
        // Unit-variance noise on the kept part of the intake, keyed by
        // (trial, block) only: every system and SNR point reuses the same
        // draws, scaled; the first gamma samples are discarded unread.
        PhiloxStream nrng(cfg.seed, stream_key(stream_tag("noise"),
                                               static_cast<std::uint64_t>(trial),
                                               static_cast<std::uint64_t>(tgt)));
        Eigen::VectorXcd unit_noise(sys.params.n + sys.params.delta);
        for (Eigen::Index i = 0; i < unit_noise.size(); ++i)
          unit_noise[i] = nrng.next_cgauss(1.0);

        const Eigen::VectorXcd y_sig = sim.receive(intake);
        Eigen::VectorXcd noise_intake = Eigen::VectorXcd::Zero(d.rx_in);
        noise_intake.tail(sys.params.n + sys.params.delta) = unit_noise;
        const Eigen::VectorXcd y_noise = sim.receive(noise_intake);

        const Eigen::VectorXcd data = bpsk_block(cfg.seed, static_cast<std::uint64_t>(trial),
                                                 static_cast<std::uint64_t>(tgt), sys.params.n);
        for (std::size_t qi = 0; qi < n_snr; ++qi) {
          const Eigen::VectorXcd y = y_sig + sigma_n[qi] * y_noise;
          const DetectResult det = equalize_detect(y, h_freq);
          auto& cell = out.cells[si][qi];
          for (int k = 0; k < sys.params.n; ++k) {
            const std::uint8_t sent = data[k].real() > 0.0 ? 1 : 0;
            cell.bits += 1;
            if (det.bits[static_cast<std::size_t>(k)] != sent) cell.bit_errors += 1;
            if (det.erased[static_cast<std::size_t>(k)]) cell.erasures += 1;
          }
        }
      }
    }
  } catch (const std::exception&) {
    out.failed = true;
    for (auto& row : out.cells)
      for (auto& c : row) c = SerCell{};
  }
  return out;
}

}  // namespace detail

// Full Monte Carlo campaign. Trials are independent and merged in trial
// order, so the result does not depend on the thread count. Per-trial
// failures are counted, never fatal.
inline SimResult run_campaign(const SimConfig& cfg,
                              const std::function<void(int)>& progress = {}) {
  if (cfg.systems.empty()) throw std::invalid_argument("campaign: no systems");
  if (cfg.snr_db.empty()) throw std::invalid_argument("campaign: empty SNR grid");
  if (cfg.trials <= 0) throw std::invalid_argument("campaign: trials must be positive");
  for (const auto& s : cfg.systems) validate(s.params);

  std::vector<detail::TrialCounts> per_trial(static_cast<std::size_t>(cfg.trials));
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const int workers = cfg.threads > 0 ? cfg.threads : static_cast<int>(hw);

  std::atomic<int> next{0};
  std::atomic<int> done{0};
  auto worker = [&]() {
    for (;;) {
      const int t = next.fetch_add(1);
      if (t >= cfg.trials) return;
      per_trial[static_cast<std::size_t>(t)] = detail::run_single_trial(cfg, t);
      const int d = done.fetch_add(1) + 1;
      if (progress) progress(d);
    }
  };
  if (workers <= 1 || cfg.trials == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  SimResult res;
  res.snr_db = cfg.snr_db;
  res.channel_name = cfg.channel.name;
  res.seed = cfg.seed;
  res.trials = cfg.trials;
  res.blocks_per_trial = cfg.blocks_per_trial;
  res.cells.assign(cfg.systems.size(), std::vector<SerCell>(cfg.snr_db.size()));
  for (const auto& s : cfg.systems) res.system_labels.push_back(s.label);
  for (const auto& tc : per_trial) {
    if (tc.failed) {
      ++res.trial_failures;
      continue;
    }
    for (std::size_t si = 0; si < res.cells.size(); ++si) {
      for (std::size_t qi = 0; qi < res.cells[si].size(); ++qi) {
        res.cells[si][qi].bit_errors += tc.cells[si][qi].bit_errors;
        res.cells[si][qi].bits += tc.cells[si][qi].bits;
        res.cells[si][qi].erasures += tc.cells[si][qi].erasures;
      }
    }
  }
  for (auto& row : res.cells) {
    for (auto& c : row) {
      c.ser = c.bits > 0 ? static_cast<double>(c.bit_errors) / static_cast<double>(c.bits)
                         : 0.0;
      if (c.bits > 0) {
        const auto ci = clopper_pearson(c.bit_errors, c.bits, 0.05);
        c.ci_low = ci.first;
        c.ci_high = ci.second;
      }
    }
  }
  return res;
}

// Campaign CSV: one row per (system, snr).
inline void write_sim_csv(std::ostream& out, const SimResult& r) {
  out << "system,channel_model,snr_db,trials,bit_errors,bits,ser,ci_low,ci_high\n";
  char buf[256];
  for (std::size_t si = 0; si < r.cells.size(); ++si) {
    for (std::size_t qi = 0; qi < r.cells[si].size(); ++qi) {
      const auto& c = r.cells[si][qi];
      std::snprintf(buf, sizeof buf, "%s,%s,%.17g,%d,%llu,%llu,%.17g,%.17g,%.17g\n",
                    r.system_labels[si].c_str(), r.channel_name.c_str(), r.snr_db[qi],
                    r.trials, static_cast<unsigned long long>(c.bit_errors),
                    static_cast<unsigned long long>(c.bits), c.ser, c.ci_low, c.ci_high);
      out << buf;
    }
  }
}

// Empirical second-order statistics of the streaming chain, for checking
// the closed forms. The desired-path gain is estimated by correlating the
// output with the sent symbols; the interference residual subtracts the
// reference gains a0_diag. Standard errors come from batch means (batch
// 128 blocks), which absorbs the short-range dependence between
// consecutive blocks.
struct PowerEstimate {
  Eigen::VectorXcd gain;                    // empirical desired-path gain
  Eigen::VectorXd gain_se_re, gain_se_im;
  Eigen::VectorXd p_int, p_int_se;          // interference power (noiseless run)
  Eigen::VectorXd p_noise, p_noise_se;      // noise-only power at sigma_n2
  int blocks_used = 0;
};

inline PowerEstimate estimate_powers(const SystemParams& p, const WindowPair& w,
                                     const Cir& h, const Eigen::VectorXcd& a0_diag,
                                     double sigma_n2, int n_blocks, std::uint64_t seed) {
  validate(p);
  validate(h);
  if (a0_diag.size() != p.n) throw std::invalid_argument("estimate_powers: gain size");
  if (n_blocks < 256) throw std::invalid_argument("estimate_powers: too few blocks");
  const auto d = derived_lengths(p);
  const int warmup = d.m_of(h.nu()) + 1;
  constexpr int kBatch = 128;

  const int n = p.n;
  PowerEstimate pe;
  pe.gain = Eigen::VectorXcd::Zero(n);
  pe.gain_se_re = Eigen::VectorXd::Zero(n);
  pe.gain_se_im = Eigen::VectorXd::Zero(n);
  pe.p_int = Eigen::VectorXd::Zero(n);
  pe.p_int_se = Eigen::VectorXd::Zero(n);
  pe.p_noise = Eigen::VectorXd::Zero(n);
  pe.p_noise_se = Eigen::VectorXd::Zero(n);

  // Batch accumulators: mean and mean-of-squares over batch means.
  Eigen::VectorXcd gsum = Eigen::VectorXcd::Zero(n), gbatch = Eigen::VectorXcd::Zero(n);
  Eigen::VectorXd g2re = Eigen::VectorXd::Zero(n), g2im = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd isum = Eigen::VectorXd::Zero(n), ibatch = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd i2 = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd nsum = Eigen::VectorXd::Zero(n), nbatch = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd n2 = Eigen::VectorXd::Zero(n);

  StreamSim sim(p, w, h);
  const int look = sim.lookahead();
  int batches = 0, in_batch = 0;
  const int total = n_blocks + warmup;
  for (int l = 0; l < total + look; ++l) {
    if (l < total) {
      sim.push(bpsk_block(seed, 0, static_cast<std::uint64_t>(l), n));
    }
    const int tgt = l - look;
    if (tgt < warmup || tgt >= total) continue;
    const Eigen::VectorXcd y = sim.receive(sim.intake(tgt));
    const Eigen::VectorXcd x = bpsk_block(seed, 0, static_cast<std::uint64_t>(tgt), n);
    const Eigen::VectorXcd corr = y.cwiseProduct(x.conjugate());
    const Eigen::VectorXd resid = (y - a0_diag.cwiseProduct(x)).cwiseAbs2();
    gbatch += corr;
    ibatch += resid;
    if (++in_batch == kBatch) {
      gbatch /= kBatch;
      ibatch /= kBatch;
      gsum += gbatch;
      g2re += gbatch.real().cwiseAbs2();
      g2im += gbatch.imag().cwiseAbs2();
      isum += ibatch;
      i2 += ibatch.cwiseAbs2();
      gbatch.setZero();
      ibatch.setZero();
      in_batch = 0;
      ++batches;
    }
  }

  // Noise-only pass through the same receive chain.
  int nbatches = 0, nin = 0;
  Eigen::VectorXcd noise_intake = Eigen::VectorXcd::Zero(d.rx_in);
  for (int l = 0; l < n_blocks; ++l) {
    PhiloxStream nrng(seed, stream_key(stream_tag("pwr-noise"), static_cast<std::uint64_t>(l)));
    for (int i = 0; i < n + p.delta; ++i)
      noise_intake[p.gamma + i] = nrng.next_cgauss(sigma_n2);
    const Eigen::VectorXd pw = detail::receive_chain(noise_intake, p, w).cwiseAbs2();
    nbatch += pw;
    if (++nin == kBatch) {
      nbatch /= kBatch;
      nsum += nbatch;
      n2 += nbatch.cwiseAbs2();
      nbatch.setZero();
      nin = 0;
      ++nbatches;
    }
  }

  if (batches < 2 || nbatches < 2)
    throw std::invalid_argument("estimate_powers: need at least two batches");
  const double b = batches, nb = nbatches;
  pe.blocks_used = batches * kBatch;
  pe.gain = gsum / b;
  pe.p_int = isum / b;
  pe.p_noise = nsum / nb;
  for (int k = 0; k < n; ++k) {
    const double vre = std::max(0.0, g2re[k] / b - pe.gain[k].real() * pe.gain[k].real());
    const double vim = std::max(0.0, g2im[k] / b - pe.gain[k].imag() * pe.gain[k].imag());
    pe.gain_se_re[k] = std::sqrt(vre / (b - 1));
    pe.gain_se_im[k] = std::sqrt(vim / (b - 1));
    const double vi = std::max(0.0, i2[k] / b - pe.p_int[k] * pe.p_int[k]);
    pe.p_int_se[k] = std::sqrt(vi / (b - 1));
    const double vn = std::max(0.0, n2[k] / nb - pe.p_noise[k] * pe.p_noise[k]);
    pe.p_noise_se[k] = std::sqrt(vn / (nb - 1));
  }
  return pe;
}

}  // namespace wofdm
