// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "wofdm/analysis.hpp"
#include "wofdm/channels.hpp"
#include "wofdm/link_sim.hpp"
#include "wofdm/sysparams.hpp"
#include "wofdm/windowing.hpp"

namespace wofdm {

// Total interference powers of one system as the CP length sweeps.
// Entries without a value mark CP lengths at which the preset is not
// constructible (the derived gamma would be negative).
struct SweepRow {
  SystemKind kind = SystemKind::cp;
  int mu = 0;
  bool admissible = false;
  double tot_signal = 0.0;
  double tot_ici1 = 0.0;
  double tot_ici2 = 0.0;
  double tot_isi = 0.0;
  double tot_noise = 0.0;
  bool sufficient = false;  // kind's CP bound holds for the swept channel order
};

struct SweepConfig {
  std::vector<SystemKind> kinds;
  int n = 256;
  int beta = 8;   // applied only to kinds with a Tx window
  int delta = 10; // applied only to kinds with an Rx window
  std::vector<int> mu_grid;
  double sigma_x2 = 1.0;
  double sigma_n2 = 0.0;
};

// Closed-form totals (sums over subcarriers of the per-subcarrier powers)
// averaged over an ensemble of channel realizations.
inline std::vector<SweepRow> cp_sweep(const SweepConfig& cfg,
                                      const ChannelEnsembleSpec& ensemble) {
  validate(ensemble);
  std::vector<Cir> channels;
  channels.reserve(static_cast<std::size_t>(ensemble.count));
  for (int i = 0; i < ensemble.count; ++i) channels.push_back(itu_tdl_realization(ensemble, i));

  std::vector<SweepRow> rows;
  for (SystemKind kind : cfg.kinds) {
    const auto& rule = detail::rule_of(kind);
    const int beta = rule.uses_beta ? cfg.beta : 0;
    const int delta = rule.uses_delta ? cfg.delta : 0;
    for (int mu : cfg.mu_grid) {
      SweepRow row;
      row.kind = kind;
      row.mu = mu;
      SystemParams p;
      try {
        p = make_preset(kind, cfg.n, mu, beta, delta);
      } catch (const std::invalid_argument&) {
        rows.push_back(row);
        continue;
      }
      row.admissible = true;
      const WindowPair w = default_windows(p);
      bool sufficient = true;
      for (const Cir& h : channels) {
        const EquivalentChannel eq = build_equivalent(p, w, h);
        const InterferenceReport rep = analyze(eq, cfg.sigma_x2, cfg.sigma_n2);
        row.tot_signal += rep.p_signal.sum();
        row.tot_ici1 += rep.p_ici1.sum();
        row.tot_ici2 += rep.p_ici2.sum();
        row.tot_isi += rep.p_isi.sum();
        row.tot_noise += rep.p_noise.sum();
        sufficient = sufficient && validate_against_channel(p, h.nu()).table_bound_ok;
      }
      const double c = static_cast<double>(channels.size());
      row.tot_signal /= c;
      row.tot_ici1 /= c;
      row.tot_ici2 /= c;
      row.tot_isi /= c;
      row.tot_noise /= c;
      row.sufficient = sufficient;
      rows.push_back(row);
    }
  }
  return rows;
}

inline void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "system,mu,admissible,sufficient,tot_signal,tot_ici1,tot_ici2,tot_isi,tot_noise\n";
  char buf[256];
  for (const auto& r : rows) {
    if (!r.admissible) {
      std::snprintf(buf, sizeof buf, "%s,%d,0,0,,,,,\n",
                    std::string(kind_name(r.kind)).c_str(), r.mu);
    } else {
      std::snprintf(buf, sizeof buf, "%s,%d,1,%d,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                    std::string(kind_name(r.kind)).c_str(), r.mu, r.sufficient ? 1 : 0,
                    r.tot_signal, r.tot_ici1, r.tot_ici2, r.tot_isi, r.tot_noise);
    }
    out << buf;
  }
}

}  // namespace wofdm
