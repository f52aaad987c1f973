// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: closed-form interference analysis, Monte Carlo
// SER campaigns, CP-length sweeps and achievable-rate reports, emitted as
// CSV/JSON for external plotting.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "wofdm/wofdm.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace wofdm;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt_g(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// "a:b:c" (start:step:stop, inclusive), "a:c" (step 1), or "a,b,c".
std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> out;
  if (text.find(':') != std::string::npos) {
    std::vector<double> parts;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ':')) parts.push_back(std::stod(tok));
    double start = 0, step = 1, stop = 0;
    if (parts.size() == 2) {
      start = parts[0];
      stop = parts[1];
    } else if (parts.size() == 3) {
      start = parts[0];
      step = parts[1];
      stop = parts[2];
    } else {
      throw ConfigError("bad grid: " + text);
    }
    if (step <= 0) throw ConfigError("grid step must be positive: " + text);
    for (double v = start; v <= stop + 1e-9; v += step) out.push_back(v);
  } else {
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
  }
  if (out.empty()) throw ConfigError("empty grid: " + text);
  return out;
}

std::map<std::string, std::string> parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (!key.empty()) kv[key] = val;
  }
  return kv;
}

// Everything shared by the subcommands.
struct CommonOpts {
  std::string systems = "all";
  std::string config_file;
  int n = 256, mu = 32, beta = 8, delta = 10;
  std::optional<int> rho, gamma, kappa;
  std::string channel_model;
  std::string channel_file;
  std::string pdp_file;
  int channel_len = 0;
  std::string snr = "20";
  std::string cp_sweep;
  int trials = 50;
  int blocks = 100;
  std::uint64_t seed = 1;
  int threads = 0;
  double target_ser = 0.0;  // 0: rate chains a simulation for its SER
  std::string ser_table;
  double sigma_x2 = 1.0;
  double ts = 200e-9;
  double spacing_khz = 11.16071492;
  std::string out_dir = "out";
  std::string format = "csv";
  std::string rate_norm = "span";
  bool per_realization_snr = false;
  bool quiet = false;
  std::string tx_rise_file, tx_fall_file, rx_rise_file, rx_fall_file;
  std::string dump_matrices;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--system", o.systems,
                  "Comma list of CP,wtx,wrx,WOLA,CPW,CPwtx,CPwrx, or 'all'");
  cmd->add_option("--config", o.config_file,
                  "System config file (keys: kind,n,mu,beta,delta,rho,gamma,kappa)");
  cmd->add_option("--n", o.n, "Subcarrier count");
  cmd->add_option("--mu", o.mu, "CP length");
  cmd->add_option("--beta", o.beta, "Tx window tail (kinds with a Tx window)");
  cmd->add_option("--delta", o.delta, "Rx window tail (kinds with an Rx window)");
  cmd->add_option("--rho", o.rho, "Cyclic suffix override");
  cmd->add_option("--gamma", o.gamma, "Removed-samples override");
  cmd->add_option("--kappa", o.kappa, "Circular shift override");
  cmd->add_option("--channel-model", o.channel_model,
                  "PED200 | VEH200 | delta | unit_delay | two_ray(a,d) | long_exponential(nu)");
  cmd->add_option("--channel-file", o.channel_file, "CIR file (one 're,im' per line)");
  cmd->add_option("--pdp-file", o.pdp_file, "Custom power-delay profile for an ensemble");
  cmd->add_option("--channel-len", o.channel_len, "Tap count for a custom ensemble");
  cmd->add_option("--snr", o.snr, "SNR grid in dB: 'a:step:b' or comma list");
  cmd->add_option("--cp-sweep", o.cp_sweep, "CP length grid: 'a:b' or 'a:step:b'");
  cmd->add_option("--trials", o.trials, "Channel realizations / trials");
  cmd->add_option("--blocks", o.blocks, "Blocks per trial (including warm-up)");
  cmd->add_option("--seed", o.seed, "Campaign seed");
  cmd->add_option("--threads", o.threads, "Worker threads (0: hardware)");
  cmd->add_option("--target-ser", o.target_ser,
                  "Fixed SER for the SINR gap (rate simulates its own SER when unset)");
  cmd->add_option("--ser-table", o.ser_table, "CSV system,snr_db,ser replacing simulation");
  cmd->add_option("--sigma-x2", o.sigma_x2, "Symbol variance");
  cmd->add_option("--ts", o.ts, "Sample period in seconds");
  cmd->add_option("--spacing-khz", o.spacing_khz, "Subcarrier spacing echoed into metadata");
  cmd->add_option("--out", o.out_dir, "Output directory");
  cmd->add_option("--format", o.format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--rate-normalization", o.rate_norm, "span (published) | hop (extension)")
      ->check(CLI::IsMember({"span", "hop"}));
  cmd->add_flag("--per-realization-snr", o.per_realization_snr,
                "Normalize noise to each realization's energy");
  cmd->add_flag("--quiet", o.quiet, "Suppress the progress counter");
  cmd->add_option("--tx-window-rise", o.tx_rise_file, "Tx rise tail file");
  cmd->add_option("--tx-window-fall", o.tx_fall_file, "Tx fall tail file");
  cmd->add_option("--rx-window-rise", o.rx_rise_file, "Rx rise tail file");
  cmd->add_option("--rx-window-fall", o.rx_fall_file, "Rx fall tail file");
  cmd->add_option("--dump-matrices", o.dump_matrices,
                  "Directory for equivalent-channel matrix dumps");
}

WindowPair windows_for(const SystemParams& p, const CommonOpts& o) {
  auto tails = [&](const std::string& rise_file, const std::string& fall_file, int len) {
    auto pair = raised_cosine_tail(len);
    if (!rise_file.empty()) pair.first = load_window_tail(rise_file);
    if (!fall_file.empty()) pair.second = load_window_tail(fall_file);
    return pair;
  };
  auto [tr, tf] = tails(o.tx_rise_file, o.tx_fall_file, p.beta);
  auto [rr, rf] = tails(o.rx_rise_file, o.rx_fall_file, p.delta);
  if (!tails_complementary(tr, tf) || !tails_complementary(rr, rf)) {
    std::cerr << "[wofdm] warning: window tails are not complementary "
                 "(rise+fall != 1); overlap-add will distort flat channels\n";
  }
  return build_windows(p, tr, tf, rr, rf);
}

std::vector<SystemSetup> resolve_systems(const CommonOpts& o) {
  int n = o.n, mu = o.mu, beta = o.beta, delta = o.delta;
  std::optional<int> rho = o.rho, gamma = o.gamma, kappa = o.kappa;
  std::optional<SystemKind> config_kind;
  if (!o.config_file.empty()) {
    const auto kv = parse_config_file(o.config_file);
    auto geti = [&](const char* key, int& dst) {
      if (kv.count(key)) dst = std::stoi(kv.at(key));
    };
    if (kv.count("kind")) config_kind = kind_from_name(kv.at("kind"));
    geti("n", n);
    geti("mu", mu);
    geti("beta", beta);
    geti("delta", delta);
    if (kv.count("rho") && !rho) rho = std::stoi(kv.at("rho"));
    if (kv.count("gamma") && !gamma) gamma = std::stoi(kv.at("gamma"));
    if (kv.count("kappa") && !kappa) kappa = std::stoi(kv.at("kappa"));
    // Command-line flags take precedence over the file.
    if (o.n != 256) n = o.n;
    if (o.mu != 32) mu = o.mu;
    if (o.beta != 8) beta = o.beta;
    if (o.delta != 10) delta = o.delta;
  }

  std::vector<SystemSetup> systems;
  auto add_kind = [&](SystemKind kind) {
    const auto& rule = detail::rule_of(kind);
    const int b = rule.uses_beta ? beta : 0;
    const int d = rule.uses_delta ? delta : 0;
    SystemSetup s;
    if (rho || gamma || kappa) {
      SystemParams base = make_preset(kind, n, mu, b, d);
      s.params = make_custom(kind, n, mu, b, d, rho.value_or(base.rho),
                             gamma.value_or(base.gamma), kappa.value_or(base.kappa));
    } else {
      s.params = make_preset(kind, n, mu, b, d);
    }
    s.windows = windows_for(s.params, o);
    s.label = std::string(kind_name(kind));
    systems.push_back(std::move(s));
  };

  if (config_kind) {
    add_kind(*config_kind);
  } else if (o.systems == "all") {
    for (SystemKind k : kAllKinds) add_kind(k);
  } else {
    std::stringstream ss(o.systems);
    std::string tok;
    while (std::getline(ss, tok, ',')) add_kind(kind_from_name(tok));
  }
  if (systems.empty()) throw ConfigError("no systems selected");
  return systems;
}

ChannelSource resolve_channel(const CommonOpts& o) {
  if (!o.channel_file.empty()) {
    return ChannelSource::from_cir(load_cir(o.channel_file), "file:" + o.channel_file);
  }
  if (!o.pdp_file.empty()) {
    if (o.channel_len < 1) throw ConfigError("--pdp-file requires --channel-len");
    return ChannelSource::from_ensemble(
        custom_ensemble(load_pdp(o.pdp_file), o.ts, o.channel_len, o.trials, o.seed));
  }
  if (o.channel_model.empty()) {
    throw ConfigError("no channel given: use --channel-model, --channel-file or --pdp-file");
  }
  if (o.channel_model == "PED200") {
    return ChannelSource::from_ensemble(ped200(o.trials, o.seed));
  }
  if (o.channel_model == "VEH200") {
    return ChannelSource::from_ensemble(veh200(o.trials, o.seed));
  }
  return ChannelSource::from_cir(deterministic_channel(o.channel_model, o.ts),
                                 o.channel_model);
}

json params_json(const SystemSetup& s) {
  return json{{"label", s.label},         {"kind", std::string(kind_name(s.params.kind))},
              {"n", s.params.n},          {"mu", s.params.mu},
              {"beta", s.params.beta},    {"delta", s.params.delta},
              {"rho", s.params.rho},      {"gamma", s.params.gamma},
              {"kappa", s.params.kappa}};
}

void write_metadata(const CommonOpts& o, const std::string& command,
                    const std::vector<SystemSetup>& systems, const ChannelSource& channel,
                    const json& extra) {
  json meta;
  meta["tool"] = "wofdm";
  meta["version"] = WOFDM_VERSION_STRING;
  meta["command"] = command;
  meta["seed"] = o.seed;
  meta["trials"] = o.trials;
  meta["blocks_per_trial"] = o.blocks;
  meta["sigma_x2"] = o.sigma_x2;
  meta["ts_s"] = o.ts;
  meta["fs_hz"] = 1.0 / o.ts;
  meta["subcarrier_spacing_khz"] = o.spacing_khz;
  meta["target_ser"] = o.target_ser;
  meta["rate_normalization"] = o.rate_norm;
  meta["per_realization_snr"] = o.per_realization_snr;
  meta["channel"] = channel.name;
  meta["format"] = o.format;
  meta["config_file"] = o.config_file;
  meta["systems"] = json::array();
  for (const auto& s : systems) meta["systems"].push_back(params_json(s));
  for (auto it = extra.begin(); it != extra.end(); ++it) meta[it.key()] = it.value();
  std::ofstream out(fs::path(o.out_dir) / "metadata.json");
  out << meta.dump(2) << "\n";
}

void progress_printer(const CommonOpts& o, int total, int done) {
  if (o.quiet) return;
  std::cerr << "\r[wofdm] trial " << done << "/" << total << std::flush;
  if (done == total) std::cerr << "\n";
}

double noise_var(const CommonOpts& o, const ChannelSource& channel, const Cir& h,
                 double snr_db, int n) {
  const double energy =
      o.per_realization_snr ? h.taps.squaredNorm() : channel.mean_energy();
  return noise_variance_for_snr(snr_db, o.sigma_x2, energy, n);
}

// ---------------------------------------------------------------- analyze

int cmd_analyze(const CommonOpts& o) {
  const auto systems = resolve_systems(o);
  const auto channel = resolve_channel(o);
  fs::create_directories(o.out_dir);
  const int realizations = channel.is_ensemble ? o.trials : 1;
  const std::vector<double> snr_grid = parse_grid(o.snr);

  json file_list = json::array();
  const double report_ser = o.target_ser > 0.0 ? o.target_ser : 1e-3;
  for (const auto& sys : systems) {
    RateParams rp = make_rate_params(report_ser, 1.0 / o.ts, sys.params,
                                     o.rate_norm == "hop");
    for (double snr_db : snr_grid) {
      InterferenceReport mean;
      for (int r = 0; r < realizations; ++r) {
        const Cir h = channel.realize(r);
        const double sn2 = noise_var(o, channel, h, snr_db, sys.params.n);
        const EquivalentChannel eq = build_equivalent(sys.params, sys.windows, h);
        const InterferenceReport rep = analyze(eq, o.sigma_x2, sn2);
        if (r == 0) {
          mean = rep;
        } else {
          mean.p_signal += rep.p_signal;
          mean.p_ici1 += rep.p_ici1;
          mean.p_ici2 += rep.p_ici2;
          mean.p_isi += rep.p_isi;
          mean.p_noise += rep.p_noise;
        }
        if (channel.is_ensemble || realizations == 1) {
          std::ostringstream name;
          name << "analyze_" << sys.label << "_snr" << snr_db << "_chan" << r << "."
               << o.format;
          std::ofstream f(fs::path(o.out_dir) / name.str());
          if (o.format == "csv") {
            write_report_csv(f, rep, &rp);
          } else {
            json rows = json::array();
            const auto rate = data_rate(rep.sinr, rp).per_subcarrier;
            for (int k = 0; k < sys.params.n; ++k) {
              rows.push_back(json{{"k", k},
                                  {"p_signal", rep.p_signal[k]},
                                  {"p_ici1", rep.p_ici1[k]},
                                  {"p_ici2", rep.p_ici2[k]},
                                  {"p_isi", rep.p_isi[k]},
                                  {"p_noise", rep.p_noise[k]},
                                  {"sinr_db", 10.0 * std::log10(rep.sinr[k])},
                                  {"rate_bits", rate[k]}});
            }
            f << rows.dump(2) << "\n";
          }
          file_list.push_back(name.str());
        }
        if (!o.dump_matrices.empty() && r == 0 && snr_db == snr_grid.front()) {
          fs::create_directories(o.dump_matrices);
          for (std::size_t m = 0; m < eq.a.size(); ++m) {
            std::ofstream mf(fs::path(o.dump_matrices) /
                             ("a" + std::to_string(m) + "_" + sys.label + ".txt"));
            write_matrix(mf, eq.a[m]);
          }
          std::ofstream gf(fs::path(o.dump_matrices) / ("gnoise_" + sys.label + ".txt"));
          write_matrix(gf, eq.g_noise);
        }
      }
      const double c = realizations;
      mean.p_signal /= c;
      mean.p_ici1 /= c;
      mean.p_ici2 /= c;
      mean.p_isi /= c;
      mean.p_noise /= c;
      InterferenceSplit ms{mean.p_ici1, mean.p_ici2, mean.p_isi};
      mean.sinr = sinr(mean.p_signal, ms, mean.p_noise);
      std::ostringstream name;
      name << "analyze_" << sys.label << "_snr" << snr_db << "_mean.csv";
      std::ofstream f(fs::path(o.out_dir) / name.str());
      write_report_csv(f, mean, &rp);
      file_list.push_back(name.str());
    }
  }

  if (!o.cp_sweep.empty()) {
    SweepConfig sc;
    for (const auto& s : systems) sc.kinds.push_back(s.params.kind);
    sc.n = systems.front().params.n;
    sc.beta = o.beta;
    sc.delta = o.delta;
    for (double mu : parse_grid(o.cp_sweep)) sc.mu_grid.push_back(static_cast<int>(mu));
    sc.sigma_x2 = o.sigma_x2;
    sc.sigma_n2 = 0.0;
    if (!channel.is_ensemble) throw ConfigError("--cp-sweep needs an ensemble channel model");
    const auto rows = cp_sweep(sc, channel.spec);
    std::ofstream f(fs::path(o.out_dir) / "sweep_interference.csv");
    write_sweep_csv(f, rows);
    file_list.push_back("sweep_interference.csv");
  }

  write_metadata(o, "analyze", systems, channel, json{{"files", file_list}});
  return 0;
}

// --------------------------------------------------------------- simulate

SimResult run_sim(const CommonOpts& o, const std::vector<SystemSetup>& systems,
                  const ChannelSource& channel) {
  SimConfig cfg;
  cfg.systems = systems;
  cfg.channel = channel;
  cfg.snr_db = parse_grid(o.snr);
  cfg.trials = o.trials;
  cfg.blocks_per_trial = o.blocks;
  cfg.seed = o.seed;
  cfg.sigma_x2 = o.sigma_x2;
  cfg.per_realization_snr = o.per_realization_snr;
  cfg.threads = o.threads;
  return run_campaign(cfg, [&](int done) { progress_printer(o, o.trials, done); });
}

void write_sim_outputs(const CommonOpts& o, const SimResult& res) {
  std::ofstream f(fs::path(o.out_dir) / "sim_results.csv");
  write_sim_csv(f, res);
  if (o.format == "json") {
    json rows = json::array();
    for (std::size_t si = 0; si < res.cells.size(); ++si) {
      for (std::size_t qi = 0; qi < res.cells[si].size(); ++qi) {
        const auto& c = res.cells[si][qi];
        rows.push_back(json{{"system", res.system_labels[si]},
                            {"channel_model", res.channel_name},
                            {"snr_db", res.snr_db[qi]},
                            {"trials", res.trials},
                            {"bit_errors", c.bit_errors},
                            {"bits", c.bits},
                            {"ser", c.ser},
                            {"ci_low", c.ci_low},
                            {"ci_high", c.ci_high}});
      }
    }
    std::ofstream jf(fs::path(o.out_dir) / "sim_results.json");
    jf << rows.dump(2) << "\n";
  }
}

int cmd_simulate(const CommonOpts& o) {
  const auto systems = resolve_systems(o);
  const auto channel = resolve_channel(o);
  fs::create_directories(o.out_dir);
  const SimResult res = run_sim(o, systems, channel);
  write_sim_outputs(o, res);
  write_metadata(o, "simulate", systems, channel,
                 json{{"trial_failures", res.trial_failures}});
  if (res.trial_failures > 0) {
    std::cerr << "[wofdm] " << res.trial_failures << " trial(s) failed and were skipped\n";
  }
  return 0;
}

// ------------------------------------------------------------------- rate

int cmd_rate(const CommonOpts& o) {
  const auto systems = resolve_systems(o);
  const auto channel = resolve_channel(o);
  fs::create_directories(o.out_dir);
  const std::vector<double> snr_grid = parse_grid(o.snr);
  const int realizations = channel.is_ensemble ? o.trials : 1;

  // SER per (system, snr): a user table, a fixed target, or a chained
  // simulation with the same seed and grid.
  std::map<std::pair<std::string, double>, double> ser_of;
  bool chained = false;
  if (!o.ser_table.empty()) {
    std::ifstream f(o.ser_table);
    if (!f) throw ConfigError("cannot open --ser-table: " + o.ser_table);
    std::string line;
    std::getline(f, line);  // header
    while (std::getline(f, line)) {
      std::stringstream ss(line);
      std::string sys, snr, ser;
      if (std::getline(ss, sys, ',') && std::getline(ss, snr, ',') &&
          std::getline(ss, ser, ',')) {
        ser_of[{sys, std::stod(snr)}] = std::stod(ser);
      }
    }
  } else if (o.target_ser > 0.0) {
    for (const auto& s : systems)
      for (double q : snr_grid) ser_of[{s.label, q}] = o.target_ser;
  }
  if (ser_of.empty()) {
    chained = true;
    const SimResult res = run_sim(o, systems, channel);
    for (std::size_t si = 0; si < res.cells.size(); ++si) {
      for (std::size_t qi = 0; qi < res.cells[si].size(); ++qi) {
        const auto& c = res.cells[si][qi];
        // Continuity correction keeps the gap finite when no errors land.
        const double floor_ser = 0.5 / std::max<std::uint64_t>(c.bits, 1);
        ser_of[{res.system_labels[si], res.snr_db[qi]}] = std::max(c.ser, floor_ser);
      }
    }
  }

  std::ofstream f(fs::path(o.out_dir) / "rate_vs_snr.csv");
  f << "system,snr_db,ser_used,gap,rate_total_bps\n";
  json jrows = json::array();
  for (const auto& sys : systems) {
    for (double snr_db : snr_grid) {
      const auto it = ser_of.find({sys.label, snr_db});
      if (it == ser_of.end())
        throw ConfigError("no SER entry for " + sys.label + " at " + fmt_g(snr_db) + " dB");
      RateParams rp =
          make_rate_params(it->second, 1.0 / o.ts, sys.params, o.rate_norm == "hop");
      double mean_rate = 0.0;
      for (int r = 0; r < realizations; ++r) {
        const Cir h = channel.realize(r);
        const double sn2 = noise_var(o, channel, h, snr_db, sys.params.n);
        const auto rep = analyze(build_equivalent(sys.params, sys.windows, h), o.sigma_x2, sn2);
        mean_rate += data_rate(rep.sinr, rp).total_hz_bits;
      }
      mean_rate /= realizations;
      f << sys.label << "," << fmt_g(snr_db) << "," << fmt_g(it->second) << ","
        << fmt_g(rp.gap) << "," << fmt_g(mean_rate) << "\n";
      jrows.push_back(json{{"system", sys.label},
                           {"snr_db", snr_db},
                           {"ser_used", it->second},
                           {"gap", rp.gap},
                           {"rate_total_bps", mean_rate}});
    }
  }
  f.close();
  if (o.format == "json") {
    std::ofstream jf(fs::path(o.out_dir) / "rate_vs_snr.json");
    jf << jrows.dump(2) << "\n";
  }

  if (!o.cp_sweep.empty()) {
    std::ofstream cf(fs::path(o.out_dir) / "rate_vs_cp.csv");
    cf << "system,mu,snr_db,rate_total_bps\n";
    for (const auto& sys : systems) {
      const auto& rule = detail::rule_of(sys.params.kind);
      for (double mu_d : parse_grid(o.cp_sweep)) {
        const int mu = static_cast<int>(mu_d);
        SystemParams p;
        try {
          p = make_preset(sys.params.kind, sys.params.n, mu,
                          rule.uses_beta ? o.beta : 0, rule.uses_delta ? o.delta : 0);
        } catch (const std::invalid_argument&) {
          continue;  // CP too short for this kind's derived parameters
        }
        const WindowPair w = windows_for(p, o);
        for (double snr_db : snr_grid) {
          const double ser = ser_of.at({sys.label, snr_db});
          RateParams rp = make_rate_params(ser, 1.0 / o.ts, p, o.rate_norm == "hop");
          double mean_rate = 0.0;
          for (int r = 0; r < realizations; ++r) {
            const Cir h = channel.realize(r);
            const double sn2 = noise_var(o, channel, h, snr_db, p.n);
            const auto rep = analyze(build_equivalent(p, w, h), o.sigma_x2, sn2);
            mean_rate += data_rate(rep.sinr, rp).total_hz_bits;
          }
          mean_rate /= realizations;
          cf << sys.label << "," << mu << "," << fmt_g(snr_db) << "," << fmt_g(mean_rate)
             << "\n";
        }
      }
    }
  }

  write_metadata(o, "rate", systems, channel,
                 json{{"ser_source", !o.ser_table.empty()
                                         ? "table"
                                         : (chained ? "simulated" : "target")}});
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Windowed-OFDM interference, SER and rate analysis"};
  app.require_subcommand(1);
  CommonOpts o;
  CLI::App* analyze = app.add_subcommand("analyze", "Closed-form interference reports");
  CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo SER campaign");
  CLI::App* rate = app.add_subcommand("rate", "Achievable data rate reports");
  add_common(analyze, o);
  add_common(simulate, o);
  add_common(rate, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (analyze->parsed()) return cmd_analyze(o);
    if (simulate->parsed()) return cmd_simulate(o);
    if (rate->parsed()) return cmd_rate(o);
    return kExitConfig;
  } catch (const ConfigError& e) {
    std::cerr << "[wofdm] config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "[wofdm] config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "[wofdm] error: " << e.what() << "\n";
    return kExitRuntime;
  }
}
