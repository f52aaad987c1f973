// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;

namespace {

const char* cli_path() { return WOFDM_CLI_PATH; }

int run(const std::string& args) {
  const std::string cmd = std::string(cli_path()) + " " + args + " >cli_stdout.log 2>cli_stderr.log";
  const int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::path("cli_test_out") / name) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("analyze with a flat channel reports flat SINR") {
  TempDir dir("flat");
  const int rc = run("analyze --system CP --channel-model delta --n 64 --mu 8 --snr 10 --out " +
                     dir.path.string());
  REQUIRE(rc == 0);
  const std::string csv = slurp(dir.path / "analyze_CP_snr10_mean.csv");
  REQUIRE(!csv.empty());
  std::stringstream ss(csv);
  std::string header;
  std::getline(ss, header);
  CHECK(header == "k,p_signal,p_ici1,p_ici2,p_isi,p_noise,sinr_db,rate_bits");
  std::string line;
  double first_sinr = 0.0;
  int rows = 0;
  while (std::getline(ss, line)) {
    std::stringstream ls(line);
    std::string tok;
    for (int c = 0; c <= 6; ++c) std::getline(ls, tok, ',');
    const double sinr_db = std::stod(tok);
    if (rows == 0) first_sinr = sinr_db;
    CHECK(sinr_db == Catch::Approx(first_sinr).margin(1e-9));
    ++rows;
  }
  CHECK(rows == 64);
  CHECK(fs::exists(dir.path / "metadata.json"));
}

TEST_CASE("analyze without a channel is a usage error") {
  TempDir dir("nochan");
  const int rc = run("analyze --system CP --out " + dir.path.string());
  CHECK(rc == 2);
  const std::string err = slurp("cli_stderr.log");
  CHECK(err.find("channel") != std::string::npos);
}

TEST_CASE("unknown flags and missing subcommand are usage errors") {
  CHECK(run("analyze --system CP --channel-model delta --bogus-flag 1") == 2);
  CHECK(run("") == 2);
}

TEST_CASE("simulate twice with one seed produces byte-identical CSV") {
  TempDir dir1("sim1");
  TempDir dir2("sim2");
  const std::string common =
      " --system CP,WOLA --channel-model PED200 --n 64 --mu 16 --beta 4 --delta 6"
      " --snr 0,10 --trials 3 --blocks 12 --seed 7 --quiet --out ";
  REQUIRE(run("simulate" + common + dir1.path.string()) == 0);
  REQUIRE(run("simulate" + common + dir2.path.string()) == 0);
  const std::string a = slurp(dir1.path / "sim_results.csv");
  const std::string b = slurp(dir2.path / "sim_results.csv");
  REQUIRE(!a.empty());
  CHECK(a == b);
  std::stringstream ss(a);
  std::string header;
  std::getline(ss, header);
  CHECK(header == "system,channel_model,snr_db,trials,bit_errors,bits,ser,ci_low,ci_high");
}

TEST_CASE("simulate emits json when asked") {
  TempDir dir("simjson");
  REQUIRE(run("simulate --system CP --channel-model delta --n 32 --mu 4 --snr 6 --trials 1"
              " --blocks 8 --quiet --format json --out " +
              dir.path.string()) == 0);
  CHECK(fs::exists(dir.path / "sim_results.json"));
  const std::string js = slurp(dir.path / "sim_results.json");
  CHECK(js.find("\"system\"") != std::string::npos);
}

TEST_CASE("config file defines the system and flags override it") {
  TempDir dir("cfg");
  {
    std::ofstream f("cli_test_system.cfg");
    f << "# custom WOLA-like system\n"
      << "kind = WOLA\n"
      << "n = 32\n"
      << "mu = 12\n"
      << "beta = 2\n"
      << "delta = 4\n";
  }
  REQUIRE(run("analyze --config cli_test_system.cfg --channel-model delta --snr 8 --out " +
              dir.path.string()) == 0);
  const std::string meta = slurp(dir.path / "metadata.json");
  CHECK(meta.find("\"n\": 32") != std::string::npos);
  CHECK(meta.find("\"mu\": 12") != std::string::npos);

  TempDir dir2("cfg2");
  REQUIRE(run("analyze --config cli_test_system.cfg --mu 16 --channel-model delta --snr 8"
              " --out " +
              dir2.path.string()) == 0);
  const std::string meta2 = slurp(dir2.path / "metadata.json");
  CHECK(meta2.find("\"mu\": 16") != std::string::npos);
  fs::remove("cli_test_system.cfg");
}

TEST_CASE("rate reports echo the sample-rate setup and rank systems") {
  TempDir dir("rate");
  REQUIRE(run("rate --system all --channel-model VEH200 --n 64 --mu 12 --trials 4"
              " --snr 5 --target-ser 0.01 --quiet --out " +
              dir.path.string()) == 0);
  const std::string meta = slurp(dir.path / "metadata.json");
  CHECK(meta.find("11.16071492") != std::string::npos);
  CHECK(meta.find("\"fs_hz\": 5000000") != std::string::npos);
  const std::string csv = slurp(dir.path / "rate_vs_snr.csv");
  std::stringstream ss(csv);
  std::string header;
  std::getline(ss, header);
  CHECK(header == "system,snr_db,ser_used,gap,rate_total_bps");
  std::map<std::string, double> rate;
  std::string line;
  while (std::getline(ss, line)) {
    std::stringstream ls(line);
    std::string sys, snr, ser, gap, val;
    std::getline(ls, sys, ',');
    std::getline(ls, snr, ',');
    std::getline(ls, ser, ',');
    std::getline(ls, gap, ',');
    std::getline(ls, val, ',');
    rate[sys] = std::stod(val);
  }
  REQUIRE(rate.size() == 7);
  // Insufficient CP at low SNR: prefix+suffix systems pay for the extra
  // redundancy.
  CHECK(rate["WOLA"] < rate["CP"]);
  CHECK(rate["CPW"] < rate["CP"]);
}

TEST_CASE("rate without a target SER chains its own simulation") {
  TempDir dir("ratechain");
  REQUIRE(run("rate --system CP --channel-model PED200 --n 32 --mu 8 --trials 2"
              " --blocks 10 --snr 10 --quiet --out " +
              dir.path.string()) == 0);
  const std::string meta = slurp(dir.path / "metadata.json");
  CHECK(meta.find("\"ser_source\": \"simulated\"") != std::string::npos);
  const std::string csv = slurp(dir.path / "rate_vs_snr.csv");
  CHECK(csv.find("CP,10,") != std::string::npos);
}

TEST_CASE("rate accepts a user SER table") {
  TempDir dir("ratetable");
  {
    std::ofstream f("cli_ser_table.csv");
    f << "system,snr_db,ser\nCP,10,0.02\n";
  }
  REQUIRE(run("rate --system CP --channel-model delta --n 32 --mu 8 --snr 10"
              " --ser-table cli_ser_table.csv --quiet --out " +
              dir.path.string()) == 0);
  const std::string csv = slurp(dir.path / "rate_vs_snr.csv");
  CHECK(csv.find("CP,10,0.02") != std::string::npos);
  const std::string meta = slurp(dir.path / "metadata.json");
  CHECK(meta.find("\"ser_source\": \"table\"") != std::string::npos);
  fs::remove("cli_ser_table.csv");
}

TEST_CASE("analyze can dump the equivalent-channel matrices") {
  TempDir dir("dump");
  const std::string dump = (dir.path / "mats").string();
  REQUIRE(run("analyze --system CP --channel-model unit_delay --n 16 --mu 4 --snr 10"
              " --out " +
              dir.path.string() + " --dump-matrices " + dump) == 0);
  REQUIRE(fs::exists(fs::path(dump) / "a0_CP.txt"));
  REQUIRE(fs::exists(fs::path(dump) / "gnoise_CP.txt"));
  std::ifstream f(fs::path(dump) / "a0_CP.txt");
  int rows = 0, cols = 0;
  f >> rows >> cols;
  CHECK(rows == 16);
  CHECK(cols == 16);
}

TEST_CASE("window files feed the transmit taper and odd ones warn") {
  TempDir dir("winfile");
  {
    std::ofstream rise("cli_rise.txt"), fall("cli_fall.txt");
    for (int i = 0; i < 4; ++i) {
      rise << 0.2 * (i + 1) << "\n";
      fall << 1.0 - 0.2 * (i + 1) << "\n";  // complementary
    }
  }
  REQUIRE(run("analyze --system wtx --channel-model delta --n 32 --mu 8 --beta 4 --snr 10"
              " --tx-window-rise cli_rise.txt --tx-window-fall cli_fall.txt --out " +
              dir.path.string()) == 0);
  CHECK(slurp("cli_stderr.log").find("not complementary") == std::string::npos);

  {
    std::ofstream fall("cli_fall.txt");
    for (int i = 0; i < 4; ++i) fall << 0.9 << "\n";  // rise+fall != 1
  }
  REQUIRE(run("analyze --system wtx --channel-model delta --n 32 --mu 8 --beta 4 --snr 10"
              " --tx-window-rise cli_rise.txt --tx-window-fall cli_fall.txt --out " +
              dir.path.string()) == 0);
  CHECK(slurp("cli_stderr.log").find("not complementary") != std::string::npos);
  fs::remove("cli_rise.txt");
  fs::remove("cli_fall.txt");
}

TEST_CASE("analyze cp sweep emits nonincreasing interference totals") {
  TempDir dir("sweep");
  REQUIRE(run("analyze --system CP,WOLA --channel-model VEH200 --n 64 --mu 16"
              " --trials 3 --snr 10 --cp-sweep 8:4:40 --quiet --out " +
              dir.path.string()) == 0);
  const std::string csv = slurp(dir.path / "sweep_interference.csv");
  REQUIRE(!csv.empty());
  std::stringstream ss(csv);
  std::string line;
  std::getline(ss, line);  // header
  std::map<std::string, double> prev_total;
  while (std::getline(ss, line)) {
    std::stringstream ls(line);
    std::string sys, mu, adm, suf, sig, i1, i2, isi, noise;
    std::getline(ls, sys, ',');
    std::getline(ls, mu, ',');
    std::getline(ls, adm, ',');
    std::getline(ls, suf, ',');
    std::getline(ls, sig, ',');
    std::getline(ls, i1, ',');
    std::getline(ls, i2, ',');
    std::getline(ls, isi, ',');
    std::getline(ls, noise, ',');
    if (adm != "1") continue;
    const double tot = std::stod(i1) + std::stod(i2) + std::stod(isi);
    if (prev_total.count(sys)) CHECK(tot <= prev_total[sys] * (1.0 + 1e-9) + 1e-15);
    prev_total[sys] = tot;
  }
  REQUIRE(prev_total.size() == 2);
}
