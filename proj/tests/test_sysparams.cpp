// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include "wofdm/rng.hpp"
#include "wofdm/sysparams.hpp"

using namespace wofdm;

namespace {

struct PresetRow {
  SystemKind kind;
  int beta, delta, rho, gamma, kappa;
};

// The N=256, mu=32 experiment presets, one row per system.
constexpr PresetRow kExperimentRows[] = {
    {SystemKind::cp, 0, 0, 0, 32, 0},     {SystemKind::wtx, 8, 0, 8, 32, 0},
    {SystemKind::wrx, 0, 10, 5, 27, 0},   {SystemKind::wola, 8, 10, 8, 22, 5},
    {SystemKind::cpw, 8, 10, 13, 27, 0},  {SystemKind::cpwtx, 8, 0, 0, 24, 8},
    {SystemKind::cpwrx, 0, 10, 0, 22, 5},
};

}  // namespace

TEST_CASE("make_preset reproduces the experiment parameter table") {
  for (const auto& row : kExperimentRows) {
    const SystemParams p = make_preset(row.kind, 256, 32, row.beta, row.delta);
    INFO("kind " << kind_name(row.kind));
    CHECK(p.rho == row.rho);
    CHECK(p.gamma == row.gamma);
    CHECK(p.kappa == row.kappa);
    CHECK(p.n == 256);
    CHECK(p.mu == 32);
  }
}

TEST_CASE("make_preset rejections") {
  // Odd delta.
  CHECK_THROWS_AS(make_preset(SystemKind::wola, 256, 32, 8, 9), std::invalid_argument);
  // Nonzero beta for kinds without a Tx window.
  CHECK_THROWS_AS(make_preset(SystemKind::cp, 256, 32, 1, 0), std::invalid_argument);
  CHECK_THROWS_AS(make_preset(SystemKind::wrx, 256, 32, 4, 10), std::invalid_argument);
  CHECK_THROWS_AS(make_preset(SystemKind::cpwrx, 256, 32, 4, 10), std::invalid_argument);
  // Nonzero delta for kinds without an Rx window.
  CHECK_THROWS_AS(make_preset(SystemKind::cp, 256, 32, 0, 2), std::invalid_argument);
  CHECK_THROWS_AS(make_preset(SystemKind::wtx, 256, 32, 8, 2), std::invalid_argument);
  CHECK_THROWS_AS(make_preset(SystemKind::cpwtx, 256, 32, 8, 2), std::invalid_argument);
  // Derived gamma would be negative (WOLA needs mu >= delta).
  CHECK_THROWS_AS(make_preset(SystemKind::wola, 256, 8, 0, 10), std::invalid_argument);
  CHECK_THROWS_AS(make_preset(SystemKind::wrx, 256, 2, 0, 10), std::invalid_argument);
}

TEST_CASE("derived lengths for the experiment presets") {
  // WOLA: span = 256+32+8, hop = span - 8, rx_in = 256+10+22.
  const auto wola = derived_lengths(make_preset(SystemKind::wola, 256, 32, 8, 10));
  CHECK(wola.span == 296);
  CHECK(wola.hop == 288);
  CHECK(wola.rx_in == 288);

  const auto cp = derived_lengths(make_preset(SystemKind::cp, 256, 32, 0, 0));
  CHECK(cp.span == 288);
  CHECK(cp.hop == 288);
  CHECK(cp.rx_in == 288);
}

TEST_CASE("block overlap count") {
  // Tiny CP system: N=2, mu=1 -> gamma=1, rx_in=3; nu=2 -> ceil(2/3) = 1.
  const auto d = derived_lengths(make_preset(SystemKind::cp, 2, 1, 0, 0));
  CHECK(d.rx_in == 3);
  CHECK(d.m_of(2) == 1);
  CHECK(d.m_of(0) == 0);
  CHECK(d.m_of(3) == 1);
  CHECK(d.m_of(4) == 2);
}

TEST_CASE("validate_against_channel") {
  const SystemParams cp = make_preset(SystemKind::cp, 256, 32, 0, 0);
  const auto rep = validate_against_channel(cp, 10);
  CHECK(rep.table_bound_ok);
  CHECK(rep.interference_free);
  CHECK(rep.m_blocks == 1);

  // WOLA at nu=21: bound is mu - beta - delta = 14 < 21.
  const SystemParams wola = make_preset(SystemKind::wola, 256, 32, 8, 10);
  const auto rep2 = validate_against_channel(wola, 21);
  CHECK(rep2.bound == 14);
  CHECK_FALSE(rep2.table_bound_ok);
  CHECK_FALSE(rep2.interference_free);

  const auto rep3 = validate_against_channel(make_preset(SystemKind::cp, 2, 1, 0, 0), 2);
  CHECK(rep3.m_blocks == 1);
  CHECK_FALSE(rep3.table_bound_ok);
}

TEST_CASE("randomized presets satisfy their table row") {
  PhiloxStream rng(7, 0);
  int accepted = 0;
  for (int it = 0; it < 500; ++it) {
    const SystemKind kind = kAllKinds[rng.next_u32() % kAllKinds.size()];
    const auto& rule = detail::rule_of(kind);
    const int n = 8 + static_cast<int>(rng.next_u32() % 120);
    const int mu = static_cast<int>(rng.next_u32() % 33);
    const int beta = rule.uses_beta ? static_cast<int>(rng.next_u32() % 13) : 0;
    const int delta = rule.uses_delta ? 2 * static_cast<int>(rng.next_u32() % 7) : 0;
    SystemParams p;
    try {
      p = make_preset(kind, n, mu, beta, delta);
    } catch (const std::invalid_argument&) {
      continue;  // inadmissible draw
    }
    ++accepted;
    const int h = delta / 2;
    CHECK(p.rho == rule.rho_b * beta + rule.rho_h * h);
    CHECK(p.gamma == mu + rule.gam_b * beta + rule.gam_h * h);
    CHECK(p.kappa == rule.kap_b * beta + rule.kap_h * h);
    // The kind's CP bound coincides with the interference-free predicate
    // nu <= gamma - beta at the preset's own gamma.
    const int bound = mu - rule.bnd_b * beta - rule.bnd_h * h;
    CHECK(bound == p.gamma - p.beta);
    // Interference-free channels report as such.
    if (bound >= 0) {
      const auto rep = validate_against_channel(p, bound);
      CHECK(rep.table_bound_ok);
      CHECK(rep.interference_free);
    }
  }
  CHECK(accepted > 200);
}

TEST_CASE("m_of is nondecreasing in nu and beta, and 1 on the first window") {
  PhiloxStream rng(9, 0);
  for (int it = 0; it < 200; ++it) {
    const int n = 4 + static_cast<int>(rng.next_u32() % 60);
    const int mu = static_cast<int>(rng.next_u32() % 20);
    const int beta = std::min(static_cast<int>(rng.next_u32() % 8), (n + mu - 1) / 2);
    SystemParams p;
    try {
      p = make_custom(SystemKind::wtx, n, mu, beta, 0, beta, std::min(mu, mu), 0);
    } catch (const std::invalid_argument&) {
      continue;
    }
    const auto d = derived_lengths(p);
    int prev = 0;
    for (int nu = 0; nu < 3 * d.rx_in; ++nu) {
      const int m = d.m_of(nu);
      CHECK(m >= prev);
      prev = m;
      if (nu + beta > 0 && nu + beta <= d.rx_in) CHECK(m == 1);
    }
  }
  // Nondecreasing in beta at fixed nu and intake length.
  for (int nu : {0, 5, 40, 200}) {
    int prev = 0;
    for (int beta = 0; beta <= 12; ++beta) {
      DerivedLengths d;
      d.hop = 64;
      d.span = 64 + beta;
      d.rx_in = 40;
      d.beta = beta;
      const int m = d.m_of(nu);
      CHECK(m >= prev);
      prev = m;
    }
  }
}

TEST_CASE("custom params validation") {
  CHECK_THROWS_AS(make_custom(SystemKind::cp, 0, 4, 0, 0, 0, 0, 0), std::invalid_argument);
  CHECK_THROWS_AS(make_custom(SystemKind::cp, 8, 4, 0, 0, 0, 5, 0), std::invalid_argument);
  CHECK_THROWS_AS(make_custom(SystemKind::cp, 8, 4, 0, 0, 0, 0, 8), std::invalid_argument);
  CHECK_THROWS_AS(make_custom(SystemKind::cp, 8, 4, 0, 3, 0, 0, 0), std::invalid_argument);
  CHECK_THROWS_AS(make_custom(SystemKind::cp, 4, 2, 3, 0, 0, 0, 0), std::invalid_argument);
  CHECK_NOTHROW(make_custom(SystemKind::cp, 8, 4, 0, 0, 2, 4, 3));
}

TEST_CASE("kind names round-trip") {
  for (SystemKind k : kAllKinds) {
    CHECK(kind_from_name(std::string(kind_name(k))) == k);
  }
  CHECK(kind_from_name("wola") == SystemKind::wola);
  CHECK(kind_from_name("CPWTX") == SystemKind::cpwtx);
  CHECK_THROWS_AS(kind_from_name("nope"), std::invalid_argument);
}
