// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace wofdm {

// The seven transceiver kinds covered by the unified six-parameter model.
enum class SystemKind { cp, wtx, wrx, wola, cpw, cpwtx, cpwrx };

inline constexpr std::array<SystemKind, 7> kAllKinds = {
    SystemKind::cp,  SystemKind::wtx,   SystemKind::wrx,  SystemKind::wola,
    SystemKind::cpw, SystemKind::cpwtx, SystemKind::cpwrx};

inline std::string_view kind_name(SystemKind k) {
  switch (k) {
    case SystemKind::cp: return "CP";
    case SystemKind::wtx: return "wtx";
    case SystemKind::wrx: return "wrx";
    case SystemKind::wola: return "WOLA";
    case SystemKind::cpw: return "CPW";
    case SystemKind::cpwtx: return "CPwtx";
    case SystemKind::cpwrx: return "CPwrx";
  }
  return "?";
}

inline SystemKind kind_from_name(std::string_view name) {
  for (SystemKind k : kAllKinds) {
    std::string_view n = kind_name(k);
    if (n.size() != name.size()) continue;
    bool eq = true;
    for (std::size_t i = 0; i < n.size(); ++i) {
      const char a = n[i], b = name[i];
      const char la = (a >= 'A' && a <= 'Z') ? static_cast<char>(a - 'A' + 'a') : a;
      const char lb = (b >= 'A' && b <= 'Z') ? static_cast<char>(b - 'A' + 'a') : b;
      if (la != lb) { eq = false; break; }
    }
    if (eq) return k;
  }
  throw std::invalid_argument("unknown system kind: " + std::string(name));
}

namespace detail {

// Per-kind parameter rules as data. For each kind the cyclic suffix,
// removal count, circular shift, and CP-sufficiency bound are integer
// combinations of beta and delta/2:
//   rho   = rho_b*beta   + rho_h*(delta/2)
//   gamma = mu + gam_b*beta + gam_h*(delta/2)
//   kappa = kap_b*beta   + kap_h*(delta/2)
//   sufficient iff  mu - bnd_b*beta - bnd_h*(delta/2) >= nu
struct KindRule {
  bool uses_beta;
  bool uses_delta;
  int rho_b, rho_h;
  int gam_b, gam_h;
  int kap_b, kap_h;
  int bnd_b, bnd_h;
};

inline constexpr std::array<KindRule, 7> kKindRules = {{
    // uses_b  uses_d  rho      gamma     kappa    bound
    {false, false, 0, 0, /**/ 0, 0, /**/ 0, 0, /**/ 0, 0},   // CP
    {true, false, 1, 0, /**/ 0, 0, /**/ 0, 0, /**/ 1, 0},    // wtx
    {false, true, 0, 1, /**/ 0, -1, /**/ 0, 0, /**/ 0, 1},   // wrx
    {true, true, 1, 0, /**/ 0, -2, /**/ 0, 1, /**/ 1, 2},    // WOLA
    {true, true, 1, 1, /**/ 0, -1, /**/ 0, 0, /**/ 1, 1},    // CPW
    {true, false, 0, 0, /**/ -1, 0, /**/ 1, 0, /**/ 2, 0},   // CPwtx
    {false, true, 0, 0, /**/ 0, -2, /**/ 0, 1, /**/ 0, 2},   // CPwrx
}};

inline const KindRule& rule_of(SystemKind k) {
  return kKindRules[static_cast<std::size_t>(k)];
}

}  // namespace detail

// The six integers (plus N) that define any of the seven systems.
struct SystemParams {
  SystemKind kind = SystemKind::cp;
  int n = 0;      // subcarriers / DFT size
  int mu = 0;     // cyclic prefix length
  int beta = 0;   // Tx window tail length
  int delta = 0;  // Rx window tail length (even)
  int rho = 0;    // cyclic suffix length
  int gamma = 0;  // samples removed at the receiver
  int kappa = 0;  // receiver circular shift
};

// Checks the structural invariants every well-formed parameter set obeys.
// Throws std::invalid_argument naming the first violated constraint.
inline void validate(const SystemParams& p) {
  if (p.n <= 0) throw std::invalid_argument("params: n must be positive");
  if (p.mu < 0 || p.beta < 0 || p.delta < 0 || p.rho < 0 || p.gamma < 0 || p.kappa < 0)
    throw std::invalid_argument("params: negative length");
  if (p.delta % 2 != 0) throw std::invalid_argument("params: delta must be even");
  // The redundancy blocks are single copied segments, so neither the
  // prefix nor the suffix can exceed one block.
  if (p.mu > p.n) throw std::invalid_argument("params: mu exceeds n");
  if (p.rho > p.n) throw std::invalid_argument("params: rho exceeds n");
  if (2 * p.beta >= p.n + p.mu + p.rho)
    throw std::invalid_argument("params: Tx window has no flat region");
  if (p.delta > p.n) throw std::invalid_argument("params: delta exceeds n");
  if (p.gamma > p.mu + p.rho)
    throw std::invalid_argument("params: gamma exceeds total redundancy mu+rho");
  if (p.kappa >= p.n) throw std::invalid_argument("params: kappa must be below n");
}

// Lengths derived from the parameter set. hop is the inter-block advance
// (N0 of the channel-block definition), span the full transmitted block,
// rx_in the receiver intake. The two N0 uses in the model differ: the
// channel blocks use hop, the rate normalization uses span.
struct DerivedLengths {
  int hop = 0;    // N + mu + rho - beta
  int span = 0;   // N + mu + rho
  int rx_in = 0;  // N + delta + gamma
  int beta = 0;

  // Number of past blocks (beyond the current one) reaching the intake of
  // one received block for a channel of order nu: ceil((nu+beta)/rx_in).
  int m_of(int nu) const {
    if (nu < 0) throw std::invalid_argument("m_of: negative channel order");
    const long long num = static_cast<long long>(nu) + beta;
    return static_cast<int>((num + rx_in - 1) / rx_in);
  }
};

inline DerivedLengths derived_lengths(const SystemParams& p) {
  validate(p);
  DerivedLengths d;
  d.hop = p.n + p.mu + p.rho - p.beta;
  d.span = p.n + p.mu + p.rho;
  d.rx_in = p.n + p.delta + p.gamma;
  d.beta = p.beta;
  return d;
}

// Fills rho/gamma/kappa for the given kind from (N, mu, beta, delta).
// Kinds without a Tx (resp. Rx) window reject nonzero beta (resp. delta).
inline SystemParams make_preset(SystemKind kind, int n, int mu, int beta, int delta) {
  const auto& r = detail::rule_of(kind);
  if (!r.uses_beta && beta != 0)
    throw std::invalid_argument(std::string(kind_name(kind)) + ": beta must be 0");
  if (!r.uses_delta && delta != 0)
    throw std::invalid_argument(std::string(kind_name(kind)) + ": delta must be 0");
  if (delta % 2 != 0) throw std::invalid_argument("make_preset: delta must be even");
  const int h = delta / 2;
  SystemParams p;
  p.kind = kind;
  p.n = n;
  p.mu = mu;
  p.beta = beta;
  p.delta = delta;
  p.rho = r.rho_b * beta + r.rho_h * h;
  p.gamma = mu + r.gam_b * beta + r.gam_h * h;
  p.kappa = r.kap_b * beta + r.kap_h * h;
  validate(p);
  return p;
}

// Same as make_preset but with explicit rho/gamma/kappa overrides, for
// systems outside the built-in per-kind rules.
inline SystemParams make_custom(SystemKind kind, int n, int mu, int beta, int delta,
                                int rho, int gamma, int kappa) {
  SystemParams p{kind, n, mu, beta, delta, rho, gamma, kappa};
  validate(p);
  return p;
}

// Report on whether a parameter set can absorb a channel of order nu.
struct SufficiencyReport {
  bool table_bound_ok = false;     // kind's CP-length inequality
  bool interference_free = false;  // nu <= gamma - beta
  int m_blocks = 0;                // M for this nu
  int bound = 0;                   // the kind's bound on nu
};

inline SufficiencyReport validate_against_channel(const SystemParams& p, int nu) {
  validate(p);
  if (nu < 0) throw std::invalid_argument("validate_against_channel: negative order");
  const auto& r = detail::rule_of(p.kind);
  SufficiencyReport rep;
  rep.bound = p.mu - r.bnd_b * p.beta - r.bnd_h * (p.delta / 2);
  rep.table_bound_ok = nu <= rep.bound;
  rep.interference_free = nu <= p.gamma - p.beta;
  rep.m_blocks = derived_lengths(p).m_of(nu);
  return rep;
}

}  // namespace wofdm
