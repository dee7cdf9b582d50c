// SPDX-License-Identifier: Apache-2.0
//
// Monte Carlo harness: experiment configuration, the simulate / dof / verify
// workflows, and deterministic CSV output. Trial i always uses seed + i, so
// any run is reproducible byte for byte from its configuration.

#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

#include "cpimac/channel.hpp"
#include "cpimac/dof.hpp"
#include "cpimac/errors.hpp"
#include "cpimac/precoding.hpp"
#include "cpimac/rates.hpp"

namespace cpimac {

// Residuals above this fail a verify run.
inline constexpr double kResidualGate = 1e-9;

struct SimConfig {
  CognitionCase kase = CognitionCase::case1();
  std::vector<Scheme> schemes;  // deduplicated and ordered before use
  double p_min_db = 40.0;
  double p_max_db = 100.0;
  double p_step_db = 10.0;
  int trials = 100;
  std::uint64_t seed = 1;
  double alpha = 0.5;
  std::string out_path;  // empty: nothing is written
  bool inject_fault = false;  // verify-only test hook: perturbs V2
};

inline bool kase_has_cognitive_mac(const CognitionCase& kase) {
  return kase.tag() == CognitionCase::Tag::Case3 ||
         kase.tag() == CognitionCase::Tag::Case4;
}

inline void validate(const SimConfig& cfg) {
  if (cfg.trials < 1) {
    throw ConfigError("trials must be at least 1");
  }
  if (!(cfg.p_step_db > 0.0)) {
    throw ConfigError("power step must be positive");
  }
  if (cfg.p_min_db > cfg.p_max_db) {
    throw ConfigError("power range is empty (min above max)");
  }
  if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) {
    throw ConfigError("alpha must lie strictly inside (0, 1)");
  }
  const bool cognitive_mac = kase_has_cognitive_mac(cfg.kase);
  for (const Scheme s : cfg.schemes) {
    if (s == Scheme::Ian && !cognitive_mac) {
      throw ConfigError(
          "scheme 'ian' requires a cognitive MAC transmitter (case 3 or 4)");
    }
  }
}

// Scheme list in canonical (enum) order with duplicates dropped; row order
// in the CSV depends on this, not on flag order.
inline std::vector<Scheme> canonical_schemes(const SimConfig& cfg) {
  std::vector<Scheme> out = cfg.schemes;
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline std::vector<double> power_grid_db(const SimConfig& cfg) {
  std::vector<double> grid;
  // Half-step slack so 40..100 by 10 lands exactly on 7 points.
  for (double p = cfg.p_min_db; p <= cfg.p_max_db + 0.5 * cfg.p_step_db;
       p += cfg.p_step_db) {
    grid.push_back(p);
  }
  if (!grid.empty() && grid.back() > cfg.p_max_db + 1e-9) {
    grid.pop_back();
  }
  return grid;
}

struct CsvRow {
  std::uint64_t seed = 0;
  CognitionCase kase = CognitionCase::case1();
  Scheme scheme = Scheme::Tdm;
  double p_db = 0.0;
  double r1 = 0.0, r2 = 0.0, r3 = 0.0, r_sum = 0.0;
  double upper = 0.0;
};

namespace detail {

// 12 significant digits; enough to round-trip the rates and keep files
// byte-identical across runs.
inline std::string g12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

inline void write_simulate_csv(const std::string& path,
                               const std::vector<CsvRow>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError("cannot open '" + path + "' for writing");
  }
  out << "seed,case,scheme,P_dB,R1,R2,R3,R_sum,upper_bound\n";
  for (const CsvRow& r : rows) {
    out << r.seed << ',' << r.kase.token() << ',' << to_string(r.scheme) << ','
        << g12(r.p_db) << ',' << g12(r.r1) << ',' << g12(r.r2) << ','
        << g12(r.r3) << ',' << g12(r.r_sum) << ',' << g12(r.upper) << '\n';
  }
  out.flush();
  if (!out) {
    throw IoError("write failed for '" + path + "'");
  }
}

}  // namespace detail

// One rate sweep: trials x schemes x grid rows, ordered by
// (trial, scheme, P_dB). Deterministic given the configuration.
inline std::vector<CsvRow> run_simulate(const SimConfig& cfg) {
  validate(cfg);
  if (cfg.schemes.empty()) {
    throw ConfigError("simulate needs at least one scheme");
  }
  const std::vector<Scheme> schemes = canonical_schemes(cfg);
  const std::vector<double> grid = power_grid_db(cfg);

  std::vector<CsvRow> rows;
  rows.reserve(static_cast<std::size_t>(cfg.trials) * schemes.size() *
               grid.size());
  for (int trial = 0; trial < cfg.trials; ++trial) {
    const std::uint64_t trial_seed =
        cfg.seed + static_cast<std::uint64_t>(trial);
    const ChannelRealization ch = sample_channel(trial_seed);
    for (const Scheme scheme : schemes) {
      for (const double p_db : grid) {
        const double p = db_to_linear(p_db);
        const RatePoint rp = rate_for_scheme(cfg.kase, scheme, ch, p, cfg.alpha);
        CsvRow row;
        row.seed = trial_seed;
        row.kase = cfg.kase;
        row.scheme = scheme;
        row.p_db = p_db;
        row.r1 = rp.r1;
        row.r2 = rp.r2;
        row.r3 = rp.r3;
        row.r_sum = rp.sum();
        row.upper = upper_bound(cfg.kase, ch, p);
        rows.push_back(row);
      }
    }
  }
  if (!cfg.out_path.empty()) {
    detail::write_simulate_csv(cfg.out_path, rows);
  }
  return rows;
}

struct DofTableRow {
  RateCurve curve;
  DofEstimate est;
};

// DoF estimate per configured scheme plus the matching-case upper bound,
// printed as a table and optionally written as CSV.
inline std::vector<DofTableRow> run_dof(const SimConfig& cfg,
                                        std::ostream& table_out) {
  validate(cfg);
  if (cfg.schemes.empty()) {
    throw ConfigError("dof needs at least one scheme");
  }
  std::vector<ChannelRealization> channels;
  channels.reserve(static_cast<std::size_t>(cfg.trials));
  for (int trial = 0; trial < cfg.trials; ++trial) {
    channels.push_back(
        sample_channel(cfg.seed + static_cast<std::uint64_t>(trial)));
  }
  const std::vector<double> grid = power_grid_db(cfg);

  std::vector<DofTableRow> rows;
  for (const Scheme scheme : canonical_schemes(cfg)) {
    rows.push_back({to_curve(scheme), estimate_dof(to_curve(scheme), cfg.kase,
                                                   channels, grid, cfg.alpha)});
  }
  rows.push_back({RateCurve::UpperBound,
                  estimate_dof(RateCurve::UpperBound, cfg.kase, channels, grid,
                               cfg.alpha)});

  table_out << "case  curve        slope     intercept  r_squared\n";
  for (const DofTableRow& row : rows) {
    table_out << std::left << std::setw(6) << cfg.kase.token() << std::setw(13)
              << to_string(row.curve) << std::setw(10) << std::fixed
              << std::setprecision(4) << row.est.slope << std::setw(11)
              << row.est.intercept << std::setprecision(6)
              << row.est.r_squared << '\n';
    table_out << std::defaultfloat;
  }

  if (!cfg.out_path.empty()) {
    std::ofstream out(cfg.out_path, std::ios::binary);
    if (!out) {
      throw IoError("cannot open '" + cfg.out_path + "' for writing");
    }
    out << "case,curve,slope,intercept,r_squared,trials,p_min_dB,p_max_dB,"
           "p_step_dB\n";
    for (const DofTableRow& row : rows) {
      out << cfg.kase.token() << ',' << to_string(row.curve) << ','
          << detail::g12(row.est.slope) << ',' << detail::g12(row.est.intercept)
          << ',' << detail::g12(row.est.r_squared) << ',' << cfg.trials << ','
          << detail::g12(cfg.p_min_db) << ',' << detail::g12(cfg.p_max_db)
          << ',' << detail::g12(cfg.p_step_db) << '\n';
    }
    out.flush();
    if (!out) {
      throw IoError("write failed for '" + cfg.out_path + "'");
    }
  }
  return rows;
}

struct VerifyRow {
  std::uint64_t seed = 0;
  double align_residual = 0.0;
  double neut_residual = 0.0;
  double det_rx1 = 0.0;  // |det[d1 i1]| / (||d1|| ||i1||)
  double det_rx2 = 0.0;  // |det[g2 g3]| / (||g2|| ||g3||)
};

struct VerifyReport {
  std::vector<VerifyRow> rows;
  double max_align = 0.0;
  double max_neut = 0.0;
  double min_det_rx1 = std::numeric_limits<double>::infinity();
  double min_det_rx2 = std::numeric_limits<double>::infinity();

  bool pass() const {
    return max_align <= kResidualGate && max_neut <= kResidualGate;
  }
};

// Residual audit of the precoder construction over `trials` channels.
inline VerifyReport run_verify(const SimConfig& cfg) {
  validate(cfg);
  if (!kase_has_cognitive_mac(cfg.kase)) {
    throw ConfigError("verify requires a cognitive MAC transmitter (case 3 or 4)");
  }
  const bool relabel =
      cfg.kase.tag() == CognitionCase::Tag::Case3 &&
      cfg.kase.cognitive_mac_user() == CognitionCase::MacUser::Tx3;
  const double p = db_to_linear(cfg.p_max_db);

  VerifyReport report;
  report.rows.reserve(static_cast<std::size_t>(cfg.trials));
  for (int trial = 0; trial < cfg.trials; ++trial) {
    const std::uint64_t trial_seed =
        cfg.seed + static_cast<std::uint64_t>(trial);
    const ChannelRealization sampled = sample_channel(trial_seed);
    const ChannelRealization ch = relabel ? swap_mac_users(sampled) : sampled;

    PrecoderSet pre =
        design_ian_precoders(ch, default_direction_seed(ch), p, cfg.alpha);
    if (cfg.inject_fault) {
      pre.v2 = pre.v2 + Vec2{0.1, 0.0};
    }
    const EffectiveChannels eff = effective_channels(ch, pre);

    VerifyRow row;
    row.seed = trial_seed;
    row.align_residual = verify_alignment(ch, pre);
    row.neut_residual = verify_neutralization(ch, pre);
    row.det_rx1 =
        std::fabs(det(eff.d1, eff.i1)) / (norm(eff.d1) * norm(eff.i1));
    row.det_rx2 =
        std::fabs(det(eff.g2, eff.g3)) / (norm(eff.g2) * norm(eff.g3));
    report.rows.push_back(row);

    report.max_align = std::max(report.max_align, row.align_residual);
    report.max_neut = std::max(report.max_neut, row.neut_residual);
    report.min_det_rx1 = std::min(report.min_det_rx1, row.det_rx1);
    report.min_det_rx2 = std::min(report.min_det_rx2, row.det_rx2);
  }

  if (!cfg.out_path.empty()) {
    std::ofstream out(cfg.out_path, std::ios::binary);
    if (!out) {
      throw IoError("cannot open '" + cfg.out_path + "' for writing");
    }
    out << "seed,alignment_residual,neutralization_residual,det_rx1,det_rx2\n";
    for (const VerifyRow& row : report.rows) {
      out << row.seed << ',' << detail::g12(row.align_residual) << ','
          << detail::g12(row.neut_residual) << ',' << detail::g12(row.det_rx1)
          << ',' << detail::g12(row.det_rx2) << '\n';
    }
    out.flush();
    if (!out) {
      throw IoError("write failed for '" + cfg.out_path + "'");
    }
  }
  return report;
}

}  // namespace cpimac
