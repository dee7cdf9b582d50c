// SPDX-License-Identifier: Apache-2.0
//
// Command-line driver. Three subcommands:
//   simulate  rate sweep over a power grid, one CSV row per (trial, scheme, P)
//   dof       degrees-of-freedom table (high-SNR slope per rate curve)
//   verify    residual audit of the alignment/neutralization construction

#include <cstdint>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cpimac/cpimac.hpp"

namespace {

struct CliOptions {
  std::string case_token = "1";
  std::vector<std::string> scheme_tokens;
  cpimac::SimConfig cfg;
};

void add_common_options(CLI::App& cmd, CliOptions& opt, bool with_schemes) {
  cmd.add_option("--case", opt.case_token, "cognition case")
      ->check(CLI::IsMember({"1", "2", "3a", "3b", "4"}))
      ->capture_default_str();
  if (with_schemes) {
    cmd.add_option("--scheme", opt.scheme_tokens,
                   "transmission scheme (repeatable; default: all valid for "
                   "the case)")
        ->check(CLI::IsMember({"tdm", "joint", "ian"}));
  }
  cmd.add_option("--pmin-db", opt.cfg.p_min_db, "lowest power in dB")
      ->capture_default_str();
  cmd.add_option("--pmax-db", opt.cfg.p_max_db, "highest power in dB")
      ->capture_default_str();
  cmd.add_option("--step-db", opt.cfg.p_step_db, "power grid step in dB")
      ->capture_default_str();
  cmd.add_option("--trials", opt.cfg.trials, "number of channel realizations")
      ->capture_default_str();
  cmd.add_option("--seed", opt.cfg.seed, "base seed; trial i uses seed + i")
      ->capture_default_str();
  cmd.add_option("--alpha", opt.cfg.alpha,
                 "cognitive transmitter's power fraction for the relayed "
                 "stream")
      ->capture_default_str();
  cmd.add_option("--out", opt.cfg.out_path, "output CSV path");
}

cpimac::SimConfig build_config(const CliOptions& opt, bool want_schemes) {
  cpimac::SimConfig cfg = opt.cfg;
  cfg.kase = cpimac::CognitionCase::parse(opt.case_token);
  if (want_schemes) {
    if (opt.scheme_tokens.empty()) {
      cfg.schemes = {cpimac::Scheme::Tdm, cpimac::Scheme::JointDecoding};
      if (cpimac::kase_has_cognitive_mac(cfg.kase)) {
        cfg.schemes.push_back(cpimac::Scheme::Ian);
      }
    } else {
      for (const std::string& token : opt.scheme_tokens) {
        cfg.schemes.push_back(cpimac::parse_scheme(token));
      }
    }
  }
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "cpimac: achievable rates, precoder verification and degrees-of-freedom "
      "analysis for a point-to-point link sharing the medium with a two-user "
      "MAC"};
  app.require_subcommand(1);

  CliOptions sim_opt, dof_opt, ver_opt;

  CLI::App* sim = app.add_subcommand(
      "simulate", "Monte Carlo rate sweep written as CSV");
  add_common_options(*sim, sim_opt, true);
  sim->get_option("--out")->required();

  CLI::App* dof = app.add_subcommand(
      "dof", "estimate the high-SNR slope of each rate curve");
  add_common_options(*dof, dof_opt, true);

  CLI::App* ver = app.add_subcommand(
      "verify", "check alignment/neutralization residuals (case 3/4 only)");
  add_common_options(*ver, ver_opt, false);
  ver->add_flag("--inject-fault", ver_opt.cfg.inject_fault,
                "test hook: perturb V2 so the residual check must fail");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sim->parsed()) {
      const cpimac::SimConfig cfg = build_config(sim_opt, true);
      const auto rows = cpimac::run_simulate(cfg);
      std::cout << "wrote " << rows.size() << " rows to " << cfg.out_path
                << "\n";
    } else if (dof->parsed()) {
      const cpimac::SimConfig cfg = build_config(dof_opt, true);
      cpimac::run_dof(cfg, std::cout);
      if (!cfg.out_path.empty()) {
        std::cout << "wrote table to " << cfg.out_path << "\n";
      }
    } else if (ver->parsed()) {
      const cpimac::SimConfig cfg = build_config(ver_opt, false);
      const cpimac::VerifyReport report = cpimac::run_verify(cfg);
      std::cout << "trials:                " << report.rows.size() << "\n"
                << "max align residual:    " << report.max_align << "\n"
                << "max neut residual:     " << report.max_neut << "\n"
                << "min det at Rx1:        " << report.min_det_rx1 << "\n"
                << "min det at Rx2:        " << report.min_det_rx2 << "\n"
                << (report.pass() ? "OK: residuals within 1e-09\n"
                                  : "FAIL: residual above 1e-09\n");
      if (!report.pass()) {
        return 1;
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
