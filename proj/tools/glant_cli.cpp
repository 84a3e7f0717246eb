// Copyright 2026 The glant Authors
// SPDX-License-Identifier: Apache-2.0

// glant: simulate the graphene-liquid beam-reconfigurable antenna.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "glant/config.hpp"
#include "glant/errors.hpp"
#include "glant/output.hpp"
#include "glant/runner.hpp"
#include "glant/validation.hpp"

namespace {

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw glant::IoError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<glant::LiquidLocation> parse_states(const std::string &list) {
  std::vector<glant::LiquidLocation> out;
  std::stringstream ss(list);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    const auto loc = glant::parse_location(tok);
    if (!loc) throw glant::ConfigError("--states", "unknown location \"" + tok + "\"");
    out.push_back(*loc);
  }
  if (out.empty()) throw glant::ConfigError("--states", "states required");
  return out;
}

void print_state(const glant::StateResult &r) {
  const std::string name(glant::label(r.state));
  if (r.error) {
    std::fprintf(stderr, "[%s] failed: %s\n", name.c_str(), r.error->c_str());
    return;
  }
  std::fprintf(stderr, "[%s] %ld steps, %.1f s, f_res %s, gain %.2f dBi, peak (theta %.0f, phi %.0f) -> %s\n",
               name.c_str(), r.run.steps, r.wall_s,
               r.resonance_hz ? (std::to_string(*r.resonance_hz / 1e9) + " GHz").c_str() : "n/a",
               r.metrics.gain_dbi, r.metrics.peak.theta_deg, r.metrics.peak.phi_deg,
               r.matched_beam.c_str());
}

int run_simulate(const std::string &config_path, const std::string &states, int jobs,
                 bool reproducible, const std::string &out_dir) {
  glant::RunConfig cfg = glant::parse_config(read_file(config_path));
  if (!states.empty()) cfg.states = parse_states(states);
  if (!out_dir.empty()) cfg.output.dir = out_dir;
  const glant::RunReport report = glant::run_states(cfg, jobs, print_state);
  glant::write_outputs(cfg, report, cfg.output.dir, reproducible);

  std::printf("state  azimuth  matched  expected  f_res_GHz  S11_min_dB\n");
  for (std::size_t n = 0; n < report.states.size(); ++n) {
    const auto &e = report.beam_map.entries[n];
    const auto &r = report.states[n];
    std::printf("%-5s  %7s  %-7s  %-8s  %9s  %10s\n", e.state.c_str(),
                e.azimuth_deg ? std::to_string(static_cast<int>(*e.azimuth_deg)).c_str() : "-",
                e.matched.c_str(), e.expected.c_str(),
                r.resonance_hz ? std::to_string(*r.resonance_hz / 1e9).c_str() : "-",
                r.error ? "-" : std::to_string(r.min_s11_db).c_str());
  }
  if (report.stability.max_pairwise_deviation)
    std::printf("max pairwise resonance deviation: %.3f %%\n", *report.stability.max_pairwise_deviation * 100.0);
  for (const auto &v : report.beam_map.violations) std::printf("beam map: %s\n", v.c_str());
  std::printf("outputs written to %s\n", cfg.output.dir.c_str());
  for (const auto &r : report.states)
    if (r.error) return 3;
  return 0;
}

int run_oracle(const std::string &which, int threads) {
  std::vector<std::string> lines;
  bool ok = false;
  if (which == "cavity") {
    const auto r = glant::run_cavity_oracle(1e-3, 16384, threads);
    lines = glant::describe(r);
    ok = r.pass();
  } else if (which == "dipole") {
    const auto r = glant::run_dipole_oracle(3e9, 2e-3, threads);
    lines = glant::describe(r);
    ok = r.pass();
  } else {
    const auto r = glant::run_patch_oracle(1e-3, threads);
    lines = glant::describe(r);
    ok = r.pass();
  }
  for (const auto &l : lines) std::printf("%s\n", l.c_str());
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"glant: graphene-liquid microfluidic antenna FDTD toolkit"};
  app.set_version_flag("--version", std::string("glant ") + GLANT_VERSION);
  app.require_subcommand(1);

  std::string config_path, states, out_dir;
  int jobs = 1;
  bool reproducible = false;
  auto *simulate = app.add_subcommand("simulate", "Simulate antenna states and write outputs");
  simulate->add_option("--config", config_path, "JSON configuration")->required();
  simulate->add_option("--states", states, "Comma-separated subset, e.g. L1,L2");
  simulate->add_option("--jobs", jobs, "Concurrent state runs")->check(CLI::PositiveNumber);
  simulate->add_flag("--reproducible", reproducible, "Omit timestamps and timings from outputs");
  simulate->add_option("--out", out_dir, "Output directory (overrides output.dir)");

  std::string validate_path;
  auto *validate = app.add_subcommand("validate-config", "Parse a config and print the effective form");
  validate->add_option("--config", validate_path, "JSON configuration")->required();

  std::string oracle_name;
  int oracle_threads = 1;
  auto *oracle = app.add_subcommand("oracle", "Run a built-in analytic validation scene");
  oracle->add_option("scene", oracle_name, "dipole | cavity | patch")
      ->required()
      ->check(CLI::IsMember({"dipole", "cavity", "patch"}));
  oracle->add_option("--threads", oracle_threads, "Solver threads")->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*simulate) return run_simulate(config_path, states, jobs, reproducible, out_dir);
    if (*validate) {
      std::cout << glant::to_json(glant::parse_config(read_file(validate_path)));
      return 0;
    }
    if (*oracle) return run_oracle(oracle_name, oracle_threads);
  } catch (const glant::ConfigError &e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::exception &e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
