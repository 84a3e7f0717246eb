// Copyright 2026 The glant Authors
// SPDX-License-Identifier: Apache-2.0

// Configuration, output formats, beam bookkeeping and the command-line tool.

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "glant/config.hpp"
#include "glant/errors.hpp"
#include "glant/output.hpp"
#include "glant/runner.hpp"

namespace glant {
namespace {

namespace fs = std::filesystem;

fs::path scratch(const std::string &name) {
  const fs::path p = fs::temp_directory_path() / ("glant_test_cli_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string read_file(const fs::path &p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string config_error_path(std::string_view text) {
  try {
    parse_config(text);
  } catch (const ConfigError &e) {
    return e.path();
  }
  return "<no error>";
}

TEST(Config, PresetExpandsToAllSixStates) {
  const RunConfig c = parse_config(R"({"preset": "paper-table1"})");
  EXPECT_EQ(c.states.size(), 6u);
  EXPECT_EQ(c.antenna.substrate_length_mm, 68.0);
  EXPECT_EQ(c.antenna.channel_width_mm, 35.0);
  EXPECT_EQ(c.antenna.slug_volume_ml, 0.885);
  EXPECT_EQ(c.liquid.bulk_sigma_override, 375.0);
  EXPECT_EQ(AntennaParams{}.slug_volume_ml, 0.18);
  EXPECT_NO_THROW(c.validate());
  const RunConfig two = parse_config(R"({"preset": "paper-table1", "states": ["L2", "L5"]})");
  ASSERT_EQ(two.states.size(), 2u);
  EXPECT_EQ(two.states[1], LiquidLocation::kL5);
}

TEST(Config, ErrorsNameTheJsonPath) {
  EXPECT_EQ(config_error_path("{}"), "states");
  EXPECT_EQ(config_error_path(R"({"states": ["L2"], "antenna": {"Dm": -1}})"), "antenna.Dm");
  EXPECT_EQ(config_error_path(R"({"states": ["L2"], "antenna": {"colour": 1}})"), "antenna.colour");
  EXPECT_EQ(config_error_path(R"({"states": ["L2"], "sim": {"delta_m": "fine"}})"), "sim.delta_m");
  EXPECT_EQ(config_error_path(R"({"states": ["L7"]})"), "states[0]");
  EXPECT_EQ(config_error_path(R"({"states": ["L2"], "bogus": true})"), "bogus");
  EXPECT_EQ(config_error_path(R"({"preset": "nope"})"), "preset");
  EXPECT_THROW(parse_config("{not json"), ConfigError);
}

TEST(Config, JsonRoundTrip) {
  RunConfig c = parse_config(R"({"preset": "paper-table1", "states": ["L3", "L1"],
      "sim": {"delta_m": 0.00075, "threads": 2},
      "antenna": {"liquid": {"bulk_sigma_override": null, "model": "sheet"}},
      "farfield": {"frequencies_hz": [5.5e9], "pattern_hz": 5.5e9}})");
  EXPECT_FALSE(c.liquid.bulk_sigma_override.has_value());
  const RunConfig back = parse_config(to_json(c));
  EXPECT_TRUE(back == c);
  EXPECT_EQ(to_json(back), to_json(c));
}

PortSpectra simple_spectra() {
  PortSpectra s;
  s.freqs = {5.0e9, 5.5e9, 6.0e9, 6.5e9};
  s.S11 = {{0.5, -0.25}, {0.0, 0.0}, {-0.123456789012, 0.987654321098}, {1e-7, 0.0}};
  s.valid = {true, true, true, false};
  for (auto g : s.S11) {
    s.Z.push_back(50.0 * (1.0 + g) / (1.0 - g));
    s.V.push_back(s.Z.back());
    s.I.push_back(1.0);
  }
  return s;
}

TEST(Touchstone, FormatAndRoundTrip) {
  const fs::path dir = scratch("touchstone");
  const PortSpectra s = simple_spectra();
  write_touchstone(s, dir / "x.s1p", {"state L2"});
  const std::string text = read_file(dir / "x.s1p");
  EXPECT_NE(text.find("! state L2\n"), std::string::npos);
  EXPECT_NE(text.find("# GHz S RI R 50\n"), std::string::npos);
  EXPECT_NE(text.find("\n5.5 0 0\n"), std::string::npos);
  EXPECT_EQ(text.find("6.5"), std::string::npos);  // invalid samples are omitted

  const TouchstoneData d = read_touchstone(dir / "x.s1p");
  ASSERT_EQ(d.freqs_hz.size(), 3u);
  EXPECT_EQ(d.z_ref, 50.0);
  for (std::size_t q = 0; q < 3; ++q) {
    EXPECT_NEAR(d.freqs_hz[q], s.freqs[q], 1e-9 * s.freqs[q]);
    EXPECT_NEAR(std::abs(d.s11[q] - s.S11[q]), 0.0, 1e-9);
  }
}

TEST(Touchstone, ReadsOtherUnitsAndFormats) {
  const fs::path dir = scratch("touchstone_ma");
  {
    std::ofstream out(dir / "m.s1p");
    out << "! hand written\n# MHz S MA R 75\n5500 0.5 90\n";
    std::ofstream db(dir / "d.s1p");
    db << "# Hz S DB R 50\n1e9 -20 180 ! trailing comment\n";
  }
  const auto m = read_touchstone(dir / "m.s1p");
  EXPECT_EQ(m.z_ref, 75.0);
  EXPECT_NEAR(m.freqs_hz[0], 5.5e9, 1e-3);
  EXPECT_NEAR(m.s11[0].imag(), 0.5, 1e-12);
  const auto d = read_touchstone(dir / "d.s1p");
  EXPECT_NEAR(d.s11[0].real(), -0.1, 1e-12);
  EXPECT_THROW(read_touchstone(dir / "missing.s1p"), IoError);
}

StateResult synthetic_state(LiquidLocation loc, double az, double f_res) {
  StateResult r;
  r.state = loc;
  r.resonance_hz = f_res;
  r.metrics.peak.phi_deg = az;
  r.metrics.peak.theta_deg = 50.0;
  return r;
}

TEST(Beams, LabelsAndMatching) {
  ASSERT_EQ(beam_labels().size(), 6u);
  EXPECT_EQ(expected_beam(LiquidLocation::kL2).name, "B2");
  EXPECT_EQ(expected_beam(LiquidLocation::kL2).azimuth_deg, 0.0);
  EXPECT_EQ(expected_beam(LiquidLocation::kL1).azimuth_deg, 315.0);
  EXPECT_EQ(match_beam(352.0, 15.0), "B2");   // wraps through 0
  EXPECT_EQ(match_beam(90.0, 15.0), "unmatched");
  EXPECT_EQ(match_beam(140.0, 15.0), "B4");
}

TEST(Beams, BijectionNeedsEveryStateOnItsOwnLabel) {
  std::vector<StateResult> ok;
  for (auto loc : kAllLocations) ok.push_back(synthetic_state(loc, expected_beam(loc).azimuth_deg + 5.0, 5.5e9));
  const BeamMap good = build_beam_map(ok, 15.0);
  EXPECT_TRUE(good.bijection);
  EXPECT_TRUE(good.violations.empty());

  auto swapped = ok;
  swapped[1].metrics.peak.phi_deg = 45.0;  // L2 claims B3 as well
  const BeamMap bad = build_beam_map(swapped, 15.0);
  EXPECT_FALSE(bad.bijection);
  EXPECT_FALSE(bad.violations.empty());

  const BeamMap partial = build_beam_map({ok[1]}, 15.0);
  EXPECT_FALSE(partial.bijection);
}

TEST(Stability, DeviationAndSingleton) {
  const auto one = build_stability({synthetic_state(LiquidLocation::kL2, 0.0, 5.5e9)});
  EXPECT_FALSE(one.max_pairwise_deviation.has_value());
  const auto two = build_stability({synthetic_state(LiquidLocation::kL2, 0.0, 5.5e9),
                                    synthetic_state(LiquidLocation::kL3, 45.0, 5.61e9)});
  ASSERT_TRUE(two.max_pairwise_deviation.has_value());
  EXPECT_NEAR(*two.max_pairwise_deviation, 0.02, 1e-12);
}

TEST(Outputs, PatternCsvAndSummary) {
  const fs::path dir = scratch("csv");
  FarFieldPattern p = FarFieldPattern::make_grid(5.5e9, 2.0, 2.0);
  for (std::size_t it = 0; it < p.theta_deg.size(); ++it)
    for (std::size_t ip = 0; ip < p.phi_deg.size(); ++ip)
      p.e_theta[p.index(it, ip)] = 1.0 + std::sin(p.theta_deg[it] * 0.0174532925) *
                                             (1.0 + std::cos(p.phi_deg[ip] * 0.0174532925));
  const PatternMetrics m = directivity_and_gain(p, 1e-3);
  write_pattern_csv(p, m, dir / "p.csv");
  std::ifstream in(dir / "p.csv");
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "theta_deg,phi_deg,gain_dbi,normalized_db");
  std::size_t rows = 0;
  double max_norm = -1e9, max_gain = -1e9;
  while (std::getline(in, line)) {
    ++rows;
    std::stringstream ss(line);
    std::string t, ph, g, n;
    std::getline(ss, t, ',');
    std::getline(ss, ph, ',');
    std::getline(ss, g, ',');
    std::getline(ss, n, ',');
    max_gain = std::max(max_gain, std::stod(g));
    max_norm = std::max(max_norm, std::stod(n));
  }
  EXPECT_EQ(rows, 16380u);
  EXPECT_EQ(max_norm, 0.0);
  EXPECT_NEAR(max_gain, m.gain_dbi, 1e-6);

  StateResult r = synthetic_state(LiquidLocation::kL2, 0.0, 5.5e9);
  r.pattern = p;
  r.metrics = m;
  const auto map = build_beam_map({r}, 15.0);
  const std::string js = state_summary_json(r, map.entries.at(0));
  EXPECT_NE(js.find("\"matched_beam\""), std::string::npos);
  EXPECT_NE(js.find("\"state\": \"L2\""), std::string::npos);
}

#ifdef GLANT_CLI_PATH
std::pair<int, std::string> run_cli(const std::string &args) {
  const std::string cmd = std::string(GLANT_CLI_PATH) + " " + args + " 2>&1";
  FILE *pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::string out;
  std::array<char, 4096> buf{};
  while (std::fgets(buf.data(), buf.size(), pipe)) out += buf.data();
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

TEST(Cli, ValidateConfigEchoesEffectiveConfig) {
  const fs::path dir = scratch("cli_validate");
  {
    std::ofstream(dir / "ok.json") << R"({"preset": "paper-table1", "states": ["L4"]})";
    std::ofstream(dir / "bad.json") << R"({"states": ["L2"], "antenna": {"Dm": -1}})";
  }
  const auto [rc, out] = run_cli("validate-config --config " + (dir / "ok.json").string());
  EXPECT_EQ(rc, 0) << out;
  const RunConfig echoed = parse_config(out);
  EXPECT_EQ(echoed.states, std::vector<LiquidLocation>{LiquidLocation::kL4});

  const auto [rc2, out2] = run_cli("validate-config --config " + (dir / "bad.json").string());
  EXPECT_EQ(rc2, 2);
  EXPECT_NE(out2.find("antenna.Dm"), std::string::npos) << out2;

  const auto [rc3, out3] = run_cli("validate-config --config " + (dir / "absent.json").string());
  EXPECT_NE(rc3, 0);
}

TEST(Cli, OracleCavityReportsPass) {
  const auto [rc, out] = run_cli("oracle cavity");
  EXPECT_EQ(rc, 0) << out;
  EXPECT_NE(out.find("PASS"), std::string::npos) << out;
  EXPECT_EQ(out.find("FAIL"), std::string::npos) << out;
  EXPECT_NE(run_cli("oracle horn").first, 0);
}
#endif

}  // namespace
}  // namespace glant
