// Copyright 2026 The glant Authors
// SPDX-License-Identifier: Apache-2.0

#include "glant/output.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "glant/errors.hpp"

namespace glant {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::ofstream open_out(const fs::path &path) {
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create " + path.parent_path().string() + ": " + ec.message());
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  return out;
}

void close_checked(std::ofstream &out, const fs::path &path) {
  out.close();
  if (!out) throw IoError("write failed: " + path.string());
}

std::string fmt(const char *format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, v);
  return buf;
}

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

template <class T>
json optional_json(const std::optional<T> &v) {
  return v ? json(*v) : json(nullptr);
}

json metrics_json(const PatternMetrics &m) {
  return json{{"gain_dbi", finite_or_null(m.gain_dbi)},
              {"directivity_dbi", finite_or_null(m.directivity_dbi)},
              {"peak_theta_deg", m.peak.theta_deg},
              {"peak_phi_deg", m.peak.phi_deg},
              {"resolution_deg", m.peak.resolution_deg},
              {"front_to_back_db", finite_or_null(m.front_to_back_db)},
              {"radiated_power_w", m.radiated_power},
              {"accepted_power_w", m.accepted_power}};
}

json beam_json(const BeamMapEntry &b) {
  return json{{"state", b.state},
              {"azimuth_deg", optional_json(b.azimuth_deg)},
              {"elevation_deg", optional_json(b.elevation_deg)},
              {"matched_beam", b.matched},
              {"expected_beam", b.expected}};
}

std::string pattern_file(double f_hz) { return "pattern_" + fmt("%.6g", f_hz / 1e9) + "GHz.csv"; }

}  // namespace

void write_touchstone(const PortSpectra &s, const fs::path &path,
                      const std::vector<std::string> &comments) {
  for (std::size_t n = 1; n < s.freqs.size(); ++n)
    if (!(s.freqs[n] > s.freqs[n - 1])) throw IoError("touchstone frequencies must ascend");
  std::ofstream out = open_out(path);
  for (const auto &c : comments) out << "! " << c << "\n";
  out << "# GHz S RI R " << fmt("%.12g", s.z_ref) << "\n";
  for (std::size_t n = 0; n < s.freqs.size(); ++n) {
    if (!s.valid[n]) continue;
    out << fmt("%.12g", s.freqs[n] / 1e9) << " " << fmt("%.12g", s.S11[n].real()) << " "
        << fmt("%.12g", s.S11[n].imag()) << "\n";
  }
  close_checked(out, path);
}

TouchstoneData read_touchstone(const fs::path &path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  TouchstoneData d;
  double unit = 1e9;
  std::string format = "MA";  // Touchstone v1 default
  bool have_option = false;
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto bang = line.find('!');
    if (bang != std::string::npos) {
      if (line.find_first_not_of(" \t") == bang) {
        std::string c = line.substr(bang + 1);
        if (!c.empty() && c.front() == ' ') c.erase(0, 1);
        d.comments.push_back(c);
      }
      line.erase(bang);
    }
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;
    if (tok == "#") {
      if (have_option) throw IoError(path.string() + ":" + std::to_string(lineno) + ": second option line");
      have_option = true;
      std::vector<std::string> toks;
      while (ls >> tok) {
        std::transform(tok.begin(), tok.end(), tok.begin(), [](unsigned char c) { return std::toupper(c); });
        toks.push_back(tok);
      }
      for (std::size_t i = 0; i < toks.size(); ++i) {
        const auto &t = toks[i];
        if (t == "HZ") unit = 1.0;
        else if (t == "KHZ") unit = 1e3;
        else if (t == "MHZ") unit = 1e6;
        else if (t == "GHZ") unit = 1e9;
        else if (t == "RI" || t == "MA" || t == "DB") format = t;
        else if (t == "S") continue;
        else if (t == "R" && i + 1 < toks.size()) d.z_ref = std::stod(toks[++i]);
        else throw IoError(path.string() + ": unsupported option '" + t + "'");
      }
      continue;
    }
    double f = 0.0, a = 0.0, b = 0.0;
    std::istringstream row(line);
    if (!(row >> f >> a >> b)) throw IoError(path.string() + ":" + std::to_string(lineno) + ": bad data line");
    std::complex<double> s;
    if (format == "RI")
      s = {a, b};
    else if (format == "MA")
      s = std::polar(a, b * phys::kPi / 180.0);
    else
      s = std::polar(std::pow(10.0, a / 20.0), b * phys::kPi / 180.0);
    d.freqs_hz.push_back(f * unit);
    d.s11.push_back(s);
  }
  return d;
}

void write_pattern_csv(const FarFieldPattern &p, const PatternMetrics &m, const fs::path &path) {
  const NormalizedPattern norm = normalize_pattern(p);
  std::ofstream out = open_out(path);
  out << "theta_deg,phi_deg,gain_dbi,normalized_db\n";
  for (std::size_t it = 0; it < p.theta_deg.size(); ++it)
    for (std::size_t ip = 0; ip < p.phi_deg.size(); ++ip) {
      const std::size_t n = p.index(it, ip);
      const double u = p.intensity(n);
      const double g = u > 0.0 ? 10.0 * std::log10(4.0 * phys::kPi * u / m.accepted_power) : -300.0;
      out << fmt("%.6g", p.theta_deg[it]) << "," << fmt("%.6g", p.phi_deg[ip]) << ","
          << fmt("%.9g", std::max(g, -300.0)) << "," << fmt("%.9g", norm.db[n]) << "\n";
    }
  close_checked(out, path);
}

std::string state_summary_json(const StateResult &r, const BeamMapEntry &beam) {
  json j;
  j["state"] = std::string(label(r.state));
  j["error"] = optional_json(r.error);
  j["matched_beam"] = beam.matched;
  j["beam"] = beam_json(beam);
  if (!r.error) {
    j["resonance_hz"] = optional_json(r.resonance_hz);
    j["min_s11_db"] = r.min_s11_db;
    j["bandwidth_pct"] = optional_json(r.bandwidth_pct);
    j["pattern_hz"] = r.pattern.f_hz;
    j["metrics"] = metrics_json(r.metrics);
    j["ntff_flux_w"] = r.pattern_ntff_flux;
    j["resonance_pattern_hz"] = r.resonance_pattern_hz;
    j["resonance_metrics"] = metrics_json(r.resonance_metrics);
    j["steps"] = r.run.steps;
    j["termination"] = r.run.reason == Termination::kDecayed ? "decayed" : "max_steps";
    j["warning"] = r.run.warning;
    j["cells"] = r.cells;
  }
  return j.dump(2) + "\n";
}

std::string report_json(const RunReport &report, bool reproducible) {
  json j;
  j["tool"] = "glant " GLANT_VERSION;
  json states = json::array();
  for (std::size_t n = 0; n < report.states.size(); ++n) {
    const auto &r = report.states[n];
    json s = json::parse(state_summary_json(r, report.beam_map.entries[n]));
    if (!reproducible) s["wall_s"] = r.wall_s;
    states.push_back(std::move(s));
  }
  j["states"] = std::move(states);
  json beams = json::array();
  for (const auto &b : report.beam_map.entries) beams.push_back(beam_json(b));
  j["beam_map"] = json{{"entries", beams},
                       {"tolerance_deg", report.beam_map.tolerance_deg},
                       {"bijection", report.beam_map.bijection},
                       {"violations", report.beam_map.violations}};
  json res = json::object();
  for (const auto &[name, f] : report.stability.resonances_hz) res[name] = f;
  j["stability"] = json{{"resonances_hz", res},
                        {"max_pairwise_deviation", optional_json(report.stability.max_pairwise_deviation)}};
  if (!reproducible) {
    const auto now = std::chrono::system_clock::now();
    j["generated_unix_s"] =
        std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch()).count();
  }
  return j.dump(2) + "\n";
}

void write_outputs(const RunConfig &cfg, const RunReport &report, const fs::path &dir,
                   bool reproducible) {
  const auto write_text = [](const fs::path &path, const std::string &text) {
    std::ofstream out = open_out(path);
    out << text;
    close_checked(out, path);
  };
  write_text(dir / "effective_config.json", to_json(cfg));
  for (std::size_t n = 0; n < report.states.size(); ++n) {
    const StateResult &r = report.states[n];
    const fs::path sdir = dir / std::string(label(r.state));
    write_text(sdir / "summary.json", state_summary_json(r, report.beam_map.entries[n]));
    if (r.error) continue;
    if (cfg.output.touchstone)
      write_touchstone(r.spectra, sdir / "s11.s1p",
                       {"glant " GLANT_VERSION, "state " + std::string(label(r.state)),
                        "reference impedance " + fmt("%g", r.spectra.z_ref) + " ohm"});
    if (cfg.output.patterns) write_pattern_csv(r.pattern, r.metrics, sdir / pattern_file(r.pattern.f_hz));
  }
  write_text(dir / "report.json", report_json(report, reproducible));
}

}  // namespace glant
