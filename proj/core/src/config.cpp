// Copyright 2026 The glant Authors
// SPDX-License-Identifier: Apache-2.0

#include "glant/config.hpp"

#include <cmath>
#include <set>

#include <nlohmann/json.hpp>

#include "glant/errors.hpp"

namespace glant {

using nlohmann::json;

namespace {

constexpr std::string_view kPresetTable1 = "paper-table1";
constexpr double kPresetSlugVolumeMl = 0.885;  // about 98 mm of slug
constexpr double kPresetLiquidSigma = 375.0;  // S/m

// Walks one JSON object, remembering which keys were consumed so leftovers
// can be reported as unknown.
class Section {
 public:
  Section(const json &j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(path_.empty() ? "<root>" : path_, "expected an object");
  }

  std::string at(std::string_view key) const {
    return path_.empty() ? std::string(key) : path_ + "." + std::string(key);
  }

  const json *find(std::string_view key) {
    seen_.insert(std::string(key));
    auto it = j_.find(std::string(key));
    return it == j_.end() ? nullptr : &*it;
  }

  void number(std::string_view key, double &out) {
    if (const json *v = find(key)) {
      if (!v->is_number()) throw ConfigError(at(key), "expected a number");
      out = v->get<double>();
      if (!std::isfinite(out)) throw ConfigError(at(key), "must be finite");
    }
  }

  template <class Int>
  void integer(std::string_view key, Int &out) {
    if (const json *v = find(key)) {
      if (!v->is_number_integer()) throw ConfigError(at(key), "expected an integer");
      out = v->get<Int>();
    }
  }

  void boolean(std::string_view key, bool &out) {
    if (const json *v = find(key)) {
      if (!v->is_boolean()) throw ConfigError(at(key), "expected a boolean");
      out = v->get<bool>();
    }
  }

  void string(std::string_view key, std::string &out) {
    if (const json *v = find(key)) {
      if (!v->is_string()) throw ConfigError(at(key), "expected a string");
      out = v->get<std::string>();
    }
  }

  template <class Fn>
  void object(std::string_view key, Fn &&fn) {
    if (const json *v = find(key)) {
      Section sub(*v, at(key));
      fn(sub);
      sub.finish();
    }
  }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it)
      if (!seen_.count(it.key())) throw ConfigError(at(it.key()), "unknown key");
  }

 private:
  const json &j_;
  std::string path_;
  std::set<std::string> seen_;
};

void positive(const Section &s, std::string_view key, double v) {
  if (!(v > 0.0)) throw ConfigError(s.at(key), "must be > 0");
}

void read_dielectric(Section &s, DielectricSpec &d) {
  s.number("eps_r", d.eps_r);
  s.number("tan_delta", d.tan_delta);
  s.number("f_ref_hz", d.f_ref_hz);
  if (!(d.eps_r >= 1.0)) throw ConfigError(s.at("eps_r"), "must be >= 1");
  if (!(d.tan_delta >= 0.0)) throw ConfigError(s.at("tan_delta"), "must be >= 0");
  positive(s, "f_ref_hz", d.f_ref_hz);
}

void read_liquid(Section &s, GrapheneSpec &g) {
  s.number("mu_c_ev", g.mu_c_ev);
  s.number("tau_s", g.tau_s);
  s.number("temperature_k", g.temperature_k);
  s.number("thickness_m", g.thickness_m);
  if (const json *m = s.find("model")) {
    if (*m == "bulk")
      g.model = GrapheneSpec::Model::kBulk;
    else if (*m == "sheet")
      g.model = GrapheneSpec::Model::kSheet;
    else
      throw ConfigError(s.at("model"), "expected \"bulk\" or \"sheet\"");
  }
  if (const json *v = s.find("bulk_sigma_override")) {
    if (v->is_null())
      g.bulk_sigma_override.reset();
    else if (v->is_number())
      g.bulk_sigma_override = v->get<double>();
    else
      throw ConfigError(s.at("bulk_sigma_override"), "expected a number or null");
    if (g.bulk_sigma_override && !(*g.bulk_sigma_override > 0.0))
      throw ConfigError(s.at("bulk_sigma_override"), "must be > 0");
  }
  try {
    g.validate();
  } catch (const Error &e) {
    throw ConfigError(s.at(""), e.what());
  }
}

void read_antenna(Section &s, AntennaParams &a) {
  const std::pair<const char *, double *> fields[] = {
      {"Ls", &a.substrate_length_mm}, {"Ws", &a.substrate_width_mm},
      {"Hs", &a.substrate_height_mm}, {"Lm", &a.channel_length_mm},
      {"Wm", &a.channel_width_mm},    {"Dm", &a.channel_diameter_mm},
      {"Lg", &a.feed_offset_mm},      {"slug_volume", &a.slug_volume_ml},
      {"feed_shift", &a.feed_shift_mm}};
  for (auto [key, dst] : fields) s.number(key, *dst);
  for (auto [key, dst] : fields)
    if (std::string_view(key) != "Lg" && std::string_view(key) != "feed_shift") positive(s, key, *dst);
  s.object("substrate", [&](Section &d) { read_dielectric(d, a.materials.substrate); });
  s.object("channel", [&](Section &d) { read_dielectric(d, a.materials.channel_wall); });
  try {
    a.validate();
  } catch (const GeometryError &e) {
    // Messages lead with the offending parameter name.
    const std::string msg = e.what();
    throw ConfigError(s.at(msg.substr(0, msg.find(' '))), msg);
  }
}

void read_sim(Section &s, RunConfig &c) {
  SimConfig &sim = c.sim;
  s.number("delta_m", sim.delta_m);
  s.number("courant_factor", sim.courant_factor);
  s.integer("max_steps", sim.max_steps);
  s.number("decay_stop_db", sim.decay_stop_db);
  s.number("decay_window_s", sim.decay_window_s);
  s.integer("check_interval", sim.check_interval);
  s.integer("threads", sim.threads);
  s.number("air_margin_m", c.air_margin_m);
  s.object("cpml", [&](Section &p) {
    p.integer("cells", sim.cpml.cells);
    p.integer("order", sim.cpml.order);
    p.number("reflection", sim.cpml.reflection);
    p.number("kappa_max", sim.cpml.kappa_max);
    p.number("alpha_max", sim.cpml.alpha_max);
  });
  positive(s, "delta_m", sim.delta_m);
  if (!(sim.courant_factor > 0.0 && sim.courant_factor <= 1.0))
    throw ConfigError(s.at("courant_factor"), "must be in (0, 1]");
  if (sim.max_steps <= 0) throw ConfigError(s.at("max_steps"), "must be > 0");
  if (!(sim.decay_stop_db < 0.0)) throw ConfigError(s.at("decay_stop_db"), "must be < 0");
  positive(s, "decay_window_s", sim.decay_window_s);
  if (sim.check_interval <= 0) throw ConfigError(s.at("check_interval"), "must be > 0");
  if (sim.threads < 1) throw ConfigError(s.at("threads"), "must be >= 1");
  if (!(c.air_margin_m >= 0.0)) throw ConfigError(s.at("air_margin_m"), "must be >= 0");
}

std::vector<double> number_list(const json &v, const std::string &path) {
  if (!v.is_array() || v.empty()) throw ConfigError(path, "expected a non-empty array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) throw ConfigError(path + "[" + std::to_string(i) + "]", "expected a number");
    out.push_back(v[i].get<double>());
    if (!(out.back() > 0.0)) throw ConfigError(path + "[" + std::to_string(i) + "]", "must be > 0");
  }
  return out;
}

void apply_preset(const std::string &name, RunConfig &c) {
  if (name != kPresetTable1) throw ConfigError("preset", "unknown preset \"" + name + "\"");
  // Table 1 geometry, the six liquid locations, and the slug volume and
  // liquid conductivity tuned against the reference resonance and gain.
  c.antenna = AntennaParams{};
  c.antenna.substrate_length_mm = 68.0;
  c.antenna.substrate_width_mm = 56.0;
  c.antenna.substrate_height_mm = 3.0;
  c.antenna.channel_length_mm = 46.0;
  c.antenna.channel_width_mm = 35.0;
  c.antenna.channel_diameter_mm = 3.0;
  c.antenna.feed_offset_mm = 12.0;
  c.antenna.slug_volume_ml = kPresetSlugVolumeMl;
  c.liquid = GrapheneSpec{};
  c.liquid.bulk_sigma_override = kPresetLiquidSigma;
  c.states.assign(kAllLocations.begin(), kAllLocations.end());
}

}  // namespace

AntennaParams RunConfig::resolved_antenna() const {
  AntennaParams a = antenna;
  a.materials.liquid = graphene_liquid_material(liquid, phys::kDesignFrequency);
  return a;
}

VoxelizeOptions RunConfig::voxelize_options() const {
  VoxelizeOptions o;
  o.delta_m = sim.delta_m;
  o.pml_cells = sim.cpml.cells;
  o.air_margin_m = air_margin_m;
  return o;
}

void RunConfig::validate() const {
  if (states.empty()) throw ConfigError("states", "states required");
  try {
    antenna.validate();
    liquid.validate();
    sim.validate();
    source.validate();
  } catch (const ConfigError &) {
    throw;
  } catch (const Error &e) {
    throw ConfigError("", e.what());
  }
  if (!(sweep.start_hz > 0.0 && sweep.stop_hz > sweep.start_hz && sweep.step_hz > 0.0))
    throw ConfigError("frequencies", "need 0 < start < stop and step > 0");
  bool found = false;
  for (double f : farfield.frequencies_hz) found = found || f == farfield.pattern_hz;
  if (!found) throw ConfigError("farfield.pattern_hz", "must be one of farfield.frequencies_hz");
}

RunConfig parse_config(std::string_view text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error &e) {
    throw ConfigError("<root>", std::string("malformed JSON: ") + e.what());
  }
  RunConfig c;
  Section top(root, "");
  std::string preset;
  top.string("preset", preset);
  if (!preset.empty()) {
    apply_preset(preset, c);
    c.preset = preset;
  }
  if (const json *st = top.find("states")) {
    if (!st->is_array()) throw ConfigError("states", "expected an array of labels");
    c.states.clear();
    for (std::size_t i = 0; i < st->size(); ++i) {
      const std::string path = "states[" + std::to_string(i) + "]";
      if (!(*st)[i].is_string()) throw ConfigError(path, "expected a label L1..L6");
      const auto loc = parse_location((*st)[i].get<std::string>());
      if (!loc) throw ConfigError(path, "unknown location \"" + (*st)[i].get<std::string>() + "\"");
      for (auto prev : c.states)
        if (prev == *loc) throw ConfigError(path, "duplicate location");
      c.states.push_back(*loc);
    }
  }
  if (c.states.empty()) throw ConfigError("states", "states required");

  top.object("antenna", [&](Section &s) {
    read_antenna(s, c.antenna);
    s.object("liquid", [&](Section &l) { read_liquid(l, c.liquid); });
  });
  top.object("sim", [&](Section &s) { read_sim(s, c); });
  top.object("frequencies", [&](Section &s) {
    s.number("start_hz", c.sweep.start_hz);
    s.number("stop_hz", c.sweep.stop_hz);
    s.number("step_hz", c.sweep.step_hz);
    positive(s, "start_hz", c.sweep.start_hz);
    positive(s, "step_hz", c.sweep.step_hz);
    if (!(c.sweep.stop_hz > c.sweep.start_hz)) throw ConfigError(s.at("stop_hz"), "must be > start_hz");
  });
  bool delay_given = false;
  top.object("source", [&](Section &s) {
    s.number("f0_hz", c.source.f0_hz);
    s.number("f_bw_hz", c.source.f_bw_hz);
    s.number("amplitude_v", c.source.amplitude_v);
    delay_given = s.find("delay_s") != nullptr;
    s.number("delay_s", c.source.delay_s);
    positive(s, "f0_hz", c.source.f0_hz);
    positive(s, "f_bw_hz", c.source.f_bw_hz);
  });
  if (!delay_given) c.source.delay_s = c.source.min_delay();
  top.object("farfield", [&](Section &s) {
    if (const json *v = s.find("frequencies_hz"))
      c.farfield.frequencies_hz = number_list(*v, s.at("frequencies_hz"));
    s.number("pattern_hz", c.farfield.pattern_hz);
    s.number("theta_step_deg", c.farfield.theta_step_deg);
    s.number("phi_step_deg", c.farfield.phi_step_deg);
    s.integer("box_gap_cells", c.farfield.box_gap_cells);
    s.number("beam_tolerance_deg", c.farfield.beam_tolerance_deg);
    positive(s, "theta_step_deg", c.farfield.theta_step_deg);
    positive(s, "phi_step_deg", c.farfield.phi_step_deg);
    if (c.farfield.box_gap_cells < 1) throw ConfigError(s.at("box_gap_cells"), "must be >= 1");
    positive(s, "beam_tolerance_deg", c.farfield.beam_tolerance_deg);
  });
  top.object("output", [&](Section &s) {
    s.string("dir", c.output.dir);
    s.boolean("touchstone", c.output.touchstone);
    s.boolean("patterns", c.output.patterns);
  });
  top.finish();

  c.sim = [&] {
    SimConfig made = SimConfig::make(c.sim.delta_m, c.sim.courant_factor);
    made.max_steps = c.sim.max_steps;
    made.decay_stop_db = c.sim.decay_stop_db;
    made.decay_window_s = c.sim.decay_window_s;
    made.check_interval = c.sim.check_interval;
    made.threads = c.sim.threads;
    made.cpml = c.sim.cpml;
    return made;
  }();
  c.validate();
  return c;
}

std::string to_json(const RunConfig &c) {
  json j;
  if (!c.preset.empty()) j["preset"] = c.preset;
  j["states"] = json::array();
  for (auto s : c.states) j["states"].push_back(std::string(label(s)));
  const auto &a = c.antenna;
  const auto dielectric = [](const DielectricSpec &d) {
    return json{{"eps_r", d.eps_r}, {"tan_delta", d.tan_delta}, {"f_ref_hz", d.f_ref_hz}};
  };
  json liquid{{"mu_c_ev", c.liquid.mu_c_ev},
              {"tau_s", c.liquid.tau_s},
              {"temperature_k", c.liquid.temperature_k},
              {"model", c.liquid.model == GrapheneSpec::Model::kBulk ? "bulk" : "sheet"},
              {"thickness_m", c.liquid.thickness_m}};
  liquid["bulk_sigma_override"] =
      c.liquid.bulk_sigma_override ? json(*c.liquid.bulk_sigma_override) : json(nullptr);
  j["antenna"] = json{{"Ls", a.substrate_length_mm},
                      {"Ws", a.substrate_width_mm},
                      {"Hs", a.substrate_height_mm},
                      {"Lm", a.channel_length_mm},
                      {"Wm", a.channel_width_mm},
                      {"Dm", a.channel_diameter_mm},
                      {"Lg", a.feed_offset_mm},
                      {"slug_volume", a.slug_volume_ml},
                      {"feed_shift", a.feed_shift_mm},
                      {"substrate", dielectric(a.materials.substrate)},
                      {"channel", dielectric(a.materials.channel_wall)},
                      {"liquid", liquid}};
  j["sim"] = json{{"delta_m", c.sim.delta_m},
                  {"courant_factor", c.sim.courant_factor},
                  {"max_steps", c.sim.max_steps},
                  {"decay_stop_db", c.sim.decay_stop_db},
                  {"decay_window_s", c.sim.decay_window_s},
                  {"check_interval", c.sim.check_interval},
                  {"threads", c.sim.threads},
                  {"air_margin_m", c.air_margin_m},
                  {"cpml",
                   {{"cells", c.sim.cpml.cells},
                    {"order", c.sim.cpml.order},
                    {"reflection", c.sim.cpml.reflection},
                    {"kappa_max", c.sim.cpml.kappa_max},
                    {"alpha_max", c.sim.cpml.alpha_max}}}};
  j["frequencies"] =
      json{{"start_hz", c.sweep.start_hz}, {"stop_hz", c.sweep.stop_hz}, {"step_hz", c.sweep.step_hz}};
  j["source"] = json{{"f0_hz", c.source.f0_hz},
                     {"f_bw_hz", c.source.f_bw_hz},
                     {"amplitude_v", c.source.amplitude_v},
                     {"delay_s", c.source.delay_s}};
  j["farfield"] = json{{"frequencies_hz", c.farfield.frequencies_hz},
                       {"pattern_hz", c.farfield.pattern_hz},
                       {"theta_step_deg", c.farfield.theta_step_deg},
                       {"phi_step_deg", c.farfield.phi_step_deg},
                       {"box_gap_cells", c.farfield.box_gap_cells},
                       {"beam_tolerance_deg", c.farfield.beam_tolerance_deg}};
  j["output"] = json{{"dir", c.output.dir},
                     {"touchstone", c.output.touchstone},
                     {"patterns", c.output.patterns}};
  return j.dump(2) + "\n";
}

}  // namespace glant
