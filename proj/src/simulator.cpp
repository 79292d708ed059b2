#include "hauar/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "hauar/error.hpp"
#include "json.hpp"

namespace hauar::sim {

using nlohmann::json;
using nlohmann::ordered_json;

void validate(const Scenario& s) {
  if (!(s.duration_s > 0.0) || !std::isfinite(s.duration_s)) {
    throw DataError("scenario duration_s must be positive");
  }
  for (const auto& o : s.occupant_intervals) {
    if (!(o.t_start >= 0.0 && o.t_end <= s.duration_s && o.t_start <= o.t_end)) {
      throw DataError("occupant interval outside the scenario duration");
    }
  }
  if (s.climate_track.empty()) throw DataError("scenario climate_track is empty");
  for (std::size_t i = 0; i < s.climate_track.size(); ++i) {
    const auto& p = s.climate_track[i];
    if (i > 0 && p.t < s.climate_track[i - 1].t) {
      throw DataError("scenario climate_track is not sorted by t");
    }
    try {
      hauar::validate(ClimateReading{p.temperature_c, p.humidity_pct});
    } catch (const InvalidArgument& e) {
      throw DataError(std::string("scenario climate_track: ") + e.what());
    }
  }
  for (double t : s.forced_motion) {
    if (!(t >= 0.0 && t <= s.duration_s)) throw DataError("forced motion outside the scenario");
  }
}

double PowerModel::watts(const ApplianceState& s) const {
  double w = 0.0;
  if (s.fan == FanLevel::Low) w += fan_low_w;
  if (s.fan == FanLevel::High) w += fan_high_w;
  if (s.light == LightLevel::Dim) w += light_dim_w;
  if (s.light == LightLevel::Bright) w += light_bright_w;
  return w;
}

bool sample_pir(const RoomState& room, const PirConfig& cfg, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  if (room.moving_occupant) return u(rng) < cfg.p_detect;
  const double p = 1.0 - std::exp(-cfg.fp_rate_per_hour * cfg.tick_s / 3600.0);
  return u(rng) < p;
}

Energy energy_of_trace(const std::vector<ApplianceCommand>& trace, double duration_s,
                       const PowerModel& model) {
  for (std::size_t i = 1; i < trace.size(); ++i) {
    if (trace[i].t < trace[i - 1].t) throw InvalidArgument("command trace is not sorted by t");
  }
  Energy e;
  e.baseline_wh = model.max_watts() * duration_s / 3600.0;
  ApplianceState current{};
  double since = 0.0;
  double joules = 0.0;
  for (const auto& c : trace) {
    const double t = std::clamp(c.t, 0.0, duration_s);
    joules += model.watts(current) * (t - since);
    current = c.state;
    since = t;
  }
  joules += model.watts(current) * (duration_s - since);
  e.energy_wh = joules / 3600.0;
  return e;
}

ClimateReading climate_at(const Scenario& s, double t) {
  const ClimatePoint* point = &s.climate_track.front();
  for (const auto& p : s.climate_track) {
    if (p.t <= t) point = &p;
  }
  return {point->temperature_c, point->humidity_pct};
}

synth::SceneSpec room_scene(const Scenario& s, const RoomConfig& room, double t) {
  synth::SceneSpec spec;
  spec.background_level = room.background_level;
  spec.noise_sigma = room.noise_sigma;
  spec.illumination_gain = room.illumination_gain;
  std::vector<Box> placed;
  for (std::size_t i = 0; i < s.occupant_intervals.size(); ++i) {
    const auto& o = s.occupant_intervals[i];
    if (!(o.t_start <= t && t < o.t_end)) continue;
    std::mt19937_64 rng(s.seed * 0x100000001b3ULL + i + 1);
    synth::FigureSpec f;
    f.pose = o.pose;
    f.scale = room.figure_scale;
    const Box unit = synth::figure_extent(f);
    const double w = unit.w;
    const double h = unit.h;
    for (int attempt = 0; attempt < 64; ++attempt) {
      f.anchor_x = std::uniform_real_distribution<double>(
          w / 2.0 + 2.0, synth::kSceneWidth - w / 2.0 - 2.0)(rng);
      f.anchor_y = std::uniform_real_distribution<double>(h + 2.0, synth::kSceneHeight - 2.0)(rng);
      const Box b = expand_clamped(synth::figure_extent(f), 6, 1 << 20, 1 << 20);
      const bool clear = std::none_of(placed.begin(), placed.end(),
                                      [&](const Box& p) { return !intersect(p, b).empty(); });
      if (clear || attempt == 63) {
        if (clear) {
          placed.push_back(b);
          spec.figures.push_back(f);
        }
        break;
      }
    }
  }
  return spec;
}

namespace {

RoomState room_state(const Scenario& s, double t) {
  RoomState r;
  for (const auto& o : s.occupant_intervals) {
    if (o.t_start <= t && t < o.t_end) {
      r.occupied = true;
      r.moving_occupant = r.moving_occupant || o.moving;
    }
  }
  return r;
}

}  // namespace

SimReport run_scenario(const Scenario& scenario, const DetectorModel& detector,
                       const PoseModel& pose, const SimConfig& cfg,
                       const FrameObserver& observer) {
  validate(scenario);
  if (!(cfg.pir.tick_s > 0.0)) throw InvalidArgument("PIR tick must be positive");

  SimReport report;
  ControllerState state;
  std::mt19937_64 pir_rng(scenario.seed);
  std::vector<double> forced = scenario.forced_motion;
  std::sort(forced.begin(), forced.end());
  std::size_t next_forced = 0;

  const auto pipeline = [&](double t) {
    const std::uint64_t render_seed =
        scenario.seed * 6364136223846793005ULL + static_cast<std::uint64_t>(report.pipeline_runs) + 1;
    const FrameSource frames = [&]() {
      auto rendered = synth::render_scene(room_scene(scenario, cfg.room, t), render_seed);
      if (observer) observer(rendered.first);
      return std::move(rendered.first);
    };
    const ClimateSource climate = [&]() { return climate_at(scenario, t); };
    ++report.pipeline_runs;
    return run_pipeline(frames, climate, detector, pose, cfg.controller, t);
  };

  const auto consume = [&](const SensorEvent& event) {
    if (event.kind == EventKind::Motion) ++report.motion_events;
    try {
      StepResult r = step(state, event, pipeline, cfg.controller);
      state = r.state;
      if (r.command) {
        report.command_trace.push_back(*r.command);
        report.triggers.push_back(event.kind == EventKind::Motion ? Trigger::Motion : Trigger::Timer);
      }
    } catch (const Error&) {
      ++report.pipeline_errors;
      state.last_event_t = event.t;
    }
  };

  const auto ticks = static_cast<long>(std::floor(scenario.duration_s / cfg.pir.tick_s + 1e-9));
  for (long k = 0; k <= ticks; ++k) {
    const double t = static_cast<double>(k) * cfg.pir.tick_s;
    bool forced_now = false;
    while (next_forced < forced.size() && forced[next_forced] <= t) {
      if (forced[next_forced] == t) {
        forced_now = true;
      } else {
        const RoomState r = room_state(scenario, forced[next_forced]);
        if (!r.moving_occupant) ++report.pir_false_positives;
        consume({forced[next_forced], EventKind::Motion});
      }
      ++next_forced;
    }
    const RoomState room = room_state(scenario, t);
    const bool asserted = sample_pir(room, cfg.pir, pir_rng) || forced_now;
    if (asserted && !room.moving_occupant) ++report.pir_false_positives;
    consume({t, asserted ? EventKind::Motion : EventKind::Tick});
  }
  while (next_forced < forced.size()) {
    const double t = forced[next_forced++];
    if (!room_state(scenario, t).moving_occupant) ++report.pir_false_positives;
    consume({t, EventKind::Motion});
  }

  const Energy e = energy_of_trace(report.command_trace, scenario.duration_s, cfg.power);
  report.energy_wh = e.energy_wh;
  report.baseline_wh = e.baseline_wh;
  return report;
}

namespace {

synth::Pose parse_pose(const std::string& name) {
  if (name == "sit") return synth::Pose::Sit;
  if (name == "stand") return synth::Pose::Stand;
  if (name == "lie") return synth::Pose::Lie;
  throw DataError("unknown occupant pose '" + name + "'");
}

std::string pose_name(synth::Pose p) { return std::string(to_string(synth::to_label(p))); }

template <typename T>
void read_opt(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

}  // namespace

Scenario parse_scenario(const std::string& text) {
  Scenario s;
  try {
    const json j = json::parse(text);
    if (j.value("version", 1) != 1) throw DataError("unsupported scenario version");
    s.duration_s = j.at("duration_s").get<double>();
    s.seed = j.value("seed", std::uint64_t{0});
    for (const auto& o : j.at("occupant_intervals")) {
      s.occupant_intervals.push_back({o.at("t_start").get<double>(), o.at("t_end").get<double>(),
                                      parse_pose(o.at("pose").get<std::string>()),
                                      o.value("moving", false)});
    }
    for (const auto& p : j.at("climate_track")) {
      s.climate_track.push_back({p.at("t").get<double>(), p.at("temperature_c").get<double>(),
                                 p.at("humidity_pct").get<double>()});
    }
    if (j.contains("forced_motion")) s.forced_motion = j.at("forced_motion").get<std::vector<double>>();
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed scenario: ") + e.what());
  }
  validate(s);
  return s;
}

Scenario read_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open scenario " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

std::string format_scenario(const Scenario& s) {
  ordered_json j;
  j["version"] = 1;
  j["duration_s"] = s.duration_s;
  j["seed"] = s.seed;
  j["occupant_intervals"] = ordered_json::array();
  for (const auto& o : s.occupant_intervals) {
    ordered_json e;
    e["t_start"] = o.t_start;
    e["t_end"] = o.t_end;
    e["pose"] = pose_name(o.pose);
    e["moving"] = o.moving;
    j["occupant_intervals"].push_back(e);
  }
  j["climate_track"] = ordered_json::array();
  for (const auto& p : s.climate_track) {
    ordered_json e;
    e["t"] = p.t;
    e["temperature_c"] = p.temperature_c;
    e["humidity_pct"] = p.humidity_pct;
    j["climate_track"].push_back(e);
  }
  if (!s.forced_motion.empty()) j["forced_motion"] = s.forced_motion;
  return j.dump(2) + "\n";
}

SimConfig parse_sim_config(const std::string& text) {
  SimConfig cfg;
  try {
    const json j = json::parse(text);
    if (j.contains("controller")) {
      const json& c = j.at("controller");
      read_opt(c, "period_s", cfg.controller.period_s);
      read_opt(c, "temp_high_c", cfg.controller.thresholds.temp_high_c);
      read_opt(c, "humidity_high_pct", cfg.controller.thresholds.humidity_high_pct);
    }
    if (j.contains("pir")) {
      const json& p = j.at("pir");
      read_opt(p, "p_detect", cfg.pir.p_detect);
      read_opt(p, "fp_rate_per_hour", cfg.pir.fp_rate_per_hour);
      read_opt(p, "tick_s", cfg.pir.tick_s);
    }
    if (j.contains("power")) {
      const json& p = j.at("power");
      read_opt(p, "fan_low_w", cfg.power.fan_low_w);
      read_opt(p, "fan_high_w", cfg.power.fan_high_w);
      read_opt(p, "light_dim_w", cfg.power.light_dim_w);
      read_opt(p, "light_bright_w", cfg.power.light_bright_w);
    }
    if (j.contains("room")) {
      const json& r = j.at("room");
      read_opt(r, "background_level", cfg.room.background_level);
      read_opt(r, "noise_sigma", cfg.room.noise_sigma);
      read_opt(r, "illumination_gain", cfg.room.illumination_gain);
      read_opt(r, "figure_scale", cfg.room.figure_scale);
    }
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed config: ") + e.what());
  }
  if (!(cfg.controller.period_s > 0.0)) throw DataError("period_s must be positive");
  if (!(cfg.pir.p_detect >= 0.0 && cfg.pir.p_detect <= 1.0)) throw DataError("p_detect must be within [0, 1]");
  if (!(cfg.pir.fp_rate_per_hour >= 0.0)) throw DataError("fp_rate_per_hour must be non-negative");
  if (!(cfg.pir.tick_s > 0.0)) throw DataError("tick_s must be positive");
  const PowerModel& p = cfg.power;
  if (!(p.fan_low_w < p.fan_high_w && p.light_dim_w < p.light_bright_w && p.fan_low_w >= 0 &&
        p.light_dim_w >= 0)) {
    throw DataError("power model must satisfy 0 <= low < high and 0 <= dim < bright");
  }
  return cfg;
}

std::string format_report(const SimReport& r, double duration_s) {
  ordered_json j;
  j["format"] = "hauar-sim-report";
  j["version"] = 1;
  j["energy_note"] = "model-based estimate from configured wattages, not a measurement";
  j["duration_s"] = duration_s;
  j["energy_wh"] = r.energy_wh;
  j["baseline_wh"] = r.baseline_wh;
  j["reduction"] = r.baseline_wh > 0.0 ? 1.0 - r.energy_wh / r.baseline_wh : 0.0;
  j["pipeline_runs"] = r.pipeline_runs;
  j["motion_events"] = r.motion_events;
  j["pir_false_positives"] = r.pir_false_positives;
  j["pipeline_errors"] = r.pipeline_errors;
  j["commands"] = ordered_json::array();
  for (std::size_t i = 0; i < r.command_trace.size(); ++i) {
    const auto& c = r.command_trace[i];
    ordered_json e;
    e["t"] = c.t;
    e["fan"] = to_string(c.state.fan);
    e["light"] = to_string(c.state.light);
    e["occupancy"] = to_string(c.occupancy);
    e["temperature"] = c.climate.temperature_c;
    e["humidity"] = c.climate.humidity_pct;
    e["trigger"] = r.triggers[i] == Trigger::Motion ? "motion" : "timer";
    j["commands"].push_back(e);
  }
  return j.dump(2) + "\n";
}

}  // namespace hauar::sim
