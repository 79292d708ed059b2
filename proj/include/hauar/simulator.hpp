#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "hauar/controller.hpp"
#include "hauar/synthgen.hpp"

namespace hauar::sim {

struct OccupantInterval {
  double t_start = 0.0;
  double t_end = 0.0;  // exclusive
  synth::Pose pose = synth::Pose::Stand;
  bool moving = false;
};

struct ClimatePoint {
  double t = 0.0;
  double temperature_c = 22.0;
  double humidity_pct = 50.0;
};

struct Scenario {
  double duration_s = 0.0;
  std::vector<OccupantInterval> occupant_intervals;
  std::vector<ClimatePoint> climate_track;  // step-hold, sorted by t
  std::uint64_t seed = 0;
  std::vector<double> forced_motion;  // PIR assertions injected at these times
};

// Throws DataError describing the first violated invariant.
void validate(const Scenario& scenario);

struct PirConfig {
  double p_detect = 0.95;
  double fp_rate_per_hour = 0.5;
  double tick_s = 5.0;
};

struct PowerModel {
  double fan_low_w = 40.0;
  double fan_high_w = 75.0;
  double light_dim_w = 25.0;
  double light_bright_w = 60.0;

  double watts(const ApplianceState& s) const;
  double max_watts() const { return fan_high_w + light_bright_w; }
};

// How the simulated room is drawn when the controller captures a frame.
struct RoomConfig {
  double background_level = 70.0;
  double noise_sigma = 5.0;
  double illumination_gain = 1.0;
  double figure_scale = 1.0;
};

struct SimConfig {
  ControllerConfig controller;
  PirConfig pir;
  PowerModel power;
  RoomConfig room;
};

enum class Trigger { Motion, Timer };

struct SimReport {
  std::vector<ApplianceCommand> command_trace;
  std::vector<Trigger> triggers;  // parallel to command_trace
  double energy_wh = 0.0;
  double baseline_wh = 0.0;
  long pipeline_runs = 0;
  long pir_false_positives = 0;
  long motion_events = 0;
  long pipeline_errors = 0;
};

struct RoomState {
  bool occupied = false;
  bool moving_occupant = false;
};

// Moving occupant: Bernoulli(p_detect). Otherwise a false assertion with
// probability 1 - exp(-fp_rate_per_hour * tick_s / 3600).
bool sample_pir(const RoomState& room, const PirConfig& cfg, std::mt19937_64& rng);

struct Energy {
  double energy_wh = 0.0;
  double baseline_wh = 0.0;
};

// Piecewise-constant integral of the trace over [0, duration_s], starting
// from (Off, Off). Throws InvalidArgument for an unsorted trace.
Energy energy_of_trace(const std::vector<ApplianceCommand>& trace, double duration_s,
                       const PowerModel& model = {});

// Climate at t with step-hold between track points.
ClimateReading climate_at(const Scenario& scenario, double t);

// Occupants present at t, rendered at positions fixed per interval.
synth::SceneSpec room_scene(const Scenario& scenario, const RoomConfig& room, double t);

// Optional tap on every frame handed to the controller (tests use it to scan
// artifacts for leaked pixels).
using FrameObserver = std::function<void(const Frame&)>;

// Polls the PIR every tick_s from 0 to duration_s inclusive; each tick is a
// Motion event if the PIR asserted, a Tick otherwise. Forced motion is
// injected at its own timestamp. Deterministic in scenario.seed.
SimReport run_scenario(const Scenario& scenario, const DetectorModel& detector,
                       const PoseModel& pose, const SimConfig& cfg,
                       const FrameObserver& observer = {});

Scenario parse_scenario(const std::string& json_text);
Scenario read_scenario(const std::string& path);
std::string format_scenario(const Scenario& scenario);

// Controller, PIR, power and room overrides; absent keys keep defaults.
SimConfig parse_sim_config(const std::string& json_text);

std::string format_report(const SimReport& report, double duration_s);

}  // namespace hauar::sim
