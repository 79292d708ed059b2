#include "hauar/controller.hpp"

#include "json.hpp"

#include "hauar/error.hpp"

namespace hauar {

bool should_trigger(const ControllerState& state, const SensorEvent& event,
                    const ControllerConfig& cfg) {
  if (!(cfg.period_s > 0.0)) throw InvalidArgument("controller period must be positive");
  if (state.last_event_t && event.t < *state.last_event_t) {
    throw InvalidArgument("sensor event older than the last processed event");
  }
  if (event.kind == EventKind::Motion) return true;
  if (!state.last_run_t) return true;
  return event.t - *state.last_run_t >= cfg.period_s;
}

ApplianceCommand run_pipeline(const FrameSource& frames, const ClimateSource& climate,
                              const DetectorModel& detector, const PoseModel& pose,
                              const ControllerConfig& cfg, double t) {
  ApplianceCommand command;
  command.t = t;
  command.climate = climate();
  validate(command.climate);
  {
    const Frame frame = preprocess(frames(), cfg.preprocess);
    const auto detections = detect_people(frame, detector);
    const auto segments = segment_rois(frame, detections);
    command.occupancy = classify_frame(pose, frame, segments).label;
  }
  command.state = lookup_state(command.occupancy, bin_climate(command.climate, cfg.thresholds));
  return command;
}

StepResult step(const ControllerState& state, const SensorEvent& event,
                const PipelineRunner& pipeline, const ControllerConfig& cfg) {
  StepResult result{state, std::nullopt};
  const bool trigger = should_trigger(state, event, cfg);
  result.state.last_event_t = event.t;
  if (!trigger) return result;
  ApplianceCommand command = pipeline(event.t);
  result.state.last_run_t = event.t;
  result.state.current_appliances = command.state;
  result.command = std::move(command);
  return result;
}

StepResult step(const ControllerState& state, const SensorEvent& event,
                const FrameSource& frames, const ClimateSource& climate,
                const DetectorModel& detector, const PoseModel& pose,
                const ControllerConfig& cfg) {
  return step(
      state, event,
      [&](double t) { return run_pipeline(frames, climate, detector, pose, cfg, t); }, cfg);
}

std::string format_command(const ApplianceCommand& c) {
  nlohmann::ordered_json j;
  j["t"] = c.t;
  j["fan"] = to_string(c.state.fan);
  j["light"] = to_string(c.state.light);
  j["occupancy"] = to_string(c.occupancy);
  j["temperature"] = c.climate.temperature_c;
  j["humidity"] = c.climate.humidity_pct;
  return j.dump();
}

}  // namespace hauar
