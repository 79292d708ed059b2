#pragma once

#include <functional>
#include <optional>
#include <string>

#include "hauar/detect.hpp"
#include "hauar/frame.hpp"
#include "hauar/labels.hpp"
#include "hauar/pose.hpp"
#include "hauar/state_table.hpp"

namespace hauar {

struct ControllerConfig {
  double period_s = 1800.0;
  ClimateThresholds thresholds;
  PreprocessConfig preprocess;
};

struct ControllerState {
  std::optional<double> last_run_t;    // unset until the first pipeline run
  std::optional<double> last_event_t;  // time of the last consumed event
  ApplianceState current_appliances;   // (Off, Off) initially
};

enum class EventKind { Motion, Tick };

struct SensorEvent {
  double t = 0.0;
  EventKind kind = EventKind::Tick;
};

// One actuation decision. It carries no image data by construction.
struct ApplianceCommand {
  double t = 0.0;
  ApplianceState state;
  PoseLabel occupancy = PoseLabel::Empty;
  ClimateReading climate;
};

// Motion, cold start, or period_s elapsed since the last run. Throws
// InvalidArgument if the event is older than the last consumed one.
bool should_trigger(const ControllerState& state, const SensorEvent& event,
                    const ControllerConfig& cfg);

using FrameSource = std::function<Frame()>;
using ClimateSource = std::function<ClimateReading()>;

// Reads climate, captures and preprocesses a frame, detects, segments,
// classifies and looks up the state table. The frame and every crop are
// scoped to this call. Errors from either source propagate.
ApplianceCommand run_pipeline(const FrameSource& frames, const ClimateSource& climate,
                              const DetectorModel& detector, const PoseModel& pose,
                              const ControllerConfig& cfg, double t);

// The pipeline as seen by the state machine: time in, command out.
using PipelineRunner = std::function<ApplianceCommand(double t)>;

struct StepResult {
  ControllerState state;
  std::optional<ApplianceCommand> command;
};

// Consumes one event. Non-triggering events only advance last_event_t. If
// the pipeline throws, the exception propagates and the caller keeps its
// previous state.
StepResult step(const ControllerState& state, const SensorEvent& event,
                const PipelineRunner& pipeline, const ControllerConfig& cfg);

StepResult step(const ControllerState& state, const SensorEvent& event,
                const FrameSource& frames, const ClimateSource& climate,
                const DetectorModel& detector, const PoseModel& pose,
                const ControllerConfig& cfg);

// One JSON object per line: t, fan, light, occupancy, temperature, humidity.
std::string format_command(const ApplianceCommand& command);

}  // namespace hauar
