#pragma once

#include <string_view>

#include "hauar/labels.hpp"

namespace hauar {

enum class Level { Low, High };
enum class FanLevel { Off, Low, High };
enum class LightLevel { Off, Dim, Bright };

struct ClimateReading {
  double temperature_c = 22.0;
  double humidity_pct = 50.0;
};

struct ClimateThresholds {
  double temp_high_c = 25.0;
  double humidity_high_pct = 60.0;
};

struct ApplianceState {
  FanLevel fan = FanLevel::Off;
  LightLevel light = LightLevel::Off;

  friend bool operator==(const ApplianceState&, const ApplianceState&) = default;
};

struct ClimateLevels {
  Level temperature = Level::Low;
  Level humidity = Level::Low;
};

// Throws InvalidArgument for a non-finite temperature or humidity outside
// [0, 100].
void validate(const ClimateReading& reading);

// High iff value >= threshold.
ClimateLevels bin_climate(const ClimateReading& reading, const ClimateThresholds& thresholds = {});

// Fan and light command for every occupancy / climate combination.
ApplianceState lookup_state(PoseLabel occupancy, Level temperature, Level humidity);

inline ApplianceState lookup_state(PoseLabel occupancy, ClimateLevels levels) {
  return lookup_state(occupancy, levels.temperature, levels.humidity);
}

std::string_view to_string(Level level);
std::string_view to_string(FanLevel fan);
std::string_view to_string(LightLevel light);
FanLevel parse_fan(std::string_view name);
LightLevel parse_light(std::string_view name);

}  // namespace hauar
