#include "hauar/state_table.hpp"

#include <array>
#include <cmath>
#include <string>

#include "hauar/error.hpp"

namespace hauar {

namespace {

using F = FanLevel;
using L = LightLevel;

// [occupancy][temperature][humidity], Low = 0, High = 1.
constexpr std::array<std::array<std::array<ApplianceState, 2>, 2>, 4> kStateTable = {{
    // Empty room: any climate.
    {{{{{F::Off, L::Off}, {F::Off, L::Off}}}, {{{F::Off, L::Off}, {F::Off, L::Off}}}}},
    // Sitting.
    {{{{{F::Low, L::Bright}, {F::High, L::Dim}}}, {{{F::High, L::Bright}, {F::High, L::Dim}}}}},
    // Standing.
    {{{{{F::Low, L::Bright}, {F::High, L::Bright}}}, {{{F::High, L::Bright}, {F::High, L::Dim}}}}},
    // Lying.
    {{{{{F::Low, L::Dim}, {F::Low, L::Dim}}}, {{{F::High, L::Dim}, {F::High, L::Dim}}}}},
}};

}  // namespace

void validate(const ClimateReading& reading) {
  if (!std::isfinite(reading.temperature_c)) throw InvalidArgument("temperature must be finite");
  if (!(reading.humidity_pct >= 0.0 && reading.humidity_pct <= 100.0)) {
    throw InvalidArgument("humidity must be within [0, 100]");
  }
}

ClimateLevels bin_climate(const ClimateReading& reading, const ClimateThresholds& thresholds) {
  validate(reading);
  return {reading.temperature_c >= thresholds.temp_high_c ? Level::High : Level::Low,
          reading.humidity_pct >= thresholds.humidity_high_pct ? Level::High : Level::Low};
}

ApplianceState lookup_state(PoseLabel occupancy, Level temperature, Level humidity) {
  return kStateTable[index_of(occupancy)][static_cast<std::size_t>(temperature)]
                    [static_cast<std::size_t>(humidity)];
}

std::string_view to_string(Level level) { return level == Level::Low ? "low" : "high"; }

std::string_view to_string(FanLevel fan) {
  switch (fan) {
    case FanLevel::Off: return "off";
    case FanLevel::Low: return "low";
    case FanLevel::High: return "high";
  }
  return "off";
}

std::string_view to_string(LightLevel light) {
  switch (light) {
    case LightLevel::Off: return "off";
    case LightLevel::Dim: return "dim";
    case LightLevel::Bright: return "bright";
  }
  return "off";
}

FanLevel parse_fan(std::string_view name) {
  for (FanLevel f : {FanLevel::Off, FanLevel::Low, FanLevel::High}) {
    if (to_string(f) == name) return f;
  }
  throw DataError("unknown fan level '" + std::string(name) + "'");
}

LightLevel parse_light(std::string_view name) {
  for (LightLevel l : {LightLevel::Off, LightLevel::Dim, LightLevel::Bright}) {
    if (to_string(l) == name) return l;
  }
  throw DataError("unknown light level '" + std::string(name) + "'");
}

}  // namespace hauar
