#pragma once

#include <array>
#include <string>
#include <string_view>

namespace hauar {

// Room occupancy classes. The enumerator order is the fixed label order used
// by confusion matrices and by centroid tie-breaking.
enum class PoseLabel { Empty = 0, Sit = 1, Stand = 2, Lie = 3 };

inline constexpr std::array<PoseLabel, 4> kAllLabels = {
    PoseLabel::Empty, PoseLabel::Sit, PoseLabel::Stand, PoseLabel::Lie};

constexpr std::size_t index_of(PoseLabel label) {
  return static_cast<std::size_t>(label);
}

// Lower-case wire name: empty, sit, stand, lie.
std::string_view to_string(PoseLabel label);

// Inverse of to_string. Throws DataError on an unknown name.
PoseLabel parse_label(std::string_view name);

}  // namespace hauar
