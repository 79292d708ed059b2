#include "hauar/labels.hpp"

#include "hauar/error.hpp"

namespace hauar {

std::string_view to_string(PoseLabel label) {
  switch (label) {
    case PoseLabel::Empty: return "empty";
    case PoseLabel::Sit: return "sit";
    case PoseLabel::Stand: return "stand";
    case PoseLabel::Lie: return "lie";
  }
  return "empty";
}

PoseLabel parse_label(std::string_view name) {
  for (PoseLabel label : kAllLabels) {
    if (to_string(label) == name) return label;
  }
  throw DataError("unknown occupancy label '" + std::string(name) + "'");
}

}  // namespace hauar
