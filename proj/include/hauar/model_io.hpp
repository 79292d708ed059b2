#pragma once

#include <filesystem>
#include <string>

#include "hauar/detect.hpp"
#include "hauar/pose.hpp"

namespace hauar {

// Everything the pipeline needs, stored as one versioned JSON document:
//
//   { "format": "hauar-model", "version": 1,
//     "detector": { "window": [w, h], "stride", "scale_factor", "scale_levels",
//                   "nms_iou", "score_threshold", "bias", "weights": [...],
//                   "hog": { "cell", "block", "bins", "block_stride", "clip", "epsilon" },
//                   "cascade": [ { "stage_threshold", "stumps": [
//                        { "kind": "two_rect_h"|"two_rect_v"|"three_rect_h",
//                          "rect": [x, y, w, h], "polarity", "threshold" } ] } ] },
//     "pose": { "empty_margin", "hog": {...},
//               "foreground": { "smooth_radius", "threshold", "min_area" },
//               "centroids": { "empty": [...], "sit": [...], "stand": [...], "lie": [...] } } }
struct ModelBundle {
  DetectorModel detector;
  PoseModel pose;
};

std::string serialize_model(const ModelBundle& model);
ModelBundle parse_model(const std::string& text);

void save_model(const std::filesystem::path& path, const ModelBundle& model);
ModelBundle load_model(const std::filesystem::path& path);

}  // namespace hauar
