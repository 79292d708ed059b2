#pragma once

#include <Eigen/Core>

#include <array>
#include <span>
#include <utility>
#include <vector>

#include "hauar/detect.hpp"
#include "hauar/foreground.hpp"
#include "hauar/labels.hpp"

namespace hauar {

inline constexpr int kPoseCropSize = 48;
inline constexpr int kShapeRepeat = 8;

// Shape descriptor of the dominant silhouette in a segment.
struct PoseFeature {
  Eigen::VectorXd hog;      // HOG of the silhouette crop resized to 48x48
  double log_aspect = 0.0;  // ln(h / w) of the silhouette box
  double fill = 0.0;        // silhouette pixels / silhouette box pixels, in [0, 1]

  // hog, then log_aspect and fill each repeated kShapeRepeat times.
  Eigen::VectorXd vector() const;
};

// The silhouette is the largest foreground blob of the segment crop. Its
// bounding box is cut out as a binary image, resized to 48x48 and described
// by HOG. A crop with no foreground yields the zero feature (zero HOG,
// log_aspect 0, fill 0). Throws InvalidArgument for crops under 4x4.
PoseFeature extract_pose_feature(const Frame& crop, const HogConfig& hog = {},
                                 const ForegroundConfig& fg = {});
PoseFeature extract_pose_feature(const RoiSegment& segment, const HogConfig& hog = {},
                                 const ForegroundConfig& fg = {});

struct PoseModel {
  std::array<Eigen::VectorXd, 4> centroids;  // indexed by PoseLabel
  double empty_margin = 0.15;
  HogConfig hog;
  ForegroundConfig foreground;

  Eigen::Index dimension() const { return centroids[0].size(); }
};

void validate(const PoseModel& model);

// Per-class arithmetic means with compensated summation. Throws DataError
// naming the first label without samples.
PoseModel train_centroids(std::span<const std::pair<Eigen::VectorXd, PoseLabel>> samples,
                          PoseModel base = {});

struct RoiClass {
  PoseLabel label = PoseLabel::Empty;
  double distance = 0.0;
};

// Nearest centroid; exact ties go to the earlier label in
// Empty < Sit < Stand < Lie. A non-Empty winner that beats Empty by less
// than empty_margin yields Empty.
RoiClass classify_roi(const PoseModel& model, const Eigen::VectorXd& feature);
RoiClass classify_roi(const PoseModel& model, const PoseFeature& feature);

struct FrameClass {
  PoseLabel label = PoseLabel::Empty;
  std::array<int, 4> counts{};  // non-Empty votes per label; counts[Empty] stays 0
};

// Vote fold: Empty when every vote is Empty, otherwise the majority of the
// non-Empty votes with ties resolved Stand > Sit > Lie.
FrameClass aggregate_votes(std::span<const PoseLabel> votes);

// Classifies the whole frame plus every segment and folds the votes.
FrameClass classify_frame(const PoseModel& model, const Frame& frame,
                          const std::vector<RoiSegment>& segments);

}  // namespace hauar
