#pragma once

#include <Eigen/Core>

#include <vector>

#include "hauar/cascade.hpp"
#include "hauar/frame.hpp"
#include "hauar/geometry.hpp"
#include "hauar/hog.hpp"
#include "hauar/labels.hpp"

namespace hauar {

struct Detection {
  Box box;
  double score = 0.0;
};

// Haar pre-filter followed by a linear HOG scorer over a sliding window
// pyramid. The window size lives in `cascade` (24 x 48 by default).
struct DetectorModel {
  Cascade cascade = default_cascade();
  HogConfig hog;
  Eigen::VectorXd weights;
  double bias = 0.0;
  double score_threshold = 0.0;
  int stride = 8;
  double scale_factor = 0.8;
  int scale_levels = 3;
  double nms_iou = 0.4;

  int window_w() const { return cascade.window_w; }
  int window_h() const { return cascade.window_h; }
};

// Throws InvalidArgument when the weight vector does not match the window
// descriptor length or the search parameters are out of range.
void validate(const DetectorModel& model);

// dot(weights, descriptor) + bias.
double score_window(const Eigen::VectorXd& descriptor, const DetectorModel& model);

// Greedy suppression in descending score order (ties: smaller x, then y).
// A box is dropped when its IoU with an already kept box exceeds the threshold.
std::vector<Detection> nms(std::vector<Detection> dets, double iou_threshold);

// Sliding-window search on a preprocessed frame. Level l searches the frame
// downscaled by scale_factor^l; surviving boxes are mapped back to frame
// coordinates, suppressed and returned by descending score.
std::vector<Detection> detect_people(const Frame& frame, const DetectorModel& model);

struct RoiSegment {
  Frame crop;
  Box box;       // the detection box the crop was cut around
  Box crop_box;  // the crop's extent in frame coordinates
};

inline constexpr int kRoiMargin = 4;

// One crop per detection: the box grown by a 4 pixel margin, clipped to the
// frame.
std::vector<RoiSegment> segment_rois(const Frame& frame, const std::vector<Detection>& dets);

// Labelled training frame (already preprocessed).
struct DetectorSample {
  const Frame* frame = nullptr;
  PoseLabel label = PoseLabel::Empty;
};

// Two-class centroid discriminant: w = mean(person) - mean(background),
// b = -w . (mean(person) + mean(background)) / 2. Person windows are taken
// around upright silhouettes in Stand frames; background windows are drawn
// from Empty frames, around the silhouettes in Sit and Lie frames, and half a
// window off the upright silhouettes.
// Throws DataError if either class ends up without samples.
DetectorModel train_detector(const std::vector<DetectorSample>& samples,
                             DetectorModel base = {});

}  // namespace hauar
