#pragma once

#include <vector>

#include "hauar/geometry.hpp"
#include "hauar/integral.hpp"

namespace hauar {

enum class RectKind { TwoRectH, TwoRectV, ThreeRectH };

// Haar-like stump. `rect` is relative to the detection window at scale 1.
//   TwoRectH:   mean(left half)  - mean(right half)
//   TwoRectV:   mean(top half)   - mean(bottom half)
//   ThreeRectH: mean(left third) + mean(right third) - 2 * mean(middle third)
// The value is divided by the window mean before thresholding; the stump
// votes 1 when polarity * (value - threshold) > 0.
struct RectFeature {
  RectKind kind = RectKind::TwoRectH;
  Box rect;
  int polarity = 1;
  double threshold = 0.0;
};

struct CascadeStage {
  std::vector<RectFeature> stumps;
  double stage_threshold = 0.0;
};

struct Cascade {
  int window_w = 24;
  int window_h = 48;
  std::vector<CascadeStage> stages;
};

// Throws InvalidArgument when a stump does not fit the window or its split
// axis is not divisible by 2 (two-rect) or 3 (three-rect).
void validate(const Cascade& cascade);

// Window-mean-normalized feature value for one stump.
double feature_value(const IntegralImage& ii, int origin_x, int origin_y, double scale,
                     int window_w, int window_h, const RectFeature& feature);

// True iff every stage's vote count reaches its threshold. An empty cascade
// accepts every window.
bool eval_cascade(const IntegralImage& ii, int origin_x, int origin_y, double window_scale,
                  const Cascade& cascade);

// Body-shaped pre-filter: a bright vertical column through both halves of
// the window whose top is not markedly darker than the segment below it.
Cascade default_cascade();

}  // namespace hauar
