#pragma once

#include <Eigen/Core>

#include "hauar/frame.hpp"
#include "hauar/geometry.hpp"

namespace hauar {

struct HogConfig {
  int cell = 8;          // pixels per cell side
  int block = 2;         // cells per block side
  int bins = 9;          // unsigned orientation bins over [0, 180)
  int block_stride = 1;  // cells
  double clip = 0.2;     // L2-hys clip
  double epsilon = 1e-6;
};

// Descriptor length for a w x h region; throws InvalidArgument if the region
// is not aligned to the cell grid or is smaller than one block.
Eigen::Index hog_length(int w, int h, const HogConfig& cfg);

// Histogram of oriented gradients over `region` of `frame`.
//
// Gradients are central differences over the frame with replicated frame
// borders. Each pixel votes its gradient magnitude into the two nearest
// orientation bins (bin k is centred on k * 180 / bins degrees, wrapping at
// 180). Blocks are L2-hys normalized and concatenated in row-major block
// order; within a block cells are row-major, then bins.
Eigen::VectorXd hog_descriptor(const Frame& frame, const Box& region, const HogConfig& cfg = {});

}  // namespace hauar
