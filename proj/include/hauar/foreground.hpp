#pragma once

#include <cstdint>
#include <vector>

#include "hauar/frame.hpp"
#include "hauar/geometry.hpp"

namespace hauar {

// Bright-silhouette extraction on equalized frames. The frame is box-filtered
// (window clipped at the borders) and thresholded; connected regions smaller
// than `min_area` are discarded as noise.
struct ForegroundConfig {
  int smooth_radius = 3;  // 7x7 mean
  double threshold = 192.0;
  int min_area = 24;
};

struct Blob {
  Box box;
  long area = 0;
  std::vector<std::uint32_t> pixels;  // row-major indices into the source frame
};

using Mask = Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// 1 where the smoothed intensity reaches the threshold. A frame in which every
// pixel passes has no figure/background contrast and yields an empty mask.
Mask foreground_mask(const Frame& frame, const ForegroundConfig& cfg = {});

// 4-connected components of the mask with at least cfg.min_area pixels,
// ordered by descending area, then by top-left position.
std::vector<Blob> foreground_blobs(const Frame& frame, const ForegroundConfig& cfg = {});

}  // namespace hauar
