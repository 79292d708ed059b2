#include "hauar/hog.hpp"

#include <cmath>
#include <numbers>

#include "hauar/error.hpp"

namespace hauar {

Eigen::Index hog_length(int w, int h, const HogConfig& cfg) {
  if (cfg.cell <= 0 || cfg.block <= 0 || cfg.bins <= 0 || cfg.block_stride <= 0) {
    throw InvalidArgument("HOG config values must be positive");
  }
  if (w <= 0 || h <= 0 || w % cfg.cell != 0 || h % cfg.cell != 0) {
    throw InvalidArgument("HOG region misaligned to the cell grid");
  }
  const int cells_x = w / cfg.cell;
  const int cells_y = h / cfg.cell;
  if (cfg.block > cells_x || cfg.block > cells_y) {
    throw InvalidArgument("HOG block larger than region");
  }
  const Eigen::Index blocks_x = (cells_x - cfg.block) / cfg.block_stride + 1;
  const Eigen::Index blocks_y = (cells_y - cfg.block) / cfg.block_stride + 1;
  return blocks_x * blocks_y * cfg.block * cfg.block * cfg.bins;
}

Eigen::VectorXd hog_descriptor(const Frame& frame, const Box& region, const HogConfig& cfg) {
  if (!region.within(frame.width(), frame.height())) {
    throw InvalidArgument("HOG region outside frame");
  }
  const Eigen::Index length = hog_length(region.w, region.h, cfg);
  const int cells_x = region.w / cfg.cell;
  const int cells_y = region.h / cfg.cell;
  const int fw = frame.width();
  const int fh = frame.height();
  const Raster& px = frame.raster();

  // Per-cell orientation histograms: rows are cells (row-major), cols bins.
  Eigen::MatrixXd cells = Eigen::MatrixXd::Zero(cells_x * cells_y, cfg.bins);
  const double bin_width = 180.0 / cfg.bins;
  for (int ry = 0; ry < region.h; ++ry) {
    const int y = region.y + ry;
    const int up = std::max(y - 1, 0);
    const int down = std::min(y + 1, fh - 1);
    for (int rx = 0; rx < region.w; ++rx) {
      const int x = region.x + rx;
      const double gx = static_cast<double>(px(y, std::min(x + 1, fw - 1))) - px(y, std::max(x - 1, 0));
      const double gy = static_cast<double>(px(down, x)) - px(up, x);
      const double mag = std::hypot(gx, gy);
      if (mag == 0.0) continue;
      double angle = std::atan2(gy, gx) * 180.0 / std::numbers::pi;
      if (angle < 0.0) angle += 180.0;
      if (angle >= 180.0) angle -= 180.0;
      const double pos = angle / bin_width;
      const int lo = static_cast<int>(std::floor(pos));
      const double frac = pos - lo;
      const int b0 = lo % cfg.bins;
      const int b1 = (lo + 1) % cfg.bins;
      const int cell = (ry / cfg.cell) * cells_x + rx / cfg.cell;
      cells(cell, b0) += mag * (1.0 - frac);
      cells(cell, b1) += mag * frac;
    }
  }

  Eigen::VectorXd out(length);
  const int block_len = cfg.block * cfg.block * cfg.bins;
  Eigen::VectorXd block(block_len);
  const double eps2 = cfg.epsilon * cfg.epsilon;
  Eigen::Index offset = 0;
  for (int by = 0; by + cfg.block <= cells_y; by += cfg.block_stride) {
    for (int bx = 0; bx + cfg.block <= cells_x; bx += cfg.block_stride) {
      int k = 0;
      for (int cy = 0; cy < cfg.block; ++cy) {
        for (int cx = 0; cx < cfg.block; ++cx) {
          block.segment(k, cfg.bins) = cells.row((by + cy) * cells_x + bx + cx).transpose();
          k += cfg.bins;
        }
      }
      block /= std::sqrt(block.squaredNorm() + eps2);
      block = block.cwiseMin(cfg.clip);
      block /= std::sqrt(block.squaredNorm() + eps2);
      out.segment(offset, block_len) = block;
      offset += block_len;
    }
  }
  return out;
}

}  // namespace hauar
