#include "hauar/foreground.hpp"

#include <algorithm>

#include "hauar/integral.hpp"

namespace hauar {

Mask foreground_mask(const Frame& frame, const ForegroundConfig& cfg) {
  const IntegralImage ii(frame);
  const int w = frame.width();
  const int h = frame.height();
  const int r = cfg.smooth_radius;
  Mask mask = Mask::Zero(h, w);
  for (int y = 0; y < h; ++y) {
    const int y0 = std::max(y - r, 0);
    const int y1 = std::min(y + r + 1, h);
    for (int x = 0; x < w; ++x) {
      const int x0 = std::max(x - r, 0);
      const int x1 = std::min(x + r + 1, w);
      const double n = static_cast<double>(x1 - x0) * (y1 - y0);
      const double mean = static_cast<double>(ii.sum_unchecked(x0, y0, x1 - x0, y1 - y0)) / n;
      mask(y, x) = mean >= cfg.threshold ? 1 : 0;
    }
  }
  // Nothing stands out from a uniformly bright frame.
  if ((mask.array() == 1).all()) mask.setZero();
  return mask;
}

std::vector<Blob> foreground_blobs(const Frame& frame, const ForegroundConfig& cfg) {
  Mask mask = foreground_mask(frame, cfg);
  const int w = frame.width();
  const int h = frame.height();
  std::vector<Blob> blobs;
  std::vector<std::uint32_t> stack;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (mask(y, x) != 1) continue;
      Blob blob;
      int x0 = x, y0 = y, x1 = x, y1 = y;
      mask(y, x) = 2;
      stack.assign(1, static_cast<std::uint32_t>(y * w + x));
      while (!stack.empty()) {
        const std::uint32_t idx = stack.back();
        stack.pop_back();
        blob.pixels.push_back(idx);
        const int px = static_cast<int>(idx % w);
        const int py = static_cast<int>(idx / w);
        x0 = std::min(x0, px);
        x1 = std::max(x1, px);
        y0 = std::min(y0, py);
        y1 = std::max(y1, py);
        const int nx[4] = {px - 1, px + 1, px, px};
        const int ny[4] = {py, py, py - 1, py + 1};
        for (int k = 0; k < 4; ++k) {
          if (nx[k] < 0 || ny[k] < 0 || nx[k] >= w || ny[k] >= h) continue;
          if (mask(ny[k], nx[k]) != 1) continue;
          mask(ny[k], nx[k]) = 2;
          stack.push_back(static_cast<std::uint32_t>(ny[k] * w + nx[k]));
        }
      }
      blob.area = static_cast<long>(blob.pixels.size());
      if (blob.area < cfg.min_area) continue;
      std::sort(blob.pixels.begin(), blob.pixels.end());
      blob.box = Box{x0, y0, x1 - x0 + 1, y1 - y0 + 1};
      blobs.push_back(std::move(blob));
    }
  }
  std::stable_sort(blobs.begin(), blobs.end(),
                   [](const Blob& a, const Blob& b) { return a.area > b.area; });
  return blobs;
}

}  // namespace hauar
