#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "hauar/geometry.hpp"

namespace hauar {

// Row-major 8-bit raster: rows are image rows (height), columns are image
// columns (width).
using Raster =
    Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

template <typename Scalar>
using Plane =
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// 8-bit grayscale image. Width and height are always positive.
class Frame {
 public:
  Frame() = default;
  Frame(int width, int height, std::uint8_t value = 0);
  Frame(int width, int height, std::span<const std::uint8_t> pixels);
  explicit Frame(Raster pixels);

  int width() const { return static_cast<int>(px_.cols()); }
  int height() const { return static_cast<int>(px_.rows()); }
  bool empty() const { return px_.size() == 0; }

  std::uint8_t at(int x, int y) const { return px_(y, x); }
  std::uint8_t& at(int x, int y) { return px_(y, x); }

  const Raster& raster() const { return px_; }
  Raster& raster() { return px_; }

  // Row-major pixel bytes, width * height long.
  std::span<const std::uint8_t> bytes() const {
    return {px_.data(), static_cast<std::size_t>(px_.size())};
  }

  friend bool operator==(const Frame& a, const Frame& b) {
    return a.px_.rows() == b.px_.rows() && a.px_.cols() == b.px_.cols() &&
           a.px_ == b.px_;
  }

 private:
  Raster px_;
};

struct PreprocessConfig {
  int target_width = 128;
  int target_height = 96;
  bool equalize = true;
};

// Decodes binary (P5) or ASCII (P2) PGM. Sample values are taken verbatim;
// maxval above 255 is rejected.
Frame load_pgm(std::span<const std::uint8_t> bytes);

// Canonical P5: "P5\n<w> <h>\n255\n" followed by the raw pixels.
std::vector<std::uint8_t> write_pgm(const Frame& frame);

Frame read_pgm_file(const std::filesystem::path& path);
void write_pgm_file(const std::filesystem::path& path, const Frame& frame);

// Bilinear resampling with pixel-centre alignment and replicated borders.
// Works on any arithmetic plane; the result is in double precision.
template <typename Derived>
Plane<double> resample_bilinear(const Eigen::MatrixBase<Derived>& src,
                                int out_rows, int out_cols) {
  const Eigen::Index in_rows = src.rows();
  const Eigen::Index in_cols = src.cols();
  const double sy = static_cast<double>(in_rows) / out_rows;
  const double sx = static_cast<double>(in_cols) / out_cols;
  Plane<double> out(out_rows, out_cols);
  for (int r = 0; r < out_rows; ++r) {
    const double fy = std::clamp((r + 0.5) * sy - 0.5, 0.0,
                                 static_cast<double>(in_rows - 1));
    const auto y0 = static_cast<Eigen::Index>(std::floor(fy));
    const Eigen::Index y1 = std::min(y0 + 1, in_rows - 1);
    const double wy = fy - static_cast<double>(y0);
    for (int c = 0; c < out_cols; ++c) {
      const double fx = std::clamp((c + 0.5) * sx - 0.5, 0.0,
                                   static_cast<double>(in_cols - 1));
      const auto x0 = static_cast<Eigen::Index>(std::floor(fx));
      const Eigen::Index x1 = std::min(x0 + 1, in_cols - 1);
      const double wx = fx - static_cast<double>(x0);
      const double top = (1.0 - wx) * static_cast<double>(src(y0, x0)) +
                         wx * static_cast<double>(src(y0, x1));
      const double bot = (1.0 - wx) * static_cast<double>(src(y1, x0)) +
                         wx * static_cast<double>(src(y1, x1));
      out(r, c) = (1.0 - wy) * top + wy * bot;
    }
  }
  return out;
}

// Rounds and clamps a real-valued plane into an 8-bit frame.
Frame to_frame(const Plane<double>& plane);

Frame resize_bilinear(const Frame& frame, int width, int height);

// Global histogram equalization. A constant frame is returned unchanged.
Frame equalize_histogram(const Frame& frame);

// Resize to the configured resolution, then optionally equalize.
Frame preprocess(const Frame& frame, const PreprocessConfig& cfg = {});

// Copies a sub-rectangle; the box must lie inside the frame.
Frame crop(const Frame& frame, const Box& box);

}  // namespace hauar
