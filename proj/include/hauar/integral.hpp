#pragma once

#include <cstdint>

#include "hauar/frame.hpp"
#include "hauar/geometry.hpp"

namespace hauar {

// Summed-area table of size (height + 1) x (width + 1). Entry (r, c) holds the
// sum of all pixels in rows < r and columns < c; row 0 and column 0 are zero.
class IntegralImage {
 public:
  using Table = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

  explicit IntegralImage(const Frame& frame);

  int width() const { return static_cast<int>(table_.cols()) - 1; }
  int height() const { return static_cast<int>(table_.rows()) - 1; }
  const Table& table() const { return table_; }

  // Pixel sum over the rectangle; throws InvalidArgument if out of bounds.
  std::int64_t rect_sum(const Box& rect) const;

  // Unchecked variant for hot loops.
  std::int64_t sum_unchecked(int x, int y, int w, int h) const {
    return table_(y + h, x + w) - table_(y, x + w) - table_(y + h, x) + table_(y, x);
  }

 private:
  Table table_;
};

inline IntegralImage integral_image(const Frame& frame) { return IntegralImage(frame); }

inline std::int64_t rect_sum(const IntegralImage& ii, const Box& rect) {
  return ii.rect_sum(rect);
}

}  // namespace hauar
