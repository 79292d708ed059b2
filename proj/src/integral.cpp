#include "hauar/integral.hpp"

#include "hauar/error.hpp"

namespace hauar {

IntegralImage::IntegralImage(const Frame& frame)
    : table_(Table::Zero(frame.height() + 1, frame.width() + 1)) {
  for (int y = 0; y < frame.height(); ++y) {
    std::int64_t row = 0;
    for (int x = 0; x < frame.width(); ++x) {
      row += frame.at(x, y);
      table_(y + 1, x + 1) = table_(y, x + 1) + row;
    }
  }
}

std::int64_t IntegralImage::rect_sum(const Box& rect) const {
  if (rect.x < 0 || rect.y < 0 || rect.w < 0 || rect.h < 0 ||
      rect.right() > width() || rect.bottom() > height()) {
    throw InvalidArgument("rect outside integral image");
  }
  return sum_unchecked(rect.x, rect.y, rect.w, rect.h);
}

}  // namespace hauar
