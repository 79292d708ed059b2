#include "hauar/geometry.hpp"

#include <algorithm>

namespace hauar {

Box intersect(const Box& a, const Box& b) {
  const int x0 = std::max(a.x, b.x);
  const int y0 = std::max(a.y, b.y);
  const int x1 = std::min(a.right(), b.right());
  const int y1 = std::min(a.bottom(), b.bottom());
  if (x1 <= x0 || y1 <= y0) return Box{x0, y0, 0, 0};
  return Box{x0, y0, x1 - x0, y1 - y0};
}

double iou(const Box& a, const Box& b) {
  const Box inter = intersect(a, b);
  const double i = inter.empty() ? 0.0 : static_cast<double>(inter.area());
  const double u = static_cast<double>(a.area()) + b.area() - i;
  return u > 0.0 ? i / u : 0.0;
}

Box expand_clamped(const Box& box, int margin, int width, int height) {
  const int x0 = std::clamp(box.x - margin, 0, width);
  const int y0 = std::clamp(box.y - margin, 0, height);
  const int x1 = std::clamp(box.right() + margin, 0, width);
  const int y1 = std::clamp(box.bottom() + margin, 0, height);
  return Box{x0, y0, x1 - x0, y1 - y0};
}

}  // namespace hauar
