#pragma once

namespace hauar {

// Axis-aligned pixel rectangle; (x, y) is the top-left corner.
struct Box {
  int x = 0;
  int y = 0;
  int w = 0;
  int h = 0;

  int right() const { return x + w; }
  int bottom() const { return y + h; }
  long area() const { return static_cast<long>(w) * h; }
  bool empty() const { return w <= 0 || h <= 0; }
  bool within(int width, int height) const {
    return x >= 0 && y >= 0 && w > 0 && h > 0 && right() <= width &&
           bottom() <= height;
  }

  friend bool operator==(const Box&, const Box&) = default;
};

Box intersect(const Box& a, const Box& b);

// Intersection over union; 0 when both boxes are empty.
double iou(const Box& a, const Box& b);

// Grows the box by `margin` on every side and clips it to the image.
Box expand_clamped(const Box& box, int margin, int width, int height);

}  // namespace hauar
