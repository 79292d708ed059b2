#include "hauar/cascade.hpp"

#include <cmath>

#include "hauar/error.hpp"

namespace hauar {

namespace {

double mean_of(const IntegralImage& ii, int x, int y, int w, int h) {
  if (w <= 0 || h <= 0) return 0.0;
  return static_cast<double>(ii.sum_unchecked(x, y, w, h)) / (static_cast<double>(w) * h);
}

int scaled(int v, double s) { return static_cast<int>(std::lround(v * s)); }

}  // namespace

void validate(const Cascade& cascade) {
  for (const auto& stage : cascade.stages) {
    for (const auto& f : stage.stumps) {
      const Box& r = f.rect;
      if (!r.within(cascade.window_w, cascade.window_h)) {
        throw InvalidArgument("cascade stump does not fit the detection window");
      }
      if (r.w < 2 || r.h < 2) throw InvalidArgument("cascade stump smaller than 2x2");
      const bool ok = f.kind == RectKind::TwoRectH   ? r.w % 2 == 0
                      : f.kind == RectKind::TwoRectV ? r.h % 2 == 0
                                                     : r.w % 3 == 0;
      if (!ok) throw InvalidArgument("cascade stump not divisible along its split axis");
      if (f.polarity != 1 && f.polarity != -1) {
        throw InvalidArgument("cascade stump polarity must be +1 or -1");
      }
    }
  }
}

double feature_value(const IntegralImage& ii, int ox, int oy, double scale, int window_w,
                     int window_h, const RectFeature& f) {
  const double window_mean = mean_of(ii, ox, oy, scaled(window_w, scale), scaled(window_h, scale));
  if (window_mean <= 1e-9) return 0.0;

  const int x = ox + scaled(f.rect.x, scale);
  const int y = oy + scaled(f.rect.y, scale);
  const int w = scaled(f.rect.w, scale);
  const int h = scaled(f.rect.h, scale);
  double value = 0.0;
  switch (f.kind) {
    case RectKind::TwoRectH: {
      const int half = w / 2;
      value = mean_of(ii, x, y, half, h) - mean_of(ii, x + half, y, w - half, h);
      break;
    }
    case RectKind::TwoRectV: {
      const int half = h / 2;
      value = mean_of(ii, x, y, w, half) - mean_of(ii, x, y + half, w, h - half);
      break;
    }
    case RectKind::ThreeRectH: {
      const int third = w / 3;
      const int right_w = w - 2 * third;
      value = mean_of(ii, x, y, third, h) + mean_of(ii, x + 2 * third, y, right_w, h) -
              2.0 * mean_of(ii, x + third, y, third, h);
      break;
    }
  }
  return value / window_mean;
}

bool eval_cascade(const IntegralImage& ii, int ox, int oy, double window_scale,
                  const Cascade& cascade) {
  if (ox < 0 || oy < 0 || ox + scaled(cascade.window_w, window_scale) > ii.width() ||
      oy + scaled(cascade.window_h, window_scale) > ii.height()) {
    throw InvalidArgument("cascade window outside image");
  }
  for (const auto& stage : cascade.stages) {
    double votes = 0.0;
    for (const auto& f : stage.stumps) {
      const double v =
          feature_value(ii, ox, oy, window_scale, cascade.window_w, cascade.window_h, f);
      if (f.polarity * (v - f.threshold) > 0.0) votes += 1.0;
    }
    if (votes < stage.stage_threshold) return false;
  }
  return true;
}

Cascade default_cascade() {
  Cascade c;
  CascadeStage body;
  body.stumps = {
      {RectKind::ThreeRectH, Box{0, 0, 24, 24}, -1, -0.35},
      {RectKind::ThreeRectH, Box{0, 24, 24, 24}, -1, -0.35},
      {RectKind::TwoRectV, Box{8, 0, 8, 16}, 1, -0.45},
  };
  body.stage_threshold = 3.0;
  c.stages.push_back(std::move(body));
  return c;
}

}  // namespace hauar
