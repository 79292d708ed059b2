#include "hauar/detect.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "hauar/error.hpp"
#include "hauar/foreground.hpp"
#include "hauar/integral.hpp"

namespace hauar {

void validate(const DetectorModel& model) {
  validate(model.cascade);
  if (model.stride <= 0) throw InvalidArgument("detector stride must be positive");
  if (model.scale_levels <= 0) throw InvalidArgument("detector needs at least one scale level");
  if (!(model.scale_factor > 0.0 && model.scale_factor <= 1.0)) {
    throw InvalidArgument("detector scale factor must be within (0, 1]");
  }
  if (!(model.nms_iou >= 0.0 && model.nms_iou <= 1.0)) {
    throw InvalidArgument("nms_iou must be within [0, 1]");
  }
  if (model.weights.size() != hog_length(model.window_w(), model.window_h(), model.hog)) {
    throw InvalidArgument("detector weights do not match the window descriptor length");
  }
}

double score_window(const Eigen::VectorXd& descriptor, const DetectorModel& model) {
  if (descriptor.size() != model.weights.size()) {
    throw InvalidArgument("descriptor length does not match detector weights");
  }
  return model.weights.dot(descriptor) + model.bias;
}

std::vector<Detection> nms(std::vector<Detection> dets, double iou_threshold) {
  if (!(iou_threshold >= 0.0 && iou_threshold <= 1.0)) {
    throw InvalidArgument("iou_threshold must be within [0, 1]");
  }
  std::stable_sort(dets.begin(), dets.end(), [](const Detection& a, const Detection& b) {
    if (a.score != b.score) return a.score > b.score;
    if (a.box.x != b.box.x) return a.box.x < b.box.x;
    return a.box.y < b.box.y;
  });
  std::vector<Detection> kept;
  for (const auto& d : dets) {
    const bool suppressed = std::any_of(kept.begin(), kept.end(), [&](const Detection& k) {
      return iou(k.box, d.box) > iou_threshold;
    });
    if (!suppressed) kept.push_back(d);
  }
  return kept;
}

namespace {

struct Level {
  Frame frame;
  double fx = 1.0;  // scaled width / original width
  double fy = 1.0;
};

std::vector<Level> pyramid(const Frame& frame, const DetectorModel& model) {
  std::vector<Level> levels;
  double f = 1.0;
  for (int l = 0; l < model.scale_levels; ++l, f *= model.scale_factor) {
    const int w = static_cast<int>(std::lround(frame.width() * f));
    const int h = static_cast<int>(std::lround(frame.height() * f));
    if (w < model.window_w() || h < model.window_h()) break;
    Level level;
    level.frame = resize_bilinear(frame, w, h);
    level.fx = static_cast<double>(w) / frame.width();
    level.fy = static_cast<double>(h) / frame.height();
    levels.push_back(std::move(level));
  }
  return levels;
}

Box to_frame_box(const Level& level, int x, int y, const DetectorModel& model, int fw, int fh) {
  const int x0 = std::clamp(static_cast<int>(std::lround(x / level.fx)), 0, fw - 1);
  const int y0 = std::clamp(static_cast<int>(std::lround(y / level.fy)), 0, fh - 1);
  const int x1 = std::clamp(static_cast<int>(std::lround((x + model.window_w()) / level.fx)), x0 + 1, fw);
  const int y1 = std::clamp(static_cast<int>(std::lround((y + model.window_h()) / level.fy)), y0 + 1, fh);
  return Box{x0, y0, x1 - x0, y1 - y0};
}

}  // namespace

std::vector<Detection> detect_people(const Frame& frame, const DetectorModel& model) {
  validate(model);
  std::vector<Detection> candidates;
  for (const Level& level : pyramid(frame, model)) {
    const IntegralImage ii(level.frame);
    const int sw = level.frame.width();
    const int sh = level.frame.height();
    for (int y = 0; y + model.window_h() <= sh; y += model.stride) {
      for (int x = 0; x + model.window_w() <= sw; x += model.stride) {
        if (!eval_cascade(ii, x, y, 1.0, model.cascade)) continue;
        const Box window{x, y, model.window_w(), model.window_h()};
        const double score = score_window(hog_descriptor(level.frame, window, model.hog), model);
        if (score < model.score_threshold) continue;
        candidates.push_back({to_frame_box(level, x, y, model, frame.width(), frame.height()), score});
      }
    }
  }
  return nms(std::move(candidates), model.nms_iou);
}

std::vector<RoiSegment> segment_rois(const Frame& frame, const std::vector<Detection>& dets) {
  std::vector<RoiSegment> out;
  out.reserve(dets.size());
  for (const auto& d : dets) {
    const Box area = expand_clamped(d.box, kRoiMargin, frame.width(), frame.height());
    if (area.empty()) throw InvalidArgument("detection outside frame");
    out.push_back({crop(frame, area), d.box, area});
  }
  return out;
}

namespace {

// Window of the model's size centred on (cx, cy), shifted to fit the frame.
Box centred_window(const Frame& frame, const DetectorModel& model, double cx, double cy) {
  const int x = std::clamp(static_cast<int>(std::lround(cx - model.window_w() / 2.0)), 0,
                           frame.width() - model.window_w());
  const int y = std::clamp(static_cast<int>(std::lround(cy - model.window_h() / 2.0)), 0,
                           frame.height() - model.window_h());
  return Box{x, y, model.window_w(), model.window_h()};
}

Box random_window(const Frame& frame, const DetectorModel& model, std::mt19937_64& rng) {
  const int nx = (frame.width() - model.window_w()) / model.stride + 1;
  const int ny = (frame.height() - model.window_h()) / model.stride + 1;
  const int x = static_cast<int>(rng() % static_cast<std::uint64_t>(nx)) * model.stride;
  const int y = static_cast<int>(rng() % static_cast<std::uint64_t>(ny)) * model.stride;
  return Box{x, y, model.window_w(), model.window_h()};
}

struct MeanAccumulator {
  Eigen::VectorXd sum;
  long count = 0;
  void add(const Eigen::VectorXd& v) {
    if (count == 0) sum = Eigen::VectorXd::Zero(v.size());
    sum += v;
    ++count;
  }
  Eigen::VectorXd mean() const { return sum / static_cast<double>(count); }
};

}  // namespace

DetectorModel train_detector(const std::vector<DetectorSample>& samples, DetectorModel base) {
  base.weights = Eigen::VectorXd::Zero(hog_length(base.window_w(), base.window_h(), base.hog));
  validate(base);
  MeanAccumulator person;
  MeanAccumulator background;
  std::mt19937_64 rng(0x5eedULL);

  for (const auto& sample : samples) {
    if (sample.frame == nullptr) throw InvalidArgument("detector sample without frame");
    const auto levels = pyramid(*sample.frame, base);
    const auto blobs = foreground_blobs(*sample.frame);
    switch (sample.label) {
      case PoseLabel::Stand:
        for (const Blob& blob : blobs) {
          if (blob.box.h < 2 * blob.box.w) continue;
          // Pyramid level whose window height best matches the silhouette.
          std::size_t best = 0;
          double best_err = 1e300;
          for (std::size_t l = 0; l < levels.size(); ++l) {
            const double err = std::abs(blob.box.h * levels[l].fy - base.window_h());
            if (err < best_err) {
              best_err = err;
              best = l;
            }
          }
          const Level& level = levels[best];
          const double cx = (blob.box.x + blob.box.w / 2.0) * level.fx;
          const double cy = (blob.box.y + blob.box.h / 2.0) * level.fy;
          for (int dy = -4; dy <= 4; dy += 4) {
            for (int dx = -4; dx <= 4; dx += 4) {
              const Box w = centred_window(level.frame, base, cx + dx, cy + dy);
              person.add(hog_descriptor(level.frame, w, base.hog));
            }
          }
          // Half-body windows teach the scorer to peak on the whole figure.
          const double half_h = base.window_h() / 2.0;
          const double two_thirds_w = base.window_w() * 2.0 / 3.0;
          for (const auto& [ox, oy] : {std::pair{0.0, -half_h}, {0.0, half_h},
                                       {-two_thirds_w, 0.0}, {two_thirds_w, 0.0}}) {
            const Box w = centred_window(level.frame, base, cx + ox, cy + oy);
            if (iou(w, centred_window(level.frame, base, cx, cy)) < 0.5) {
              background.add(hog_descriptor(level.frame, w, base.hog));
            }
          }
        }
        break;
      case PoseLabel::Empty:
        for (int k = 0; k < 6; ++k) {
          const Level& level = levels[static_cast<std::size_t>(k) % levels.size()];
          background.add(hog_descriptor(level.frame, random_window(level.frame, base, rng), base.hog));
        }
        break;
      case PoseLabel::Sit:
      case PoseLabel::Lie:
        for (const Blob& blob : blobs) {
          for (const Level& level : levels) {
            const double cx = (blob.box.x + blob.box.w / 2.0) * level.fx;
            const double cy = (blob.box.y + blob.box.h / 2.0) * level.fy;
            background.add(hog_descriptor(level.frame, centred_window(level.frame, base, cx, cy), base.hog));
          }
        }
        for (int k = 0; k < 2; ++k) {
          const Level& level = levels[static_cast<std::size_t>(k) % levels.size()];
          background.add(hog_descriptor(level.frame, random_window(level.frame, base, rng), base.hog));
        }
        break;
    }
  }
  if (person.count == 0) throw DataError("detector training found no person windows (no usable stand frames)");
  if (background.count == 0) throw DataError("detector training found no background windows");

  const Eigen::VectorXd mu_p = person.mean();
  const Eigen::VectorXd mu_b = background.mean();
  base.weights = mu_p - mu_b;
  base.bias = -base.weights.dot(mu_p + mu_b) / 2.0;
  return base;
}

}  // namespace hauar
