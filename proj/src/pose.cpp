#include "hauar/pose.hpp"

#include <cmath>
#include <string>

#include "hauar/error.hpp"

namespace hauar {

Eigen::VectorXd PoseFeature::vector() const {
  Eigen::VectorXd v(hog.size() + 2 * kShapeRepeat);
  v.head(hog.size()) = hog;
  v.segment(hog.size(), kShapeRepeat).setConstant(log_aspect);
  v.tail(kShapeRepeat).setConstant(fill);
  return v;
}

PoseFeature extract_pose_feature(const Frame& crop, const HogConfig& hog,
                                 const ForegroundConfig& fg) {
  if (crop.width() < 4 || crop.height() < 4) {
    throw InvalidArgument("pose segment smaller than 4x4");
  }
  PoseFeature feature;
  const auto blobs = foreground_blobs(crop, fg);
  if (blobs.empty()) {
    feature.hog = Eigen::VectorXd::Zero(hog_length(kPoseCropSize, kPoseCropSize, hog));
    return feature;
  }
  const Blob& blob = blobs.front();
  Frame silhouette(blob.box.w, blob.box.h, 0);
  for (std::uint32_t idx : blob.pixels) {
    const int x = static_cast<int>(idx % static_cast<std::uint32_t>(crop.width()));
    const int y = static_cast<int>(idx / static_cast<std::uint32_t>(crop.width()));
    silhouette.at(x - blob.box.x, y - blob.box.y) = 255;
  }
  const Frame resized = resize_bilinear(silhouette, kPoseCropSize, kPoseCropSize);
  feature.hog = hog_descriptor(resized, Box{0, 0, kPoseCropSize, kPoseCropSize}, hog);
  feature.log_aspect = std::log(static_cast<double>(blob.box.h) / blob.box.w);
  feature.fill = static_cast<double>(blob.area) / static_cast<double>(blob.box.area());
  return feature;
}

PoseFeature extract_pose_feature(const RoiSegment& segment, const HogConfig& hog,
                                 const ForegroundConfig& fg) {
  return extract_pose_feature(segment.crop, hog, fg);
}

void validate(const PoseModel& model) {
  const Eigen::Index dim = model.centroids[0].size();
  if (dim == 0) throw InvalidArgument("pose model has no centroids");
  for (const auto& c : model.centroids) {
    if (c.size() != dim) throw InvalidArgument("pose centroids differ in dimension");
  }
}

PoseModel train_centroids(std::span<const std::pair<Eigen::VectorXd, PoseLabel>> samples,
                          PoseModel base) {
  std::array<Eigen::VectorXd, 4> sum;
  std::array<Eigen::VectorXd, 4> comp;
  std::array<long, 4> count{};
  Eigen::Index dim = -1;
  for (const auto& [feature, label] : samples) {
    if (dim < 0) dim = feature.size();
    if (feature.size() != dim) throw InvalidArgument("pose samples differ in dimension");
    const std::size_t k = index_of(label);
    if (count[k] == 0) {
      sum[k] = Eigen::VectorXd::Zero(dim);
      comp[k] = Eigen::VectorXd::Zero(dim);
    }
    // Neumaier summation keeps the mean independent of sample order.
    for (Eigen::Index i = 0; i < dim; ++i) {
      const double x = feature[i];
      const double t = sum[k][i] + x;
      if (std::abs(sum[k][i]) >= std::abs(x)) {
        comp[k][i] += (sum[k][i] - t) + x;
      } else {
        comp[k][i] += (x - t) + sum[k][i];
      }
      sum[k][i] = t;
    }
    ++count[k];
  }
  for (PoseLabel label : kAllLabels) {
    const std::size_t k = index_of(label);
    if (count[k] == 0) {
      throw DataError("no training samples for class '" + std::string(to_string(label)) + "'");
    }
    base.centroids[k] = (sum[k] + comp[k]) / static_cast<double>(count[k]);
  }
  return base;
}

RoiClass classify_roi(const PoseModel& model, const Eigen::VectorXd& feature) {
  validate(model);
  if (feature.size() != model.dimension()) {
    throw InvalidArgument("pose feature dimension does not match the model");
  }
  std::array<double, 4> dist{};
  for (PoseLabel label : kAllLabels) {
    dist[index_of(label)] = (feature - model.centroids[index_of(label)]).norm();
  }
  PoseLabel best = PoseLabel::Empty;
  for (PoseLabel label : kAllLabels) {
    if (dist[index_of(label)] < dist[index_of(best)]) best = label;
  }
  const double empty = dist[index_of(PoseLabel::Empty)];
  if (best != PoseLabel::Empty && empty - dist[index_of(best)] < model.empty_margin) {
    return {PoseLabel::Empty, empty};
  }
  return {best, dist[index_of(best)]};
}

RoiClass classify_roi(const PoseModel& model, const PoseFeature& feature) {
  return classify_roi(model, feature.vector());
}

FrameClass aggregate_votes(std::span<const PoseLabel> votes) {
  FrameClass out;
  for (PoseLabel v : votes) {
    if (v != PoseLabel::Empty) ++out.counts[index_of(v)];
  }
  PoseLabel best = PoseLabel::Empty;
  int best_count = 0;
  for (PoseLabel label : {PoseLabel::Stand, PoseLabel::Sit, PoseLabel::Lie}) {
    if (out.counts[index_of(label)] > best_count) {
      best = label;
      best_count = out.counts[index_of(label)];
    }
  }
  out.label = best;
  return out;
}

FrameClass classify_frame(const PoseModel& model, const Frame& frame,
                          const std::vector<RoiSegment>& segments) {
  std::vector<PoseLabel> votes;
  votes.reserve(segments.size() + 1);
  votes.push_back(classify_roi(model, extract_pose_feature(frame, model.hog, model.foreground)).label);
  for (const auto& s : segments) {
    votes.push_back(classify_roi(model, extract_pose_feature(s, model.hog, model.foreground)).label);
  }
  return aggregate_votes(votes);
}

}  // namespace hauar
