#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "hauar/error.hpp"
#include "hauar/pose.hpp"
#include "hauar/synthgen.hpp"
#include "support.hpp"

using namespace hauar;

namespace {

using Sample = std::pair<Eigen::VectorXd, PoseLabel>;

PoseModel toy_model(double margin = 0.15) {
  PoseModel m;
  m.empty_margin = margin;
  m.centroids[index_of(PoseLabel::Empty)] = Eigen::Vector2d(10, 10);
  m.centroids[index_of(PoseLabel::Sit)] = Eigen::Vector2d(0, 1);
  m.centroids[index_of(PoseLabel::Stand)] = Eigen::Vector2d(-1, 0);
  m.centroids[index_of(PoseLabel::Lie)] = Eigen::Vector2d(1, 0);
  return m;
}

std::vector<Sample> random_samples(std::mt19937_64& rng, int per_class, int dim) {
  std::normal_distribution<double> n(0.0, 3.0);
  std::vector<Sample> out;
  for (PoseLabel l : kAllLabels)
    for (int i = 0; i < per_class; ++i) {
      Eigen::VectorXd v(dim);
      for (int k = 0; k < dim; ++k) v[k] = n(rng) * (1 + k) + 1e8 * (k == 0);
      out.emplace_back(v, l);
    }
  return out;
}

}  // namespace

TEST_SUITE("pose") {

TEST_CASE("square silhouette has zero log aspect") {
  Frame crop(40, 40, 0);
  for (int y = 10; y < 30; ++y)
    for (int x = 10; x < 30; ++x) crop.at(x, y) = 255;
  const PoseFeature f = extract_pose_feature(crop);
  CHECK(f.log_aspect == doctest::Approx(0.0));
  CHECK(f.fill > 0.9);
  CHECK(f.fill <= 1.0);
  CHECK(f.vector().size() == 900 + 16);
}

TEST_CASE("background-only crop gives the zero feature") {
  for (std::uint8_t v : {0, 60, 255}) {
    const PoseFeature f = extract_pose_feature(Frame(32, 56, v));
    CHECK(f.fill == 0.0);
    CHECK(f.log_aspect == 0.0);
    CHECK(f.hog.isZero());
  }
  CHECK_THROWS_AS(extract_pose_feature(Frame(3, 10, 0)), InvalidArgument);
}

TEST_CASE("standing silhouettes are tall in feature space") {
  for (std::uint64_t s = 0; s < 40; ++s) {
    const auto spec = synth::sample_scene(PoseLabel::Stand, synth::Difficulty::Clean, s);
    const auto [raw, truth] = synth::render_scene(spec, s);
    const Frame f = preprocess(raw);
    const Box area = expand_clamped(truth.boxes[0], kRoiMargin, f.width(), f.height());
    const PoseFeature feat = extract_pose_feature(RoiSegment{crop(f, area), truth.boxes[0], area});
    CHECK(feat.log_aspect >= std::log(2.5));
    CHECK(feat.fill >= 0.0);
    CHECK(feat.fill <= 1.0);
  }
}

TEST_CASE("centroid training") {
  std::vector<Sample> one;
  for (PoseLabel l : kAllLabels) one.emplace_back(Eigen::Vector3d::Constant(index_of(l) + 0.5), l);
  const PoseModel m1 = train_centroids(one);
  for (PoseLabel l : kAllLabels) CHECK(m1.centroids[index_of(l)] == one[index_of(l)].first);

  std::vector<Sample> doubled = one;
  doubled.insert(doubled.end(), one.begin(), one.end());
  const PoseModel m2 = train_centroids(doubled);
  for (PoseLabel l : kAllLabels) CHECK(m2.centroids[index_of(l)] == m1.centroids[index_of(l)]);

  std::vector<Sample> no_lie(one.begin(), one.begin() + 3);
  try {
    train_centroids(no_lie);
    FAIL("expected a DataError");
  } catch (const DataError& e) {
    CHECK(std::string(e.what()).find("lie") != std::string::npos);
  }
}

TEST_CASE("centroids match a naive mean and ignore sample order") {
  std::mt19937_64 rng(77);
  auto samples = random_samples(rng, 50, 6);
  const PoseModel m = train_centroids(samples);
  for (PoseLabel l : kAllLabels) {
    for (int k = 0; k < 6; ++k) {
      long double sum = 0;
      int n = 0;
      for (const auto& [v, label] : samples)
        if (label == l) {
          sum += v[k];
          ++n;
        }
      const double mean = static_cast<double>(sum / n);
      CHECK(std::abs(m.centroids[index_of(l)][k] - mean) <= 1e-12 * std::max(1.0, std::abs(mean)));
    }
  }
  for (int trial = 0; trial < 10; ++trial) {
    std::shuffle(samples.begin(), samples.end(), rng);
    const PoseModel p = train_centroids(samples);
    for (PoseLabel l : kAllLabels) {
      const double diff = (p.centroids[index_of(l)] - m.centroids[index_of(l)]).cwiseAbs().maxCoeff();
      CHECK(diff <= 1e-12 * m.centroids[index_of(l)].cwiseAbs().maxCoeff());
    }
  }
}

TEST_CASE("nearest centroid with fixed tie order") {
  const PoseModel m = toy_model();
  const RoiClass sit = classify_roi(m, Eigen::VectorXd(Eigen::Vector2d(0, 1)));
  CHECK(sit.label == PoseLabel::Sit);
  CHECK(sit.distance == 0.0);

  // Equidistant from Stand (-1,0) and Lie (1,0).
  CHECK(classify_roi(m, Eigen::VectorXd(Eigen::Vector2d(0, -0.5))).label == PoseLabel::Stand);
  CHECK(classify_roi(m, Eigen::VectorXd(Eigen::Vector2d(0.9, 0))).label == PoseLabel::Lie);
  CHECK_THROWS_AS(classify_roi(m, Eigen::VectorXd(Eigen::Vector3d(0, 0, 0))), InvalidArgument);
}

TEST_CASE("empty margin absorbs near-empty winners") {
  PoseModel m = toy_model(0.15);
  m.centroids[index_of(PoseLabel::Empty)] = Eigen::Vector2d(0, 2);
  // Distance to Sit 0.55, to Empty 0.45: Empty is nearest outright.
  CHECK(classify_roi(m, Eigen::VectorXd(Eigen::Vector2d(0, 1.55))).label == PoseLabel::Empty);
  // Sit 0.45 vs Empty 0.55: gap 0.1 under the margin.
  CHECK(classify_roi(m, Eigen::VectorXd(Eigen::Vector2d(0, 1.45))).label == PoseLabel::Empty);
  // Sit 0.3 vs Empty 0.7: clear.
  CHECK(classify_roi(m, Eigen::VectorXd(Eigen::Vector2d(0, 1.3))).label == PoseLabel::Sit);
}

TEST_CASE("vote aggregation") {
  using L = PoseLabel;
  const auto only_empty = aggregate_votes(std::vector<L>{L::Empty});
  CHECK(only_empty.label == L::Empty);
  CHECK(only_empty.counts == std::array<int, 4>{});

  const auto sit = aggregate_votes(std::vector<L>{L::Sit, L::Sit, L::Sit, L::Stand});
  CHECK(sit.label == L::Sit);
  CHECK(sit.counts == std::array<int, 4>{0, 3, 1, 0});

  CHECK(aggregate_votes(std::vector<L>{L::Empty, L::Empty}).label == L::Empty);
  CHECK(aggregate_votes(std::vector<L>{L::Empty, L::Lie}).label == L::Lie);
  CHECK(aggregate_votes(std::vector<L>{L::Lie, L::Sit}).label == L::Sit);
  CHECK(aggregate_votes(std::vector<L>{L::Lie, L::Stand, L::Sit}).label == L::Stand);
}

TEST_CASE("aggregation never contradicts its votes") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 2000; ++trial) {
    std::vector<PoseLabel> votes(1 + rng() % 6);
    for (auto& v : votes) v = kAllLabels[rng() % 4];
    const auto r = aggregate_votes(votes);
    const int non_empty = r.counts[1] + r.counts[2] + r.counts[3];
    CHECK((r.label == PoseLabel::Empty) == (non_empty == 0));
    if (r.label != PoseLabel::Empty) {
      for (int c : r.counts) CHECK(c <= r.counts[index_of(r.label)]);
    }
  }
}

TEST_CASE("empty room false positive is absorbed") {
  const auto& model = test::clean_model();
  const Frame room = preprocess(synth::render_scene(synth::sample_scene(PoseLabel::Empty, synth::Difficulty::Clean, 3), 3).first);
  const Box fake{50, 20, 24, 48};
  const Box area = expand_clamped(fake, kRoiMargin, room.width(), room.height());
  const std::vector<RoiSegment> segs{{crop(room, area), fake, area}};
  const auto r = classify_frame(model.pose, room, segs);
  CHECK(r.label == PoseLabel::Empty);
  CHECK(r.counts == std::array<int, 4>{});
}

TEST_CASE("held-out poses classify correctly") {
  const auto& model = test::clean_model();
  for (PoseLabel label : kAllLabels) {
    for (std::uint64_t s = 9000; s < 9010; ++s) {
      const Frame f = preprocess(synth::render_scene(synth::sample_scene(label, synth::Difficulty::Clean, s), s).first);
      CHECK(classify_roi(model.pose, extract_pose_feature(f, model.pose.hog, model.pose.foreground)).label == label);
    }
  }
}

}
