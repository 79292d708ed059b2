#include "hauar/eval.hpp"

#include <cstdio>

#include "hauar/error.hpp"
#include "json.hpp"

namespace hauar {

long ConfusionMatrix::total() const {
  long t = 0;
  for (const auto& row : counts)
    for (long c : row) t += c;
  return t;
}

long ConfusionMatrix::correct() const {
  long t = 0;
  for (std::size_t i = 0; i < 4; ++i) t += counts[i][i];
  return t;
}

double accuracy(const ConfusionMatrix& m) {
  const long total = m.total();
  if (total <= 0) throw InvalidArgument("accuracy of an empty confusion matrix");
  return static_cast<double>(m.correct()) / static_cast<double>(total);
}

std::array<double, 4> recalls(const ConfusionMatrix& m) {
  std::array<double, 4> r{};
  for (std::size_t i = 0; i < 4; ++i) {
    long row = 0;
    for (long c : m.counts[i]) row += c;
    r[i] = row > 0 ? static_cast<double>(m.counts[i][i]) / row : 0.0;
  }
  return r;
}

FrameAnalysis analyze_frame(const Frame& raw, const ModelBundle& model, const PreprocessConfig& cfg) {
  const Frame frame = preprocess(raw, cfg);
  FrameAnalysis out;
  out.detections = detect_people(frame, model.detector);
  out.result = classify_frame(model.pose, frame, segment_rois(frame, out.detections));
  return out;
}

EvalReport evaluate(const synth::DatasetManifest& manifest, const ModelBundle& model) {
  if (manifest.entries.empty()) throw InvalidArgument("cannot evaluate an empty manifest");
  EvalReport report;
  report.sample_count = static_cast<long>(manifest.entries.size());
  for (const auto& entry : manifest.entries) {
    Frame frame;
    try {
      frame = read_pgm_file(manifest.resolve(entry));
    } catch (const DataError&) {
      ++report.skipped;
      report.skipped_paths.push_back(entry.path);
      continue;
    }
    report.matrix.add(entry.label, analyze_frame(frame, model).result.label);
  }
  if (report.matrix.total() == 0) throw DataError("no readable frames in manifest");
  report.accuracy = accuracy(report.matrix);
  report.recall = recalls(report.matrix);
  return report;
}

ModelBundle train(const synth::DatasetManifest& manifest) {
  for (PoseLabel label : kAllLabels) {
    if (manifest.counts[index_of(label)] == 0) {
      throw DataError("training manifest has no samples for class '" +
                      std::string(to_string(label)) + "'");
    }
  }
  std::vector<Frame> frames;
  frames.reserve(manifest.entries.size());
  for (const auto& entry : manifest.entries) {
    frames.push_back(preprocess(read_pgm_file(manifest.resolve(entry))));
  }

  ModelBundle model;
  // Offset windows on one silhouette overlap by 0.3 to 0.4 IoU; suppressing
  // at 0.25 leaves one box per person on the synthetic splits.
  model.detector.nms_iou = kTrainedNmsIou;
  std::vector<DetectorSample> det_samples;
  det_samples.reserve(frames.size());
  for (std::size_t i = 0; i < frames.size(); ++i) {
    det_samples.push_back({&frames[i], manifest.entries[i].label});
  }
  model.detector = train_detector(det_samples, model.detector);

  std::vector<std::pair<Eigen::VectorXd, PoseLabel>> pose_samples;
  pose_samples.reserve(frames.size());
  for (std::size_t i = 0; i < frames.size(); ++i) {
    const PoseFeature f = extract_pose_feature(frames[i], model.pose.hog, model.pose.foreground);
    pose_samples.emplace_back(f.vector(), manifest.entries[i].label);
  }
  model.pose = train_centroids(pose_samples, model.pose);
  return model;
}

std::string format_eval_report(const EvalReport& r) {
  nlohmann::ordered_json j;
  j["format"] = "hauar-eval-report";
  j["version"] = 1;
  j["matrix_axes"] = "rows=truth, columns=prediction";
  j["labels"] = {"empty", "sit", "stand", "lie"};
  j["matrix"] = nlohmann::ordered_json::array();
  for (const auto& row : r.matrix.counts) j["matrix"].push_back(row);
  j["accuracy"] = r.accuracy;
  char shown[16];
  std::snprintf(shown, sizeof shown, "%.4f", r.accuracy);
  j["accuracy_display"] = shown;
  j["recall"] = r.recall;
  j["sample_count"] = r.sample_count;
  j["skipped"] = r.skipped;
  j["skipped_paths"] = r.skipped_paths;
  return j.dump(2) + "\n";
}

}  // namespace hauar
