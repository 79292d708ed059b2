#pragma once

#include <array>
#include <filesystem>
#include <string>
#include <vector>

#include "hauar/model_io.hpp"
#include "hauar/synthgen.hpp"

namespace hauar {

// Rows are ground truth, columns are predictions, both in label order
// (Empty, Sit, Stand, Lie).
struct ConfusionMatrix {
  std::array<std::array<long, 4>, 4> counts{};

  void add(PoseLabel truth, PoseLabel predicted) {
    ++counts[index_of(truth)][index_of(predicted)];
  }
  long total() const;
  long correct() const;
};

// trace / total. Throws InvalidArgument for an all-zero matrix.
double accuracy(const ConfusionMatrix& m);

// Diagonal over row sums; a class with no samples reports 0.
std::array<double, 4> recalls(const ConfusionMatrix& m);

struct EvalReport {
  ConfusionMatrix matrix;
  double accuracy = 0.0;
  std::array<double, 4> recall{};
  long sample_count = 0;  // manifest entries, including skipped ones
  long skipped = 0;
  std::vector<std::string> skipped_paths;
};

struct FrameAnalysis {
  std::vector<Detection> detections;
  FrameClass result;
};

// preprocess -> detect_people -> segment_rois -> classify_frame.
FrameAnalysis analyze_frame(const Frame& raw, const ModelBundle& model,
                            const PreprocessConfig& cfg = {});

// Unreadable frames are skipped and reported. Throws InvalidArgument for an
// empty manifest.
EvalReport evaluate(const synth::DatasetManifest& manifest, const ModelBundle& model);

inline constexpr double kTrainedNmsIou = 0.25;

// Fits the detector and the pose centroids from a labelled manifest. Throws
// DataError naming the first missing class.
ModelBundle train(const synth::DatasetManifest& manifest);

std::string format_eval_report(const EvalReport& report);

}  // namespace hauar
