#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "hauar/frame.hpp"
#include "hauar/geometry.hpp"
#include "hauar/labels.hpp"

namespace hauar::synth {

inline constexpr int kSceneWidth = 128;
inline constexpr int kSceneHeight = 96;
// Figures are rendered this many intensity levels above the background.
inline constexpr int kFigureContrast = 110;

enum class Pose { Sit, Stand, Lie };

PoseLabel to_label(Pose pose);

// One person silhouette. (anchor_x, anchor_y) is the horizontal centre and
// the bottom edge of the unclipped figure box.
struct FigureSpec {
  Pose pose = Pose::Stand;
  double anchor_x = 64.0;
  double anchor_y = 80.0;
  double scale = 1.0;             // [0.5, 1.5]
  double visible_fraction = 1.0;  // (0, 1]
};

struct SceneSpec {
  std::vector<FigureSpec> figures;
  double background_level = 70.0;
  double noise_sigma = 0.0;
  double illumination_gain = 1.0;
};

struct GroundTruth {
  PoseLabel label = PoseLabel::Empty;
  std::vector<Box> boxes;
};

// Unclipped figure extent at the given anchor and scale.
Box figure_extent(const FigureSpec& figure);

// Renders a 128x96 scene. Deterministic in (spec, seed). Throws
// InvalidArgument when a figure lands entirely outside the frame, when two
// figures overlap by more than 0.5 IoU, or when a field is out of range.
std::pair<Frame, GroundTruth> render_scene(const SceneSpec& spec,
                                           std::uint64_t seed);

enum class Difficulty { Clean, Noisy };

Difficulty parse_difficulty(const std::string& name);

struct ManifestEntry {
  std::string path;  // relative to the manifest's directory
  PoseLabel label = PoseLabel::Empty;
};

struct DatasetManifest {
  std::vector<ManifestEntry> entries;
  std::array<int, 4> counts{};
  std::filesystem::path base_dir;  // directory relative paths resolve against

  std::filesystem::path resolve(const ManifestEntry& e) const {
    return base_dir / e.path;
  }
};

inline constexpr const char* kManifestHeader = "#hauar-manifest v1";
inline constexpr const char* kManifestName = "manifest.txt";

// Scene parameters for sample `index` of a dataset. Exposed so tests and the
// simulator can reuse the sampling policy without touching the filesystem.
SceneSpec sample_scene(PoseLabel label, Difficulty difficulty,
                       std::uint64_t sample_seed);

// Writes frames/<index>_<label>.pgm and manifest.txt into out_dir. Sample i
// uses seed + i. Labels are laid out in the fixed label order.
DatasetManifest generate_dataset(const std::array<int, 4>& counts,
                                 Difficulty difficulty, std::uint64_t seed,
                                 const std::filesystem::path& out_dir);

std::string format_manifest(const DatasetManifest& manifest);
DatasetManifest parse_manifest(const std::string& text,
                               const std::filesystem::path& base_dir);
DatasetManifest read_manifest(const std::filesystem::path& path);

}  // namespace hauar::synth
