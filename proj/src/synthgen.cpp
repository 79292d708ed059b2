#include "hauar/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "hauar/error.hpp"

namespace hauar::synth {

namespace {

// Silhouette primitives in figure-local units: u grows rightwards from the
// left edge of the figure box, v grows downwards and is 0 at the bottom edge.
struct Ellipse {
  double cu, cv, ru, rv;
  bool contains(double u, double v) const {
    const double du = (u - cu) / ru;
    const double dv = (v - cv) / rv;
    return du * du + dv * dv <= 1.0;
  }
};

struct Rect {
  double u0, v0, u1, v1;
  bool contains(double u, double v) const {
    return u >= u0 && u <= u1 && v >= v0 && v <= v1;
  }
};

struct Shape {
  double width;
  double height;
  std::vector<Ellipse> ellipses;
  std::vector<Rect> rects;

  bool contains(double u, double v) const {
    for (const auto& e : ellipses)
      if (e.contains(u, v)) return true;
    for (const auto& r : rects)
      if (r.contains(u, v)) return true;
    return false;
  }
};

// Standing: tall body ellipse under a round head (h/w about 3.3).
// Sitting: side profile facing right, head and torso over a horizontal thigh
// and a vertical shin (h/w about 1.3).
// Lying: long body ellipse with the head at the left end (h/w about 0.23).
const Shape& shape_of(Pose pose) {
  static const Shape stand{18.0, 60.0,
                           {{9.0, -25.0, 9.0, 25.0}, {9.0, -54.5, 5.5, 5.5}},
                           {}};
  static const Shape sit{24.0, 32.0,
                         {{5.0, -27.0, 5.0, 5.0}},
                         {{0.0, -23.0, 10.0, -7.0},
                          {0.0, -13.0, 23.0, -6.0},
                          {17.0, -13.0, 24.0, 0.0}}};
  static const Shape lie{60.0, 14.0,
                         {{6.0, -8.0, 6.0, 6.0}, {34.0, -7.0, 26.0, 7.0}},
                         {}};
  switch (pose) {
    case Pose::Sit: return sit;
    case Pose::Stand: return stand;
    case Pose::Lie: return lie;
  }
  return stand;
}

// Portion of the figure that stays visible when visible_fraction < 1, in
// local units. Standing figures lose a vertical strip on the side facing the
// nearest frame edge, lying figures lose their lower band, sitting figures
// lose the front/lower corner. Each cut keeps the pose's aspect class.
Rect visible_window(const FigureSpec& f, const Shape& s) {
  const double frac = f.visible_fraction;
  Rect keep{0.0, -s.height, s.width, 0.0};
  if (frac >= 1.0) return keep;
  switch (f.pose) {
    case Pose::Stand:
      if (f.anchor_x < kSceneWidth / 2.0) {
        keep.u0 = s.width * (1.0 - frac);
      } else {
        keep.u1 = s.width * frac;
      }
      break;
    case Pose::Lie:
      keep.v1 = -s.height + s.height * frac;
      break;
    case Pose::Sit: {
      const double side = std::sqrt(frac);
      keep.u1 = s.width * side;
      keep.v1 = -s.height + s.height * side;
      break;
    }
  }
  return keep;
}

void validate(const SceneSpec& spec) {
  if (!(spec.illumination_gain > 0.0)) {
    throw InvalidArgument("illumination_gain must be positive");
  }
  if (!(spec.noise_sigma >= 0.0)) {
    throw InvalidArgument("noise_sigma must be non-negative");
  }
  if (!(spec.background_level >= 0.0 && spec.background_level <= 255.0)) {
    throw InvalidArgument("background_level must be within [0, 255]");
  }
  for (const auto& f : spec.figures) {
    if (!(f.scale >= 0.5 && f.scale <= 1.5)) {
      throw InvalidArgument("figure scale must be within [0.5, 1.5]");
    }
    if (!(f.visible_fraction > 0.0 && f.visible_fraction <= 1.0)) {
      throw InvalidArgument("visible_fraction must be within (0, 1]");
    }
  }
  for (std::size_t i = 0; i < spec.figures.size(); ++i) {
    for (std::size_t j = i + 1; j < spec.figures.size(); ++j) {
      if (iou(figure_extent(spec.figures[i]), figure_extent(spec.figures[j])) > 0.5) {
        throw InvalidArgument("figures overlap by more than 0.5 IoU");
      }
    }
  }
}

PoseLabel scene_label(const std::vector<FigureSpec>& figures) {
  if (figures.empty()) return PoseLabel::Empty;
  std::array<int, 3> votes{};
  for (const auto& f : figures) ++votes[static_cast<std::size_t>(f.pose)];
  // Majority; ties resolved Stand > Sit > Lie.
  Pose best = Pose::Stand;
  for (Pose p : {Pose::Sit, Pose::Lie}) {
    if (votes[static_cast<std::size_t>(p)] > votes[static_cast<std::size_t>(best)]) {
      best = p;
    }
  }
  return to_label(best);
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

}  // namespace

PoseLabel to_label(Pose pose) {
  switch (pose) {
    case Pose::Sit: return PoseLabel::Sit;
    case Pose::Stand: return PoseLabel::Stand;
    case Pose::Lie: return PoseLabel::Lie;
  }
  return PoseLabel::Empty;
}

Box figure_extent(const FigureSpec& figure) {
  const Shape& s = shape_of(figure.pose);
  const double w = s.width * figure.scale;
  const double h = s.height * figure.scale;
  const double left = figure.anchor_x - w / 2.0;
  const double top = figure.anchor_y - h;
  const int x0 = static_cast<int>(std::floor(left));
  const int y0 = static_cast<int>(std::floor(top));
  const int x1 = static_cast<int>(std::ceil(left + w));
  const int y1 = static_cast<int>(std::ceil(figure.anchor_y));
  return Box{x0, y0, x1 - x0, y1 - y0};
}

std::pair<Frame, GroundTruth> render_scene(const SceneSpec& spec, std::uint64_t seed) {
  validate(spec);
  const double bg = spec.background_level;
  const double fg = std::min(255.0, bg + kFigureContrast);

  Plane<double> base = Plane<double>::Constant(kSceneHeight, kSceneWidth, bg);
  GroundTruth truth;
  truth.label = scene_label(spec.figures);

  for (const auto& f : spec.figures) {
    const Shape& s = shape_of(f.pose);
    const Rect keep = visible_window(f, s);
    const double left = f.anchor_x - s.width * f.scale / 2.0;
    int x0 = kSceneWidth, y0 = kSceneHeight, x1 = -1, y1 = -1;
    for (int y = 0; y < kSceneHeight; ++y) {
      const double v = (y + 0.5 - f.anchor_y) / f.scale;
      if (v < -s.height || v > 0.0) continue;
      for (int x = 0; x < kSceneWidth; ++x) {
        const double u = (x + 0.5 - left) / f.scale;
        if (!keep.contains(u, v) || !s.contains(u, v)) continue;
        base(y, x) = fg;
        x0 = std::min(x0, x);
        y0 = std::min(y0, y);
        x1 = std::max(x1, x);
        y1 = std::max(y1, y);
      }
    }
    if (x1 < 0) throw InvalidArgument("figure placed entirely outside frame");
    truth.boxes.push_back(Box{x0, y0, x1 - x0 + 1, y1 - y0 + 1});
  }

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, 1.0);
  Raster px(kSceneHeight, kSceneWidth);
  for (Eigen::Index i = 0; i < base.size(); ++i) {
    double value = base.data()[i];
    if (spec.noise_sigma > 0.0) value += spec.noise_sigma * noise(rng);
    value *= spec.illumination_gain;
    px.data()[i] = static_cast<std::uint8_t>(std::clamp(std::lround(value), 0L, 255L));
  }
  return {Frame(std::move(px)), std::move(truth)};
}

Difficulty parse_difficulty(const std::string& name) {
  if (name == "clean") return Difficulty::Clean;
  if (name == "noisy") return Difficulty::Noisy;
  throw InvalidArgument("difficulty must be clean or noisy, got '" + name + "'");
}

namespace {

FigureSpec place_full(Pose pose, double scale, std::mt19937_64& rng) {
  const Shape& s = shape_of(pose);
  const double w = s.width * scale;
  const double h = s.height * scale;
  FigureSpec f;
  f.pose = pose;
  f.scale = scale;
  f.anchor_x = uniform(rng, w / 2.0 + 2.0, kSceneWidth - w / 2.0 - 2.0);
  f.anchor_y = uniform(rng, h + 2.0, kSceneHeight - 2.0);
  return f;
}

// Figure cut by a frame edge so that the kept part touches that edge.
FigureSpec place_partial(Pose pose, double scale, double frac, std::mt19937_64& rng) {
  const Shape& s = shape_of(pose);
  const double w = s.width * scale;
  const double h = s.height * scale;
  FigureSpec f = place_full(pose, scale, rng);
  f.visible_fraction = frac;
  switch (pose) {
    case Pose::Stand: {
      const bool left_edge = rng() % 2 == 0;
      const double left = left_edge ? -w * (1.0 - frac) : kSceneWidth - w * frac;
      f.anchor_x = left + w / 2.0;
      break;
    }
    case Pose::Lie:
      f.anchor_y = kSceneHeight + h * (1.0 - frac);
      break;
    case Pose::Sit: {
      const double side = std::sqrt(frac);
      f.anchor_x = kSceneWidth - w * side + w / 2.0;
      f.anchor_y = kSceneHeight + h * (1.0 - side);
      break;
    }
  }
  return f;
}

Pose pose_of(PoseLabel label) {
  switch (label) {
    case PoseLabel::Sit: return Pose::Sit;
    case PoseLabel::Lie: return Pose::Lie;
    default: return Pose::Stand;
  }
}

}  // namespace

SceneSpec sample_scene(PoseLabel label, Difficulty difficulty, std::uint64_t sample_seed) {
  std::mt19937_64 rng(sample_seed ^ 0x9e3779b97f4a7c15ULL);
  SceneSpec spec;
  spec.background_level = uniform(rng, 40.0, 100.0);
  if (difficulty == Difficulty::Clean) {
    spec.noise_sigma = uniform(rng, 2.0, 4.0);
    spec.illumination_gain = uniform(rng, 0.9, 1.1);
    if (label != PoseLabel::Empty) {
      spec.figures.push_back(place_full(pose_of(label), uniform(rng, 0.8, 1.2), rng));
    }
    return spec;
  }

  spec.noise_sigma = uniform(rng, 4.0, 20.0);
  spec.illumination_gain = uniform(rng, 0.6, 1.4);
  if (label == PoseLabel::Empty) return spec;

  const Pose pose = pose_of(label);
  const double mode = uniform(rng, 0.0, 1.0);
  if (mode < 0.5) {
    spec.figures.push_back(place_full(pose, uniform(rng, 0.7, 1.3), rng));
  } else if (mode < 0.75) {
    const double frac = uniform(rng, 0.5, 0.95);
    spec.figures.push_back(place_partial(pose, uniform(rng, 0.7, 1.3), frac, rng));
  } else {
    // Two people in the same pose, kept apart so their silhouettes never touch.
    const double scale = uniform(rng, 0.7, 1.0);
    const FigureSpec first = place_full(pose, scale, rng);
    spec.figures.push_back(first);
    const Box a = expand_clamped(figure_extent(first), 6, 1 << 20, 1 << 20);
    for (int attempt = 0; attempt < 200; ++attempt) {
      const FigureSpec second = place_full(pose, scale, rng);
      if (intersect(a, figure_extent(second)).empty()) {
        spec.figures.push_back(second);
        break;
      }
    }
  }
  return spec;
}

DatasetManifest generate_dataset(const std::array<int, 4>& counts, Difficulty difficulty,
                                 std::uint64_t seed, const std::filesystem::path& out_dir) {
  for (int c : counts) {
    if (c < 0) throw InvalidArgument("dataset counts must be non-negative");
  }
  std::error_code ec;
  std::filesystem::create_directories(out_dir / "frames", ec);
  if (ec) throw DataError("cannot create " + (out_dir / "frames").string() + ": " + ec.message());

  DatasetManifest manifest;
  manifest.base_dir = out_dir;
  std::uint64_t index = 0;
  for (PoseLabel label : kAllLabels) {
    for (int k = 0; k < counts[index_of(label)]; ++k, ++index) {
      const std::uint64_t sample_seed = seed + index;
      const SceneSpec spec = sample_scene(label, difficulty, sample_seed);
      const auto [frame, truth] = render_scene(spec, sample_seed);
      char name[64];
      std::snprintf(name, sizeof name, "frames/%06llu_%s.pgm",
                    static_cast<unsigned long long>(index),
                    std::string(to_string(label)).c_str());
      write_pgm_file(out_dir / name, frame);
      manifest.entries.push_back({name, truth.label});
      ++manifest.counts[index_of(truth.label)];
    }
  }

  std::ofstream out(out_dir / kManifestName, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write manifest in " + out_dir.string());
  out << format_manifest(manifest);
  if (!out) throw DataError("manifest write failed in " + out_dir.string());
  return manifest;
}

std::string format_manifest(const DatasetManifest& manifest) {
  std::string text = std::string(kManifestHeader) + "\n";
  for (const auto& e : manifest.entries) {
    text += e.path;
    text += ',';
    text += to_string(e.label);
    text += '\n';
  }
  return text;
}

DatasetManifest parse_manifest(const std::string& text, const std::filesystem::path& base_dir) {
  DatasetManifest manifest;
  manifest.base_dir = base_dir;
  std::istringstream in(text);
  std::string line;
  bool header_seen = false;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (!header_seen) {
      if (line != kManifestHeader) {
        throw DataError("manifest missing '" + std::string(kManifestHeader) + "' header");
      }
      header_seen = true;
      continue;
    }
    if (line.front() == '#') continue;
    const auto comma = line.rfind(',');
    if (comma == std::string::npos || comma == 0) {
      throw DataError("manifest line " + std::to_string(line_no) + ": expected path,label");
    }
    ManifestEntry entry{line.substr(0, comma), parse_label(line.substr(comma + 1))};
    ++manifest.counts[index_of(entry.label)];
    manifest.entries.push_back(std::move(entry));
  }
  if (!header_seen) throw DataError("manifest is empty");
  return manifest;
}

DatasetManifest read_manifest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open manifest " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_manifest(buf.str(), path.parent_path());
}

}  // namespace hauar::synth
