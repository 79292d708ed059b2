#include "hauar/model_io.hpp"

#include <fstream>
#include <sstream>

#include "hauar/error.hpp"
#include "json.hpp"

namespace hauar {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

constexpr const char* kFormat = "hauar-model";
constexpr int kVersion = 1;

const char* kind_name(RectKind k) {
  switch (k) {
    case RectKind::TwoRectH: return "two_rect_h";
    case RectKind::TwoRectV: return "two_rect_v";
    case RectKind::ThreeRectH: return "three_rect_h";
  }
  return "two_rect_h";
}

RectKind parse_kind(const std::string& s) {
  if (s == "two_rect_h") return RectKind::TwoRectH;
  if (s == "two_rect_v") return RectKind::TwoRectV;
  if (s == "three_rect_h") return RectKind::ThreeRectH;
  throw DataError("unknown cascade feature kind '" + s + "'");
}

ordered_json vec_json(const Eigen::VectorXd& v) {
  return ordered_json(std::vector<double>(v.data(), v.data() + v.size()));
}

Eigen::VectorXd json_vec(const json& j) {
  const auto v = j.get<std::vector<double>>();
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

ordered_json hog_json(const HogConfig& h) {
  ordered_json j;
  j["cell"] = h.cell;
  j["block"] = h.block;
  j["bins"] = h.bins;
  j["block_stride"] = h.block_stride;
  j["clip"] = h.clip;
  j["epsilon"] = h.epsilon;
  return j;
}

HogConfig json_hog(const json& j) {
  HogConfig h;
  h.cell = j.at("cell").get<int>();
  h.block = j.at("block").get<int>();
  h.bins = j.at("bins").get<int>();
  h.block_stride = j.at("block_stride").get<int>();
  h.clip = j.at("clip").get<double>();
  h.epsilon = j.at("epsilon").get<double>();
  return h;
}

}  // namespace

std::string serialize_model(const ModelBundle& model) {
  const DetectorModel& d = model.detector;
  const PoseModel& p = model.pose;

  ordered_json det;
  det["window"] = {d.window_w(), d.window_h()};
  det["stride"] = d.stride;
  det["scale_factor"] = d.scale_factor;
  det["scale_levels"] = d.scale_levels;
  det["nms_iou"] = d.nms_iou;
  det["score_threshold"] = d.score_threshold;
  det["hog"] = hog_json(d.hog);
  det["cascade"] = ordered_json::array();
  for (const auto& stage : d.cascade.stages) {
    ordered_json s;
    s["stage_threshold"] = stage.stage_threshold;
    s["stumps"] = ordered_json::array();
    for (const auto& f : stage.stumps) {
      ordered_json st;
      st["kind"] = kind_name(f.kind);
      st["rect"] = {f.rect.x, f.rect.y, f.rect.w, f.rect.h};
      st["polarity"] = f.polarity;
      st["threshold"] = f.threshold;
      s["stumps"].push_back(st);
    }
    det["cascade"].push_back(s);
  }
  det["bias"] = d.bias;
  det["weights"] = vec_json(d.weights);

  ordered_json pose;
  pose["empty_margin"] = p.empty_margin;
  pose["hog"] = hog_json(p.hog);
  pose["foreground"] = {{"smooth_radius", p.foreground.smooth_radius},
                        {"threshold", p.foreground.threshold},
                        {"min_area", p.foreground.min_area}};
  ordered_json centroids;
  for (PoseLabel label : kAllLabels) {
    centroids[std::string(to_string(label))] = vec_json(p.centroids[index_of(label)]);
  }
  pose["centroids"] = centroids;

  ordered_json root;
  root["format"] = kFormat;
  root["version"] = kVersion;
  root["detector"] = det;
  root["pose"] = pose;
  return root.dump(1) + "\n";
}

ModelBundle parse_model(const std::string& text) {
  ModelBundle m;
  try {
    const json root = json::parse(text);
    if (root.value("format", std::string{}) != kFormat) throw DataError("not a hauar model file");
    if (root.value("version", 0) != kVersion) throw DataError("unsupported model file version");

    const json& det = root.at("detector");
    DetectorModel& d = m.detector;
    d.cascade.window_w = det.at("window").at(0).get<int>();
    d.cascade.window_h = det.at("window").at(1).get<int>();
    d.stride = det.at("stride").get<int>();
    d.scale_factor = det.at("scale_factor").get<double>();
    d.scale_levels = det.at("scale_levels").get<int>();
    d.nms_iou = det.at("nms_iou").get<double>();
    d.score_threshold = det.at("score_threshold").get<double>();
    d.hog = json_hog(det.at("hog"));
    d.cascade.stages.clear();
    for (const auto& s : det.at("cascade")) {
      CascadeStage stage;
      stage.stage_threshold = s.at("stage_threshold").get<double>();
      for (const auto& st : s.at("stumps")) {
        RectFeature f;
        f.kind = parse_kind(st.at("kind").get<std::string>());
        const auto r = st.at("rect").get<std::vector<int>>();
        if (r.size() != 4) throw DataError("cascade rect needs four values");
        f.rect = Box{r[0], r[1], r[2], r[3]};
        f.polarity = st.at("polarity").get<int>();
        f.threshold = st.at("threshold").get<double>();
        stage.stumps.push_back(f);
      }
      d.cascade.stages.push_back(std::move(stage));
    }
    d.bias = det.at("bias").get<double>();
    d.weights = json_vec(det.at("weights"));

    const json& pose = root.at("pose");
    PoseModel& p = m.pose;
    p.empty_margin = pose.at("empty_margin").get<double>();
    p.hog = json_hog(pose.at("hog"));
    const json& fg = pose.at("foreground");
    p.foreground.smooth_radius = fg.at("smooth_radius").get<int>();
    p.foreground.threshold = fg.at("threshold").get<double>();
    p.foreground.min_area = fg.at("min_area").get<int>();
    for (PoseLabel label : kAllLabels) {
      p.centroids[index_of(label)] = json_vec(pose.at("centroids").at(std::string(to_string(label))));
    }
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed model file: ") + e.what());
  }
  try {
    validate(m.detector);
    validate(m.pose);
    if (m.pose.dimension() != hog_length(kPoseCropSize, kPoseCropSize, m.pose.hog) + 2 * kShapeRepeat) {
      throw InvalidArgument("pose centroids do not match the pose HOG configuration");
    }
  } catch (const InvalidArgument& e) {
    throw DataError(std::string("invalid model file: ") + e.what());
  }
  return m;
}

void save_model(const std::filesystem::path& path, const ModelBundle& model) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write model " + path.string());
  out << serialize_model(model);
  if (!out) throw DataError("model write failed for " + path.string());
}

ModelBundle load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open model " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_model(buf.str());
}

}  // namespace hauar
