// hauar: dataset generation, training, detection, evaluation, simulation and
// state-table queries for the occupancy-driven appliance controller.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "hauar/error.hpp"
#include "hauar/eval.hpp"
#include "hauar/simulator.hpp"
#include "hauar/state_table.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw hauar::DataError("cannot write " + path);
  out << text;
  if (!out) throw hauar::DataError("write failed for " + path);
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw hauar::DataError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Occupancy-driven fan and light controller"};
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("generate", "Render a labelled synthetic dataset");
  std::string gen_out;
  int n_empty = 0, n_sit = 0, n_stand = 0, n_lie = 0;
  std::string difficulty = "clean";
  std::uint64_t seed = 0;
  gen->add_option("--out", gen_out, "Output directory")->required();
  gen->add_option("--empty", n_empty)->required()->check(CLI::NonNegativeNumber);
  gen->add_option("--sit", n_sit)->required()->check(CLI::NonNegativeNumber);
  gen->add_option("--stand", n_stand)->required()->check(CLI::NonNegativeNumber);
  gen->add_option("--lie", n_lie)->required()->check(CLI::NonNegativeNumber);
  gen->add_option("--difficulty", difficulty)->check(CLI::IsMember({"clean", "noisy"}));
  gen->add_option("--seed", seed)->required();

  auto* trn = app.add_subcommand("train", "Fit detector and pose centroids");
  std::string data, model_out;
  trn->add_option("--data", data, "Manifest file")->required();
  trn->add_option("--out", model_out, "Model file to write")->required();

  auto* det = app.add_subcommand("detect", "Classify one frame");
  std::string model_path, frame_path;
  bool boxes = false;
  det->add_option("--model", model_path)->required();
  det->add_option("--frame", frame_path)->required();
  det->add_flag("--boxes", boxes, "Also print detections");

  auto* evl = app.add_subcommand("evaluate", "Confusion matrix over a manifest");
  std::string eval_model, eval_data, eval_out;
  evl->add_option("--model", eval_model)->required();
  evl->add_option("--data", eval_data)->required();
  evl->add_option("--out", eval_out)->required();

  auto* simc = app.add_subcommand("simulate", "Run a home scenario through the controller");
  std::string scenario_path, sim_model, config_path, sim_out;
  simc->add_option("--scenario", scenario_path)->required();
  simc->add_option("--model", sim_model)->required();
  simc->add_option("--config", config_path);
  simc->add_option("--out", sim_out)->required();

  auto* tbl = app.add_subcommand("statetable", "Look up fan and light for a room state");
  std::string occupancy;
  double temp_c = 0.0, humidity = 0.0;
  tbl->add_option("--occupancy", occupancy)->required()->check(CLI::IsMember({"empty", "sit", "stand", "lie"}));
  tbl->add_option("--temp-c", temp_c)->required();
  tbl->add_option("--humidity", humidity)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*gen) {
      const auto manifest = hauar::synth::generate_dataset(
          {n_empty, n_sit, n_stand, n_lie}, hauar::synth::parse_difficulty(difficulty), seed, gen_out);
      std::cout << "wrote " << manifest.entries.size() << " frames to " << gen_out << "\n";
    } else if (*trn) {
      const auto model = hauar::train(hauar::synth::read_manifest(data));
      hauar::save_model(model_out, model);
      std::cout << "wrote model " << model_out << "\n";
    } else if (*det) {
      const auto model = hauar::load_model(model_path);
      const auto analysis = hauar::analyze_frame(hauar::read_pgm_file(frame_path), model);
      std::cout << "label: " << hauar::to_string(analysis.result.label) << "\n";
      if (boxes) {
        for (const auto& d : analysis.detections) {
          std::cout << "box: " << d.box.x << " " << d.box.y << " " << d.box.w << " " << d.box.h
                    << " score " << d.score << "\n";
        }
      }
    } else if (*evl) {
      const auto model = hauar::load_model(eval_model);
      const auto report = hauar::evaluate(hauar::synth::read_manifest(eval_data), model);
      write_text(eval_out, hauar::format_eval_report(report));
      char line[96];
      std::snprintf(line, sizeof line, "accuracy %.4f over %ld frames (%ld skipped)\n",
                    report.accuracy, report.sample_count - report.skipped, report.skipped);
      std::cout << line;
    } else if (*simc) {
      const auto model = hauar::load_model(sim_model);
      const auto scenario = hauar::sim::read_scenario(scenario_path);
      const auto cfg = config_path.empty() ? hauar::sim::SimConfig{}
                                           : hauar::sim::parse_sim_config(read_text(config_path));
      const auto report = hauar::sim::run_scenario(scenario, model.detector, model.pose, cfg);
      for (const auto& c : report.command_trace) std::cout << hauar::format_command(c) << "\n";
      write_text(sim_out, hauar::sim::format_report(report, scenario.duration_s));
    } else if (*tbl) {
      const hauar::ClimateReading reading{temp_c, humidity};
      const auto state = hauar::lookup_state(hauar::parse_label(occupancy), hauar::bin_climate(reading));
      std::cout << "fan " << hauar::to_string(state.fan) << " light " << hauar::to_string(state.light)
                << "\n";
    }
  } catch (const hauar::InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const hauar::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  return 0;
}
