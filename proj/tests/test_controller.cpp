#include <random>
#include <stdexcept>

#include "doctest.h"
#include "hauar/controller.hpp"
#include "hauar/error.hpp"
#include "hauar/synthgen.hpp"
#include "json.hpp"
#include "support.hpp"

using namespace hauar;

namespace {

ApplianceCommand fixed(double t, PoseLabel occ = PoseLabel::Stand) {
  ApplianceCommand c;
  c.t = t;
  c.occupancy = occ;
  c.state = lookup_state(occ, bin_climate(c.climate));
  return c;
}

Frame scene(synth::Pose pose, std::uint64_t seed) {
  synth::SceneSpec spec;
  spec.noise_sigma = 3;
  spec.figures.push_back({pose, 64, 85, 1.0, 1.0});
  return synth::render_scene(spec, seed).first;
}

}  // namespace

TEST_SUITE("controller") {

TEST_CASE("trigger rule") {
  const ControllerConfig cfg;
  ControllerState s;
  CHECK(should_trigger(s, {0, EventKind::Tick}, cfg));
  s.last_run_t = 100;
  s.last_event_t = 100;
  CHECK(should_trigger(s, {105, EventKind::Motion}, cfg));
  CHECK_FALSE(should_trigger(s, {1899, EventKind::Tick}, cfg));
  CHECK(should_trigger(s, {1900, EventKind::Tick}, cfg));
  CHECK_THROWS_AS(should_trigger(s, {99, EventKind::Tick}, cfg), InvalidArgument);
  CHECK_THROWS_AS(should_trigger(s, {200, EventKind::Tick}, ControllerConfig{0.0}), InvalidArgument);
}

TEST_CASE("step semantics") {
  const ControllerConfig cfg;
  int runs = 0;
  const PipelineRunner stub = [&](double t) {
    ++runs;
    return fixed(t);
  };
  auto r = step({}, {0, EventKind::Tick}, stub, cfg);
  REQUIRE(r.command);
  CHECK(r.state.last_run_t == 0.0);
  CHECK(r.state.current_appliances == ApplianceState{FanLevel::Low, LightLevel::Bright});

  const auto quiet = step(r.state, {10, EventKind::Tick}, stub, cfg);
  CHECK_FALSE(quiet.command);
  CHECK(quiet.state.last_run_t == r.state.last_run_t);
  CHECK(quiet.state.current_appliances == r.state.current_appliances);

  auto a = step(quiet.state, {20, EventKind::Motion}, stub, cfg);
  auto b = step(a.state, {25, EventKind::Motion}, stub, cfg);
  CHECK(a.command);
  CHECK(b.command);
  CHECK(runs == 3);
}

TEST_CASE("pipeline failure keeps the previous state") {
  const ControllerConfig cfg;
  const auto ok = step({}, {0, EventKind::Tick}, [](double t) { return fixed(t); }, cfg);
  const PipelineRunner broken = [](double) -> ApplianceCommand { throw DataError("camera offline"); };
  CHECK_THROWS_AS(step(ok.state, {5, EventKind::Motion}, broken, cfg), DataError);
  CHECK(ok.state.current_appliances == ApplianceState{FanLevel::Low, LightLevel::Bright});

  const FrameSource no_camera = []() -> Frame { throw DataError("no frame"); };
  CHECK_THROWS_AS(run_pipeline(no_camera, [] { return ClimateReading{}; }, test::clean_model().detector,
                               test::clean_model().pose, cfg, 0),
                  DataError);
}

TEST_CASE("end-to-end pipeline decisions") {
  const auto& m = test::clean_model();
  const ControllerConfig cfg;
  auto run = [&](Frame f, ClimateReading c) {
    return run_pipeline([f] { return f; }, [c] { return c; }, m.detector, m.pose, cfg, 0);
  };
  const auto empty = run(synth::render_scene({}, 1).first, {22, 50});
  CHECK(empty.occupancy == PoseLabel::Empty);
  CHECK(empty.state == ApplianceState{});

  const auto stand = run(scene(synth::Pose::Stand, 2), {22, 70});
  CHECK(stand.occupancy == PoseLabel::Stand);
  CHECK(stand.state == ApplianceState{FanLevel::High, LightLevel::Bright});

  const auto lie = run(scene(synth::Pose::Lie, 3), {28, 70});
  CHECK(lie.occupancy == PoseLabel::Lie);
  CHECK(lie.state == ApplianceState{FanLevel::High, LightLevel::Dim});

  for (const auto& c : {empty, stand, lie}) CHECK(c.state == lookup_state(c.occupancy, bin_climate(c.climate)));
}

TEST_CASE("motion in an empty room turns everything off") {
  const auto& m = test::clean_model();
  ControllerState s;
  s.last_run_t = 0;
  s.last_event_t = 0;
  s.current_appliances = {FanLevel::High, LightLevel::Bright};
  const Frame room = synth::render_scene({}, 9).first;
  const auto r = step(s, {30, EventKind::Motion}, [&] { return room; }, [] { return ClimateReading{}; },
                      m.detector, m.pose, ControllerConfig{});
  REQUIRE(r.command);
  CHECK(r.command->state == ApplianceState{});
  CHECK(r.state.current_appliances == ApplianceState{});
}

TEST_CASE("random event streams respect liveness and quiescence") {
  std::mt19937_64 rng(1);
  const ControllerConfig cfg{600.0};
  for (int trial = 0; trial < 300; ++trial) {
    ControllerState s;
    double t = 0, last_run = -1;
    bool motion_since = false;
    int runs = 0, motions = 0;
    const PipelineRunner stub = [&](double at) {
      ++runs;
      return fixed(at);
    };
    for (int i = 0; i < 60; ++i) {
      t += static_cast<double>(rng() % 400);
      const bool motion = rng() % 4 == 0;
      const int before = runs;
      const auto r = step(s, {t, motion ? EventKind::Motion : EventKind::Tick}, stub, cfg);
      if (motion) {
        ++motions;
        CHECK(runs == before + 1);
      }
      if (r.command) {
        if (last_run >= 0 && !motion && !motion_since) CHECK(t - last_run >= cfg.period_s);
        last_run = t;
        motion_since = false;
      }
      s = r.state;
    }
    CHECK(runs >= motions);
  }
}

TEST_CASE("command lines are structured and pixel-free") {
  ApplianceCommand c = fixed(12.5, PoseLabel::Sit);
  c.climate = {23.5, 61};
  c.state = lookup_state(c.occupancy, bin_climate(c.climate));
  const auto j = nlohmann::json::parse(format_command(c));
  CHECK(j.size() == 6);
  CHECK(j["t"] == 12.5);
  CHECK(j["fan"] == "high");
  CHECK(j["light"] == "dim");
  CHECK(j["occupancy"] == "sit");
  CHECK(j["temperature"] == 23.5);
  CHECK(j["humidity"] == 61);
  CHECK(format_command(c).find('\n') == std::string::npos);
}

}
