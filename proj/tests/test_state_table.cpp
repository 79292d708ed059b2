#include <cmath>
#include <limits>

#include "doctest.h"
#include "hauar/error.hpp"
#include "hauar/state_table.hpp"

using namespace hauar;

namespace {

struct Row {
  PoseLabel occ;
  Level t, h;
  FanLevel fan;
  LightLevel light;
};

// Transcribed by hand, one row per cell.
const Row kTable[] = {
    {PoseLabel::Stand, Level::Low, Level::Low, FanLevel::Low, LightLevel::Bright},
    {PoseLabel::Stand, Level::Low, Level::High, FanLevel::High, LightLevel::Bright},
    {PoseLabel::Stand, Level::High, Level::Low, FanLevel::High, LightLevel::Bright},
    {PoseLabel::Stand, Level::High, Level::High, FanLevel::High, LightLevel::Dim},
    {PoseLabel::Sit, Level::Low, Level::Low, FanLevel::Low, LightLevel::Bright},
    {PoseLabel::Sit, Level::Low, Level::High, FanLevel::High, LightLevel::Dim},
    {PoseLabel::Sit, Level::High, Level::Low, FanLevel::High, LightLevel::Bright},
    {PoseLabel::Sit, Level::High, Level::High, FanLevel::High, LightLevel::Dim},
    {PoseLabel::Lie, Level::Low, Level::Low, FanLevel::Low, LightLevel::Dim},
    {PoseLabel::Lie, Level::Low, Level::High, FanLevel::Low, LightLevel::Dim},
    {PoseLabel::Lie, Level::High, Level::Low, FanLevel::High, LightLevel::Dim},
    {PoseLabel::Lie, Level::High, Level::High, FanLevel::High, LightLevel::Dim},
};

}  // namespace

TEST_SUITE("state-engine") {

TEST_CASE("climate binning is inclusive-high") {
  auto lv = [](double t, double h) { return bin_climate({t, h}); };
  CHECK(lv(24.9, 59.9).temperature == Level::Low);
  CHECK(lv(24.9, 59.9).humidity == Level::Low);
  CHECK(lv(25.0, 60.0).temperature == Level::High);
  CHECK(lv(25.0, 60.0).humidity == Level::High);
  CHECK(lv(30.0, 40.0).temperature == Level::High);
  CHECK(lv(30.0, 40.0).humidity == Level::Low);
  CHECK(bin_climate({20, 50}, {19, 51}).temperature == Level::High);
  CHECK(bin_climate({20, 50}, {19, 51}).humidity == Level::Low);
}

TEST_CASE("invalid readings are rejected") {
  CHECK_THROWS_AS(bin_climate({22, 101}), InvalidArgument);
  CHECK_THROWS_AS(bin_climate({22, -1}), InvalidArgument);
  CHECK_THROWS_AS(bin_climate({std::numeric_limits<double>::quiet_NaN(), 50}), InvalidArgument);
  CHECK_THROWS_AS(bin_climate({std::numeric_limits<double>::infinity(), 50}), InvalidArgument);
}

TEST_CASE("table cells match the hand copy") {
  for (const Row& r : kTable) {
    const ApplianceState s = lookup_state(r.occ, r.t, r.h);
    CHECK(s.fan == r.fan);
    CHECK(s.light == r.light);
  }
  CHECK(lookup_state(PoseLabel::Empty, Level::High, Level::Low) == ApplianceState{});
  CHECK(lookup_state(PoseLabel::Stand, Level::Low, Level::High) ==
        ApplianceState{FanLevel::High, LightLevel::Bright});
  CHECK(lookup_state(PoseLabel::Lie, Level::Low, Level::High) ==
        ApplianceState{FanLevel::Low, LightLevel::Dim});
}

TEST_CASE("empty room is always off and fan is monotone in climate") {
  for (Level t : {Level::Low, Level::High})
    for (Level h : {Level::Low, Level::High})
      CHECK(lookup_state(PoseLabel::Empty, t, h) == ApplianceState{FanLevel::Off, LightLevel::Off});
  for (PoseLabel occ : {PoseLabel::Sit, PoseLabel::Stand, PoseLabel::Lie}) {
    for (Level other : {Level::Low, Level::High}) {
      CHECK(lookup_state(occ, Level::High, other).fan >= lookup_state(occ, Level::Low, other).fan);
      CHECK(lookup_state(occ, other, Level::High).fan >= lookup_state(occ, other, Level::Low).fan);
    }
    for (Level t : {Level::Low, Level::High})
      for (Level h : {Level::Low, Level::High}) CHECK(lookup_state(occ, t, h).fan != FanLevel::Off);
  }
}

TEST_CASE("level names roundtrip") {
  for (FanLevel f : {FanLevel::Off, FanLevel::Low, FanLevel::High}) CHECK(parse_fan(to_string(f)) == f);
  for (LightLevel l : {LightLevel::Off, LightLevel::Dim, LightLevel::Bright})
    CHECK(parse_light(to_string(l)) == l);
  CHECK_THROWS(parse_fan("turbo"));
}

}
