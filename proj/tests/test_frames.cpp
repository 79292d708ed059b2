#include <cmath>
#include <string>

#include "doctest.h"
#include "hauar/error.hpp"
#include "hauar/frame.hpp"
#include "support.hpp"

using namespace hauar;

namespace {

std::vector<std::uint8_t> bytes_of(const std::string& s) { return {s.begin(), s.end()}; }

// Textbook bilinear sample with the half-pixel convention, written per pixel.
double naive_bilinear(const Frame& src, int out_w, int out_h, int ox, int oy) {
  double sx = (ox + 0.5) * src.width() / out_w - 0.5;
  double sy = (oy + 0.5) * src.height() / out_h - 0.5;
  sx = std::min(std::max(sx, 0.0), src.width() - 1.0);
  sy = std::min(std::max(sy, 0.0), src.height() - 1.0);
  const int x0 = static_cast<int>(sx);
  const int y0 = static_cast<int>(sy);
  const int x1 = x0 + 1 < src.width() ? x0 + 1 : x0;
  const int y1 = y0 + 1 < src.height() ? y0 + 1 : y0;
  const double ax = sx - x0;
  const double ay = sy - y0;
  return src.at(x0, y0) * (1 - ax) * (1 - ay) + src.at(x1, y0) * ax * (1 - ay) +
         src.at(x0, y1) * (1 - ax) * ay + src.at(x1, y1) * ax * ay;
}

}  // namespace

TEST_SUITE("frames") {

TEST_CASE("binary pgm decodes verbatim") {
  auto data = bytes_of("P5 4 3 255\n");
  for (int i = 0; i < 12; ++i) data.push_back(static_cast<std::uint8_t>(i * 20));
  const Frame f = load_pgm(data);
  CHECK(f.width() == 4);
  CHECK(f.height() == 3);
  for (int i = 0; i < 12; ++i) CHECK(f.bytes()[i] == i * 20);
}

TEST_CASE("ascii pgm with comments and small maxval is not rescaled") {
  const Frame f = load_pgm(bytes_of("P2\n# room\n3 1\n# depth\n15\n0 7\n15\n"));
  CHECK(f.width() == 3);
  CHECK(f.at(0, 0) == 0);
  CHECK(f.at(1, 0) == 7);
  CHECK(f.at(2, 0) == 15);
}

TEST_CASE("malformed pgm input is rejected") {
  CHECK_THROWS_AS(load_pgm(bytes_of("P5 2 2 65535\n\0\0\0\0\0\0\0\0")), DataError);
  CHECK_THROWS_AS(load_pgm(bytes_of("P5 4 3 255\nabc")), DataError);
  CHECK_THROWS_AS(load_pgm(bytes_of("P5 0 3 255\n")), DataError);
  CHECK_THROWS_AS(load_pgm(bytes_of("P6 1 1 255\nx")), DataError);
  CHECK_THROWS_AS(load_pgm(bytes_of("P2 2 1 10\n3 11\n")), DataError);
  CHECK_THROWS_AS(load_pgm(bytes_of("P2 2 1 10\n3\n")), DataError);
  CHECK_THROWS_AS(load_pgm(bytes_of("")), DataError);
}

TEST_CASE("canonical encoding") {
  const Frame one(1, 1, 7);
  CHECK(write_pgm(one) == bytes_of(std::string("P5\n1 1\n255\n\x07", 12)));

  const auto zeros = write_pgm(Frame(2, 2, 0));
  const std::string header = "P5\n2 2\n255\n";
  REQUIRE(zeros.size() == header.size() + 4);
  for (std::size_t i = header.size(); i < zeros.size(); ++i) CHECK(zeros[i] == 0);
}

TEST_CASE("roundtrips") {
  const Frame f = test::random_frame(5, 5, 1);
  CHECK(load_pgm(write_pgm(f)) == f);

  const auto canonical = write_pgm(test::random_frame(13, 7, 99));
  CHECK(write_pgm(load_pgm(canonical)) == canonical);
}

TEST_CASE("file roundtrip") {
  test::TempDir dir("pgm");
  const Frame f = test::random_frame(9, 4, 5);
  write_pgm_file(dir.path() / "f.pgm", f);
  CHECK(read_pgm_file(dir.path() / "f.pgm") == f);
  CHECK_THROWS_AS(read_pgm_file(dir.path() / "missing.pgm"), DataError);
}

TEST_CASE("preprocess shape and degenerate histogram") {
  CHECK(preprocess(test::random_frame(256, 192, 2)).width() == 128);
  CHECK(preprocess(test::random_frame(256, 192, 2)).height() == 96);

  const Frame flat = preprocess(Frame(200, 150, 100));
  CHECK(flat == Frame(128, 96, 100));

  for (auto [w, h] : {std::pair{1, 1}, {37, 5}, {500, 3}, {128, 96}}) {
    const Frame out = preprocess(test::random_frame(w, h, 11));
    CHECK(out.width() == 128);
    CHECK(out.height() == 96);
    CHECK(out.bytes().size() == 128u * 96u);
  }
}

TEST_CASE("bilinear downscale matches per-pixel oracle") {
  const Frame src = test::random_frame(16, 16, 3);
  const Frame out = preprocess(src, {8, 8, false});
  for (int y = 0; y < 8; ++y) {
    for (int x = 0; x < 8; ++x) {
      CHECK(std::abs(out.at(x, y) - naive_bilinear(src, 8, 8, x, y)) <= 1.0);
    }
  }
}

TEST_CASE("bilinear upscale matches per-pixel oracle") {
  const Frame src = test::random_frame(7, 5, 4);
  const Frame out = resize_bilinear(src, 20, 11);
  for (int y = 0; y < 11; ++y)
    for (int x = 0; x < 20; ++x)
      CHECK(std::abs(out.at(x, y) - naive_bilinear(src, 20, 11, x, y)) <= 1.0);
}

TEST_CASE("equalization spreads two levels to the extremes") {
  Frame f(4, 1, 10);
  f.at(2, 0) = 20;
  f.at(3, 0) = 20;
  const Frame e = equalize_histogram(f);
  CHECK(e.at(0, 0) == 0);
  CHECK(e.at(3, 0) == 255);
}

TEST_CASE("preprocess is deterministic") {
  const Frame f = test::random_frame(200, 100, 8);
  CHECK(preprocess(f) == preprocess(f));
}

TEST_CASE("crop copies and checks bounds") {
  const Frame f = test::random_frame(10, 10, 6);
  const Frame c = crop(f, {2, 3, 4, 5});
  CHECK(c.width() == 4);
  CHECK(c.at(1, 1) == f.at(3, 4));
  CHECK_THROWS_AS(crop(f, {8, 8, 4, 4}), InvalidArgument);
}

}
