#include "support.hpp"

#include <atomic>
#include <fstream>
#include <iterator>
#include <sstream>

#include <unistd.h>

namespace hauar::test {

TempDir::TempDir(const std::string& tag) {
  static std::atomic<int> counter{0};
  path_ = std::filesystem::temp_directory_path() /
          ("hauar-" + tag + "-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
  std::filesystem::remove_all(path_);
  std::filesystem::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

Frame random_frame(int w, int h, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> d(0, 255);
  Frame f(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) f.at(x, y) = static_cast<std::uint8_t>(d(rng));
  return f;
}

const ModelBundle& clean_model() {
  static const ModelBundle model = [] {
    TempDir dir("model");
    const auto manifest =
        synth::generate_dataset({40, 40, 40, 40}, synth::Difficulty::Clean, 2024, dir.path());
    return train(manifest);
  }();
  return model;
}

std::vector<std::uint8_t> read_bytes(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string read_text(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace hauar::test
