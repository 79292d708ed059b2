#pragma once

#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "hauar/eval.hpp"
#include "hauar/frame.hpp"

namespace hauar::test {

// Scratch directory removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag);
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

Frame random_frame(int w, int h, std::uint64_t seed);

// Model trained once per process on a small clean split.
const ModelBundle& clean_model();

std::vector<std::uint8_t> read_bytes(const std::filesystem::path& p);
std::string read_text(const std::filesystem::path& p);

}  // namespace hauar::test
