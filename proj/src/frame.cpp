#include "hauar/frame.hpp"

#include <array>
#include <cctype>
#include <fstream>
#include <iterator>
#include <string>

#include "hauar/error.hpp"

namespace hauar {

Frame::Frame(int width, int height, std::uint8_t value) {
  if (width <= 0 || height <= 0) {
    throw InvalidArgument("frame dimensions must be positive");
  }
  px_ = Raster::Constant(height, width, value);
}

Frame::Frame(int width, int height, std::span<const std::uint8_t> pixels)
    : Frame(width, height) {
  if (pixels.size() != static_cast<std::size_t>(width) * height) {
    throw InvalidArgument("pixel count does not match frame dimensions");
  }
  std::copy(pixels.begin(), pixels.end(), px_.data());
}

Frame::Frame(Raster pixels) : px_(std::move(pixels)) {
  if (px_.rows() <= 0 || px_.cols() <= 0) {
    throw InvalidArgument("frame dimensions must be positive");
  }
}

namespace {

class PgmReader {
 public:
  explicit PgmReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  // Skips whitespace and '#' comments, then reads one unsigned decimal.
  long next_int(const char* what) {
    skip_separators();
    if (pos_ >= bytes_.size() || !std::isdigit(bytes_[pos_])) {
      throw DataError(std::string("malformed PGM: expected ") + what);
    }
    long value = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      value = value * 10 + (bytes_[pos_] - '0');
      if (value > 1'000'000'000L) {
        throw DataError(std::string("malformed PGM: ") + what + " too large");
      }
      ++pos_;
    }
    return value;
  }

  // The single whitespace byte that separates a P5 header from its raster.
  void take_header_terminator() {
    if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) {
      throw DataError("malformed PGM: missing whitespace after maxval");
    }
    ++pos_;
  }

  std::size_t pos() const { return pos_; }
  std::size_t remaining() const { return bytes_.size() - pos_; }

 private:
  void skip_separators() {
    while (pos_ < bytes_.size()) {
      if (std::isspace(bytes_[pos_])) {
        ++pos_;
      } else if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 2;
};

}  // namespace

Frame load_pgm(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '5' && bytes[1] != '2')) {
    throw DataError("not a PGM file: expected P5 or P2 magic");
  }
  const bool binary = bytes[1] == '5';
  PgmReader reader(bytes);
  const long width = reader.next_int("width");
  const long height = reader.next_int("height");
  const long maxval = reader.next_int("maxval");
  if (width <= 0 || height <= 0) throw DataError("PGM has a zero dimension");
  if (maxval <= 0 || maxval > 255) {
    throw DataError("PGM maxval " + std::to_string(maxval) +
                    " unsupported (must be 1..255)");
  }
  const auto count = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  if (count > (1u << 28)) throw DataError("PGM dimensions too large");

  Frame frame(static_cast<int>(width), static_cast<int>(height));
  std::uint8_t* out = frame.raster().data();
  if (binary) {
    reader.take_header_terminator();
    if (reader.remaining() < count) throw DataError("PGM payload truncated");
    const std::uint8_t* src = bytes.data() + reader.pos();
    for (std::size_t i = 0; i < count; ++i) {
      if (src[i] > maxval) throw DataError("PGM sample exceeds maxval");
      out[i] = src[i];
    }
  } else {
    for (std::size_t i = 0; i < count; ++i) {
      long v = 0;
      try {
        v = reader.next_int("sample");
      } catch (const DataError&) {
        throw DataError("PGM payload truncated");
      }
      if (v > maxval) throw DataError("PGM sample exceeds maxval");
      out[i] = static_cast<std::uint8_t>(v);
    }
  }
  return frame;
}

std::vector<std::uint8_t> write_pgm(const Frame& frame) {
  const std::string header = "P5\n" + std::to_string(frame.width()) + " " +
                             std::to_string(frame.height()) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  const auto px = frame.bytes();
  out.insert(out.end(), px.begin(), px.end());
  return out;
}

Frame read_pgm_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  try {
    return load_pgm(bytes);
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

void write_pgm_file(const std::filesystem::path& path, const Frame& frame) {
  const auto bytes = write_pgm(frame);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw DataError("write failed for " + path.string());
}

Frame to_frame(const Plane<double>& plane) {
  Raster r(plane.rows(), plane.cols());
  for (Eigen::Index i = 0; i < plane.size(); ++i) {
    r.data()[i] = static_cast<std::uint8_t>(
        std::clamp(std::lround(plane.data()[i]), 0L, 255L));
  }
  return Frame(std::move(r));
}

Frame resize_bilinear(const Frame& frame, int width, int height) {
  if (width <= 0 || height <= 0) {
    throw InvalidArgument("resize target must be positive");
  }
  if (width == frame.width() && height == frame.height()) return frame;
  return to_frame(resample_bilinear(frame.raster(), height, width));
}

Frame equalize_histogram(const Frame& frame) {
  std::array<long, 256> hist{};
  for (std::uint8_t v : frame.bytes()) ++hist[v];
  const long total = static_cast<long>(frame.bytes().size());

  std::array<long, 256> cdf{};
  long running = 0;
  long cdf_min = 0;
  for (int v = 0; v < 256; ++v) {
    running += hist[v];
    cdf[v] = running;
    if (cdf_min == 0 && running > 0) cdf_min = running;
  }
  // A single occupied level leaves nothing to spread.
  if (total == cdf_min) return frame;

  std::array<std::uint8_t, 256> lut{};
  const double denom = static_cast<double>(total - cdf_min);
  for (int v = 0; v < 256; ++v) {
    const double mapped = static_cast<double>(cdf[v] - cdf_min) / denom * 255.0;
    lut[v] = static_cast<std::uint8_t>(std::clamp(std::lround(mapped), 0L, 255L));
  }
  Raster out = frame.raster().unaryExpr([&lut](std::uint8_t v) { return lut[v]; });
  return Frame(std::move(out));
}

Frame preprocess(const Frame& frame, const PreprocessConfig& cfg) {
  Frame out = resize_bilinear(frame, cfg.target_width, cfg.target_height);
  if (cfg.equalize) out = equalize_histogram(out);
  return out;
}

Frame crop(const Frame& frame, const Box& box) {
  if (!box.within(frame.width(), frame.height())) {
    throw InvalidArgument("crop box outside frame");
  }
  return Frame(Raster(frame.raster().block(box.y, box.x, box.h, box.w)));
}

}  // namespace hauar
