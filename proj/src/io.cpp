#include "soagdd/io.hpp"

#include <png.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

namespace soagdd {
namespace {

double luma(double r, double g, double b) { return 0.299 * r + 0.587 * g + 0.114 * b; }

class PnmTokenizer {
 public:
  explicit PnmTokenizer(const std::string& bytes) : bytes_(bytes) {}

  int next_int() {
    skip_space_and_comments();
    if (pos_ >= bytes_.size() || !std::isdigit(static_cast<unsigned char>(bytes_[pos_]))) {
      throw IoError("PNM: expected integer at byte " + std::to_string(pos_));
    }
    long value = 0;
    while (pos_ < bytes_.size() && std::isdigit(static_cast<unsigned char>(bytes_[pos_]))) {
      value = value * 10 + (bytes_[pos_] - '0');
      if (value > 1'000'000'000) throw IoError("PNM: integer overflow");
      ++pos_;
    }
    return static_cast<int>(value);
  }

  // Binary payload starts after exactly one whitespace byte following maxval.
  std::size_t binary_start() {
    if (pos_ >= bytes_.size() || !std::isspace(static_cast<unsigned char>(bytes_[pos_]))) {
      throw IoError("PNM: missing whitespace before raster");
    }
    return pos_ + 1;
  }

 private:
  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      const char c = bytes_[pos_];
      if (c == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  const std::string& bytes_;
  std::size_t pos_ = 2;
};

bool is_png(const std::string& bytes) {
  static constexpr unsigned char kSig[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
  return bytes.size() >= 8 && std::memcmp(bytes.data(), kSig, 8) == 0;
}

Plane decode_png(const std::string& bytes) {
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_memory(&image, bytes.data(), bytes.size())) {
    throw IoError(std::string("PNG: ") + image.message);
  }
  const bool color = (image.format & PNG_FORMAT_FLAG_COLOR) != 0;
  // Alpha is kept in the decode format and dropped afterwards so that libpng
  // never composites against a background.
  image.format = color ? PNG_FORMAT_RGBA : PNG_FORMAT_GA;
  const int channels = color ? 4 : 2;
  std::vector<png_byte> buf(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, buf.data(), 0, nullptr)) {
    const std::string msg = image.message;
    png_image_free(&image);
    throw IoError("PNG: " + msg);
  }
  const int w = static_cast<int>(image.width);
  const int h = static_cast<int>(image.height);
  Plane out(w, h);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const png_byte* px = buf.data() + i * channels;
    out.pixels()[i] = color ? luma(px[0], px[1], px[2]) : static_cast<double>(px[0]);
  }
  return out;
}

}  // namespace

Plane decode_pnm(const std::string& bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P') {
    throw IoError("unsupported image format");
  }
  const char kind = bytes[1];
  if (kind != '2' && kind != '5' && kind != '3' && kind != '6') {
    throw IoError(std::string("unsupported PNM variant P") + kind);
  }
  const bool color = kind == '3' || kind == '6';
  const bool binary = kind == '5' || kind == '6';

  PnmTokenizer tok(bytes);
  const int w = tok.next_int();
  const int h = tok.next_int();
  const int maxval = tok.next_int();
  if (w <= 0 || h <= 0) throw IoError("PNM: invalid dimensions");
  if (maxval <= 0 || maxval > 255) {
    throw IoError("PNM: only 8-bit images (maxval <= 255) are supported");
  }
  const double scale = 255.0 / maxval;
  const int channels = color ? 3 : 1;
  const std::size_t count = static_cast<std::size_t>(w) * h * channels;

  std::vector<double> samples(count);
  if (binary) {
    const std::size_t start = tok.binary_start();
    if (bytes.size() < start + count) throw IoError("PNM: truncated raster");
    for (std::size_t i = 0; i < count; ++i) {
      samples[i] = static_cast<unsigned char>(bytes[start + i]);
    }
  } else {
    for (std::size_t i = 0; i < count; ++i) samples[i] = tok.next_int();
  }

  Plane out(w, h);
  for (std::size_t i = 0; i < out.size(); ++i) {
    double v;
    if (color) {
      v = luma(samples[3 * i], samples[3 * i + 1], samples[3 * i + 2]);
    } else {
      v = samples[i];
    }
    if (v > maxval) throw IoError("PNM: sample exceeds maxval");
    out.pixels()[i] = maxval == 255 ? v : v * scale;
  }
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("read failed: " + path.string());
  return ss.str();
}

GrayImage load_gray(const std::filesystem::path& path) {
  const std::string bytes = read_file(path);
  Plane raster = is_png(bytes) ? decode_png(bytes) : decode_pnm(bytes);
  if (raster.width() < GrayImage::kMinSide || raster.height() < GrayImage::kMinSide) {
    throw IoError(path.string() + ": image smaller than 4x4");
  }
  return GrayImage(std::move(raster));
}

std::string encode_pgm(const Plane& img, bool binary) {
  std::string out = (binary ? "P5\n" : "P2\n") + std::to_string(img.width()) + " " +
                    std::to_string(img.height()) + "\n255\n";
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      const int v = static_cast<int>(std::lround(std::clamp(img(x, y), 0.0, 255.0)));
      if (binary) {
        out.push_back(static_cast<char>(v));
      } else {
        out += std::to_string(v);
        out.push_back(x + 1 == img.width() ? '\n' : ' ');
      }
    }
  }
  return out;
}

std::string encode_ppm(const RgbImage& img) {
  std::string out =
      "P6\n" + std::to_string(img.width) + " " + std::to_string(img.height) + "\n255\n";
  out.append(reinterpret_cast<const char*>(img.rgb.data()), img.rgb.size());
  return out;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw IoError("write failed: " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot rename onto " + path.string());
  }
}

void write_pgm(const std::filesystem::path& path, const Plane& img, bool binary) {
  write_file_atomic(path, encode_pgm(img, binary));
}

void write_ppm(const std::filesystem::path& path, const RgbImage& img) {
  write_file_atomic(path, encode_ppm(img));
}

RgbImage to_rgb(const Plane& img) {
  RgbImage out(img.width(), img.height());
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      const auto v = static_cast<std::uint8_t>(std::lround(std::clamp(img(x, y), 0.0, 255.0)));
      out.set(x, y, v, v, v);
    }
  }
  return out;
}

}  // namespace soagdd
