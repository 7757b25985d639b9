#include "braille/image.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iterator>
#include <sstream>

namespace braille {

std::size_t BinaryImage::count() const {
  const auto px = pixels();
  return static_cast<std::size_t>(std::count_if(px.begin(), px.end(), [](auto v) { return v != 0; }));
}

namespace {

class HeaderReader {
 public:
  explicit HeaderReader(std::string_view bytes) : bytes_(bytes) {}

  std::string token() {
    skip_space_and_comments();
    const std::size_t start = pos_;
    while (pos_ < bytes_.size() && !std::isspace(static_cast<unsigned char>(bytes_[pos_]))) ++pos_;
    if (start == pos_) throw Error("malformed PGM header: unexpected end of data");
    return std::string(bytes_.substr(start, pos_ - start));
  }

  int number(const char* what) {
    const std::string tok = token();
    if (!std::all_of(tok.begin(), tok.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }) ||
        tok.size() > 9) {
      throw Error(std::string("malformed PGM header: bad ") + what + " '" + tok + "'");
    }
    return std::stoi(tok);
  }

  // Exactly one whitespace byte separates maxval from the raster.
  std::size_t payload_offset() {
    if (pos_ >= bytes_.size() || !std::isspace(static_cast<unsigned char>(bytes_[pos_]))) {
      throw Error("malformed PGM header: missing separator before raster");
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

  std::string_view bytes_;
  std::size_t pos_ = 0;
};

template <typename Image>
Image crop_impl(const Image& img, const Rect& r) {
  if (!img.contains(r)) {
    throw Error("crop rect (" + std::to_string(r.x) + "," + std::to_string(r.y) + "," + std::to_string(r.w) +
                "," + std::to_string(r.h) + ") is outside the " + std::to_string(img.width()) + "x" +
                std::to_string(img.height()) + " image");
  }
  Image out(r.w, r.h);
  for (int i = 0; i < r.h; ++i) {
    const auto src = img.row(r.y + i).subspan(static_cast<std::size_t>(r.x), static_cast<std::size_t>(r.w));
    std::copy(src.begin(), src.end(), out.row(i).begin());
  }
  return out;
}

}  // namespace

GrayImage load_pgm(std::string_view bytes) {
  HeaderReader reader(bytes);
  const std::string magic = reader.token();
  if (magic != "P5") {
    throw Error("unsupported image format '" + magic + "': only binary graymap (P5) is accepted");
  }
  const int width = reader.number("width");
  const int height = reader.number("height");
  const int maxval = reader.number("maxval");
  if (maxval != 255) throw Error("unsupported PGM maxval " + std::to_string(maxval) + ", expected 255");
  if (width <= 0 || height <= 0) throw Error("malformed PGM header: zero dimension");

  const std::size_t offset = reader.payload_offset();
  const std::size_t need = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  if (bytes.size() < offset || bytes.size() - offset < need) {
    throw Error("truncated PGM payload: expected " + std::to_string(need) + " bytes, found " +
                std::to_string(bytes.size() > offset ? bytes.size() - offset : 0));
  }
  std::vector<std::uint8_t> data(need);
  std::copy_n(reinterpret_cast<const std::uint8_t*>(bytes.data() + offset), need, data.begin());
  return GrayImage(width, height, std::move(data));
}

GrayImage load_pgm_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open image file " + path.string());
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return load_pgm(bytes);
}

std::string save_pgm(const GrayImage& img) {
  std::string out = "P5\n" + std::to_string(img.width()) + " " + std::to_string(img.height()) + "\n255\n";
  const auto px = img.pixels();
  out.append(reinterpret_cast<const char*>(px.data()), px.size());
  return out;
}

void save_pgm_file(const GrayImage& img, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write image file " + path.string());
  const std::string bytes = save_pgm(img);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

Histogram histogram(const GrayImage& img) {
  Histogram bins{};
  for (const auto v : img.pixels()) ++bins[v];
  return bins;
}

GrayImage crop(const GrayImage& img, const Rect& r) { return crop_impl(img, r); }

BinaryImage crop(const BinaryImage& img, const Rect& r) { return crop_impl(img, r); }

GrayImage to_gray(const BinaryImage& bin) {
  GrayImage out(bin.width(), bin.height());
  std::transform(bin.pixels().begin(), bin.pixels().end(), out.pixels().begin(),
                 [](std::uint8_t v) -> std::uint8_t { return v ? 255 : 0; });
  return out;
}

}  // namespace braille
