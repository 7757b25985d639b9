#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace braille {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Pixel rectangle, top-left origin. Extents are in pixels.
struct Rect {
  int x = 0;
  int y = 0;
  int w = 0;
  int h = 0;

  int right() const { return x + w; }
  int bottom() const { return y + h; }
  bool contains(int px, int py) const { return px >= x && px < x + w && py >= y && py < y + h; }
  friend bool operator==(const Rect&, const Rect&) = default;
};

/// Row-major raster with a top-left origin. Width and height are always positive.
template <typename T>
class Grid {
 public:
  using value_type = T;

  Grid(int width, int height, T fill = T{}) : width_(width), height_(height) {
    if (width <= 0 || height <= 0) {
      throw Error("image dimensions must be positive, got " + std::to_string(width) + "x" +
                  std::to_string(height));
    }
    data_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
  }

  Grid(int width, int height, std::vector<T> data) : Grid(width, height) {
    if (data.size() != data_.size()) {
      throw Error("pixel buffer holds " + std::to_string(data.size()) + " values, expected " +
                  std::to_string(data_.size()));
    }
    data_ = std::move(data);
  }

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return data_.size(); }

  T& at(int x, int y) { return data_[index(x, y)]; }
  const T& at(int x, int y) const { return data_[index(x, y)]; }

  /// Edge-replicating accessor: coordinates outside the raster are clamped.
  const T& clamped(int x, int y) const {
    x = x < 0 ? 0 : (x >= width_ ? width_ - 1 : x);
    y = y < 0 ? 0 : (y >= height_ ? height_ - 1 : y);
    return data_[index(x, y)];
  }

  std::span<T> row(int y) { return {data_.data() + index(0, y), static_cast<std::size_t>(width_)}; }
  std::span<const T> row(int y) const {
    return {data_.data() + index(0, y), static_cast<std::size_t>(width_)};
  }

  std::span<T> pixels() { return data_; }
  std::span<const T> pixels() const { return data_; }

  bool contains(const Rect& r) const {
    return r.w > 0 && r.h > 0 && r.x >= 0 && r.y >= 0 && r.x + r.w <= width_ && r.y + r.h <= height_;
  }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x);
  }

  int width_;
  int height_;
  std::vector<T> data_;
};

/// 8-bit grayscale intensities in [0,255].
class GrayImage : public Grid<std::uint8_t> {
 public:
  using Grid::Grid;
  friend bool operator==(const GrayImage&, const GrayImage&) = default;
};

/// Foreground mask; a nonzero byte marks a foreground (edge) pixel.
class BinaryImage : public Grid<std::uint8_t> {
 public:
  using Grid::Grid;
  bool test(int x, int y) const { return at(x, y) != 0; }
  std::size_t count() const;
  friend bool operator==(const BinaryImage&, const BinaryImage&) = default;
};

using Histogram = std::array<std::uint64_t, 256>;

/// Parses a binary PGM (P5, maxval 255).
GrayImage load_pgm(std::string_view bytes);
GrayImage load_pgm_file(const std::filesystem::path& path);

std::string save_pgm(const GrayImage& img);
void save_pgm_file(const GrayImage& img, const std::filesystem::path& path);

Histogram histogram(const GrayImage& img);

GrayImage crop(const GrayImage& img, const Rect& r);
BinaryImage crop(const BinaryImage& img, const Rect& r);

/// Renders a mask as a viewable image (foreground white).
GrayImage to_gray(const BinaryImage& bin);

}  // namespace braille
