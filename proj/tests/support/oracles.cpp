#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace braille::oracle {

GrayImage random_gray(int w, int h, std::mt19937_64& rng) {
  GrayImage img(w, h);
  std::uniform_int_distribution<int> d(0, 255);
  for (auto& p : img.pixels()) p = static_cast<std::uint8_t>(d(rng));
  return img;
}

GrayImage random_binary_gray(int w, int h, double density, std::mt19937_64& rng) {
  GrayImage img(w, h);
  std::bernoulli_distribution on(density);
  for (auto& p : img.pixels()) p = on(rng) ? 255 : 0;
  return img;
}

GrayImage dense_gaussian(const GrayImage& img, double sigma) {
  const int r = static_cast<int>(std::ceil(3.0 * sigma));
  std::vector<double> k1(2 * r + 1);
  double sum = 0;
  for (int i = -r; i <= r; ++i) sum += k1[i + r] = std::exp(-(i * i) / (2.0 * sigma * sigma));
  for (auto& v : k1) v /= sum;
  GrayImage out(img.width(), img.height());
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      double acc = 0;
      for (int dy = -r; dy <= r; ++dy) {
        for (int dx = -r; dx <= r; ++dx) acc += k1[dy + r] * k1[dx + r] * img.clamped(x + dx, y + dy);
      }
      out.at(x, y) = static_cast<std::uint8_t>(std::clamp(std::floor(acc + 0.5), 0.0, 255.0));
    }
  }
  return out;
}

namespace {

Grid<int> correlate3(const GrayImage& img, const int (&k)[3][3]) {
  Grid<int> out(img.width(), img.height());
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      int acc = 0;
      for (int j = 0; j < 3; ++j) {
        for (int i = 0; i < 3; ++i) acc += k[j][i] * img.clamped(x + i - 1, y + j - 1);
      }
      out.at(x, y) = acc;
    }
  }
  return out;
}

template <typename Pick>
GrayImage disk_extreme(const GrayImage& img, int r, Pick pick) {
  GrayImage out(img.width(), img.height());
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      int best = img.at(x, y);
      for (int dy = -r; dy <= r; ++dy) {
        for (int dx = -r; dx <= r; ++dx) {
          if (dx * dx + dy * dy <= r * r) best = pick(best, static_cast<int>(img.clamped(x + dx, y + dy)));
        }
      }
      out.at(x, y) = static_cast<std::uint8_t>(best);
    }
  }
  return out;
}

}  // namespace

// Rows of the kernel are y = -1, 0, +1; columns x = -1, 0, +1.
Grid<int> prewitt_gx(const GrayImage& img) {
  static constexpr int k[3][3] = {{-1, 0, 1}, {-1, 0, 1}, {-1, 0, 1}};
  return correlate3(img, k);
}

Grid<int> prewitt_gy(const GrayImage& img) {
  static constexpr int k[3][3] = {{-1, -1, -1}, {0, 0, 0}, {1, 1, 1}};
  return correlate3(img, k);
}

GrayImage disk_min(const GrayImage& img, int r) {
  return disk_extreme(img, r, [](int a, int b) { return std::min(a, b); });
}

GrayImage disk_max(const GrayImage& img, int r) {
  return disk_extreme(img, r, [](int a, int b) { return std::max(a, b); });
}

Rect interior_bbox(const BinaryImage& bin, int margin) {
  const int w = bin.width(), h = bin.height();
  std::vector<char> border(static_cast<std::size_t>(w) * h, 0);
  std::deque<std::pair<int, int>> queue;
  const auto seed = [&](int x, int y) {
    auto& b = border[static_cast<std::size_t>(y) * w + x];
    if (bin.test(x, y) && !b) {
      b = 1;
      queue.emplace_back(x, y);
    }
  };
  for (int x = 0; x < w; ++x) {
    seed(x, 0);
    seed(x, h - 1);
  }
  for (int y = 0; y < h; ++y) {
    seed(0, y);
    seed(w - 1, y);
  }
  while (!queue.empty()) {
    const auto [x, y] = queue.front();
    queue.pop_front();
    for (int dy = -1; dy <= 1; ++dy) {
      for (int dx = -1; dx <= 1; ++dx) {
        const int nx = x + dx, ny = y + dy;
        if (nx >= 0 && ny >= 0 && nx < w && ny < h) seed(nx, ny);
      }
    }
  }
  int x0 = w, y0 = h, x1 = -1, y1 = -1;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (bin.test(x, y) && !border[static_cast<std::size_t>(y) * w + x]) {
        x0 = std::min(x0, x);
        y0 = std::min(y0, y);
        x1 = std::max(x1, x);
        y1 = std::max(y1, y);
      }
    }
  }
  if (x1 < 0) return Rect{};
  x0 = std::max(0, x0 - margin);
  y0 = std::max(0, y0 - margin);
  x1 = std::min(w - 1, x1 + margin);
  y1 = std::min(h - 1, y1 + margin);
  return Rect{x0, y0, x1 - x0 + 1, y1 - y0 + 1};
}

std::vector<MappingEntry> linear_lookup(const MappingTable& table, const std::string& digits) {
  std::vector<MappingEntry> out;
  for (const auto& e : table.entries) {
    if (e.seq.digits() == digits) out.push_back(e);
  }
  return out;
}

std::string keys_for_pattern(std::uint8_t bits) {
  // Keypad rows read 7 8 / 4 5 / 1 2; dots 1 4 / 2 5 / 3 6 sit in the same places.
  static constexpr struct {
    int dot;
    char key;
  } order[] = {{1, '7'}, {4, '8'}, {2, '4'}, {5, '5'}, {3, '1'}, {6, '2'}};
  std::string s;
  for (const auto& o : order) {
    if (bits & (1U << (o.dot - 1))) s += o.key;
  }
  return s;
}

GrayImage transpose(const GrayImage& img) {
  GrayImage out(img.height(), img.width());
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) out.at(y, x) = img.at(x, y);
  }
  return out;
}

Grid<int> transpose(const Grid<int>& g) {
  Grid<int> out(g.height(), g.width());
  for (int y = 0; y < g.height(); ++y) {
    for (int x = 0; x < g.width(); ++x) out.at(y, x) = g.at(x, y);
  }
  return out;
}

}  // namespace braille::oracle
