#include "braille/enhance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

namespace braille {
namespace {

// round(num / den) with halves rounded up; num >= 0, den > 0.
int div_round_half_up(long long num, long long den) { return static_cast<int>((2 * num + den) / (2 * den)); }

std::uint8_t clamp_u8(long long v) { return static_cast<std::uint8_t>(std::clamp<long long>(v, 0, 255)); }

std::uint8_t clamp_round(double v) {
  return static_cast<std::uint8_t>(std::clamp(std::floor(v + 0.5), 0.0, 255.0));
}

GrayImage apply_lut(const GrayImage& img, const std::array<std::uint8_t, 256>& lut) {
  GrayImage out(img.width(), img.height());
  std::transform(img.pixels().begin(), img.pixels().end(), out.pixels().begin(),
                 [&](std::uint8_t v) { return lut[v]; });
  return out;
}

// Linear interpolation between two control points, rounded half-up.
long long segment(int v, int x0, int y0, int x1, int y1) {
  if (x1 == x0) return y1;
  return y0 + div_round_half_up(static_cast<long long>(y1 - y0) * (v - x0), x1 - x0);
}

// Van Herk / Gil-Werman running extreme over a window of 2*half+1 with
// replicated ends. `better(a, b)` is true when a should win over b.
template <typename Better>
void running_extreme(std::span<const std::uint8_t> in, int half, std::span<std::uint8_t> out, Better better,
                     std::vector<std::uint8_t>& padded, std::vector<std::uint8_t>& fwd,
                     std::vector<std::uint8_t>& bwd) {
  const int n = static_cast<int>(in.size());
  if (half == 0) {
    std::copy(in.begin(), in.end(), out.begin());
    return;
  }
  const int win = 2 * half + 1;
  const int len = n + 2 * half;
  padded.resize(static_cast<std::size_t>(len));
  for (int i = 0; i < len; ++i) padded[i] = in[std::clamp(i - half, 0, n - 1)];
  fwd.resize(padded.size());
  bwd.resize(padded.size());
  const auto pick = [&](std::uint8_t a, std::uint8_t b) { return better(a, b) ? a : b; };
  for (int i = 0; i < len; ++i) fwd[i] = (i % win == 0) ? padded[i] : pick(fwd[i - 1], padded[i]);
  for (int i = len - 1; i >= 0; --i) {
    bwd[i] = (i == len - 1 || (i + 1) % win == 0) ? padded[i] : pick(bwd[i + 1], padded[i]);
  }
  for (int x = 0; x < n; ++x) out[x] = pick(bwd[x], fwd[x + win - 1]);
}

template <typename Better>
GrayImage disk_extreme(const GrayImage& img, int radius, Better better) {
  if (radius < 0) throw Error("structuring element radius must be non-negative");
  const int w = img.width();
  const int h = img.height();
  std::vector<int> half_width(static_cast<std::size_t>(2 * radius + 1));
  for (int dy = -radius; dy <= radius; ++dy) {
    half_width[dy + radius] =
        static_cast<int>(std::floor(std::sqrt(static_cast<double>(radius * radius - dy * dy)) + 1e-9));
  }

  // Ring buffer over the 2r+1 source rows a single output row can touch:
  // window[slot][hw] is the running extreme of that row for half width hw.
  const int span = 2 * radius + 1;
  std::vector<std::vector<std::vector<std::uint8_t>>> window(
      static_cast<std::size_t>(span),
      std::vector<std::vector<std::uint8_t>>(static_cast<std::size_t>(radius + 1),
                                             std::vector<std::uint8_t>(static_cast<std::size_t>(w))));
  std::vector<int> slot_row(static_cast<std::size_t>(span), std::numeric_limits<int>::min());
  std::vector<std::uint8_t> padded, fwd, bwd;
  GrayImage out(w, h);

  const auto ensure_row = [&](int src) -> std::size_t {
    const auto slot = static_cast<std::size_t>(src % span);
    if (slot_row[slot] != src) {
      const auto in = img.row(src);
      for (int hw = 0; hw <= radius; ++hw) running_extreme(in, hw, window[slot][hw], better, padded, fwd, bwd);
      slot_row[slot] = src;
    }
    return slot;
  };

  for (int y = 0; y < h; ++y) {
    auto dst = out.row(y);
    bool first = true;
    for (int dy = -radius; dy <= radius; ++dy) {
      const int src = std::clamp(y + dy, 0, h - 1);
      const int hw = half_width[dy + radius];
      const std::size_t slot = ensure_row(src);
      const auto& r = window[slot][hw];
      if (first) {
        std::copy(r.begin(), r.end(), dst.begin());
        first = false;
      } else {
        for (int x = 0; x < w; ++x) dst[x] = better(r[x], dst[x]) ? r[x] : dst[x];
      }
    }
  }
  return out;
}

}  // namespace

GrayImage contrast_stretch(const GrayImage& img, const PiecewiseParams& p) {
  if (p.r1 >= p.r2) throw Error("contrast stretch requires r1 < r2");
  if (p.s1 > p.s2) throw Error("contrast stretch requires s1 <= s2");
  for (int v : {p.r1, p.s1, p.r2, p.s2}) {
    if (v < 0 || v > 255) throw Error("contrast stretch control points must lie in [0,255]");
  }
  std::array<std::uint8_t, 256> lut{};
  for (int v = 0; v < 256; ++v) {
    long long s = 0;
    if (v <= p.r1) {
      s = segment(v, 0, 0, p.r1, p.s1);
    } else if (v <= p.r2) {
      s = segment(v, p.r1, p.s1, p.r2, p.s2);
    } else {
      s = segment(v, p.r2, p.s2, 255, 255);
    }
    lut[v] = clamp_u8(s);
  }
  return apply_lut(img, lut);
}

GrayImage intensity_adjust(const GrayImage& img, int low, int high) {
  if (low >= high) throw Error("intensity adjustment requires low < high");
  std::array<std::uint8_t, 256> lut{};
  for (int v = 0; v < 256; ++v) {
    if (v <= low) {
      lut[v] = 0;
    } else if (v >= high) {
      lut[v] = 255;
    } else {
      lut[v] = clamp_u8(div_round_half_up(255LL * (v - low), high - low));
    }
  }
  return apply_lut(img, lut);
}

GrayImage gaussian_smooth(const GrayImage& img, double sigma) {
  if (!(sigma > 0.0)) throw Error("gaussian sigma must be positive");
  const int radius = static_cast<int>(std::ceil(3.0 * sigma));
  std::vector<double> kernel(static_cast<std::size_t>(2 * radius + 1));
  double sum = 0.0;
  for (int i = -radius; i <= radius; ++i) {
    kernel[i + radius] = std::exp(-(i * i) / (2.0 * sigma * sigma));
    sum += kernel[i + radius];
  }
  for (auto& k : kernel) k /= sum;

  const int w = img.width();
  const int h = img.height();
  Grid<double> horiz(w, h);
  for (int y = 0; y < h; ++y) {
    const auto src = img.row(y);
    auto dst = horiz.row(y);
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      for (int i = -radius; i <= radius; ++i) acc += kernel[i + radius] * src[std::clamp(x + i, 0, w - 1)];
      dst[x] = acc;
    }
  }
  GrayImage out(w, h);
  std::vector<double> acc(static_cast<std::size_t>(w));
  for (int y = 0; y < h; ++y) {
    std::fill(acc.begin(), acc.end(), 0.0);
    for (int i = -radius; i <= radius; ++i) {
      const auto src = horiz.row(std::clamp(y + i, 0, h - 1));
      const double k = kernel[i + radius];
      for (int x = 0; x < w; ++x) acc[x] += k * src[x];
    }
    auto dst = out.row(y);
    for (int x = 0; x < w; ++x) dst[x] = clamp_round(acc[x]);
  }
  return out;
}

GrayImage erode(const GrayImage& img, int radius) { return disk_extreme(img, radius, std::less<>{}); }

GrayImage dilate(const GrayImage& img, int radius) { return disk_extreme(img, radius, std::greater<>{}); }

GrayImage morph_open(const GrayImage& img, int radius) {
  if (radius < 1) throw Error("opening radius must be at least 1");
  return dilate(erode(img, radius), radius);
}

GrayImage morph_close(const GrayImage& img, int radius) {
  if (radius < 1) throw Error("closing radius must be at least 1");
  return erode(dilate(img, radius), radius);
}

GrayImage morph_filter(const GrayImage& img, int radius, MorphMode mode) {
  return mode == MorphMode::open ? morph_open(img, radius) : morph_close(img, radius);
}

GradientPair prewitt_gradients(const GrayImage& img) {
  const int w = img.width();
  const int h = img.height();
  if (w < 3 || h < 3) throw Error("Prewitt operator needs an image of at least 3x3 pixels");
  GradientPair g{Grid<int>(w, h), Grid<int>(w, h)};
  for (int y = 0; y < h; ++y) {
    const auto up = img.row(std::max(y - 1, 0));
    const auto mid = img.row(y);
    const auto down = img.row(std::min(y + 1, h - 1));
    auto gx = g.gx.row(y);
    auto gy = g.gy.row(y);
    for (int x = 0; x < w; ++x) {
      const int l = std::max(x - 1, 0);
      const int r = std::min(x + 1, w - 1);
      gx[x] = (up[r] + mid[r] + down[r]) - (up[l] + mid[l] + down[l]);
      gy[x] = (down[l] + down[x] + down[r]) - (up[l] + up[x] + up[r]);
    }
  }
  return g;
}

double max_gradient_magnitude(const GradientPair& g) {
  long long best = 0;
  const auto gx = g.gx.pixels();
  const auto gy = g.gy.pixels();
  for (std::size_t i = 0; i < gx.size(); ++i) {
    best = std::max(best, static_cast<long long>(gx[i]) * gx[i] + static_cast<long long>(gy[i]) * gy[i]);
  }
  return std::sqrt(static_cast<double>(best));
}

BinaryImage edge_map(const GradientPair& g, double threshold) {
  if (threshold < 0.0) throw Error("edge threshold must be non-negative");
  BinaryImage out(g.gx.width(), g.gx.height());
  const double t2 = threshold * threshold;
  const auto gx = g.gx.pixels();
  const auto gy = g.gy.pixels();
  auto dst = out.pixels();
  for (std::size_t i = 0; i < gx.size(); ++i) {
    const double m2 = static_cast<double>(gx[i]) * gx[i] + static_cast<double>(gy[i]) * gy[i];
    dst[i] = m2 > t2 ? 1 : 0;
  }
  return out;
}

Rect autocrop_content(const BinaryImage& bin, int margin) {
  const int w = bin.width();
  const int h = bin.height();
  std::vector<std::uint8_t> border_linked(bin.size(), 0);
  std::vector<int> stack;
  const auto seed = [&](int x, int y) {
    const std::size_t i = static_cast<std::size_t>(y) * w + x;
    if (bin.test(x, y) && !border_linked[i]) {
      border_linked[i] = 1;
      stack.push_back(static_cast<int>(i));
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
  while (!stack.empty()) {
    const int i = stack.back();
    stack.pop_back();
    const int x = i % w;
    const int y = i / w;
    for (int dy = -1; dy <= 1; ++dy) {
      for (int dx = -1; dx <= 1; ++dx) {
        const int nx = x + dx;
        const int ny = y + dy;
        if (nx >= 0 && ny >= 0 && nx < w && ny < h) seed(nx, ny);
      }
    }
  }

  int x0 = w, y0 = h, x1 = -1, y1 = -1;
  for (int y = 0; y < h; ++y) {
    const auto row = bin.row(y);
    for (int x = 0; x < w; ++x) {
      if (row[x] && !border_linked[static_cast<std::size_t>(y) * w + x]) {
        x0 = std::min(x0, x);
        x1 = std::max(x1, x);
        y0 = std::min(y0, y);
        y1 = std::max(y1, y);
      }
    }
  }
  if (x1 < 0) throw Error("no foreground remains after discarding border-connected regions");
  x0 = std::max(0, x0 - margin);
  y0 = std::max(0, y0 - margin);
  x1 = std::min(w - 1, x1 + margin);
  y1 = std::min(h - 1, y1 + margin);
  return Rect{x0, y0, x1 - x0 + 1, y1 - y0 + 1};
}

}  // namespace braille
