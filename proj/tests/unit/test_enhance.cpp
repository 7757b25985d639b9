#include <doctest.h>

#include <random>

#include "braille/enhance.hpp"
#include "oracles.hpp"

using namespace braille;

namespace {

GrayImage ramp() {
  GrayImage img(256, 1);
  for (int v = 0; v < 256; ++v) img.at(v, 0) = static_cast<std::uint8_t>(v);
  return img;
}

GradientPair pair_of(int gx, int gy) {
  GradientPair g{Grid<int>(1, 1, gx), Grid<int>(1, 1, gy)};
  return g;
}

}  // namespace

TEST_CASE("contrast_stretch anchors and segment values") {
  const PiecewiseParams p{50, 0, 200, 255};
  const GrayImage out = contrast_stretch(ramp(), p);
  CHECK(out.at(50, 0) == 0);
  CHECK(out.at(200, 0) == 255);
  CHECK(out.at(125, 0) == 128);  // 255 * 75 / 150 = 127.5, half-up
  CHECK(contrast_stretch(ramp(), PiecewiseParams{0, 0, 255, 255}) == ramp());
  CHECK_THROWS_AS(contrast_stretch(ramp(), PiecewiseParams{200, 0, 200, 255}), Error);
  CHECK_THROWS_AS(contrast_stretch(ramp(), PiecewiseParams{200, 0, 100, 255}), Error);
}

TEST_CASE("intensity_adjust clamps and rounds half-up") {
  const GrayImage out = intensity_adjust(ramp(), 100, 200);
  CHECK(out.at(99, 0) == 0);
  CHECK(out.at(100, 0) == 0);
  CHECK(out.at(201, 0) == 255);
  CHECK(out.at(150, 0) == 128);
  CHECK(intensity_adjust(ramp(), 0, 255) == ramp());
  CHECK_THROWS_AS(intensity_adjust(ramp(), 10, 10), Error);
}

TEST_CASE("point maps are monotone") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> d(0, 255);
  for (int trial = 0; trial < 50; ++trial) {
    int r1 = d(rng), r2 = d(rng);
    if (r1 == r2) continue;
    if (r1 > r2) std::swap(r1, r2);
    int s1 = d(rng), s2 = d(rng);
    if (s1 > s2) std::swap(s1, s2);
    const GrayImage cs = contrast_stretch(ramp(), PiecewiseParams{r1, s1, r2, s2});
    const GrayImage ia = intensity_adjust(ramp(), r1, r2);
    for (int v = 1; v < 256; ++v) {
      CHECK(cs.at(v, 0) >= cs.at(v - 1, 0));
      CHECK(ia.at(v, 0) >= ia.at(v - 1, 0));
    }
  }
}

TEST_CASE("gaussian_smooth") {
  CHECK_THROWS_AS(gaussian_smooth(ramp(), 0.0), Error);

  const GrayImage flat(20, 20, std::uint8_t{77});
  const GrayImage smooth = gaussian_smooth(flat, 1.5);
  for (auto v : smooth.pixels()) CHECK(std::abs(int(v) - 77) <= 1);

  GrayImage impulse(15, 15, std::uint8_t{0});
  impulse.at(7, 7) = 255;
  const GrayImage r = gaussian_smooth(impulse, 1.0);
  for (int y = 0; y < 15; ++y) {
    for (int x = 0; x < 15; ++x) {
      CHECK(r.at(x, y) == r.at(14 - x, y));
      CHECK(r.at(x, y) == r.at(x, 14 - y));
      CHECK(r.at(x, y) == r.at(y, x));
      CHECK(r.at(x, y) <= r.at(7, 7));
    }
  }

  std::mt19937_64 rng(9);
  for (double sigma : {0.6, 1.0, 2.0}) {
    const GrayImage img = oracle::random_gray(9, 9, rng);
    const GrayImage got = gaussian_smooth(img, sigma);
    const GrayImage want = oracle::dense_gaussian(img, sigma);
    for (std::size_t i = 0; i < got.size(); ++i) CHECK(std::abs(int(got.pixels()[i]) - int(want.pixels()[i])) <= 1);
  }

  SUBCASE("mean is preserved on interior-dominated images") {
    GrayImage img(64, 64, std::uint8_t{100});
    for (int y = 20; y < 44; ++y) {
      for (int x = 20; x < 44; ++x) img.at(x, y) = 200;
    }
    double a = 0, b = 0;
    const GrayImage s = gaussian_smooth(img, 2.0);
    for (std::size_t i = 0; i < img.size(); ++i) {
      a += img.pixels()[i];
      b += s.pixels()[i];
    }
    CHECK(std::abs(a - b) / img.size() <= 1.0);
  }
}

TEST_CASE("erosion and dilation match the disk oracle") {
  std::mt19937_64 rng(13);
  for (int r : {1, 2, 3, 5}) {
    const GrayImage img = oracle::random_gray(17, 13, rng);
    CHECK(erode(img, r) == oracle::disk_min(img, r));
    CHECK(dilate(img, r) == oracle::disk_max(img, r));
  }
}

TEST_CASE("morph_open") {
  const GrayImage flat(10, 10, std::uint8_t{90});
  CHECK(morph_open(flat, 2) == flat);

  GrayImage single(9, 9, std::uint8_t{0});
  single.at(4, 4) = 255;
  CHECK(morph_open(single, 1).at(4, 4) == 0);

  CHECK_THROWS_AS(morph_open(flat, 0), Error);

  std::mt19937_64 rng(17);
  for (int i = 0; i < 20; ++i) {
    const GrayImage img = oracle::random_binary_gray(16, 16, 0.5, rng);
    const GrayImage once = morph_open(img, 1 + i % 3);
    CHECK(morph_open(once, 1 + i % 3) == once);
    for (std::size_t k = 0; k < img.size(); ++k) CHECK(once.pixels()[k] <= img.pixels()[k]);
  }
}

TEST_CASE("morph_close is extensive and idempotent") {
  std::mt19937_64 rng(19);
  for (int i = 0; i < 20; ++i) {
    const GrayImage img = oracle::random_gray(16, 16, rng);
    const GrayImage once = morph_close(img, 2);
    CHECK(morph_close(once, 2) == once);
    for (std::size_t k = 0; k < img.size(); ++k) CHECK(once.pixels()[k] >= img.pixels()[k]);
  }
}

TEST_CASE("flat morphology commutes with monotone point maps") {
  // This is why an enhancement order that only moves MO past CS and IS
  // cannot change the result.
  std::mt19937_64 rng(23);
  const PiecewiseParams p{90, 30, 180, 220};
  for (int i = 0; i < 20; ++i) {
    const GrayImage img = oracle::random_gray(20, 20, rng);
    const auto map = [&](const GrayImage& g) { return intensity_adjust(contrast_stretch(g, p), 40, 210); };
    CHECK(morph_close(map(img), 3) == map(morph_close(img, 3)));
    CHECK(morph_open(map(img), 3) == map(morph_open(img, 3)));
  }
}

TEST_CASE("prewitt_gradients") {
  const GradientPair flat = prewitt_gradients(GrayImage(6, 6, std::uint8_t{50}));
  for (auto v : flat.gx.pixels()) CHECK(v == 0);
  for (auto v : flat.gy.pixels()) CHECK(v == 0);

  GrayImage step(8, 5, std::uint8_t{0});
  for (int y = 0; y < 5; ++y) {
    for (int x = 4; x < 8; ++x) step.at(x, y) = 9;
  }
  const GradientPair g = prewitt_gradients(step);
  CHECK(g.gx.at(3, 2) == 27);
  CHECK(g.gx.at(4, 2) == 27);
  CHECK(g.gx.at(1, 2) == 0);
  for (auto v : g.gy.pixels()) CHECK(v == 0);

  CHECK_THROWS_AS(prewitt_gradients(GrayImage(2, 5)), Error);

  std::mt19937_64 rng(29);
  for (int i = 0; i < 10; ++i) {
    const GrayImage img = oracle::random_gray(16, 16, rng);
    const GradientPair got = prewitt_gradients(img);
    CHECK(got.gx == oracle::prewitt_gx(img));
    CHECK(got.gy == oracle::prewitt_gy(img));
    CHECK(got.gy == oracle::transpose(prewitt_gradients(oracle::transpose(img)).gx));
  }
}

TEST_CASE("edge_map is strict and monotone in the threshold") {
  CHECK(edge_map(pair_of(3, 4), 4.9).test(0, 0));
  CHECK_FALSE(edge_map(pair_of(3, 4), 5.0).test(0, 0));
  CHECK(edge_map(pair_of(0, 0), 0.0).count() == 0);

  std::mt19937_64 rng(31);
  const GradientPair g = prewitt_gradients(oracle::random_gray(16, 16, rng));
  BinaryImage prev = edge_map(g, 0.0);
  for (double t = 10; t < 1200; t += 37) {
    const BinaryImage cur = edge_map(g, t);
    for (std::size_t k = 0; k < cur.size(); ++k) CHECK((!cur.pixels()[k] || prev.pixels()[k]));
    prev = cur;
  }
}

TEST_CASE("autocrop_content") {
  BinaryImage one(20, 20, std::uint8_t{0});
  one.at(10, 10) = 1;
  CHECK(autocrop_content(one, 2) == Rect{8, 8, 5, 5});

  BinaryImage framed(12, 12, std::uint8_t{0});
  for (int i = 0; i < 12; ++i) {
    framed.at(i, 0) = framed.at(i, 11) = framed.at(0, i) = framed.at(11, i) = 1;
  }
  framed.at(1, 5) = 1;  // touches the frame diagonally-adjacent: discarded too
  framed.at(6, 7) = 1;
  CHECK(autocrop_content(framed, 0) == Rect{6, 7, 1, 1});
  CHECK(autocrop_content(framed, 0) == oracle::interior_bbox(framed, 0));

  CHECK_THROWS_AS(autocrop_content(BinaryImage(6, 6, std::uint8_t{1}), 1), Error);
  CHECK_THROWS_AS(autocrop_content(BinaryImage(6, 6, std::uint8_t{0}), 1), Error);

  std::mt19937_64 rng(37);
  for (int i = 0; i < 30; ++i) {
    const GrayImage g = oracle::random_binary_gray(24, 18, 0.08, rng);
    BinaryImage b(24, 18);
    for (std::size_t k = 0; k < b.size(); ++k) b.pixels()[k] = g.pixels()[k] ? 1 : 0;
    const Rect want = oracle::interior_bbox(b, 2);
    if (want.w == 0) {
      CHECK_THROWS_AS(autocrop_content(b, 2), Error);
    } else {
      CHECK(autocrop_content(b, 2) == want);
    }
  }
}
