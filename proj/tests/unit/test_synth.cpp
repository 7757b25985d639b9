#include <doctest.h>

#include <cmath>

#include "braille/decode.hpp"
#include "braille/synth.hpp"
#include "corpus.hpp"

using namespace braille;

namespace {

const MappingTable& g2() {
  static const MappingTable t = load_shipped_table(Language::english, 2);
  return t;
}

}  // namespace

TEST_CASE("encode_word") {
  CHECK(encode_word("a", g2()) == PatternRow{DotPattern::from_dots("1")});
  CHECK(encode_word("but", g2()) == PatternRow{DotPattern::from_dots("12")});
  CHECK(encode_word("the", g2()) == PatternRow{DotPattern::from_dots("2346")});
  // Wordsign letters are spelled out inside longer words.
  CHECK(encode_word("bus", g2()).size() == 3);
  CHECK(encode_word("42", g2()) ==
        PatternRow{DotPattern::from_dots("3456"), DotPattern::from_dots("145"), DotPattern::from_dots("12")});
  CHECK_THROWS_AS(encode_word("b", g2()), Error);  // would read back as "but"
  CHECK_THROWS_AS(encode_word("A", g2()), Error);  // no capitals
  CHECK_THROWS_AS(encode_word("x?y", g2()), Error);
}

TEST_CASE("every corpus word survives encode and decode") {
  for (Language lang : {Language::english, Language::hindi, Language::tamil}) {
    const MappingTable table = load_shipped_table(lang, 2);
    const Decoder d(table);
    for (auto w : corpus::words(lang)) {
      CAPTURE(w);
      CHECK(d.text(PatternRows{encode_word(w, table)}) == w);
    }
  }
}

TEST_CASE("encode_text wraps on word boundaries") {
  const PatternRows rows = encode_text("aa bb cc", g2(), 5);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].size() == 5);  // "aa" blank "bb"
  CHECK(rows[0][2].empty());
  CHECK(rows[1].size() == 2);
  CHECK_THROWS_AS(encode_text("abcdefgh", g2(), 4), Error);
}

TEST_CASE("render_page") {
  const BrailleGeometry g;
  const RenderStyle style;
  SUBCASE("empty text is a blank page") {
    const RenderedPage p = render_page("", g2(), g, style);
    CHECK(p.patterns.empty());
    for (auto v : p.image.pixels()) CHECK(v == style.background);
  }
  SUBCASE("'a' puts one dot at the dot-1 position") {
    const RenderedPage p = render_page("a", g2(), g, style);
    REQUIRE(p.patterns == PatternRows{{DotPattern::from_dots("1")}});
    const double cx = g.to_px(style.margin_mm) + g.dot_pitch_px() / 2;
    const double cy = cx;
    CHECK(p.image.at(int(cx), int(cy)) == style.dot);
    const double r = g.dot_diameter_px() / 2;
    CHECK(p.image.at(int(cx + r + 2), int(cy)) == style.background);
    // Nothing at dot 2 or dot 4.
    CHECK(p.image.at(int(cx), int(cy + g.dot_pitch_px())) == style.background);
    CHECK(p.image.at(int(cx + g.dot_pitch_px()), int(cy)) == style.background);
    std::size_t dark = 0;
    for (auto v : p.image.pixels()) dark += v != style.background;
    CHECK(std::abs(double(dark) - g.dot_area_px()) < 0.15 * g.dot_area_px());
  }
  SUBCASE("deterministic, ground truth equals encoding") {
    const RenderedPage a = render_page("the cat sat", g2(), g, style);
    const RenderedPage b = render_page("the cat sat", g2(), g, style);
    CHECK(a.image == b.image);
    CHECK(a.patterns == encode_text("the cat sat", g2(), style.cells_per_line));
  }
  SUBCASE("gaussian-bump dots are darkest at the centre") {
    RenderStyle bump = style;
    bump.profile = DotProfile::gaussian_bump;
    const RenderedPage p = render_page("a", g2(), g, bump);
    const int c = int(g.to_px(style.margin_mm) + g.dot_pitch_px() / 2);
    CHECK(p.image.at(c, c) < p.image.at(c + 4, c));
    CHECK(p.image.at(c + 4, c) <= style.background);
  }
  SUBCASE("style validation") {
    RenderStyle bad = style;
    bad.dot = bad.background;
    CHECK_THROWS_AS(render_page("a", g2(), g, bad), Error);
  }
}

TEST_CASE("add_noise") {
  const GrayImage flat(1000, 1000, std::uint8_t{128});
  SUBCASE("zero amount is the identity") {
    CHECK(add_noise(flat, NoiseSpec{NoiseKind::gaussian, 0.0}) == flat);
    CHECK(add_noise(flat, NoiseSpec{NoiseKind::salt, 0.0}) == flat);
  }
  SUBCASE("same seed, same output; other seed, other output") {
    const NoiseSpec s{NoiseKind::gaussian, 5.0, 3, 100, 42};
    CHECK(add_noise(flat, s) == add_noise(flat, s));
    NoiseSpec other = s;
    other.seed = 43;
    CHECK_FALSE(add_noise(flat, s) == add_noise(flat, other));
  }
  SUBCASE("salt flips a binomial number of pixels") {
    const GrayImage out = add_noise(flat, NoiseSpec{NoiseKind::salt, 0.001, 3, 100, 7});
    std::size_t flipped = 0;
    for (auto v : out.pixels()) {
      flipped += v != 128;
      CHECK((v == 128 || v == 0 || v == 255));
    }
    const double n = 1e6, p = 0.001, sd = std::sqrt(n * p * (1 - p));
    CHECK(std::abs(double(flipped) - n * p) <= 3 * sd);
  }
  SUBCASE("gaussian noise is zero-mean with the requested spread") {
    const GrayImage out = add_noise(flat, NoiseSpec{NoiseKind::gaussian, 8.0, 3, 100, 5});
    double sum = 0, sq = 0;
    for (auto v : out.pixels()) {
      sum += v - 128.0;
      sq += (v - 128.0) * (v - 128.0);
    }
    CHECK(std::abs(sum / 1e6) < 0.1);
    CHECK(std::abs(std::sqrt(sq / 1e6) - 8.0) < 0.2);
  }
  SUBCASE("specks are dark disks") {
    const GrayImage out = add_noise(flat, NoiseSpec{NoiseKind::speck, 0.0005, 3, 100, 9});
    std::size_t dark = 0;
    for (auto v : out.pixels()) {
      dark += v == 100;
      CHECK((v == 128 || v == 100));
    }
    CHECK(dark > 500 * 20);
  }
  CHECK_THROWS_AS(add_noise(flat, NoiseSpec{NoiseKind::gaussian, -1.0}), Error);
}
