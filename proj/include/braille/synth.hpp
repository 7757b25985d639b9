#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "braille/extract.hpp"
#include "braille/image.hpp"
#include "braille/layout.hpp"
#include "braille/mapping.hpp"
#include "braille/text.hpp"

namespace braille {

enum class DotProfile { filled_disk, gaussian_bump };

struct RenderStyle {
  int background = 200;
  int dot = 150;  // must be darker than background
  DotProfile profile = DotProfile::filled_disk;
  double margin_mm = 12.0;
  int cells_per_line = 40;
  double scan_border_mm = 0.0;  // dark scanner shadow along the left and top edges
  int scan_border_level = 40;
  std::uint64_t seed = 1;

  void validate() const;
};

enum class NoiseKind { gaussian, salt, speck };

struct NoiseSpec {
  NoiseKind kind = NoiseKind::gaussian;
  double amount = 0.0;  // sigma for gaussian, per-pixel density for salt and speck
  double speck_radius = 3.0;
  int speck_level = 100;
  std::uint64_t seed = 1;
};

/// Cells for one word under the table's conventions: contractions are taken
/// greedily (longest first) wherever the decoding rules read them back, a
/// number sign precedes each digit run, and Indic vowels after a consonant
/// become vowel cells. Throws when a character has no cell or a cell would
/// read back differently at its position.
PatternRow encode_word(std::string_view word, const MappingTable& table);

/// Words wrapped into lines of at most `cells_per_line` cells with one blank
/// cell between words.
PatternRows encode_text(std::string_view text, const MappingTable& table, int cells_per_line);

struct RenderedPage {
  GrayImage image;
  PatternRows patterns;
  std::vector<std::vector<Rect>> cell_boxes;  // ground-truth cell rects, per line
  std::vector<int> line_tops;
  std::string text;  // input words joined by single spaces
};

/// Draws the encoded text with dots at exact geometric positions.
RenderedPage render_page(std::string_view text, const MappingTable& table, const BrailleGeometry& g,
                         const RenderStyle& style);

/// Draws already-encoded rows.
RenderedPage render_patterns(const PatternRows& rows, const BrailleGeometry& g, const RenderStyle& style);

GrayImage add_noise(const GrayImage& img, const NoiseSpec& spec);

}  // namespace braille
