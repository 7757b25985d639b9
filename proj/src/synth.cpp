#include "braille/synth.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <random>

namespace braille {
namespace {

bool seq_has(const MappingTable& t, const CanonicalSeq& seq, EntryClass cls) {
  return std::any_of(t.entries.begin(), t.entries.end(),
                     [&](const MappingEntry& e) { return e.seq == seq && e.cls == cls; });
}

std::string describe(std::string_view word) { return "'" + std::string(word) + "'"; }

// Longest entry grapheme matching at `pos` among entries accepted by `pred`.
template <typename Pred>
const MappingEntry* longest_match(const MappingTable& t, std::string_view rest, Pred pred) {
  const MappingEntry* best = nullptr;
  for (const MappingEntry& e : t.entries) {
    if (!pred(e) || e.grapheme.empty() || !rest.starts_with(e.grapheme)) continue;
    if (!best || e.grapheme.size() > best->grapheme.size()) best = &e;
  }
  return best;
}

// Rejects cells that the position-dependent reading rules would decode as
// something other than the planned entry.
void check_readback(std::string_view word, const std::vector<const MappingEntry*>& cells, const MappingTable& t) {
  bool numeric = false;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const MappingEntry& e = *cells[i];
    const bool initial = i == 0;
    const bool final = i + 1 == cells.size();
    const bool has_letter = seq_has(t, e.seq, EntryClass::letter);
    const bool has_contraction = seq_has(t, e.seq, EntryClass::contraction);
    const bool has_punct = seq_has(t, e.seq, EntryClass::punctuation);
    const bool has_digit = seq_has(t, e.seq, EntryClass::digit);
    const bool has_indicator = seq_has(t, e.seq, EntryClass::indicator);

    std::string problem;
    if (numeric && has_digit && e.cls != EntryClass::digit) {
      problem = "letter directly after a number would read as a digit";
    } else if (has_indicator && e.cls != EntryClass::indicator) {
      problem = "cell doubles as the number sign";
    } else if (e.cls == EntryClass::punctuation && (has_letter || has_contraction) && !initial && !final) {
      problem = "punctuation inside a word would read as a letter";
    } else if (e.cls != EntryClass::punctuation && has_punct && (initial || final)) {
      problem = "cell at a word edge would read as punctuation";
    } else if (e.cls == EntryClass::letter && has_contraction && initial && final) {
      problem = "single-letter word would read as a wordsign";
    } else if (e.cls == EntryClass::contraction && has_letter && !(initial && final)) {
      problem = "wordsign used inside a longer word";
    }
    if (!problem.empty()) throw Error("cannot encode " + describe(word) + ": " + problem);
    numeric = e.cls == EntryClass::indicator || e.cls == EntryClass::digit;
  }
}

std::vector<const MappingEntry*> plan_english(std::string_view word, const MappingTable& t) {
  std::vector<const MappingEntry*> cells;
  for (const MappingEntry& e : t.entries) {
    if (e.cls == EntryClass::contraction && e.grapheme == word && seq_has(t, e.seq, EntryClass::letter)) {
      return {&e};
    }
  }
  const MappingEntry* number_sign = nullptr;
  for (const MappingEntry& e : t.entries) {
    if (e.cls == EntryClass::indicator) number_sign = &e;
  }

  bool in_number = false;
  std::size_t pos = 0;
  while (pos < word.size()) {
    const std::string_view rest = word.substr(pos);
    if (std::isdigit(static_cast<unsigned char>(rest.front()))) {
      const MappingEntry* digit =
          longest_match(t, rest.substr(0, 1), [](const MappingEntry& e) { return e.cls == EntryClass::digit; });
      if (!digit || !number_sign) throw Error("cannot encode " + describe(word) + ": no cell for digits");
      if (!in_number) cells.push_back(number_sign);
      cells.push_back(digit);
      in_number = true;
      ++pos;
      continue;
    }
    in_number = false;

    const MappingEntry* contraction = longest_match(t, rest, [&](const MappingEntry& e) {
      if (e.cls != EntryClass::contraction || seq_has(t, e.seq, EntryClass::letter)) return false;
      if (seq_has(t, e.seq, EntryClass::punctuation)) return pos > 0 && pos + e.grapheme.size() < word.size();
      return true;
    });
    const MappingEntry* single = longest_match(t, rest, [](const MappingEntry& e) {
      return e.cls == EntryClass::letter || e.cls == EntryClass::punctuation;
    });
    const MappingEntry* chosen = contraction && (!single || contraction->grapheme.size() > single->grapheme.size())
                                     ? contraction
                                     : single;
    if (!chosen) throw Error("cannot encode " + describe(word) + ": no cell for " + describe(rest.substr(0, 1)));
    cells.push_back(chosen);
    pos += chosen->grapheme.size();
  }
  return cells;
}

std::vector<const MappingEntry*> plan_indic(std::string_view word, const MappingTable& t) {
  const MappingEntry* inherent = nullptr;
  for (const MappingEntry& e : t.entries) {
    if (e.role == IndicRole::vowel && e.dependent.empty()) inherent = &e;
  }

  std::vector<const MappingEntry*> cells;
  bool after_consonant = false;
  std::size_t pos = 0;
  while (pos < word.size()) {
    const std::string_view rest = word.substr(pos);
    const MappingEntry* independent = longest_match(t, rest, [](const MappingEntry&) { return true; });
    const MappingEntry* sign = nullptr;
    if (after_consonant) {
      for (const MappingEntry& e : t.entries) {
        if (e.role == IndicRole::vowel && !e.dependent.empty() && rest.starts_with(e.dependent) &&
            (!sign || e.dependent.size() > sign->dependent.size())) {
          sign = &e;
        }
      }
    }
    if (sign && (!independent || sign->dependent.size() >= independent->grapheme.size())) {
      cells.push_back(sign);
      pos += sign->dependent.size();
      after_consonant = false;
      continue;
    }
    if (!independent) throw Error("cannot encode " + describe(word) + ": no cell at " + describe(rest.substr(0, 3)));
    if (independent->role == IndicRole::vowel && after_consonant) {
      // Explicit inherent vowel keeps the following vowel independent.
      if (!inherent) throw Error("cannot encode " + describe(word) + ": table lacks the inherent vowel");
      cells.push_back(inherent);
    }
    cells.push_back(independent);
    pos += independent->grapheme.size();
    after_consonant = independent->role == IndicRole::consonant;
  }
  return cells;
}

void fill_dot(GrayImage& img, double cx, double cy, double radius, const RenderStyle& style) {
  const double reach = style.profile == DotProfile::filled_disk ? radius : 2.0 * radius;
  const int x0 = std::max(0, static_cast<int>(std::floor(cx - reach)));
  const int x1 = std::min(img.width() - 1, static_cast<int>(std::ceil(cx + reach)));
  const int y0 = std::max(0, static_cast<int>(std::floor(cy - reach)));
  const int y1 = std::min(img.height() - 1, static_cast<int>(std::ceil(cy + reach)));
  const double depth = style.background - style.dot;
  const double s = radius / 2.0;
  for (int y = y0; y <= y1; ++y) {
    for (int x = x0; x <= x1; ++x) {
      const double dx = x + 0.5 - cx;
      const double dy = y + 0.5 - cy;
      const double d2 = dx * dx + dy * dy;
      if (style.profile == DotProfile::filled_disk) {
        if (d2 <= radius * radius) img.at(x, y) = static_cast<std::uint8_t>(style.dot);
      } else if (d2 <= reach * reach) {
        const double v = style.background - depth * std::exp(-d2 / (2.0 * s * s));
        img.at(x, y) = std::min(img.at(x, y), static_cast<std::uint8_t>(std::lround(v)));
      }
    }
  }
}

}  // namespace

void RenderStyle::validate() const {
  if (background < 0 || background > 255 || dot < 0 || dot > 255) throw Error("render intensities must be in [0,255]");
  if (dot >= background) throw Error("dots must be darker than the background");
  if (cells_per_line < 1) throw Error("cells_per_line must be positive");
  if (margin_mm < 0 || scan_border_mm < 0) throw Error("margins must be non-negative");
}

PatternRow encode_word(std::string_view word, const MappingTable& table) {
  if (word.empty()) return {};
  const auto cells = table.language == Language::english ? plan_english(word, table) : plan_indic(word, table);
  check_readback(word, cells, table);
  PatternRow row;
  row.reserve(cells.size());
  for (const MappingEntry* e : cells) row.push_back(e->seq.pattern());
  return row;
}

PatternRows encode_text(std::string_view text, const MappingTable& table, int cells_per_line) {
  if (cells_per_line < 1) throw Error("cells_per_line must be positive");
  PatternRows rows;
  PatternRow line;
  for (const std::string& word : split_words(text)) {
    const PatternRow cells = encode_word(word, table);
    if (static_cast<int>(cells.size()) > cells_per_line) {
      throw Error("word " + describe(word) + " does not fit on one line");
    }
    const std::size_t needed = line.empty() ? cells.size() : line.size() + 1 + cells.size();
    if (static_cast<int>(needed) > cells_per_line) {
      rows.push_back(std::move(line));
      line.clear();
    }
    if (!line.empty()) line.push_back(DotPattern{});
    line.insert(line.end(), cells.begin(), cells.end());
  }
  if (!line.empty()) rows.push_back(std::move(line));
  return rows;
}

RenderedPage render_patterns(const PatternRows& rows, const BrailleGeometry& g, const RenderStyle& style) {
  g.validate();
  style.validate();
  const double dp = g.dot_pitch_px();
  const double margin = g.to_px(style.margin_mm);
  std::size_t widest = static_cast<std::size_t>(style.cells_per_line);
  for (const auto& row : rows) widest = std::max(widest, row.size());
  const std::size_t lines = std::max<std::size_t>(rows.size(), 1);

  const int width = static_cast<int>(std::ceil(2 * margin + (static_cast<double>(widest) - 1) * g.cell_pitch_px() + 2 * dp));
  const int height = static_cast<int>(std::ceil(2 * margin + (static_cast<double>(lines) - 1) * g.line_pitch_px() + 3 * dp));
  RenderedPage page{GrayImage(width, height, static_cast<std::uint8_t>(style.background)), rows, {}, {}, {}};

  if (style.scan_border_mm > 0) {
    const int band = static_cast<int>(std::lround(g.to_px(style.scan_border_mm)));
    for (int y = 0; y < height; ++y) {
      for (int x = 0; x < width; ++x) {
        if (x < band || y < band) page.image.at(x, y) = static_cast<std::uint8_t>(style.scan_border_level);
      }
    }
  }

  const double radius = g.dot_diameter_px() / 2.0;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const double top = margin + static_cast<double>(r) * g.line_pitch_px();
    page.line_tops.push_back(static_cast<int>(std::lround(top)));
    std::vector<Rect> boxes;
    for (std::size_t c = 0; c < rows[r].size(); ++c) {
      const double left = margin + static_cast<double>(c) * g.cell_pitch_px();
      boxes.push_back(Rect{static_cast<int>(std::lround(left)), static_cast<int>(std::lround(top)),
                           static_cast<int>(std::lround(2 * dp)), static_cast<int>(std::lround(3 * dp))});
      for (int dot = 1; dot <= 6; ++dot) {
        if (!rows[r][c].has(dot)) continue;
        const int col = (dot - 1) / 3;
        const int row = (dot - 1) % 3;
        fill_dot(page.image, left + dp / 2 + col * dp, top + dp / 2 + row * dp, radius, style);
      }
    }
    page.cell_boxes.push_back(std::move(boxes));
  }
  return page;
}

RenderedPage render_page(std::string_view text, const MappingTable& table, const BrailleGeometry& g,
                         const RenderStyle& style) {
  RenderedPage page = render_patterns(encode_text(text, table, style.cells_per_line), g, style);
  const auto words = split_words(text);
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (i) page.text += ' ';
    page.text += words[i];
  }
  return page;
}

GrayImage add_noise(const GrayImage& img, const NoiseSpec& spec) {
  if (spec.amount < 0 || spec.speck_radius < 0) throw Error("noise parameters must be non-negative");
  GrayImage out = img;
  if (spec.amount == 0) return out;
  std::mt19937_64 rng(spec.seed);
  auto px = out.pixels();
  switch (spec.kind) {
    case NoiseKind::gaussian: {
      std::normal_distribution<double> noise(0.0, spec.amount);
      for (auto& v : px) v = static_cast<std::uint8_t>(std::clamp(std::lround(v + noise(rng)), 0L, 255L));
      break;
    }
    case NoiseKind::salt: {
      if (spec.amount > 1) throw Error("salt density must not exceed 1");
      std::bernoulli_distribution flip(spec.amount);
      std::bernoulli_distribution white(0.5);
      for (auto& v : px) {
        if (flip(rng)) v = white(rng) ? 255 : 0;
      }
      break;
    }
    case NoiseKind::speck: {
      if (spec.amount > 1) throw Error("speck density must not exceed 1");
      std::binomial_distribution<std::uint64_t> count(out.size(), spec.amount);
      std::uniform_real_distribution<double> ux(0.0, out.width());
      std::uniform_real_distribution<double> uy(0.0, out.height());
      const std::uint64_t n = count(rng);
      const double r = spec.speck_radius;
      for (std::uint64_t i = 0; i < n; ++i) {
        const double cx = ux(rng);
        const double cy = uy(rng);
        for (int y = std::max(0, static_cast<int>(cy - r)); y <= std::min(out.height() - 1, static_cast<int>(cy + r)); ++y) {
          for (int x = std::max(0, static_cast<int>(cx - r)); x <= std::min(out.width() - 1, static_cast<int>(cx + r)); ++x) {
            const double dx = x + 0.5 - cx;
            const double dy = y + 0.5 - cy;
            if (dx * dx + dy * dy <= r * r) out.at(x, y) = std::min(out.at(x, y), static_cast<std::uint8_t>(spec.speck_level));
          }
        }
      }
      break;
    }
  }
  return out;
}

}  // namespace braille
