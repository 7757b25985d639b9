#include "braille/extract.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace braille {

DotPattern DotPattern::from_dots(std::string_view dots) {
  DotPattern p;
  for (const char c : dots) {
    if (c < '1' || c > '6') throw Error("dot numbers run from 1 to 6, got '" + std::string(1, c) + "'");
    p.set(c - '0');
  }
  return p;
}

DotPattern DotPattern::from_bits(std::string_view bits) {
  if (bits.size() != 6) throw Error("a cell needs exactly 6 bits, got '" + std::string(bits) + "'");
  DotPattern p;
  for (int i = 0; i < 6; ++i) {
    if (bits[i] != '0' && bits[i] != '1') throw Error("cell bits must be '0' or '1', got '" + std::string(bits) + "'");
    p.set(i + 1, bits[i] == '1');
  }
  return p;
}

std::string DotPattern::bits() const {
  std::string s(6, '0');
  for (int i = 0; i < 6; ++i) s[i] = has(i + 1) ? '1' : '0';
  return s;
}

DotPattern extract_pattern(const BinaryImage& bin, const CellGrid& grids, double fill_threshold,
                           const BrailleGeometry& g) {
  if (!(fill_threshold > 0.0 && fill_threshold < 1.0)) throw Error("fill threshold must lie in (0, 1)");
  const double needed = fill_threshold * g.dot_area_px();
  DotPattern p;
  for (int k = 0; k < 6; ++k) {
    const Rect& r = grids[k];
    if (r.w < 0 || r.h < 0) throw Error("degenerate grid rect for dot " + std::to_string(k + 1));
    // Grids at the page edge may be clipped, even to nothing; count what is inside.
    const int x0 = std::max(r.x, 0), x1 = std::min(r.right(), bin.width());
    const int y0 = std::max(r.y, 0), y1 = std::min(r.bottom(), bin.height());
    std::size_t count = 0;
    for (int y = y0; y < y1; ++y) {
      const auto row = bin.row(y);
      for (int x = x0; x < x1; ++x) count += row[x] ? 1 : 0;
    }
    p.set(k + 1, static_cast<double>(count) >= needed);
  }
  return p;
}

PatternRows extract_page_patterns(const BinaryImage& bin, const PageLayout& layout, double fill_threshold,
                                  const BrailleGeometry& g) {
  PatternRows rows;
  rows.reserve(layout.grids.size());
  for (const auto& line : layout.grids) {
    PatternRow row;
    row.reserve(line.size());
    for (const CellGrid& grid : line) row.push_back(extract_pattern(bin, grid, fill_threshold, g));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string format_bit_rows(const PatternRows& rows) {
  std::string out;
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ' ';
      out += row[i].bits();
    }
    out += '\n';
  }
  return out;
}

PatternRows parse_bit_rows(std::string_view text) {
  PatternRows rows;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream cells(line);
    PatternRow row;
    std::string cell;
    while (cells >> cell) row.push_back(DotPattern::from_bits(cell));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace braille
