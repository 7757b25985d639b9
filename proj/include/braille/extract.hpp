#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "braille/image.hpp"
#include "braille/layout.hpp"

namespace braille {

/// Raised dots of one cell. Bit k-1 holds dot k; dots 1-3 run down the left
/// column, 4-6 down the right.
class DotPattern {
 public:
  constexpr DotPattern() = default;
  constexpr explicit DotPattern(std::uint8_t bits) : bits_(bits & 0x3F) {}

  /// From dot numbers, e.g. "145" for d.
  static DotPattern from_dots(std::string_view dots);
  /// From six '0'/'1' characters in dot order 1..6.
  static DotPattern from_bits(std::string_view bits);

  constexpr bool has(int dot) const { return (bits_ >> (dot - 1)) & 1U; }
  constexpr void set(int dot, bool on = true) {
    bits_ = static_cast<std::uint8_t>(on ? bits_ | (1U << (dot - 1)) : bits_ & ~(1U << (dot - 1)));
  }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::uint8_t value() const { return bits_; }

  std::string bits() const;

  friend constexpr bool operator==(DotPattern, DotPattern) = default;

 private:
  std::uint8_t bits_ = 0;
};

using PatternRow = std::vector<DotPattern>;
using PatternRows = std::vector<PatternRow>;

/// A dot is present when its grid holds at least fill_threshold times the
/// expected dot area of foreground pixels.
DotPattern extract_pattern(const BinaryImage& bin, const CellGrid& grids, double fill_threshold,
                           const BrailleGeometry& g);

PatternRows extract_page_patterns(const BinaryImage& bin, const PageLayout& layout, double fill_threshold,
                                  const BrailleGeometry& g);

/// One text row per line, six bits per cell, cells separated by spaces.
std::string format_bit_rows(const PatternRows& rows);
PatternRows parse_bit_rows(std::string_view text);

}  // namespace braille
