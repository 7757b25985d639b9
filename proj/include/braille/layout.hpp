#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "braille/image.hpp"

namespace braille {

/// Physical Braille measurements plus the scan resolution that turns them
/// into pixels. Defaults follow common embosser practice.
struct BrailleGeometry {
  double dpi = 300.0;
  double dot_pitch_mm = 2.5;    // dot centre to dot centre inside a cell
  double cell_pitch_mm = 6.2;   // left edge to left edge of adjacent cells
  double line_pitch_mm = 10.0;  // top to top of adjacent lines
  double dot_diameter_mm = 1.5;

  double to_px(double mm) const { return mm * dpi / 25.4; }
  double dot_pitch_px() const { return to_px(dot_pitch_mm); }
  double cell_pitch_px() const { return to_px(cell_pitch_mm); }
  double line_pitch_px() const { return to_px(line_pitch_mm); }
  double dot_diameter_px() const { return to_px(dot_diameter_mm); }
  double dot_area_px() const;

  /// Throws when a measurement is non-positive or pitches are inconsistent.
  void validate() const;
};

enum class Axis { horizontal, vertical };

/// Foreground totals per row (horizontal) or per column (vertical).
struct Profile {
  Axis axis = Axis::horizontal;
  std::vector<int> counts;
};

/// Half-open pixel interval [begin, end).
struct Interval {
  int begin = 0;
  int end = 0;
  int length() const { return end - begin; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Dot rects in dot order 1..6: left column top to bottom, then right column.
using CellGrid = std::array<Rect, 6>;

struct PageLayout {
  std::vector<Interval> line_bands;
  std::vector<std::vector<Rect>> cell_boxes;   // per band, left to right
  std::vector<std::vector<CellGrid>> grids;    // parallel to cell_boxes

  std::size_t cell_count() const;
};

Profile projection_profile(const BinaryImage& bin, Axis axis);

/// Profile of the columns restricted to rows [band.begin, band.end).
Profile column_profile(const BinaryImage& bin, Interval band);

/// Line bands from a horizontal profile: the first dotted row anchors the
/// grid, later boundaries follow the line pitch and snap to empty rows.
std::vector<Interval> find_line_bands(const Profile& p, const BrailleGeometry& g);

/// Cell column intervals from a vertical profile of one band. When
/// `left_reference` is given it replaces the band's own leftmost dotted
/// column as the anchor.
std::vector<Interval> find_cell_columns(const Profile& p, const BrailleGeometry& g,
                                        std::optional<int> left_reference = std::nullopt);

PageLayout segment_page(const BinaryImage& bin, const BrailleGeometry& g);

/// 3x2 grid for a cell whose top-left corner is (x, y).
CellGrid cell_grid(int x, int y, const BrailleGeometry& g);

/// Plain-text listing of bands, boxes and grids.
std::string dump_layout(const PageLayout& layout);

}  // namespace braille
