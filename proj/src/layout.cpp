#include "braille/layout.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace braille {
namespace {

int round_px(double v) { return static_cast<int>(std::floor(v + 0.5)); }

int first_nonzero(const std::vector<int>& counts) {
  const auto it = std::find_if(counts.begin(), counts.end(), [](int c) { return c != 0; });
  return it == counts.end() ? -1 : static_cast<int>(it - counts.begin());
}

int last_nonzero(const std::vector<int>& counts) {
  const auto it = std::find_if(counts.rbegin(), counts.rend(), [](int c) { return c != 0; });
  return it == counts.rend() ? -1 : static_cast<int>(counts.rend() - it) - 1;
}

// Moves `pos` to the nearest empty profile entry within `tolerance`; keeps it
// when it is already empty or no empty entry is close enough.
int snap_to_gap(const std::vector<int>& counts, int pos, int tolerance) {
  const int n = static_cast<int>(counts.size());
  if (pos < 0 || pos >= n || counts[pos] == 0) return pos;
  for (int d = 1; d <= tolerance; ++d) {
    if (pos - d >= 0 && counts[pos - d] == 0) return pos - d;
    if (pos + d < n && counts[pos + d] == 0) return pos + d;
  }
  return pos;
}

// Offset from the first dotted row (or column) to the cell edge: the edge
// ring starts one pixel outside the dot, the cell edge sits half a dot
// pitch before the dot centre.
double cell_edge_offset(const BrailleGeometry& g) {
  return 1.0 + g.dot_diameter_px() / 2.0 - g.dot_pitch_px() / 2.0;
}

// Pitch-spaced boundaries anchored at `first_dot`, continuing while the
// predicted boundary does not pass `last_dot`.
std::vector<Interval> pitched_intervals(const std::vector<int>& counts, int first_dot, int last_dot, double pitch,
                                        int extent, const BrailleGeometry& g) {
  const int n = static_cast<int>(counts.size());
  const int tolerance = static_cast<int>(std::floor(0.2 * pitch));
  const double origin = first_dot + cell_edge_offset(g);

  std::vector<int> starts;
  for (int k = 0;; ++k) {
    const int predicted = round_px(origin + k * pitch);
    if (predicted > last_dot) break;
    int pos = std::max(0, snap_to_gap(counts, predicted, tolerance));
    if (!starts.empty() && pos <= starts.back()) pos = starts.back() + 1;
    if (pos >= n) break;
    starts.push_back(pos);
  }

  std::vector<Interval> out;
  out.reserve(starts.size());
  for (std::size_t i = 0; i < starts.size(); ++i) {
    int end = std::min(n, starts[i] + extent);
    if (i + 1 < starts.size()) end = std::min(end, starts[i + 1]);
    out.push_back({starts[i], end});
  }
  return out;
}

Rect clip(const Rect& r, int width, int height) {
  const int x0 = std::clamp(r.x, 0, width);
  const int y0 = std::clamp(r.y, 0, height);
  const int x1 = std::clamp(r.x + r.w, 0, width);
  const int y1 = std::clamp(r.y + r.h, 0, height);
  return Rect{x0, y0, x1 - x0, y1 - y0};
}

}  // namespace

double BrailleGeometry::dot_area_px() const {
  const double r = dot_diameter_px() / 2.0;
  return std::numbers::pi * r * r;
}

void BrailleGeometry::validate() const {
  if (!(dpi > 0 && dot_pitch_mm > 0 && cell_pitch_mm > 0 && line_pitch_mm > 0 && dot_diameter_mm > 0)) {
    throw Error("Braille geometry values must all be positive");
  }
  if (!(cell_pitch_mm > dot_pitch_mm)) throw Error("cell pitch must exceed dot pitch");
  if (!(line_pitch_mm > 2 * dot_pitch_mm)) throw Error("line pitch must exceed twice the dot pitch");
}

std::size_t PageLayout::cell_count() const {
  std::size_t n = 0;
  for (const auto& line : cell_boxes) n += line.size();
  return n;
}

Profile projection_profile(const BinaryImage& bin, Axis axis) {
  Profile p{axis, std::vector<int>(static_cast<std::size_t>(axis == Axis::horizontal ? bin.height() : bin.width()))};
  for (int y = 0; y < bin.height(); ++y) {
    const auto row = bin.row(y);
    for (int x = 0; x < bin.width(); ++x) {
      if (row[x]) ++p.counts[axis == Axis::horizontal ? y : x];
    }
  }
  return p;
}

Profile column_profile(const BinaryImage& bin, Interval band) {
  Profile p{Axis::vertical, std::vector<int>(static_cast<std::size_t>(bin.width()))};
  for (int y = std::max(0, band.begin); y < std::min(bin.height(), band.end); ++y) {
    const auto row = bin.row(y);
    for (int x = 0; x < bin.width(); ++x) p.counts[x] += row[x] ? 1 : 0;
  }
  return p;
}

std::vector<Interval> find_line_bands(const Profile& p, const BrailleGeometry& g) {
  g.validate();
  const int top = first_nonzero(p.counts);
  if (top < 0) throw Error("horizontal profile is empty: no dots on the page");
  const double pitch = g.line_pitch_px();
  return pitched_intervals(p.counts, top, last_nonzero(p.counts), pitch, round_px(pitch), g);
}

std::vector<Interval> find_cell_columns(const Profile& p, const BrailleGeometry& g, std::optional<int> left_reference) {
  g.validate();
  const int left = first_nonzero(p.counts);
  if (left < 0) throw Error("vertical profile is empty: no dots in the line");
  const int anchor = left_reference ? std::min(*left_reference, left) : left;
  return pitched_intervals(p.counts, anchor, last_nonzero(p.counts), g.cell_pitch_px(),
                           round_px(2.0 * g.dot_pitch_px()), g);
}

CellGrid cell_grid(int x, int y, const BrailleGeometry& g) {
  const double dp = g.dot_pitch_px();
  const int xs[3] = {x, x + round_px(dp), x + round_px(2 * dp)};
  const int ys[4] = {y, y + round_px(dp), y + round_px(2 * dp), y + round_px(3 * dp)};
  CellGrid grid;
  for (int col = 0; col < 2; ++col) {
    for (int row = 0; row < 3; ++row) {
      grid[col * 3 + row] = Rect{xs[col], ys[row], xs[col + 1] - xs[col], ys[row + 1] - ys[row]};
    }
  }
  return grid;
}

PageLayout segment_page(const BinaryImage& bin, const BrailleGeometry& g) {
  PageLayout layout;
  layout.line_bands = find_line_bands(projection_profile(bin, Axis::horizontal), g);

  // Lines share the page's left margin; anchoring every band at the page's
  // leftmost dotted column keeps lines whose first cell has no left-column
  // dot on the same cell grid.
  const int page_left = first_nonzero(projection_profile(bin, Axis::vertical).counts);
  const int cell_h = round_px(3.0 * g.dot_pitch_px());

  for (const Interval& band : layout.line_bands) {
    std::vector<Rect> boxes;
    std::vector<CellGrid> grids;
    const Profile cols = column_profile(bin, band);
    if (first_nonzero(cols.counts) >= 0) {
      for (const Interval& col : find_cell_columns(cols, g, page_left)) {
        const Rect box = clip(Rect{col.begin, band.begin, col.length(), std::min(cell_h, band.length())},
                              bin.width(), bin.height());
        CellGrid grid = cell_grid(col.begin, band.begin, g);
        for (Rect& r : grid) {
          const Rect c = clip(r, bin.width(), bin.height());
          // Intersect with the box so the six rects tile it exactly.
          const int x0 = std::max(c.x, box.x), y0 = std::max(c.y, box.y);
          const int x1 = std::min(c.right(), box.right()), y1 = std::min(c.bottom(), box.bottom());
          r = Rect{x0, y0, std::max(0, x1 - x0), std::max(0, y1 - y0)};
        }
        boxes.push_back(box);
        grids.push_back(grid);
      }
    }
    layout.cell_boxes.push_back(std::move(boxes));
    layout.grids.push_back(std::move(grids));
  }
  return layout;
}

std::string dump_layout(const PageLayout& layout) {
  std::ostringstream out;
  out << "bands " << layout.line_bands.size() << " cells " << layout.cell_count() << "\n";
  for (std::size_t b = 0; b < layout.line_bands.size(); ++b) {
    const Interval& band = layout.line_bands[b];
    out << "band " << b << " rows " << band.begin << " " << band.end << " cells " << layout.cell_boxes[b].size()
        << "\n";
    for (std::size_t c = 0; c < layout.cell_boxes[b].size(); ++c) {
      const Rect& r = layout.cell_boxes[b][c];
      out << "  cell " << c << " " << r.x << " " << r.y << " " << r.w << " " << r.h << " grid";
      for (const Rect& gr : layout.grids[b][c]) out << " " << gr.x << "," << gr.y << "," << gr.w << "," << gr.h;
      out << "\n";
    }
  }
  return out.str();
}

}  // namespace braille
