#include "braille/pipeline.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iterator>
#include <map>
#include <sstream>

#include "braille/text.hpp"

namespace braille {
namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

double to_double(const std::string& key, const std::string& v) {
  double out = 0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || p != v.data() + v.size()) throw Error("config key '" + key + "': not a number: " + v);
  return out;
}

int to_int(const std::string& key, const std::string& v) {
  int out = 0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || p != v.data() + v.size()) throw Error("config key '" + key + "': not an integer: " + v);
  return out;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw Error("config key '" + key + "': not a boolean: " + v);
}

template <typename F>
auto run_stage(const char* stage, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(stage, e.what());
  }
}

}  // namespace

std::string_view to_string(EnhanceStep s) {
  switch (s) {
    case EnhanceStep::contrast_stretch: return "CS";
    case EnhanceStep::intensity_adjust: return "IS";
    case EnhanceStep::morphology: return "MO";
  }
  return "?";
}

std::vector<EnhanceStep> parse_order(std::string_view text) {
  std::vector<EnhanceStep> order;
  std::string item;
  std::istringstream in{std::string(text)};
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (item.empty() || item == "none") continue;
    EnhanceStep step;
    if (item == "CS" || item == "cs") {
      step = EnhanceStep::contrast_stretch;
    } else if (item == "IS" || item == "is") {
      step = EnhanceStep::intensity_adjust;
    } else if (item == "MO" || item == "mo") {
      step = EnhanceStep::morphology;
    } else {
      throw Error("unknown enhancement step '" + item + "' (expected CS, IS or MO)");
    }
    if (std::find(order.begin(), order.end(), step) != order.end()) {
      throw Error("enhancement step " + item + " listed twice");
    }
    order.push_back(step);
  }
  return order;
}

std::string format_order(const std::vector<EnhanceStep>& order) {
  std::string out;
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (i) out += ',';
    out += to_string(order[i]);
  }
  return out.empty() ? "none" : out;
}

void PipelineConfig::validate() const {
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (std::find(order.begin() + static_cast<std::ptrdiff_t>(i) + 1, order.end(), order[i]) != order.end()) {
      throw Error("enhancement order repeats a step");
    }
  }
  if (stretch.r1 >= stretch.r2 || stretch.s1 > stretch.s2) throw Error("invalid contrast stretch control points");
  if (adjust_low >= adjust_high) throw Error("intensity adjustment needs low < high");
  if (morph_radius < 1) throw Error("morphology radius must be at least 1");
  if (gaussian_sigma < 0) throw Error("gaussian sigma must be non-negative");
  if (edge_fraction < 0 || edge_fraction > 1) throw Error("edge fraction must lie in [0,1]");
  if (edge_threshold && *edge_threshold < 0) throw Error("edge threshold must be non-negative");
  if (!(fill_threshold > 0 && fill_threshold < 1)) throw Error("fill threshold must lie in (0,1)");
  if (grade != 1 && grade != 2) throw Error("grade must be 1 or 2");
  geometry.validate();
}

PipelineConfig parse_config(std::string_view text, PipelineConfig base) {
  using Setter = std::function<void(PipelineConfig&, const std::string&, const std::string&)>;
  const std::map<std::string, Setter> setters = {
      {"order", [](auto& c, auto&, auto& v) { c.order = parse_order(v); }},
      {"stretch.r1", [](auto& c, auto& k, auto& v) { c.stretch.r1 = to_int(k, v); }},
      {"stretch.s1", [](auto& c, auto& k, auto& v) { c.stretch.s1 = to_int(k, v); }},
      {"stretch.r2", [](auto& c, auto& k, auto& v) { c.stretch.r2 = to_int(k, v); }},
      {"stretch.s2", [](auto& c, auto& k, auto& v) { c.stretch.s2 = to_int(k, v); }},
      {"adjust.low", [](auto& c, auto& k, auto& v) { c.adjust_low = to_int(k, v); }},
      {"adjust.high", [](auto& c, auto& k, auto& v) { c.adjust_high = to_int(k, v); }},
      {"morph.radius", [](auto& c, auto& k, auto& v) { c.morph_radius = to_int(k, v); }},
      {"morph.mode",
       [](auto& c, auto& k, auto& v) {
         if (v == "open") {
           c.morph_mode = MorphMode::open;
         } else if (v == "close") {
           c.morph_mode = MorphMode::close;
         } else {
           throw Error("config key '" + k + "': expected open or close");
         }
       }},
      {"gaussian.sigma", [](auto& c, auto& k, auto& v) { c.gaussian_sigma = to_double(k, v); }},
      {"edge.fraction", [](auto& c, auto& k, auto& v) { c.edge_fraction = to_double(k, v); }},
      {"edge.threshold",
       [](auto& c, auto& k, auto& v) {
         if (v == "auto") {
           c.edge_threshold.reset();
         } else {
           c.edge_threshold = to_double(k, v);
         }
       }},
      {"crop.enabled", [](auto& c, auto& k, auto& v) { c.autocrop = to_bool(k, v); }},
      {"crop.margin", [](auto& c, auto& k, auto& v) { c.crop_margin_px = to_int(k, v); }},
      {"extract.fill", [](auto& c, auto& k, auto& v) { c.fill_threshold = to_double(k, v); }},
      {"language", [](auto& c, auto&, auto& v) { c.language = parse_language(v); }},
      {"grade", [](auto& c, auto& k, auto& v) { c.grade = to_int(k, v); }},
      {"geometry.dpi", [](auto& c, auto& k, auto& v) { c.geometry.dpi = to_double(k, v); }},
      {"geometry.dot_pitch_mm", [](auto& c, auto& k, auto& v) { c.geometry.dot_pitch_mm = to_double(k, v); }},
      {"geometry.cell_pitch_mm", [](auto& c, auto& k, auto& v) { c.geometry.cell_pitch_mm = to_double(k, v); }},
      {"geometry.line_pitch_mm", [](auto& c, auto& k, auto& v) { c.geometry.line_pitch_mm = to_double(k, v); }},
      {"geometry.dot_diameter_mm",
       [](auto& c, auto& k, auto& v) { c.geometry.dot_diameter_mm = to_double(k, v); }},
  };

  PipelineConfig config = std::move(base);
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw Error("config line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    const auto it = setters.find(key);
    if (it == setters.end()) throw Error("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    it->second(config, key, value);
  }
  config.validate();
  return config;
}

PipelineConfig load_config_file(const std::filesystem::path& path, PipelineConfig base) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config file " + path.string());
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_config(text, std::move(base));
}

std::string format_config(const PipelineConfig& c) {
  std::ostringstream out;
  out << "order = " << format_order(c.order) << "\n"
      << "stretch.r1 = " << c.stretch.r1 << "\n"
      << "stretch.s1 = " << c.stretch.s1 << "\n"
      << "stretch.r2 = " << c.stretch.r2 << "\n"
      << "stretch.s2 = " << c.stretch.s2 << "\n"
      << "adjust.low = " << c.adjust_low << "\n"
      << "adjust.high = " << c.adjust_high << "\n"
      << "morph.radius = " << c.morph_radius << "\n"
      << "morph.mode = " << (c.morph_mode == MorphMode::open ? "open" : "close") << "\n"
      << "gaussian.sigma = " << c.gaussian_sigma << "\n"
      << "edge.fraction = " << c.edge_fraction << "\n"
      << "edge.threshold = " << (c.edge_threshold ? std::to_string(*c.edge_threshold) : std::string("auto")) << "\n"
      << "crop.enabled = " << (c.autocrop ? "true" : "false") << "\n"
      << "crop.margin = " << c.crop_margin_px << "\n"
      << "extract.fill = " << c.fill_threshold << "\n"
      << "language = " << to_string(c.language) << "\n"
      << "grade = " << c.grade << "\n"
      << "geometry.dpi = " << c.geometry.dpi << "\n"
      << "geometry.dot_pitch_mm = " << c.geometry.dot_pitch_mm << "\n"
      << "geometry.cell_pitch_mm = " << c.geometry.cell_pitch_mm << "\n"
      << "geometry.line_pitch_mm = " << c.geometry.line_pitch_mm << "\n"
      << "geometry.dot_diameter_mm = " << c.geometry.dot_diameter_mm << "\n";
  return out.str();
}

GrayImage enhance_page(const GrayImage& page, const PipelineConfig& config) {
  GrayImage img = page;
  for (const EnhanceStep step : config.order) {
    switch (step) {
      case EnhanceStep::contrast_stretch: img = contrast_stretch(img, config.stretch); break;
      case EnhanceStep::intensity_adjust: img = intensity_adjust(img, config.adjust_low, config.adjust_high); break;
      case EnhanceStep::morphology: img = morph_filter(img, config.morph_radius, config.morph_mode); break;
    }
  }
  if (config.gaussian_sigma > 0) img = gaussian_smooth(img, config.gaussian_sigma);
  return img;
}

BinaryImage detect_edges(const GrayImage& enhanced, const PipelineConfig& config) {
  const GradientPair g = prewitt_gradients(enhanced);
  const double t = config.edge_threshold ? *config.edge_threshold : config.edge_fraction * max_gradient_magnitude(g);
  return edge_map(g, t);
}

ConversionReport run_pipeline(const GrayImage& page, const PipelineConfig& config, const Decoder& decoder) {
  const auto started = std::chrono::steady_clock::now();
  run_stage("config", [&] { config.validate(); });
  const BrailleGeometry& geom = config.geometry;

  const GrayImage enhanced = run_stage("enhance", [&] { return enhance_page(page, config); });
  const BinaryImage edges = run_stage("edges", [&] { return detect_edges(enhanced, config); });

  ConversionReport report;
  report.crop = Rect{0, 0, edges.width(), edges.height()};
  if (config.autocrop) {
    const int margin =
        config.crop_margin_px >= 0 ? config.crop_margin_px : static_cast<int>(std::lround(geom.dot_pitch_px()));
    report.crop = run_stage("crop", [&] { return autocrop_content(edges, margin); });
  }
  const BinaryImage content = run_stage("crop", [&] { return crop(edges, report.crop); });

  report.layout = run_stage("segment", [&] { return segment_page(content, geom); });
  report.patterns =
      run_stage("extract", [&] { return extract_page_patterns(content, report.layout, config.fill_threshold, geom); });

  const DecodeResult decoded = run_stage("decode", [&] { return decoder.decode(report.patterns); });
  const auto rendered = render_tokens(decoded.tokens, decoder.language());
  for (const auto& piece : rendered) report.text += piece;

  // Diagnostics: one entry per cell, skipping the line-break tokens.
  std::size_t t = 0;
  for (std::size_t line = 0; line < report.patterns.size(); ++line) {
    if (line > 0) ++t;
    for (std::size_t c = 0; c < report.patterns[line].size(); ++c, ++t) {
      const Rect& box = report.layout.cell_boxes[line][c];
      CellDiagnostic d;
      d.line = static_cast<int>(line);
      d.cell = static_cast<int>(c);
      d.box = Rect{box.x + report.crop.x, box.y + report.crop.y, box.w, box.h};
      d.pattern = report.patterns[line][c];
      d.seq = pattern_to_canonical(d.pattern).digits();
      d.text = rendered[t];
      d.unmapped = decoded.tokens[t].kind == TokenKind::replacement;
      report.cells.push_back(std::move(d));
    }
  }
  report.total_cells = decoded.cells;
  report.unmapped_cells = decoded.unmapped;
  report.words = split_words(report.text).size();
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return report;
}

ConversionReport run_pipeline_file(const std::filesystem::path& path, const PipelineConfig& config,
                                   const Decoder& decoder) {
  const GrayImage page = run_stage("load", [&] { return load_pgm_file(path); });
  return run_pipeline(page, config, decoder);
}

}  // namespace braille
