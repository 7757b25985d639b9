#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "braille/decode.hpp"
#include "braille/enhance.hpp"
#include "braille/extract.hpp"
#include "braille/image.hpp"
#include "braille/layout.hpp"

namespace braille {

/// CS = contrast stretch, IS = intensity adjustment, MO = morphological filter.
enum class EnhanceStep { contrast_stretch, intensity_adjust, morphology };

std::string_view to_string(EnhanceStep s);
std::vector<EnhanceStep> parse_order(std::string_view text);
std::string format_order(const std::vector<EnhanceStep>& order);

struct PipelineConfig {
  std::vector<EnhanceStep> order{EnhanceStep::contrast_stretch, EnhanceStep::intensity_adjust,
                                 EnhanceStep::morphology};
  PiecewiseParams stretch{120, 20, 200, 235};
  int adjust_low = 60;
  int adjust_high = 190;
  int morph_radius = 5;
  MorphMode morph_mode = MorphMode::open;  // close for specks darker than the paper
  double gaussian_sigma = 1.0;  // 0 disables smoothing
  double edge_fraction = 0.25;  // of the page's strongest gradient
  std::optional<double> edge_threshold;  // absolute; overrides edge_fraction
  bool autocrop = true;
  int crop_margin_px = -1;  // -1: one dot pitch
  double fill_threshold = 0.3;
  Language language = Language::english;
  int grade = 2;
  BrailleGeometry geometry;

  void validate() const;
};

/// Flat `key = value` text; '#' starts a comment. Unknown keys are errors.
PipelineConfig parse_config(std::string_view text, PipelineConfig base = {});
PipelineConfig load_config_file(const std::filesystem::path& path, PipelineConfig base = {});
std::string format_config(const PipelineConfig& config);

/// Failure inside one pipeline stage; `stage()` names it.
class StageError : public Error {
 public:
  StageError(std::string stage, const std::string& what)
      : Error(stage + ": " + what), stage_(std::move(stage)) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

struct CellDiagnostic {
  int line = 0;
  int cell = 0;
  Rect box;
  DotPattern pattern;
  std::string seq;
  std::string text;
  bool unmapped = false;
};

struct ConversionReport {
  std::string text;
  std::vector<CellDiagnostic> cells;
  std::size_t total_cells = 0;
  std::size_t unmapped_cells = 0;
  std::size_t words = 0;
  double seconds = 0.0;
  Rect crop;
  PageLayout layout;
  PatternRows patterns;
};

/// Gray page after the configured enhancement steps and smoothing.
GrayImage enhance_page(const GrayImage& page, const PipelineConfig& config);

/// Edge map of an enhanced page at the configured threshold.
BinaryImage detect_edges(const GrayImage& enhanced, const PipelineConfig& config);

ConversionReport run_pipeline(const GrayImage& page, const PipelineConfig& config, const Decoder& decoder);
ConversionReport run_pipeline_file(const std::filesystem::path& path, const PipelineConfig& config,
                                   const Decoder& decoder);

}  // namespace braille
