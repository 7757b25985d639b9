#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "braille/decode.hpp"
#include "braille/pipeline.hpp"

namespace braille {

struct WordScore {
  std::size_t matched = 0;    // reference words aligned to an identical produced word
  std::size_t reference = 0;  // reference word count
  double accuracy() const { return reference == 0 ? 1.0 : static_cast<double>(matched) / reference; }
};

/// Word accuracy: whitespace tokens aligned by longest common subsequence.
WordScore score_words(std::string_view reference, std::string_view produced);
double score_accuracy(std::string_view reference, std::string_view produced);

struct AblationPage {
  std::string name;
  GrayImage image;
  std::string reference;
};

struct AblationTable {
  std::vector<std::string> pages;
  std::vector<std::vector<EnhanceStep>> orders;
  std::vector<std::vector<double>> accuracy;  // [page][order]

  double mean(std::size_t order) const;
  std::string format_text() const;
  std::string format_csv() const;
};

/// Accuracy of every page under every enhancement order; other settings
/// come from `base`. A page that fails to convert scores 0.
AblationTable run_ablation(const std::vector<AblationPage>& pages, const std::vector<std::vector<EnhanceStep>>& orders,
                           const PipelineConfig& base, const Decoder& decoder);

}  // namespace braille
