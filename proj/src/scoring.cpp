#include "braille/scoring.hpp"

#include <algorithm>
#include <iomanip>
#include <numeric>
#include <sstream>

#include "braille/text.hpp"

namespace braille {

WordScore score_words(std::string_view reference, std::string_view produced) {
  const auto ref = split_words(reference);
  const auto got = split_words(produced);
  // Two-row LCS table.
  std::vector<std::size_t> prev(got.size() + 1, 0), cur(got.size() + 1, 0);
  for (std::size_t i = 1; i <= ref.size(); ++i) {
    for (std::size_t j = 1; j <= got.size(); ++j) {
      cur[j] = ref[i - 1] == got[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return WordScore{prev[got.size()], ref.size()};
}

double score_accuracy(std::string_view reference, std::string_view produced) {
  return score_words(reference, produced).accuracy();
}

double AblationTable::mean(std::size_t order) const {
  if (accuracy.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& row : accuracy) sum += row.at(order);
  return sum / static_cast<double>(accuracy.size());
}

std::string AblationTable::format_text() const {
  std::ostringstream out;
  std::size_t name_width = 4;
  for (const auto& p : pages) name_width = std::max(name_width, p.size());
  std::vector<std::string> headers;
  for (const auto& o : orders) headers.push_back(format_order(o));

  out << std::left << std::setw(static_cast<int>(name_width)) << "page";
  for (const auto& h : headers) out << "  " << std::right << std::setw(std::max<int>(8, static_cast<int>(h.size()))) << h;
  out << "\n";
  const auto row = [&](const std::string& label, const auto& value_at) {
    out << std::left << std::setw(static_cast<int>(name_width)) << label;
    for (std::size_t o = 0; o < orders.size(); ++o) {
      std::ostringstream cell;
      cell << std::fixed << std::setprecision(1) << 100.0 * value_at(o) << "%";
      out << "  " << std::right << std::setw(std::max<int>(8, static_cast<int>(headers[o].size()))) << cell.str();
    }
    out << "\n";
  };
  for (std::size_t p = 0; p < pages.size(); ++p) row(pages[p], [&](std::size_t o) { return accuracy[p][o]; });
  row("mean", [&](std::size_t o) { return mean(o); });
  return out.str();
}

std::string AblationTable::format_csv() const {
  std::ostringstream out;
  out << "page,order,accuracy\n";
  for (std::size_t p = 0; p < pages.size(); ++p) {
    for (std::size_t o = 0; o < orders.size(); ++o) {
      out << pages[p] << ",\"" << format_order(orders[o]) << "\"," << std::setprecision(6) << accuracy[p][o] << "\n";
    }
  }
  return out.str();
}

AblationTable run_ablation(const std::vector<AblationPage>& pages, const std::vector<std::vector<EnhanceStep>>& orders,
                           const PipelineConfig& base, const Decoder& decoder) {
  if (pages.empty()) throw Error("ablation needs at least one page");
  if (orders.empty()) throw Error("ablation needs at least one enhancement order");
  AblationTable table;
  table.orders = orders;
  for (const AblationPage& page : pages) {
    table.pages.push_back(page.name);
    std::vector<double> row;
    for (const auto& order : orders) {
      PipelineConfig config = base;
      config.order = order;
      double acc = 0.0;
      try {
        acc = score_accuracy(page.reference, run_pipeline(page.image, config, decoder).text);
      } catch (const StageError&) {
        acc = 0.0;
      }
      row.push_back(acc);
    }
    table.accuracy.push_back(std::move(row));
  }
  return table;
}

}  // namespace braille
