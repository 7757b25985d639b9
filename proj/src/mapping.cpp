#include "braille/mapping.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iterator>
#include <sstream>

#ifndef BRAILLE_DATA_DIR
#define BRAILLE_DATA_DIR "data/tables"
#endif

namespace braille {
namespace {

int canonical_index(char digit) {
  const auto pos = kCanonicalOrder.find(digit);
  return pos == std::string_view::npos ? -1 : static_cast<int>(pos);
}

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const auto tab = line.find('\t', start);
    fields.push_back(line.substr(start, tab == std::string::npos ? std::string::npos : tab - start));
    if (tab == std::string::npos) break;
    start = tab + 1;
  }
  return fields;
}

IndicRole parse_role(std::string_view s) {
  if (s.empty() || s == "none") return IndicRole::none;
  if (s == "consonant") return IndicRole::consonant;
  if (s == "vowel") return IndicRole::vowel;
  if (s == "virama") return IndicRole::virama;
  if (s == "sign") return IndicRole::sign;
  throw Error("unknown grapheme role '" + std::string(s) + "'");
}

}  // namespace

DotPattern CanonicalSeq::pattern() const {
  DotPattern p;
  for (const char c : digits_) {
    const auto it = std::find(kDotKeys.begin(), kDotKeys.end(), c);
    p.set(static_cast<int>(it - kDotKeys.begin()) + 1);
  }
  return p;
}

CanonicalSeq canonicalize(std::string_view digits) {
  std::array<bool, 6> seen{};
  for (const char c : digits) {
    const int i = canonical_index(c);
    if (i < 0) throw Error("'" + std::string(1, c) + "' is not a dot key (expected one of 7 4 1 8 5 2)");
    if (seen[i]) throw Error("dot key '" + std::string(1, c) + "' repeated in one cell");
    seen[i] = true;
  }
  std::string out;
  for (int i = 0; i < 6; ++i) {
    if (seen[i]) out += kCanonicalOrder[i];
  }
  return CanonicalSeq(std::move(out));
}

CanonicalSeq pattern_to_canonical(DotPattern p) {
  std::string out;
  for (const char c : kCanonicalOrder) {
    const auto dot = static_cast<int>(std::find(kDotKeys.begin(), kDotKeys.end(), c) - kDotKeys.begin()) + 1;
    if (p.has(dot)) out += c;
  }
  return CanonicalSeq(std::move(out));
}

std::string_view to_string(EntryClass c) {
  switch (c) {
    case EntryClass::letter: return "letter";
    case EntryClass::contraction: return "contraction";
    case EntryClass::punctuation: return "punctuation";
    case EntryClass::digit: return "digit";
    case EntryClass::indicator: return "indicator";
  }
  return "?";
}

std::string_view to_string(Language l) {
  switch (l) {
    case Language::english: return "en";
    case Language::hindi: return "hi";
    case Language::tamil: return "ta";
  }
  return "?";
}

EntryClass parse_entry_class(std::string_view s) {
  for (const auto c : {EntryClass::letter, EntryClass::contraction, EntryClass::punctuation, EntryClass::digit,
                       EntryClass::indicator}) {
    if (to_string(c) == s) return c;
  }
  throw Error("unknown entry class '" + std::string(s) + "'");
}

Language parse_language(std::string_view s) {
  if (s == "en" || s == "english") return Language::english;
  if (s == "hi" || s == "hindi") return Language::hindi;
  if (s == "ta" || s == "tamil") return Language::tamil;
  throw Error("unsupported language '" + std::string(s) + "' (expected en, hi or ta)");
}

MappingTable parse_table(std::string_view text, Language language, int grade) {
  MappingTable table{language, grade, {}};
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto f = split_tabs(line);
    if (f.size() < 3 || f.size() > 5 || f[2].empty()) {
      throw Error("mapping table line " + std::to_string(lineno) + ": expected seq, class, grapheme");
    }
    try {
      MappingEntry e;
      e.seq = canonicalize(f[0]);
      e.cls = parse_entry_class(f[1]);
      e.grapheme = f[2];
      if (f.size() > 3) e.role = parse_role(f[3]);
      if (f.size() > 4) e.dependent = f[4];
      if (e.seq.empty()) throw Error("the blank cell cannot be mapped");
      table.entries.push_back(std::move(e));
    } catch (const Error& err) {
      throw Error("mapping table line " + std::to_string(lineno) + ": " + err.what());
    }
  }
  return table;
}

MappingTable load_table_file(const std::filesystem::path& path, Language language, int grade) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open mapping table " + path.string());
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_table(text, language, grade);
}

std::filesystem::path default_table_dir() {
  if (const char* env = std::getenv("BRAILLE_TABLE_DIR"); env && *env) return env;
  return BRAILLE_DATA_DIR;
}

std::string shipped_table_name(Language language, int grade) {
  if (grade != 1 && grade != 2) throw Error("grade must be 1 or 2");
  switch (language) {
    case Language::english: return grade == 1 ? "english_g1.tsv" : "english_g2.tsv";
    case Language::hindi: return "hindi_bharati.tsv";
    case Language::tamil: return "tamil_bharati.tsv";
  }
  return {};
}

MappingTable load_shipped_table(Language language, int grade, const std::filesystem::path& dir) {
  return load_table_file(dir / shipped_table_name(language, grade), language, grade);
}

DecodeTrie::DecodeTrie() : nodes_(1) {}

DecodeTrie DecodeTrie::build(const MappingTable& table) {
  DecodeTrie trie;
  for (const MappingEntry& e : table.entries) trie.insert(e);
  return trie;
}

void DecodeTrie::insert(const MappingEntry& e) {
  int node = 0;
  for (const char c : e.seq.digits()) {
    const int slot = canonical_index(c);
    if (nodes_[node].children[slot] < 0) {
      nodes_[node].children[slot] = static_cast<int>(nodes_.size());
      nodes_.emplace_back();
    }
    node = nodes_[node].children[slot];
  }
  auto& entries = nodes_[node].entries;
  if (std::any_of(entries.begin(), entries.end(), [&](const MappingEntry& x) { return x.cls == e.cls; })) {
    throw Error("duplicate " + std::string(to_string(e.cls)) + " entry for sequence " + e.seq.digits());
  }
  entries.push_back(e);
}

std::span<const MappingEntry> DecodeTrie::lookup(const CanonicalSeq& seq) const {
  int node = 0;
  for (const char c : seq.digits()) {
    node = nodes_[node].children[canonical_index(c)];
    if (node < 0) return {};
  }
  return nodes_[node].entries;
}

}  // namespace braille
