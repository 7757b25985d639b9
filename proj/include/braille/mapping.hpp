#pragma once

#include <array>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "braille/extract.hpp"

namespace braille {

/// Keypad digits for dots 1..6 (the 7 4 1 / 8 5 2 columns of a numeric keypad).
inline constexpr std::array<char, 6> kDotKeys = {'7', '4', '1', '8', '5', '2'};

/// Row-major keypad reading order; a canonical sequence is a subsequence of it.
inline constexpr std::string_view kCanonicalOrder = "784512";

/// A set of dot keys written in canonical order. The empty sequence names
/// the blank cell.
class CanonicalSeq {
 public:
  CanonicalSeq() = default;

  const std::string& digits() const { return digits_; }
  bool empty() const { return digits_.empty(); }
  DotPattern pattern() const;

  friend bool operator==(const CanonicalSeq&, const CanonicalSeq&) = default;
  friend auto operator<=>(const CanonicalSeq&, const CanonicalSeq&) = default;

 private:
  friend CanonicalSeq canonicalize(std::string_view digits);
  friend CanonicalSeq pattern_to_canonical(DotPattern p);
  explicit CanonicalSeq(std::string digits) : digits_(std::move(digits)) {}

  std::string digits_;
};

/// Sorts typed dot keys into canonical order. Throws on a digit outside
/// {7,8,4,5,1,2} or a repeated digit.
CanonicalSeq canonicalize(std::string_view digits);

CanonicalSeq pattern_to_canonical(DotPattern p);

enum class EntryClass { letter, contraction, punctuation, digit, indicator };

/// Role of an Indic grapheme during syllable composition.
enum class IndicRole { none, consonant, vowel, virama, sign };

enum class Language { english, hindi, tamil };

struct MappingEntry {
  CanonicalSeq seq;
  EntryClass cls = EntryClass::letter;
  std::string grapheme;
  IndicRole role = IndicRole::none;
  std::string dependent;  // vowel sign used after a consonant; empty = inherent vowel
};

struct MappingTable {
  Language language = Language::english;
  int grade = 1;
  std::vector<MappingEntry> entries;
};

std::string_view to_string(EntryClass c);
std::string_view to_string(Language l);
EntryClass parse_entry_class(std::string_view s);
Language parse_language(std::string_view s);

/// Parses the tab-separated table format:
///   seq <TAB> class <TAB> grapheme [<TAB> role [<TAB> dependent]]
/// Blank lines and lines starting with '#' are ignored.
MappingTable parse_table(std::string_view text, Language language, int grade);
MappingTable load_table_file(const std::filesystem::path& path, Language language, int grade);

/// Directory holding the shipped tables: $BRAILLE_TABLE_DIR when set,
/// otherwise the build-time data directory.
std::filesystem::path default_table_dir();
std::string shipped_table_name(Language language, int grade);
MappingTable load_shipped_table(Language language, int grade,
                                const std::filesystem::path& dir = default_table_dir());

/// Prefix tree over canonical digits. Each node's entries are the table
/// rows whose sequence ends there.
class DecodeTrie {
 public:
  DecodeTrie();

  /// Throws when the table repeats a (seq, class) pair.
  static DecodeTrie build(const MappingTable& table);

  std::span<const MappingEntry> lookup(const CanonicalSeq& seq) const;
  std::size_t node_count() const { return nodes_.size(); }

 private:
  struct Node {
    std::array<int, 6> children{-1, -1, -1, -1, -1, -1};
    std::vector<MappingEntry> entries;
  };

  void insert(const MappingEntry& e);

  std::vector<Node> nodes_;
};

}  // namespace braille
