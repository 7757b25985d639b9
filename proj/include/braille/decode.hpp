#pragma once

#include <span>
#include <string>
#include <vector>

#include "braille/extract.hpp"
#include "braille/mapping.hpp"

namespace braille {

enum class TokenKind {
  grapheme,     // resolved table entry (letter, contraction, punctuation, digit)
  space,        // blank cell
  line_break,   // end of a pattern row; not a cell
  indicator,    // number sign, consumed
  replacement,  // unmapped cell
};

struct Token {
  TokenKind kind = TokenKind::grapheme;
  std::string text;
  EntryClass cls = EntryClass::letter;
  IndicRole role = IndicRole::none;
  std::string dependent;
};

inline constexpr std::string_view kReplacementChar = "\xEF\xBF\xBD";  // U+FFFD

struct DecodeResult {
  std::vector<Token> tokens;
  std::size_t cells = 0;
  std::size_t unmapped = 0;
};

/// Resolves every cell against the trie. Per cell:
///  - blank cell: word space;
///  - after a number sign, cells with a digit reading emit digits until a
///    blank or a cell without one;
///  - punctuation sharing a cell with a letter or groupsign wins at either
///    end of a word, the other reading wins inside a word;
///  - a contraction sharing a cell with a letter applies only to a word of
///    that single cell;
///  - unmapped cells become U+FFFD and are counted.
/// Rows are separated by line_break tokens.
DecodeResult decode_cells(const PatternRows& rows, const DecodeTrie& trie);

/// Display form of each token. For Hindi and Tamil a vowel directly after a
/// consonant becomes its dependent sign (nothing for the inherent vowel);
/// English tokens render as-is.
std::vector<std::string> render_tokens(std::span<const Token> tokens, Language language);

std::string compose_text(std::span<const Token> tokens, Language language);

/// Same as compose_text for an Indic script, identity-like for English tokens.
std::string compose_indic(std::span<const Token> tokens, Language script);

/// Table plus its trie, built once and shared read-only.
class Decoder {
 public:
  explicit Decoder(MappingTable table);

  const MappingTable& table() const { return table_; }
  const DecodeTrie& trie() const { return trie_; }
  Language language() const { return table_.language; }

  DecodeResult decode(const PatternRows& rows) const { return decode_cells(rows, trie_); }
  std::string text(const PatternRows& rows) const { return compose_text(decode(rows).tokens, language()); }

 private:
  MappingTable table_;
  DecodeTrie trie_;
};

}  // namespace braille
