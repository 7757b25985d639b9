#include "braille/decode.hpp"

namespace braille {
namespace {

const MappingEntry* find_class(std::span<const MappingEntry> entries, EntryClass cls) {
  for (const MappingEntry& e : entries) {
    if (e.cls == cls) return &e;
  }
  return nullptr;
}

Token plain_token(TokenKind kind, std::string text) {
  Token t;
  t.kind = kind;
  t.text = std::move(text);
  return t;
}

Token grapheme_token(const MappingEntry& e) {
  return Token{TokenKind::grapheme, e.grapheme, e.cls, e.role, e.dependent};
}

}  // namespace

DecodeResult decode_cells(const PatternRows& rows, const DecodeTrie& trie) {
  DecodeResult result;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const PatternRow& row = rows[r];
    if (r > 0) result.tokens.push_back(plain_token(TokenKind::line_break, "\n"));
    bool numeric = false;
    for (std::size_t i = 0; i < row.size(); ++i) {
      ++result.cells;
      if (row[i].empty()) {
        numeric = false;
        result.tokens.push_back(plain_token(TokenKind::space, " "));
        continue;
      }
      const bool initial = i == 0 || row[i - 1].empty();
      const bool final = i + 1 == row.size() || row[i + 1].empty();
      const auto entries = trie.lookup(pattern_to_canonical(row[i]));

      if (numeric) {
        if (const auto* digit = find_class(entries, EntryClass::digit)) {
          result.tokens.push_back(grapheme_token(*digit));
          continue;
        }
        numeric = false;
      }
      if (const auto* sign = find_class(entries, EntryClass::indicator)) {
        numeric = true;
        result.tokens.push_back(Token{TokenKind::indicator, "", sign->cls, IndicRole::none, {}});
        continue;
      }

      const MappingEntry* letter = find_class(entries, EntryClass::letter);
      const MappingEntry* contraction = find_class(entries, EntryClass::contraction);
      const MappingEntry* punct = find_class(entries, EntryClass::punctuation);
      if (punct && (letter || contraction)) {
        if (initial || final) {
          letter = contraction = nullptr;
        } else {
          punct = nullptr;
        }
      }
      if (letter && contraction) {
        if (initial && final) {
          letter = nullptr;
        } else {
          contraction = nullptr;
        }
      }
      const MappingEntry* chosen = letter ? letter : (contraction ? contraction : punct);
      if (!chosen) {
        ++result.unmapped;
        result.tokens.push_back(plain_token(TokenKind::replacement, std::string(kReplacementChar)));
        continue;
      }
      result.tokens.push_back(grapheme_token(*chosen));
    }
  }
  return result;
}

std::vector<std::string> render_tokens(std::span<const Token> tokens, Language language) {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  const bool indic = language != Language::english;
  bool after_consonant = false;
  for (const Token& t : tokens) {
    if (indic && t.kind == TokenKind::grapheme && t.role == IndicRole::vowel && after_consonant) {
      out.push_back(t.dependent);
    } else {
      out.push_back(t.text);
    }
    after_consonant = indic && t.kind == TokenKind::grapheme && t.role == IndicRole::consonant;
  }
  return out;
}

std::string compose_text(std::span<const Token> tokens, Language language) {
  std::string text;
  for (const std::string& s : render_tokens(tokens, language)) text += s;
  return text;
}

std::string compose_indic(std::span<const Token> tokens, Language script) { return compose_text(tokens, script); }

Decoder::Decoder(MappingTable table) : table_(std::move(table)), trie_(DecodeTrie::build(table_)) {}

}  // namespace braille
