#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "braille/decode.hpp"

namespace braille {

enum class EventKind {
  dot,            // dot key accepted, cell still open
  letter,         // cell closed with 0 and resolved
  word_boundary,  // 3, or 0 on an empty cell
  sentence_end,   // 6
  error,          // the beep: bad key, repeated dot, or unmapped cell
};

std::string_view to_string(EventKind k);

struct DecodeEvent {
  EventKind kind = EventKind::dot;
  std::string emitted;  // grapheme(s) added by this key, if any
  std::string message;  // reason, for error events
};

/// Live Braille entry from a numeric keypad. Keys 7 4 1 8 5 2 raise dots
/// 1-6 of the open cell; 0 closes the cell, 3 ends the word, 6 ends the
/// sentence. Cells of the current word are re-read together on each key,
/// so wordsigns and number mode resolve the same way as in a scanned page.
/// Not thread-safe: serialize feeds per session.
class KeypadSession {
 public:
  explicit KeypadSession(std::shared_ptr<const Decoder> decoder);

  DecodeEvent feed(char key);

  /// Committed words plus the current word as read so far.
  std::string text() const;
  const std::string& pending() const { return pending_; }
  DotPattern pending_pattern() const;
  Language language() const { return decoder_->language(); }

 private:
  DecodeEvent close_cell();
  void commit(std::string_view separator);
  std::string render_word(const PatternRow& word) const;

  std::shared_ptr<const Decoder> decoder_;
  std::string pending_;
  PatternRow word_;
  std::string committed_;
};

}  // namespace braille
