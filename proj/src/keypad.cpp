#include "braille/keypad.hpp"

#include <algorithm>

namespace braille {
namespace {

DecodeEvent error_event(std::string message) { return DecodeEvent{EventKind::error, {}, std::move(message)}; }

}  // namespace

std::string_view to_string(EventKind k) {
  switch (k) {
    case EventKind::dot: return "dot";
    case EventKind::letter: return "letter";
    case EventKind::word_boundary: return "word_boundary";
    case EventKind::sentence_end: return "sentence_end";
    case EventKind::error: return "error";
  }
  return "?";
}

KeypadSession::KeypadSession(std::shared_ptr<const Decoder> decoder) : decoder_(std::move(decoder)) {
  if (!decoder_) throw Error("keypad session needs a decoder");
}

DotPattern KeypadSession::pending_pattern() const { return canonicalize(pending_).pattern(); }

std::string KeypadSession::render_word(const PatternRow& word) const {
  return decoder_->text(PatternRows{word});
}

std::string KeypadSession::text() const { return committed_ + render_word(word_); }

void KeypadSession::commit(std::string_view separator) {
  committed_ += render_word(word_);
  committed_ += separator;
  word_.clear();
}

DecodeEvent KeypadSession::close_cell() {
  const DotPattern cell = canonicalize(pending_).pattern();
  pending_.clear();
  PatternRow candidate = word_;
  candidate.push_back(cell);
  const DecodeResult decoded = decoder_->decode(PatternRows{candidate});
  if (decoded.tokens.empty() || decoded.tokens.back().kind == TokenKind::replacement) {
    return error_event("no character for dots " + cell.bits());
  }
  word_ = std::move(candidate);
  const auto rendered = render_tokens(decoded.tokens, decoder_->language());
  return DecodeEvent{EventKind::letter, rendered.back(), {}};
}

DecodeEvent KeypadSession::feed(char key) {
  switch (key) {
    case '7':
    case '4':
    case '1':
    case '8':
    case '5':
    case '2':
      if (pending_.find(key) != std::string::npos) {
        pending_.clear();
        return error_event(std::string("dot key ") + key + " pressed twice");
      }
      pending_ += key;
      return DecodeEvent{EventKind::dot, {}, {}};
    case '0':
      if (pending_.empty()) {
        commit(" ");
        return DecodeEvent{EventKind::word_boundary, " ", {}};
      }
      return close_cell();
    case '3':
    case '6': {
      if (!pending_.empty()) {
        DecodeEvent flushed = close_cell();
        if (flushed.kind == EventKind::error) return flushed;
      }
      const bool sentence = key == '6';
      const std::string_view separator = sentence ? "\n" : " ";
      commit(separator);
      return DecodeEvent{sentence ? EventKind::sentence_end : EventKind::word_boundary, std::string(separator), {}};
    }
    default:
      pending_.clear();
      return error_event(std::string("key '") + key + "' is not a Braille key");
  }
}

}  // namespace braille
