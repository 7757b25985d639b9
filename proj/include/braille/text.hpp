#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace braille {

/// Splits on ASCII whitespace.
std::vector<std::string> split_words(std::string_view text);

}  // namespace braille
