#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace newsagg::core {

// Splits plain text into sentences.
//
// A run of terminators ends a sentence when it contains a full-width
// terminator (U+3002, U+FF01, U+FF1F), or when it consists of '.', '!', '?'
// and is followed by whitespace or the end of the text. Each sentence is
// trimmed with internal whitespace collapsed; empty sentences are dropped.
std::vector<std::string> segment_sentences(std::string_view text);

}  // namespace newsagg::core
