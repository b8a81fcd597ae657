#include "newsagg/core/sentences.hpp"

#include "newsagg/core/text.hpp"

namespace newsagg::core {

namespace {

constexpr std::string_view kIdeographicFullStop = "\xE3\x80\x82";  // 。
constexpr std::string_view kFullwidthExclamation = "\xEF\xBC\x81";  // ！
constexpr std::string_view kFullwidthQuestion = "\xEF\xBC\x9F";     // ？

// Length of the terminator starting at `i`, 0 if none. Sets `fullwidth`.
std::size_t terminator_at(std::string_view text, std::size_t i, bool& fullwidth) {
    char c = text[i];
    if (c == '.' || c == '!' || c == '?') {
        fullwidth = false;
        return 1;
    }
    auto rest = text.substr(i);
    for (auto t : {kIdeographicFullStop, kFullwidthExclamation, kFullwidthQuestion}) {
        if (rest.starts_with(t)) {
            fullwidth = true;
            return t.size();
        }
    }
    return 0;
}

void emit(std::string_view piece, std::vector<std::string>& out) {
    auto s = collapse_whitespace(piece);
    if (!s.empty()) out.push_back(std::move(s));
}

}  // namespace

std::vector<std::string> segment_sentences(std::string_view text) {
    std::vector<std::string> out;
    std::size_t start = 0;
    std::size_t i = 0;
    while (i < text.size()) {
        bool fullwidth = false;
        auto len = terminator_at(text, i, fullwidth);
        if (len == 0) {
            ++i;
            continue;
        }
        bool any_fullwidth = fullwidth;
        std::size_t j = i + len;
        while (j < text.size()) {
            auto next = terminator_at(text, j, fullwidth);
            if (next == 0) break;
            any_fullwidth = any_fullwidth || fullwidth;
            j += next;
        }
        if (any_fullwidth || j == text.size() || is_ascii_space(text[j])) {
            emit(text.substr(start, j - start), out);
            start = j;
        }
        i = j;
    }
    if (start < text.size()) emit(text.substr(start), out);
    return out;
}

}  // namespace newsagg::core
