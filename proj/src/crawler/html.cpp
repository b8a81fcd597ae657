#include "newsagg/crawler/html.hpp"

#include <cctype>
#include <cstdint>

#include "newsagg/core/text.hpp"

namespace newsagg::crawler {

namespace {

// Index one past the closing '>' of the tag starting at `lt`, honoring
// quoted attribute values.
std::size_t tag_end(std::string_view html, std::size_t lt) {
    char quote = 0;
    for (std::size_t i = lt + 1; i < html.size(); ++i) {
        char c = html[i];
        if (quote) {
            if (c == quote) quote = 0;
        } else if (c == '"' || c == '\'') {
            quote = c;
        } else if (c == '>') {
            return i + 1;
        }
    }
    return html.size();
}

std::string tag_name(std::string_view html, std::size_t lt) {
    std::size_t i = lt + 1;
    if (i < html.size() && html[i] == '/') ++i;
    std::size_t start = i;
    while (i < html.size() && (std::isalnum(static_cast<unsigned char>(html[i])) || html[i] == '-')) ++i;
    return core::ascii_lower(html.substr(start, i - start));
}

bool is_closing(std::string_view html, std::size_t lt) {
    return lt + 1 < html.size() && html[lt + 1] == '/';
}

// Position of "</name" (case-insensitive) at or after `from`.
std::size_t find_close(std::string_view html, std::size_t from, std::string_view name) {
    for (std::size_t i = html.find("</", from); i != std::string_view::npos; i = html.find("</", i + 2)) {
        if (core::ascii_lower(html.substr(i + 2, name.size())) == name) return i;
    }
    return std::string_view::npos;
}

void append_utf8(std::uint32_t cp, std::string& out) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x110000) {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

}  // namespace

std::string decode_entities(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] != '&') {
            out.push_back(text[i]);
            continue;
        }
        auto semi = text.find(';', i);
        if (semi == std::string_view::npos || semi - i > 10) {
            out.push_back('&');
            continue;
        }
        auto name = text.substr(i + 1, semi - i - 1);
        std::string replacement;
        if (name == "amp") replacement = "&";
        else if (name == "lt") replacement = "<";
        else if (name == "gt") replacement = ">";
        else if (name == "quot") replacement = "\"";
        else if (name == "apos" || name == "#39") replacement = "'";
        else if (name == "nbsp") replacement = " ";
        else if (name.size() > 1 && name[0] == '#') {
            std::uint32_t cp = 0;
            bool hex = name[1] == 'x' || name[1] == 'X';
            bool ok = name.size() > (hex ? 2u : 1u);
            for (std::size_t k = hex ? 2 : 1; k < name.size() && ok; ++k) {
                char c = name[k];
                int d = (c >= '0' && c <= '9') ? c - '0'
                        : (hex && c >= 'a' && c <= 'f') ? c - 'a' + 10
                        : (hex && c >= 'A' && c <= 'F') ? c - 'A' + 10
                        : -1;
                if (d < 0) ok = false;
                else cp = cp * (hex ? 16 : 10) + static_cast<std::uint32_t>(d);
                if (cp > 0x10FFFF) ok = false;
            }
            if (ok) append_utf8(cp, replacement);
        }
        if (replacement.empty()) {
            out.push_back('&');
            continue;
        }
        out += replacement;
        i = semi;
    }
    return out;
}

std::string html_escape(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

std::string extract_title(std::string_view html) {
    for (auto lt = html.find('<'); lt != std::string_view::npos; lt = html.find('<', lt + 1)) {
        if (!is_closing(html, lt) && tag_name(html, lt) == "title") {
            auto start = tag_end(html, lt);
            auto close = find_close(html, start, "title");
            if (close == std::string_view::npos) close = html.size();
            return core::collapse_whitespace(decode_entities(html.substr(start, close - start)));
        }
    }
    return {};
}

std::string extract_text(std::string_view html) {
    std::string raw;
    raw.reserve(html.size());
    std::size_t i = 0;
    while (i < html.size()) {
        if (html[i] != '<') {
            raw.push_back(html[i++]);
            continue;
        }
        if (html.substr(i, 4) == "<!--") {
            auto end = html.find("-->", i + 4);
            i = end == std::string_view::npos ? html.size() : end + 3;
            raw.push_back(' ');
            continue;
        }
        auto name = tag_name(html, i);
        auto end = tag_end(html, i);
        if (name.empty() && !is_closing(html, i)) {
            // A lone '<' in text.
            raw.push_back('<');
            ++i;
            continue;
        }
        if (!is_closing(html, i) && (name == "script" || name == "style" || name == "title")) {
            auto close = find_close(html, end, name);
            i = close == std::string_view::npos ? html.size() : tag_end(html, close);
        } else {
            i = end;
        }
        raw.push_back(' ');
    }
    auto body = core::collapse_whitespace(decode_entities(raw));
    auto title = extract_title(html);
    if (title.empty()) return body;
    if (body.empty()) return title;
    return title + "\n" + body;
}

std::vector<std::string> extract_links(std::string_view html) {
    std::vector<std::string> links;
    for (auto lt = html.find('<'); lt != std::string_view::npos; lt = html.find('<', lt + 1)) {
        if (html.substr(lt, 4) == "<!--") {
            auto close = html.find("-->", lt + 4);
            if (close == std::string_view::npos) break;
            lt = close + 2;
            continue;
        }
        if (is_closing(html, lt)) continue;
        auto name = tag_name(html, lt);
        auto end = tag_end(html, lt);
        if (name == "script" || name == "style") {
            auto close = find_close(html, end, name);
            if (close == std::string_view::npos) break;
            lt = close;
            continue;
        }
        if (name != "a") continue;
        auto tag = html.substr(lt, end - lt);
        auto lower = core::ascii_lower(tag);
        for (auto pos = lower.find("href"); pos != std::string::npos; pos = lower.find("href", pos + 4)) {
            // Must be a whole attribute name.
            if (pos == 0 || !core::is_ascii_space(lower[pos - 1])) continue;
            auto k = pos + 4;
            while (k < tag.size() && core::is_ascii_space(tag[k])) ++k;
            if (k >= tag.size() || tag[k] != '=') continue;
            ++k;
            while (k < tag.size() && core::is_ascii_space(tag[k])) ++k;
            if (k >= tag.size()) break;
            std::string_view value;
            if (tag[k] == '"' || tag[k] == '\'') {
                auto close = tag.find(tag[k], k + 1);
                if (close == std::string_view::npos) break;
                value = tag.substr(k + 1, close - k - 1);
            } else {
                auto stop = k;
                while (stop < tag.size() && !core::is_ascii_space(tag[stop]) && tag[stop] != '>') ++stop;
                value = tag.substr(k, stop - k);
            }
            links.push_back(decode_entities(core::trim(value)));
            break;
        }
    }
    return links;
}

}  // namespace newsagg::crawler
