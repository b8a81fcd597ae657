#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace newsagg::crawler {

// Tag-strip extraction: drops script/style/comments, decodes the common
// entities and collapses whitespace. The <title>, when present, is the
// first line.
std::string extract_text(std::string_view html);
std::string extract_title(std::string_view html);

// href values of <a> elements, in document order, entity-decoded.
std::vector<std::string> extract_links(std::string_view html);

std::string html_escape(std::string_view text);
std::string decode_entities(std::string_view text);

}  // namespace newsagg::crawler
