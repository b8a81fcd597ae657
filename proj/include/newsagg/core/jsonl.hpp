#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "newsagg/core/article.hpp"

namespace newsagg::core {

// Calls `on_line` for every non-blank line. Parse errors carry the line
// number.
void read_jsonl(std::istream& in, const std::function<void(const nlohmann::json&)>& on_line);
void read_jsonl_file(const std::string& path,
                     const std::function<void(const nlohmann::json&)>& on_line);

void write_jsonl_line(std::ostream& out, const nlohmann::json& j);

std::vector<Article> read_articles(const std::string& path);
void write_articles(const std::string& path, const std::vector<Article>& articles);

nlohmann::json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const nlohmann::json& j);

}  // namespace newsagg::core
