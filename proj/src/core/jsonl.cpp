#include "newsagg/core/jsonl.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

#include "newsagg/core/text.hpp"

namespace newsagg::core {

using nlohmann::json;

void read_jsonl(std::istream& in, const std::function<void(const json&)>& on_line) {
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::parse_error& e) {
            throw std::runtime_error("line " + std::to_string(lineno) + ": " + e.what());
        }
        on_line(j);
    }
}

void read_jsonl_file(const std::string& path, const std::function<void(const json&)>& on_line) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    read_jsonl(in, on_line);
}

void write_jsonl_line(std::ostream& out, const json& j) {
    out << j.dump(-1, ' ', false, json::error_handler_t::replace) << '\n';
}

std::vector<Article> read_articles(const std::string& path) {
    std::vector<Article> out;
    read_jsonl_file(path, [&](const json& j) { out.push_back(article_from_json(j)); });
    return out;
}

void write_articles(const std::string& path, const std::vector<Article>& articles) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    for (const auto& a : articles) write_jsonl_line(out, to_json(a));
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return json::parse(in);
}

void write_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(2, ' ', false, json::error_handler_t::replace) << '\n';
}

}  // namespace newsagg::core
