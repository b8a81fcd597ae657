#include "newsagg/core/region.hpp"

#include <algorithm>
#include <map>

#include "newsagg/core/text.hpp"

namespace newsagg::core {

const std::vector<std::string>& supported_regions() {
    static const std::vector<std::string> regions = {
        "fr", "us", "jp", "eu", "cn", "int", "kr", "es", "in", "de", "it", "br",
    };
    return regions;
}

bool is_supported_region(std::string_view code) {
    const auto& r = supported_regions();
    return std::find(r.begin(), r.end(), code) != r.end();
}

std::optional<std::string> normalize_region(std::string_view country) {
    static const std::map<std::string, std::string, std::less<>> names = {
        {"france", "fr"},   {"united states", "us"}, {"usa", "us"},
        {"america", "us"},  {"japan", "jp"},         {"europe", "eu"},
        {"china", "cn"},    {"international", "int"}, {"int.", "int"},
        {"korea", "kr"},    {"south korea", "kr"},   {"spain", "es"},
        {"india", "in"},    {"germany", "de"},       {"italy", "it"},
        {"brazil", "br"},
    };
    auto key = ascii_lower(trim(country));
    if (is_supported_region(key)) return key;
    if (auto it = names.find(key); it != names.end()) return it->second;
    return std::nullopt;
}

std::string default_language(std::string_view region) {
    static const std::map<std::string, std::string, std::less<>> langs = {
        {"fr", "fr"}, {"us", "en"}, {"jp", "ja"}, {"eu", "en"},
        {"cn", "zh"}, {"int", "en"}, {"kr", "ko"}, {"es", "es"},
        {"in", "en"}, {"de", "de"}, {"it", "it"}, {"br", "pt"},
    };
    if (auto it = langs.find(region); it != langs.end()) return it->second;
    return "und";
}

}  // namespace newsagg::core
