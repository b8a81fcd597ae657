#include "newsagg/crawler/robots.hpp"

#include <sstream>

#include "newsagg/core/text.hpp"

namespace newsagg::crawler {

namespace {

// "newsagg/1.0 (+https://...)" -> "newsagg"
std::string product_token(std::string_view user_agent) {
    auto ua = core::trim(user_agent);
    auto end = ua.find_first_of("/ ");
    return core::ascii_lower(ua.substr(0, end));
}

}  // namespace

RobotsRules RobotsRules::parse(std::string_view text, std::string_view user_agent) {
    const auto token = product_token(user_agent);
    std::vector<std::string> star_rules;
    std::vector<std::string> agent_rules;
    bool agent_group_seen = false;

    bool group_is_star = false;
    bool group_is_agent = false;
    bool in_agent_lines = false;  // consecutive User-agent lines share a group

    std::istringstream in{std::string(text)};
    std::string raw;
    while (std::getline(in, raw)) {
        std::string_view line = raw;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = core::trim(line);
        if (line.empty()) continue;
        auto colon = line.find(':');
        if (colon == std::string_view::npos) continue;
        auto field = core::ascii_lower(core::trim(line.substr(0, colon)));
        auto value = std::string(core::trim(line.substr(colon + 1)));

        if (field == "user-agent") {
            if (!in_agent_lines) {
                group_is_star = false;
                group_is_agent = false;
            }
            in_agent_lines = true;
            auto v = core::ascii_lower(value);
            if (v == "*") group_is_star = true;
            if (!token.empty() && v != "*" && token.find(v) != std::string::npos) {
                group_is_agent = true;
                agent_group_seen = true;
            }
            continue;
        }
        in_agent_lines = false;
        if (field != "disallow" || value.empty()) continue;
        if (group_is_agent) agent_rules.push_back(value);
        if (group_is_star) star_rules.push_back(value);
    }

    RobotsRules rules;
    rules.disallow_ = agent_group_seen ? std::move(agent_rules) : std::move(star_rules);
    return rules;
}

bool RobotsRules::allowed(std::string_view path) const {
    if (path.empty()) path = "/";
    for (const auto& prefix : disallow_) {
        if (path.starts_with(prefix)) return false;
    }
    return true;
}

}  // namespace newsagg::crawler
