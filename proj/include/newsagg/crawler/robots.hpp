#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace newsagg::crawler {

// Disallow-prefix interpretation of robots.txt. The group naming our agent
// (case-insensitive substring match on the product token) wins over "*".
// Allow lines and wildcards are ignored.
class RobotsRules {
public:
    RobotsRules() = default;
    static RobotsRules parse(std::string_view text, std::string_view user_agent);
    static RobotsRules allow_all() { return {}; }

    bool allowed(std::string_view path) const;
    const std::vector<std::string>& disallowed_prefixes() const { return disallow_; }

private:
    std::vector<std::string> disallow_;
};

}  // namespace newsagg::crawler
