#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace newsagg::crawler {

// Raised for links that cannot be canonicalized; callers skip the link.
class UrlError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct ParsedUrl {
    std::string scheme;    // lowercase
    std::string userinfo;  // without the '@'
    std::string host;      // lowercase
    std::string port;      // empty when absent or default
    std::string path;      // starts with '/'
    std::string query;     // without the '?'
    std::string fragment;  // without the '#'

    std::string origin() const;  // scheme://host[:port]
};

ParsedUrl parse_url(std::string_view url);

// Canonical form: lowercase scheme and host, default port dropped,
// dot-segments resolved, fragment dropped, utm_* parameters dropped and the
// remaining parameters stably sorted by key.
std::string normalize_url(std::string_view url);
std::optional<std::string> try_normalize_url(std::string_view url);

// RFC 3986 reference resolution followed by normalize_url.
std::string resolve_url(std::string_view base, std::string_view reference);

std::string remove_dot_segments(std::string_view path);

// Host without a leading "www.".
std::string site_host(std::string_view host);
bool same_site(std::string_view url_a, std::string_view url_b);

}  // namespace newsagg::crawler
