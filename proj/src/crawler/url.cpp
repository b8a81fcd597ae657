#include "newsagg/crawler/url.hpp"

#include <algorithm>
#include <vector>

#include "newsagg/core/text.hpp"

namespace newsagg::crawler {

namespace {

bool is_scheme_char(char c, bool first) {
    bool alpha = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
    if (first) return alpha;
    return alpha || (c >= '0' && c <= '9') || c == '+' || c == '-' || c == '.';
}

bool valid_host(std::string_view host) {
    if (host.empty()) return false;
    if (host.front() == '[') return host.back() == ']';
    return std::all_of(host.begin(), host.end(), [](char c) {
        return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '.' || c == '-' ||
               c == '_' || static_cast<unsigned char>(c) >= 0x80;
    });
}

std::string default_port(std::string_view scheme) {
    if (scheme == "http") return "80";
    if (scheme == "https") return "443";
    return {};
}

std::string canonical_query(std::string_view query) {
    std::vector<std::string> params;
    for (auto& p : core::split(query, '&')) {
        if (p.empty()) continue;
        auto key = core::ascii_lower(std::string_view(p).substr(0, p.find('=')));
        if (key.starts_with("utm_")) continue;
        params.push_back(std::move(p));
    }
    std::stable_sort(params.begin(), params.end(), [](const std::string& a, const std::string& b) {
        return std::string_view(a).substr(0, a.find('=')) < std::string_view(b).substr(0, b.find('='));
    });
    return core::join(params, "&");
}

}  // namespace

std::string ParsedUrl::origin() const {
    std::string out = scheme + "://" + host;
    if (!port.empty()) out += ":" + port;
    return out;
}

ParsedUrl parse_url(std::string_view url) {
    auto s = core::trim(url);
    if (s.empty()) throw UrlError("empty URL");
    if (s.find_first_of(" \t\r\n") != std::string_view::npos) {
        throw UrlError("whitespace in URL: " + std::string(s));
    }
    auto sep = s.find("://");
    if (sep == std::string_view::npos || sep == 0) {
        throw UrlError("not an absolute URL: " + std::string(s));
    }
    for (std::size_t i = 0; i < sep; ++i) {
        if (!is_scheme_char(s[i], i == 0)) throw UrlError("bad scheme: " + std::string(s));
    }

    ParsedUrl u;
    u.scheme = core::ascii_lower(s.substr(0, sep));
    auto rest = s.substr(sep + 3);

    if (auto h = rest.find('#'); h != std::string_view::npos) {
        u.fragment = std::string(rest.substr(h + 1));
        rest = rest.substr(0, h);
    }
    if (auto q = rest.find('?'); q != std::string_view::npos) {
        u.query = std::string(rest.substr(q + 1));
        rest = rest.substr(0, q);
    }
    auto slash = rest.find('/');
    auto authority = rest.substr(0, slash);
    u.path = slash == std::string_view::npos ? "/" : std::string(rest.substr(slash));

    if (auto at = authority.rfind('@'); at != std::string_view::npos) {
        u.userinfo = std::string(authority.substr(0, at));
        authority = authority.substr(at + 1);
    }
    std::string_view host = authority;
    std::string_view port;
    auto colon = authority.rfind(':');
    if (colon != std::string_view::npos && authority.find(']', colon) == std::string_view::npos) {
        host = authority.substr(0, colon);
        port = authority.substr(colon + 1);
        if (!std::all_of(port.begin(), port.end(), [](char c) { return c >= '0' && c <= '9'; })) {
            throw UrlError("bad port: " + std::string(s));
        }
    }
    u.host = core::ascii_lower(host);
    if (!valid_host(u.host)) throw UrlError("bad host: " + std::string(s));
    if (!port.empty() && port != default_port(u.scheme)) u.port = std::string(port);
    return u;
}

std::string remove_dot_segments(std::string_view path) {
    std::vector<std::string_view> out;
    bool trailing_slash = false;
    std::size_t i = 0;
    while (i <= path.size()) {
        auto next = path.find('/', i);
        if (next == std::string_view::npos) next = path.size();
        auto seg = path.substr(i, next - i);
        bool last = next == path.size();
        if (seg == ".") {
            trailing_slash = last;
        } else if (seg == "..") {
            if (!out.empty()) out.pop_back();
            trailing_slash = last;
        } else if (!(seg.empty() && i == 0)) {
            out.push_back(seg);
            trailing_slash = false;
        }
        i = next + 1;
    }
    std::string result;
    for (auto seg : out) {
        result += '/';
        result += seg;
    }
    if (trailing_slash || result.empty()) result += '/';
    return result;
}

std::string normalize_url(std::string_view url) {
    auto u = parse_url(url);
    std::string out = u.scheme + "://";
    if (!u.userinfo.empty()) out += u.userinfo + "@";
    out += u.host;
    if (!u.port.empty()) out += ":" + u.port;
    out += remove_dot_segments(u.path);
    auto q = canonical_query(u.query);
    if (!q.empty()) out += "?" + q;
    return out;
}

std::optional<std::string> try_normalize_url(std::string_view url) {
    try {
        return normalize_url(url);
    } catch (const UrlError&) {
        return std::nullopt;
    }
}

std::string resolve_url(std::string_view base, std::string_view reference) {
    auto ref = core::trim(reference);
    // A scheme prefix makes the reference absolute.
    auto colon = ref.find(':');
    if (colon != std::string_view::npos && colon > 0) {
        bool scheme = true;
        for (std::size_t i = 0; i < colon; ++i) scheme = scheme && is_scheme_char(ref[i], i == 0);
        auto slash = ref.find('/');
        if (scheme && (slash == std::string_view::npos || slash > colon)) {
            return normalize_url(ref);
        }
    }
    auto b = parse_url(base);
    if (ref.starts_with("//")) return normalize_url(b.scheme + ":" + std::string(ref));
    std::string origin = b.origin();
    if (!b.userinfo.empty()) origin = b.scheme + "://" + b.userinfo + "@" + b.host + (b.port.empty() ? "" : ":" + b.port);
    if (ref.empty() || ref.front() == '#') {
        return normalize_url(origin + b.path + (b.query.empty() ? "" : "?" + b.query));
    }
    if (ref.front() == '/') return normalize_url(origin + std::string(ref));
    if (ref.front() == '?') return normalize_url(origin + b.path + std::string(ref));
    auto dir = b.path.substr(0, b.path.rfind('/') + 1);
    return normalize_url(origin + dir + std::string(ref));
}

std::string site_host(std::string_view host) {
    std::string h = core::ascii_lower(host);
    if (h.starts_with("www.")) h.erase(0, 4);
    return h;
}

bool same_site(std::string_view url_a, std::string_view url_b) {
    auto a = parse_url(url_a);
    auto b = parse_url(url_b);
    return site_host(a.host) == site_host(b.host) && a.port == b.port;
}

}  // namespace newsagg::crawler
