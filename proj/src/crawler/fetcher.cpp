#include "newsagg/crawler/fetcher.hpp"

#include <thread>

#include <httplib.h>

#include "newsagg/crawler/url.hpp"

namespace newsagg::crawler {

using namespace std::chrono;

core::Timestamp SystemClock::now() { return core::now_utc(); }

void SystemClock::sleep_until(core::Timestamp t) {
    auto remaining = t - now();
    if (remaining > milliseconds::zero()) std::this_thread::sleep_for(remaining);
}

VirtualClock::VirtualClock(core::Timestamp start) : now_ms_(start.time_since_epoch().count()) {}

core::Timestamp VirtualClock::now() { return core::Timestamp{milliseconds{now_ms_.load()}}; }

void VirtualClock::sleep_until(core::Timestamp t) {
    auto target = t.time_since_epoch().count();
    auto cur = now_ms_.load();
    while (cur < target && !now_ms_.compare_exchange_weak(cur, target)) {
    }
}

void VirtualClock::advance(milliseconds d) { now_ms_ += d.count(); }

HttpFetcher::HttpFetcher(std::string user_agent, int timeout_ms)
    : user_agent_(std::move(user_agent)), timeout_ms_(timeout_ms) {}

FetchResponse HttpFetcher::fetch(const std::string& url) {
    FetchResponse out;
    ParsedUrl u;
    try {
        u = parse_url(url);
    } catch (const UrlError& e) {
        out.error = e.what();
        return out;
    }
#ifndef CPPHTTPLIB_OPENSSL_SUPPORT
    if (u.scheme == "https") {
        out.error = "https not supported in this build";
        return out;
    }
#endif
    httplib::Client client(u.origin());
    auto timeout = milliseconds{timeout_ms_};
    client.set_connection_timeout(duration_cast<seconds>(timeout).count(),
                                  static_cast<time_t>((timeout % seconds{1}).count() * 1000));
    client.set_read_timeout(duration_cast<seconds>(timeout).count(),
                            static_cast<time_t>((timeout % seconds{1}).count() * 1000));
    client.set_follow_location(true);
    std::string target = u.path + (u.query.empty() ? "" : "?" + u.query);
    auto res = client.Get(target, {{"User-Agent", user_agent_}});
    if (!res) {
        out.error = httplib::to_string(res.error());
        return out;
    }
    out.status = res->status;
    out.body = std::move(res->body);
    return out;
}

}  // namespace newsagg::crawler
