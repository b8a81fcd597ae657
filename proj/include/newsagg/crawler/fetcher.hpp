#pragma once

#include <atomic>
#include <string>

#include "newsagg/core/time.hpp"

namespace newsagg::crawler {

class Clock {
public:
    virtual ~Clock() = default;
    virtual core::Timestamp now() = 0;
    virtual void sleep_until(core::Timestamp t) = 0;
};

class SystemClock final : public Clock {
public:
    core::Timestamp now() override;
    void sleep_until(core::Timestamp t) override;
};

// Virtual time for simulated crawls. Sleeping advances the shared clock
// monotonically; it never goes backwards across threads.
class VirtualClock final : public Clock {
public:
    explicit VirtualClock(core::Timestamp start);
    core::Timestamp now() override;
    void sleep_until(core::Timestamp t) override;
    void advance(std::chrono::milliseconds d);

private:
    std::atomic<std::int64_t> now_ms_;
};

struct FetchResponse {
    int status = 0;  // 0 when the request never completed
    std::string body;
    std::string error;

    bool ok() const { return status >= 200 && status < 300; }
};

// Must be safe to call from several threads.
class PageFetcher {
public:
    virtual ~PageFetcher() = default;
    virtual FetchResponse fetch(const std::string& url) = 0;
};

class HttpFetcher final : public PageFetcher {
public:
    HttpFetcher(std::string user_agent, int timeout_ms);
    FetchResponse fetch(const std::string& url) override;

private:
    std::string user_agent_;
    int timeout_ms_;
};

}  // namespace newsagg::crawler
