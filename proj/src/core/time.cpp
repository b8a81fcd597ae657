#include "newsagg/core/time.hpp"

#include <cstdio>

namespace newsagg::core {

using namespace std::chrono;

std::string to_rfc3339(Timestamp t) {
    auto day = floor<days>(t);
    year_month_day ymd{day};
    hh_mm_ss hms{t - day};
    char buf[40];
    auto ms = hms.subseconds().count();
    if (ms != 0) {
        std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02ld:%02ld:%02ld.%03ldZ",
                      static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month()),
                      static_cast<unsigned>(ymd.day()), static_cast<long>(hms.hours().count()),
                      static_cast<long>(hms.minutes().count()),
                      static_cast<long>(hms.seconds().count()), static_cast<long>(ms));
    } else {
        std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02ld:%02ld:%02ldZ",
                      static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month()),
                      static_cast<unsigned>(ymd.day()), static_cast<long>(hms.hours().count()),
                      static_cast<long>(hms.minutes().count()),
                      static_cast<long>(hms.seconds().count()));
    }
    return buf;
}

namespace {

int digits(std::string_view s, std::size_t pos, std::size_t n) {
    if (pos + n > s.size()) throw TimeParseError("truncated timestamp: " + std::string(s));
    int v = 0;
    for (std::size_t i = pos; i < pos + n; ++i) {
        if (s[i] < '0' || s[i] > '9') {
            throw TimeParseError("bad digit in timestamp: " + std::string(s));
        }
        v = v * 10 + (s[i] - '0');
    }
    return v;
}

void expect(std::string_view s, std::size_t pos, char c) {
    if (pos >= s.size() || s[pos] != c) {
        throw TimeParseError("malformed timestamp: " + std::string(s));
    }
}

}  // namespace

Timestamp parse_rfc3339(std::string_view s) {
    int y = digits(s, 0, 4);
    expect(s, 4, '-');
    int mo = digits(s, 5, 2);
    expect(s, 7, '-');
    int d = digits(s, 8, 2);
    year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)}, day{static_cast<unsigned>(d)}};
    if (!ymd.ok()) throw TimeParseError("invalid date: " + std::string(s));
    Timestamp t{sys_days{ymd}};
    if (s.size() == 10) return t;

    if (s[10] != 'T' && s[10] != 't' && s[10] != ' ') {
        throw TimeParseError("malformed timestamp: " + std::string(s));
    }
    int hh = digits(s, 11, 2);
    expect(s, 13, ':');
    int mm = digits(s, 14, 2);
    expect(s, 16, ':');
    int ss = digits(s, 17, 2);
    if (hh > 23 || mm > 59 || ss > 60) throw TimeParseError("time out of range: " + std::string(s));
    t += hours{hh} + minutes{mm} + seconds{ss};

    std::size_t pos = 19;
    if (pos < s.size() && s[pos] == '.') {
        ++pos;
        int frac_ms = 0;
        int scale = 100;
        std::size_t start = pos;
        while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') {
            frac_ms += (s[pos] - '0') * scale;
            scale /= 10;
            ++pos;
        }
        if (pos == start) throw TimeParseError("empty fraction: " + std::string(s));
        t += milliseconds{frac_ms};
    }
    if (pos >= s.size()) throw TimeParseError("missing UTC offset: " + std::string(s));
    if (s[pos] == 'Z' || s[pos] == 'z') {
        if (pos + 1 != s.size()) throw TimeParseError("trailing data: " + std::string(s));
        return t;
    }
    if (s[pos] != '+' && s[pos] != '-') throw TimeParseError("bad offset: " + std::string(s));
    int sign = s[pos] == '+' ? 1 : -1;
    int oh = digits(s, pos + 1, 2);
    expect(s, pos + 3, ':');
    int om = digits(s, pos + 4, 2);
    if (pos + 6 != s.size()) throw TimeParseError("trailing data: " + std::string(s));
    // Local time minus offset gives UTC.
    t -= sign * (hours{oh} + minutes{om});
    return t;
}

Timestamp now_utc() { return floor<milliseconds>(system_clock::now()); }

}  // namespace newsagg::core
