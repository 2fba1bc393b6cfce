#include "streamint/timeutil.hpp"

#include <cctype>
#include <cstdio>
#include <ctime>

namespace streamint {

std::optional<std::int64_t> parse_timestamp(const std::string& text) {
    if (text.empty()) return std::nullopt;

    bool digits_only = true;
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (i == 0 && (text[i] == '-' || text[i] == '+')) continue;
        if (!std::isdigit(static_cast<unsigned char>(text[i]))) {
            digits_only = false;
            break;
        }
    }
    if (digits_only) {
        try {
            return std::stoll(text);
        } catch (...) {
            return std::nullopt;
        }
    }

    std::tm tm{};
    int y, mo, d, h, mi, s;
    if (std::sscanf(text.c_str(), "%d-%d-%dT%d:%d:%d", &y, &mo, &d, &h, &mi, &s) != 6)
        return std::nullopt;
    tm.tm_year = y - 1900;
    tm.tm_mon = mo - 1;
    tm.tm_mday = d;
    tm.tm_hour = h;
    tm.tm_min = mi;
    tm.tm_sec = s;
    const time_t t = timegm(&tm);
    if (t == static_cast<time_t>(-1)) return std::nullopt;
    return static_cast<std::int64_t>(t);
}

std::string format_timestamp(std::int64_t epoch_seconds) {
    const time_t t = static_cast<time_t>(epoch_seconds);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02dZ", tm.tm_year + 1900,
                  tm.tm_mon + 1, tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec);
    return buf;
}

} // namespace streamint
