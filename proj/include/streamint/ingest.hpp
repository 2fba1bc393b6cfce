#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "streamint/graphstream.hpp"

namespace streamint {

struct TweetRecord {
    std::string sender; // handle, '@' prepended if missing
    std::vector<std::string> tags; // '#topic' or '@handle'
    std::int64_t timestamp = 0;
};

// Case-folded; the leading marker stays significant ('#x' and '@x' are
// different nodes). Senders get an '@' marker.
std::string normalize_tag(const std::string& tag);
std::string normalize_handle(const std::string& handle);

struct FilterConfig {
    std::set<std::string> excluded_tags; // normalized
    std::optional<std::int64_t> from;    // inclusive
    std::optional<std::int64_t> to;      // exclusive

    bool excludes(const std::string& normalized_tag) const {
        return excluded_tags.count(normalized_tag) > 0;
    }
    bool in_range(std::int64_t ts) const {
        return (!from || ts >= *from) && (!to || ts < *to);
    }
};

struct IngestStats {
    std::uint64_t records = 0;       // parsed tweet records
    std::uint64_t edges = 0;         // edges emitted
    std::uint64_t skipped_records = 0;
    std::uint64_t excluded_tags = 0;
    std::uint64_t self_edges = 0;    // sender mentioning itself
    std::uint64_t malformed_tags = 0;
    std::uint64_t out_of_range = 0;
    // Timestamp of the last in-range record, edges or not: the stream clock
    // has demonstrably reached it.
    std::optional<std::int64_t> last_timestamp;
    std::vector<std::pair<std::uint64_t, std::string>> skip_log; // (line, reason), capped

    void log_skip(std::uint64_t line, std::string reason);
};

// One edge (sender, tag) per tag that survives the filter.
std::vector<Edge> tweet_to_edges(const TweetRecord& record, const FilterConfig& filter,
                                 IngestStats& stats);

using EdgeSink = std::function<void(const Edge&)>;

// Streams a file of line-delimited tweet records through the filter into the
// sink. One record in flight at a time; malformed lines are counted and
// skipped with their line number. Throws IoError if the file cannot be read.
IngestStats replay(const std::string& path, const FilterConfig& filter, const EdgeSink& sink);

// Parses one JSON tweet record; nullopt on malformed input.
std::optional<TweetRecord> parse_tweet_line(const std::string& line);

} // namespace streamint
