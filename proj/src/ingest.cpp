#include "streamint/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>

#include <json.hpp>

#include "streamint/errors.hpp"
#include "streamint/timeutil.hpp"

namespace streamint {

namespace {

std::string ascii_fold(const std::string& s) {
    std::string out = s;
    for (auto& ch : out) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    return out;
}

constexpr std::size_t kSkipLogCap = 100;

} // namespace

std::string normalize_tag(const std::string& tag) { return ascii_fold(tag); }

std::string normalize_handle(const std::string& handle) {
    std::string folded = ascii_fold(handle);
    if (!folded.empty() && folded[0] != '@') folded.insert(folded.begin(), '@');
    return folded;
}

void IngestStats::log_skip(std::uint64_t line, std::string reason) {
    ++skipped_records;
    if (skip_log.size() < kSkipLogCap) skip_log.emplace_back(line, std::move(reason));
}

std::vector<Edge> tweet_to_edges(const TweetRecord& record, const FilterConfig& filter,
                                 IngestStats& stats) {
    std::vector<Edge> edges;
    if (record.sender.empty()) return edges;
    if (!filter.in_range(record.timestamp)) {
        ++stats.out_of_range;
        return edges;
    }
    stats.last_timestamp =
        std::max(stats.last_timestamp.value_or(record.timestamp), record.timestamp);
    const std::string sender = normalize_handle(record.sender);
    for (const auto& raw : record.tags) {
        const std::string tag = normalize_tag(raw);
        if (tag.size() < 2 || (tag[0] != '#' && tag[0] != '@')) {
            ++stats.malformed_tags;
            continue;
        }
        if (filter.excludes(tag)) {
            ++stats.excluded_tags;
            continue;
        }
        if (tag == sender) {
            ++stats.self_edges;
            continue;
        }
        edges.push_back(Edge{sender, tag, record.timestamp});
    }
    stats.edges += edges.size();
    return edges;
}

std::optional<TweetRecord> parse_tweet_line(const std::string& line) {
    nlohmann::json j = nlohmann::json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded() || !j.is_object()) return std::nullopt;
    if (!j.contains("sender") || !j["sender"].is_string()) return std::nullopt;
    if (!j.contains("timestamp")) return std::nullopt;

    TweetRecord r;
    r.sender = j["sender"].get<std::string>();
    if (r.sender.empty()) return std::nullopt;

    const auto& ts = j["timestamp"];
    if (ts.is_number_integer()) {
        r.timestamp = ts.get<std::int64_t>();
    } else if (ts.is_string()) {
        auto parsed = parse_timestamp(ts.get<std::string>());
        if (!parsed) return std::nullopt;
        r.timestamp = *parsed;
    } else {
        return std::nullopt;
    }

    if (j.contains("tags")) {
        if (!j["tags"].is_array()) return std::nullopt;
        for (const auto& t : j["tags"]) {
            if (!t.is_string()) return std::nullopt;
            r.tags.push_back(t.get<std::string>());
        }
    }
    return r;
}

IngestStats replay(const std::string& path, const FilterConfig& filter, const EdgeSink& sink) {
    std::ifstream in(path);
    if (!in) throw IoError(path, "cannot open tweet file");
    IngestStats stats;
    std::string line;
    std::uint64_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        auto record = parse_tweet_line(line);
        if (!record) {
            stats.log_skip(line_no, "malformed record");
            continue;
        }
        ++stats.records;
        for (const auto& e : tweet_to_edges(*record, filter, stats)) sink(e);
    }
    if (in.bad()) throw IoError(path, "read failure");
    return stats;
}

} // namespace streamint
