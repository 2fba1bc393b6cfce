#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "streamint/genmodels.hpp"
#include "streamint/graphstream.hpp"
#include "streamint/integrate.hpp"
#include "streamint/olap.hpp"

namespace streamint {

// Canonical artifact names inside a run's output directory.
inline constexpr const char* kEdgesFile = "edges.csv";
inline constexpr const char* kPlantedFile = "planted.jsonl";
inline constexpr const char* kSnapshotsFile = "snapshots.jsonl";
inline constexpr const char* kRegistryFile = "registry.jsonl";
inline constexpr const char* kGlobalComponentsFile = "global_components.jsonl";
inline constexpr const char* kSeriesFile = "series.csv";
inline constexpr const char* kRunConfigFile = "run_config.json";
inline constexpr const char* kIntegrationFile = "integration.json";

struct EdgeReadStats {
    std::uint64_t lines = 0;
    std::uint64_t edges = 0;
    std::uint64_t skipped = 0;
    std::vector<std::pair<std::uint64_t, std::string>> skip_log; // (line, reason), capped
};

// Edge stream file: either "src,dst,timestamp" lines or JSON records
// {"src":...,"dst":...,"timestamp":...}; detected per line. Timestamps may be
// epoch seconds or ISO-8601. Streams without loading the file.
EdgeReadStats read_edge_stream(const std::string& path,
                               const std::function<void(const Edge&)>& sink);

void write_edge_stream_csv(const std::string& path, const std::vector<Edge>& edges);

// One line per planted community: {"community_id", "nodes" (the core),
// "members" (the whole block)}. Node ids go through `name` so the file
// matches the node names used in the emitted edge stream.
void write_planted(const std::string& path, const GeneratedGraph& graph,
                   const std::function<std::string(std::uint32_t)>& name);

// One line per stored component: {"at", "component_id", "node_count",
// "nodes"}. A snapshot with no qualifying component still yields a marker
// line with a null component_id, so the tick is visible in the file.
void write_snapshots(const std::string& path, const std::vector<CommunitySnapshot>& snapshots);
std::vector<CommunitySnapshot> read_snapshots(const std::string& path);

// {"node", "first_seen", "occurrences"}, sorted by node.
void write_registry(const std::string& path, const NodeRegistry& registry);

// {"component_id", "node_count", "edge_count", "nodes"}.
void write_components(const std::string& path, const ComponentSet& set);
ComponentSet read_components(const std::string& path);

// Plot-ready series: "at,lineage,component_id,size".
void write_series(const std::string& path, const std::vector<SeriesPoint>& series);

// {"value", "density", "sample_count"} per dimension value.
void write_density(const std::string& path, const DensityVector& density);

void write_integration(const std::string& path, const IntegrationResult& result);

// Delimiter-separated matrix with a header row/column of stream names.
void write_matrix_csv(const std::string& path, const std::vector<std::string>& names,
                      const std::vector<std::vector<double>>& matrix);

// Rebuilds a stream summary from a detect output directory.
StreamSummary load_summary_dir(const std::string& dir);

// Header-first delimiter-separated tuple file reader.
class TupleReader {
public:
    TupleReader(const std::string& path, char delimiter = ',');
    ~TupleReader();
    TupleReader(const TupleReader&) = delete;
    TupleReader& operator=(const TupleReader&) = delete;

    const std::vector<std::string>& header() const { return header_; }
    std::size_t column_of(const std::string& name) const; // throws SchemaError

    // Advances to the next data row; false at end of file.
    bool next(std::vector<std::string>& row);
    std::uint64_t line_no() const { return line_no_; }

private:
    struct Impl;
    Impl* impl_;
    std::vector<std::string> header_;
    std::uint64_t line_no_ = 0;
    char delimiter_;
    std::string path_;
};

std::vector<std::string> split_line(const std::string& line, char delimiter);

} // namespace streamint
