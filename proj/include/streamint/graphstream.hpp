#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "streamint/reservoir.hpp"

namespace streamint {

struct Edge {
    std::string src;
    std::string dst;
    std::int64_t timestamp = 0;
};

// Edge with endpoints interned through the node registry.
struct EdgeRef {
    std::uint32_t src = 0;
    std::uint32_t dst = 0;
    std::int64_t timestamp = 0;
};

// Every endpoint ever accepted, with first-seen time and occurrence count.
// Grows monotonically; this is the |V| part of the memory budget.
class NodeRegistry {
public:
    std::uint32_t touch(const std::string& name, std::int64_t timestamp);
    std::optional<std::uint32_t> find(const std::string& name) const;
    const std::string& name(std::uint32_t index) const { return infos_[index].name; }
    std::int64_t first_seen(std::uint32_t index) const { return infos_[index].first_seen; }
    std::uint64_t occurrences(std::uint32_t index) const { return infos_[index].occurrences; }
    std::size_t size() const { return infos_.size(); }

private:
    struct Info {
        std::string name;
        std::int64_t first_seen;
        std::uint64_t occurrences;
    };
    std::vector<Info> infos_;
    std::unordered_map<std::string, std::uint32_t> index_;
};

struct Component {
    std::string id; // lexicographically smallest member node
    std::vector<std::string> nodes;
    std::size_t edge_count = 0;

    std::size_t size() const { return nodes.size(); }
    bool operator==(const Component&) const = default;
};

struct ComponentSet {
    std::vector<Component> components; // sorted by id

    bool empty() const { return components.empty(); }
    std::size_t size() const { return components.size(); }
    bool operator==(const ComponentSet&) const = default;
};

// Exact connected components of the multigraph induced by the retained
// edges. Duplicate edges collapse for connectivity but are counted in
// edge_count. Node lists are sorted, components ordered by id.
ComponentSet components_of(const std::vector<EdgeRef>& edges, const NodeRegistry& registry);
ComponentSet components_of(const std::vector<Edge>& edges);

struct CommunitySnapshot {
    std::int64_t at = 0;
    std::vector<Component> components; // only components with >= h nodes
};

struct DCConfig {
    std::size_t k = 400;             // reservoir capacity
    std::size_t h = 3;               // community size threshold, in nodes
    std::size_t c = 3;               // recompute period, in accepted edges
    std::int64_t tau = 900;          // snapshot interval, event-time seconds
    std::int64_t window_length = 900;
    WindowMode window_mode = WindowMode::exact;
    LatePolicy late = LatePolicy::strict;

    void validate() const;
};

struct StreamCounters {
    std::uint64_t accepted = 0;
    std::uint64_t self_loops = 0;
    std::uint64_t malformed = 0;
    std::uint64_t rejected_late = 0;
};

struct FinalizeResult {
    ComponentSet global_communities; // global components with >= h nodes
    std::int64_t last_timestamp = 0;
};

// Streaming state for one edge source: node registry, global reservoir,
// window sampler, periodically recomputed window components, and the
// snapshot series. Single writer; independent instances may run in parallel.
class EdgeStreamState {
public:
    EdgeStreamState(DCConfig config, std::uint64_t seed);

    void ingest(const Edge& edge);

    // Advances event time without an edge: evicts the window, fires any due
    // snapshots, refreshes the cached window components.
    void advance_time(std::int64_t now);

    FinalizeResult finalize();

    const std::vector<CommunitySnapshot>& snapshots() const { return snapshots_; }
    // Components of the window reservoir as of the last recompute.
    const ComponentSet& window_components() const { return window_components_; }
    // Components of the global reservoir, computed on demand.
    ComponentSet global_components() const;
    ComponentSet global_communities() const; // >= h nodes only

    const NodeRegistry& registry() const { return registry_; }
    const DCConfig& config() const { return config_; }
    const StreamCounters& counters() const { return counters_; }
    std::uint64_t seed() const { return seed_; }

    // Retained edges with resolved node names, for inspection and testing.
    std::vector<Edge> window_edges() const;
    std::vector<Edge> global_edges() const;

    std::size_t retained_total() const { return global_.size() + window_.size(); }
    std::size_t max_retained_total() const { return max_retained_; }
    std::optional<std::int64_t> first_timestamp() const { return first_ts_; }
    std::int64_t last_timestamp() const { return last_ts_; }

private:
    void fire_due_snapshots(std::int64_t upto);
    void take_snapshot(std::int64_t at);
    void recompute_window(std::int64_t now);
    void check_memory_contract();

    DCConfig config_;
    std::uint64_t seed_;
    Rng rng_global_;
    Rng rng_window_;
    NodeRegistry registry_;
    Reservoir<EdgeRef> global_;
    WindowSampler<EdgeRef> window_;
    ComponentSet window_components_;
    std::vector<CommunitySnapshot> snapshots_;
    StreamCounters counters_;
    std::optional<std::int64_t> first_ts_;
    std::int64_t last_ts_ = 0;
    std::int64_t next_snapshot_at_ = 0;
    std::size_t max_retained_ = 0;
};

ComponentSet filter_communities(const ComponentSet& set, std::size_t h);

// One point of the community-size time series. Lineages thread components
// across consecutive snapshots by greatest node overlap.
struct SeriesPoint {
    std::int64_t at = 0;
    std::uint64_t lineage = 0;
    std::string component_id;
    std::size_t size = 0;
};

std::vector<SeriesPoint> component_size_series(const std::vector<CommunitySnapshot>& snapshots);

} // namespace streamint
