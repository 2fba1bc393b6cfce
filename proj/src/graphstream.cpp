#include "streamint/graphstream.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "streamint/errors.hpp"

namespace streamint {

std::uint32_t NodeRegistry::touch(const std::string& name, std::int64_t timestamp) {
    auto it = index_.find(name);
    if (it != index_.end()) {
        ++infos_[it->second].occurrences;
        return it->second;
    }
    const auto idx = static_cast<std::uint32_t>(infos_.size());
    infos_.push_back(Info{name, timestamp, 1});
    index_.emplace(name, idx);
    return idx;
}

std::optional<std::uint32_t> NodeRegistry::find(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

namespace {

// Union-find over the node indices present in the retained edges.
class DisjointSet {
public:
    explicit DisjointSet(std::vector<std::uint32_t> nodes) : nodes_(std::move(nodes)) {
        parent_.resize(nodes_.size());
        std::iota(parent_.begin(), parent_.end(), 0);
        size_.assign(nodes_.size(), 1);
    }

    std::size_t slot_of(std::uint32_t node) const {
        return std::lower_bound(nodes_.begin(), nodes_.end(), node) - nodes_.begin();
    }

    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (size_[a] < size_[b]) std::swap(a, b);
        parent_[b] = a;
        size_[a] += size_[b];
    }

    const std::vector<std::uint32_t>& nodes() const { return nodes_; }

private:
    std::vector<std::uint32_t> nodes_;
    std::vector<std::size_t> parent_;
    std::vector<std::size_t> size_;
};

ComponentSet components_impl(const std::vector<EdgeRef>& edges,
                             const std::function<const std::string&(std::uint32_t)>& name_of) {
    std::vector<std::uint32_t> nodes;
    nodes.reserve(edges.size() * 2);
    for (const auto& e : edges) {
        nodes.push_back(e.src);
        nodes.push_back(e.dst);
    }
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());

    DisjointSet dsu(std::move(nodes));
    for (const auto& e : edges) dsu.unite(dsu.slot_of(e.src), dsu.slot_of(e.dst));

    std::unordered_map<std::size_t, std::size_t> root_to_comp;
    std::vector<Component> comps;
    for (std::size_t slot = 0; slot < dsu.nodes().size(); ++slot) {
        const std::size_t root = dsu.find(slot);
        auto [it, fresh] = root_to_comp.emplace(root, comps.size());
        if (fresh) comps.emplace_back();
        comps[it->second].nodes.push_back(name_of(dsu.nodes()[slot]));
    }
    for (const auto& e : edges) {
        const std::size_t root = dsu.find(dsu.slot_of(e.src));
        ++comps[root_to_comp[root]].edge_count;
    }
    for (auto& c : comps) {
        std::sort(c.nodes.begin(), c.nodes.end());
        c.id = c.nodes.front();
    }
    std::sort(comps.begin(), comps.end(),
              [](const Component& a, const Component& b) { return a.id < b.id; });
    return ComponentSet{std::move(comps)};
}

} // namespace

ComponentSet components_of(const std::vector<EdgeRef>& edges, const NodeRegistry& registry) {
    return components_impl(edges,
                           [&](std::uint32_t idx) -> const std::string& { return registry.name(idx); });
}

ComponentSet components_of(const std::vector<Edge>& edges) {
    NodeRegistry local;
    std::vector<EdgeRef> refs;
    refs.reserve(edges.size());
    for (const auto& e : edges)
        refs.push_back(EdgeRef{local.touch(e.src, e.timestamp), local.touch(e.dst, e.timestamp),
                               e.timestamp});
    return components_of(refs, local);
}

ComponentSet filter_communities(const ComponentSet& set, std::size_t h) {
    ComponentSet out;
    for (const auto& c : set.components)
        if (c.size() >= h) out.components.push_back(c);
    return out;
}

void DCConfig::validate() const {
    if (k == 0) throw DomainError("k must be positive");
    if (h == 0) throw DomainError("h must be positive");
    if (c == 0) throw DomainError("c must be positive");
    if (tau <= 0) throw DomainError("tau must be positive");
    if (window_length <= 0) throw DomainError("window length must be positive");
}

EdgeStreamState::EdgeStreamState(DCConfig config, std::uint64_t seed)
    : config_(config), seed_(seed), rng_global_(0), rng_window_(0), global_(config.k),
      window_(config.k, config.window_length, config.window_mode, LatePolicy::strict) {
    config_.validate();
    // Independent substreams for the two samplers, derived from one seed.
    Rng root(seed);
    rng_global_ = root.split();
    rng_window_ = root.split();
}

void EdgeStreamState::ingest(const Edge& edge) {
    if (edge.src.empty() || edge.dst.empty()) {
        ++counters_.malformed;
        return;
    }
    if (edge.src == edge.dst) {
        ++counters_.self_loops;
        return;
    }
    std::int64_t ts = edge.timestamp;
    if (first_ts_ && ts < last_ts_) {
        switch (config_.late) {
        case LatePolicy::strict:
            throw OrderingError("edge stream: decreasing timestamp");
        case LatePolicy::reject:
            ++counters_.rejected_late;
            return;
        case LatePolicy::clamp:
            ts = last_ts_;
            break;
        }
    }
    if (!first_ts_) {
        first_ts_ = ts;
        next_snapshot_at_ = ts + config_.tau;
    }
    // A snapshot boundary is crossed by the first edge at or past it; the
    // snapshot reflects the window before that edge enters.
    fire_due_snapshots(ts);
    last_ts_ = std::max(last_ts_, ts);

    const std::uint32_t u = registry_.touch(edge.src, ts);
    const std::uint32_t v = registry_.touch(edge.dst, ts);
    const EdgeRef ref{u, v, ts};
    global_.offer(ref, 1.0, rng_global_);
    window_.offer(ref, ts, rng_window_);
    ++counters_.accepted;
    if (counters_.accepted % config_.c == 0) recompute_window(ts);
    check_memory_contract();
}

void EdgeStreamState::advance_time(std::int64_t now) {
    if (!first_ts_) return;
    if (now < last_ts_) throw OrderingError("advance_time: clock would move backwards");
    fire_due_snapshots(now);
    last_ts_ = now;
    recompute_window(now);
}

void EdgeStreamState::fire_due_snapshots(std::int64_t upto) {
    while (upto >= next_snapshot_at_) {
        take_snapshot(next_snapshot_at_);
        next_snapshot_at_ += config_.tau;
    }
}

void EdgeStreamState::take_snapshot(std::int64_t at) {
    window_.evict_expired(at);
    const ComponentSet comps = components_of(window_.live_items(), registry_);
    const ComponentSet large = filter_communities(comps, config_.h);
    snapshots_.push_back(CommunitySnapshot{at, large.components});
}

void EdgeStreamState::recompute_window(std::int64_t now) {
    window_.evict_expired(now);
    window_components_ = components_of(window_.live_items(), registry_);
}

void EdgeStreamState::check_memory_contract() {
    const std::size_t retained = retained_total();
    max_retained_ = std::max(max_retained_, retained);
    if (retained > 2 * config_.k)
        throw StateError("memory contract violated: retained edges exceed 2k");
}

namespace {

std::vector<Edge> resolve_names(const std::vector<EdgeRef>& refs, const NodeRegistry& registry) {
    std::vector<Edge> out;
    out.reserve(refs.size());
    for (const auto& r : refs)
        out.push_back(Edge{registry.name(r.src), registry.name(r.dst), r.timestamp});
    return out;
}

} // namespace

std::vector<Edge> EdgeStreamState::window_edges() const {
    return resolve_names(window_.live_items(), registry_);
}

std::vector<Edge> EdgeStreamState::global_edges() const {
    return resolve_names(global_.items(), registry_);
}

ComponentSet EdgeStreamState::global_components() const {
    return components_of(global_.items(), registry_);
}

ComponentSet EdgeStreamState::global_communities() const {
    return filter_communities(global_components(), config_.h);
}

FinalizeResult EdgeStreamState::finalize() {
    return FinalizeResult{global_communities(), last_ts_};
}

std::vector<SeriesPoint> component_size_series(const std::vector<CommunitySnapshot>& snapshots) {
    std::vector<SeriesPoint> series;
    std::uint64_t next_lineage = 0;
    // Node sets of the previous snapshot's components, keyed by their
    // position, plus the lineage each one carries.
    std::vector<std::vector<std::string>> prev_nodes;
    std::vector<std::uint64_t> prev_lineage;

    for (const auto& snap : snapshots) {
        std::vector<std::vector<std::string>> cur_nodes;
        std::vector<std::uint64_t> cur_lineage;
        std::vector<bool> claimed(prev_nodes.size(), false);

        for (const auto& comp : snap.components) {
            // Components' node lists are sorted, so overlap is a merge scan.
            std::size_t best = prev_nodes.size();
            std::size_t best_overlap = 0;
            for (std::size_t j = 0; j < prev_nodes.size(); ++j) {
                std::size_t overlap = 0;
                const auto& a = comp.nodes;
                const auto& b = prev_nodes[j];
                for (std::size_t x = 0, y = 0; x < a.size() && y < b.size();) {
                    if (a[x] < b[y]) ++x;
                    else if (b[y] < a[x]) ++y;
                    else ++overlap, ++x, ++y;
                }
                if (overlap > best_overlap) {
                    best_overlap = overlap;
                    best = j;
                }
            }
            std::uint64_t lineage;
            if (best_overlap > 0 && !claimed[best]) {
                claimed[best] = true;
                lineage = prev_lineage[best];
            } else {
                lineage = next_lineage++;
            }
            series.push_back(SeriesPoint{snap.at, lineage, comp.id, comp.size()});
            cur_nodes.push_back(comp.nodes);
            cur_lineage.push_back(lineage);
        }
        prev_nodes = std::move(cur_nodes);
        prev_lineage = std::move(cur_lineage);
    }
    return series;
}

} // namespace streamint
