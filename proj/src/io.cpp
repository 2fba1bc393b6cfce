#include "streamint/io.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>

#include <json.hpp>

#include "streamint/errors.hpp"
#include "streamint/timeutil.hpp"

namespace streamint {

using nlohmann::json;

namespace {

constexpr std::size_t kSkipLogCap = 100;

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError(path, "cannot open for writing");
    return out;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError(path, "cannot open for reading");
    return in;
}

} // namespace

std::vector<std::string> split_line(const std::string& line, char delimiter) {
    std::vector<std::string> fields;
    std::string field;
    for (char ch : line) {
        if (ch == delimiter) {
            fields.push_back(std::move(field));
            field.clear();
        } else if (ch != '\r') {
            field.push_back(ch);
        }
    }
    fields.push_back(std::move(field));
    return fields;
}

EdgeReadStats read_edge_stream(const std::string& path,
                               const std::function<void(const Edge&)>& sink) {
    auto in = open_in(path);
    EdgeReadStats stats;
    std::string line;
    auto skip = [&](std::uint64_t line_no, const char* reason) {
        ++stats.skipped;
        if (stats.skip_log.size() < kSkipLogCap) stats.skip_log.emplace_back(line_no, reason);
    };
    while (std::getline(in, line)) {
        ++stats.lines;
        if (line.empty()) continue;
        Edge e;
        if (line[0] == '{') {
            json j = json::parse(line, nullptr, /*allow_exceptions=*/false);
            if (j.is_discarded() || !j.contains("src") || !j.contains("dst") ||
                !j.contains("timestamp") || !j["src"].is_string() || !j["dst"].is_string()) {
                skip(stats.lines, "malformed json edge");
                continue;
            }
            e.src = j["src"].get<std::string>();
            e.dst = j["dst"].get<std::string>();
            if (j["timestamp"].is_number_integer()) {
                e.timestamp = j["timestamp"].get<std::int64_t>();
            } else if (j["timestamp"].is_string()) {
                auto ts = parse_timestamp(j["timestamp"].get<std::string>());
                if (!ts) {
                    skip(stats.lines, "bad timestamp");
                    continue;
                }
                e.timestamp = *ts;
            } else {
                skip(stats.lines, "bad timestamp");
                continue;
            }
        } else {
            auto fields = split_line(line, ',');
            if (fields.size() != 3) {
                skip(stats.lines, "expected src,dst,timestamp");
                continue;
            }
            auto ts = parse_timestamp(fields[2]);
            if (!ts) {
                skip(stats.lines, "bad timestamp");
                continue;
            }
            e = Edge{fields[0], fields[1], *ts};
        }
        ++stats.edges;
        sink(e);
    }
    if (in.bad()) throw IoError(path, "read failure");
    return stats;
}

void write_edge_stream_csv(const std::string& path, const std::vector<Edge>& edges) {
    auto out = open_out(path);
    for (const auto& e : edges) out << e.src << ',' << e.dst << ',' << e.timestamp << '\n';
    if (!out) throw IoError(path, "write failure");
}

void write_planted(const std::string& path, const GeneratedGraph& graph,
                   const std::function<std::string(std::uint32_t)>& name) {
    auto out = open_out(path);
    auto named = [&](const std::vector<std::uint32_t>& ids) {
        std::vector<std::string> out_names;
        out_names.reserve(ids.size());
        for (auto id : ids) out_names.push_back(name(id));
        return out_names;
    };
    for (std::size_t i = 0; i < graph.planted.size(); ++i) {
        json j;
        j["community_id"] = i;
        j["nodes"] = named(graph.planted[i].core);
        j["members"] = named(graph.planted[i].members);
        out << j.dump() << '\n';
    }
    if (!out) throw IoError(path, "write failure");
}

void write_snapshots(const std::string& path, const std::vector<CommunitySnapshot>& snapshots) {
    auto out = open_out(path);
    for (const auto& snap : snapshots) {
        if (snap.components.empty()) {
            json j;
            j["at"] = snap.at;
            j["component_id"] = nullptr;
            j["node_count"] = 0;
            j["nodes"] = json::array();
            out << j.dump() << '\n';
            continue;
        }
        for (const auto& comp : snap.components) {
            json j;
            j["at"] = snap.at;
            j["component_id"] = comp.id;
            j["node_count"] = comp.size();
            j["nodes"] = comp.nodes;
            out << j.dump() << '\n';
        }
    }
    if (!out) throw IoError(path, "write failure");
}

std::vector<CommunitySnapshot> read_snapshots(const std::string& path) {
    auto in = open_in(path);
    std::vector<CommunitySnapshot> snapshots;
    std::string line;
    std::uint64_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        json j = json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.contains("at"))
            throw IoError(path, "malformed snapshot line " + std::to_string(line_no));
        const std::int64_t at = j["at"].get<std::int64_t>();
        if (snapshots.empty() || snapshots.back().at != at)
            snapshots.push_back(CommunitySnapshot{at, {}});
        if (j["component_id"].is_null()) continue; // empty-snapshot marker
        Component comp;
        comp.id = j["component_id"].get<std::string>();
        comp.nodes = j["nodes"].get<std::vector<std::string>>();
        comp.edge_count = 0; // not stored in snapshots
        snapshots.back().components.push_back(std::move(comp));
    }
    return snapshots;
}

void write_registry(const std::string& path, const NodeRegistry& registry) {
    std::vector<std::uint32_t> order(registry.size());
    for (std::uint32_t i = 0; i < registry.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        return registry.name(a) < registry.name(b);
    });
    auto out = open_out(path);
    for (auto idx : order) {
        json j;
        j["node"] = registry.name(idx);
        j["first_seen"] = registry.first_seen(idx);
        j["occurrences"] = registry.occurrences(idx);
        out << j.dump() << '\n';
    }
    if (!out) throw IoError(path, "write failure");
}

void write_components(const std::string& path, const ComponentSet& set) {
    auto out = open_out(path);
    for (const auto& comp : set.components) {
        json j;
        j["component_id"] = comp.id;
        j["node_count"] = comp.size();
        j["edge_count"] = comp.edge_count;
        j["nodes"] = comp.nodes;
        out << j.dump() << '\n';
    }
    if (!out) throw IoError(path, "write failure");
}

ComponentSet read_components(const std::string& path) {
    auto in = open_in(path);
    ComponentSet set;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        json j = json::parse(line, nullptr, false);
        if (j.is_discarded()) throw IoError(path, "malformed component line");
        Component comp;
        comp.id = j["component_id"].get<std::string>();
        comp.nodes = j["nodes"].get<std::vector<std::string>>();
        comp.edge_count = j.value("edge_count", 0);
        set.components.push_back(std::move(comp));
    }
    return set;
}

void write_series(const std::string& path, const std::vector<SeriesPoint>& series) {
    auto out = open_out(path);
    out << "at,lineage,component_id,size\n";
    for (const auto& p : series)
        out << p.at << ',' << p.lineage << ',' << p.component_id << ',' << p.size << '\n';
    if (!out) throw IoError(path, "write failure");
}

void write_density(const std::string& path, const DensityVector& density) {
    auto out = open_out(path);
    for (std::size_t i = 0; i < density.dimension.cardinality(); ++i) {
        json j;
        j["value"] = density.dimension.values()[i];
        j["density"] = density.densities[i];
        j["sample_count"] = density.counts[i];
        out << j.dump() << '\n';
    }
    if (!out) throw IoError(path, "write failure");
}

namespace {

json snapshots_to_json(const std::vector<CommunitySnapshot>& snapshots) {
    json arr = json::array();
    for (const auto& snap : snapshots) {
        json s;
        s["at"] = snap.at;
        s["components"] = json::array();
        for (const auto& comp : snap.components) {
            json c;
            c["component_id"] = comp.id;
            c["node_count"] = comp.size();
            c["nodes"] = comp.nodes;
            s["components"].push_back(std::move(c));
        }
        arr.push_back(std::move(s));
    }
    return arr;
}

} // namespace

void write_integration(const std::string& path, const IntegrationResult& result) {
    json j;
    j["stream_1"] = result.name_1;
    j["stream_2"] = result.name_2;
    j["v1_size"] = result.v1_size;
    j["v2_size"] = result.v2_size;
    j["common_node_count"] = result.common_nodes.size();
    j["common_nodes"] = result.common_nodes;
    j["rho_v"] = result.rho_v;
    j["rho_c"] = result.rho_c;
    if (result.rho_c_window) j["rho_c_window"] = *result.rho_c_window;
    else j["rho_c_window"] = nullptr;
    if (result.rho_c_common) j["rho_c_common"] = *result.rho_c_common;
    else j["rho_c_common"] = nullptr;
    j["communities_1"] = snapshots_to_json(result.communities_1);
    j["communities_2"] = snapshots_to_json(result.communities_2);
    auto out = open_out(path);
    out << j.dump(2) << '\n';
    if (!out) throw IoError(path, "write failure");
}

void write_matrix_csv(const std::string& path, const std::vector<std::string>& names,
                      const std::vector<std::vector<double>>& matrix) {
    auto out = open_out(path);
    out << "stream";
    for (const auto& n : names) out << ',' << n;
    out << '\n';
    char buf[64];
    for (std::size_t i = 0; i < matrix.size(); ++i) {
        out << names[i];
        for (double v : matrix[i]) {
            std::snprintf(buf, sizeof(buf), "%.10g", v);
            out << ',' << buf;
        }
        out << '\n';
    }
    if (!out) throw IoError(path, "write failure");
}

StreamSummary load_summary_dir(const std::string& dir) {
    namespace fs = std::filesystem;
    const fs::path base(dir);
    if (!fs::exists(base)) throw IoError(dir, "summary directory not found");
    StreamSummary s;
    s.name = base.filename().string().empty() ? base.parent_path().filename().string()
                                              : base.filename().string();
    {
        auto in = open_in((base / kRegistryFile).string());
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            json j = json::parse(line, nullptr, false);
            if (j.is_discarded())
                throw IoError((base / kRegistryFile).string(), "malformed registry line");
            s.node_set.insert(j["node"].get<std::string>());
        }
    }
    s.snapshots = read_snapshots((base / kSnapshotsFile).string());
    s.global_communities = read_components((base / kGlobalComponentsFile).string());
    return s;
}

struct TupleReader::Impl {
    std::ifstream in;
};

TupleReader::TupleReader(const std::string& path, char delimiter)
    : impl_(new Impl{std::ifstream(path)}), delimiter_(delimiter), path_(path) {
    if (!impl_->in) {
        delete impl_;
        impl_ = nullptr;
        throw IoError(path, "cannot open tuple file");
    }
    std::string line;
    if (!std::getline(impl_->in, line)) {
        delete impl_;
        impl_ = nullptr;
        throw IoError(path, "empty tuple file: missing header");
    }
    ++line_no_;
    header_ = split_line(line, delimiter_);
}

TupleReader::~TupleReader() { delete impl_; }

std::size_t TupleReader::column_of(const std::string& name) const {
    for (std::size_t i = 0; i < header_.size(); ++i)
        if (header_[i] == name) return i;
    throw SchemaError("column '" + name + "' not in header of " + path_);
}

bool TupleReader::next(std::vector<std::string>& row) {
    std::string line;
    while (std::getline(impl_->in, line)) {
        ++line_no_;
        if (line.empty()) continue;
        row = split_line(line, delimiter_);
        if (row.size() != header_.size())
            throw SchemaError(path_ + ":" + std::to_string(line_no_) +
                              ": row width differs from header");
        return true;
    }
    return false;
}

} // namespace streamint
