#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "streamint/graphstream.hpp"

namespace streamint {

// Edge-free summary of one finished stream: its node set, its community
// snapshots, the global communities, and the union of all nodes that ever
// entered a stored community.
struct StreamSummary {
    std::string name;
    std::set<std::string> node_set;
    std::vector<CommunitySnapshot> snapshots;
    ComponentSet global_communities;

    // Nodes that entered a windowed snapshot component.
    std::set<std::string> community_union_window() const;
    // As above, plus the global communities' nodes.
    std::set<std::string> community_union_all() const;

    static StreamSummary from_state(const EdgeStreamState& state, std::string name = "");
};

// |A intersect B| / max(|A|, |B|); undefined (error) when both are empty.
double node_correlation(const StreamSummary& a, const StreamSummary& b);
double community_correlation(const StreamSummary& a, const StreamSummary& b);
double community_correlation_window(const StreamSummary& a, const StreamSummary& b);

// Exact edge correlation over fully stored edge lists (undirected, duplicates
// collapsed). Only usable where the edges were kept around: a desk-scale
// testing oracle, not part of the streaming path.
double edge_correlation_oracle(const std::vector<Edge>& e1, const std::vector<Edge>& e2);

// The integrated structure of two streams: node sets, their intersection,
// both community collections, and the correlation figures.
struct IntegrationResult {
    std::string name_1, name_2;
    std::size_t v1_size = 0, v2_size = 0;
    std::vector<std::string> common_nodes; // sorted
    std::vector<CommunitySnapshot> communities_1, communities_2;
    double rho_v = 0.0;
    double rho_c = 0.0; // over community_union_all
    // Over windowed snapshots only; absent when both window unions are empty.
    std::optional<double> rho_c_window;
    // |C1 n C2| / |V1 n V2|; absent when the node intersection is empty.
    std::optional<double> rho_c_common;
};

IntegrationResult integrate_pair(const StreamSummary& a, const StreamSummary& b);

// Pairwise correlation matrices for n streams; symmetric, unit diagonal.
struct CorrelationMatrix {
    std::vector<std::string> names;
    std::vector<std::vector<double>> rho_v;
    std::vector<std::vector<double>> rho_c;
};

CorrelationMatrix integrate_all(const std::vector<StreamSummary>& summaries);

} // namespace streamint
