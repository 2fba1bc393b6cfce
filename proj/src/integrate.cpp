#include "streamint/integrate.hpp"

#include <algorithm>

#include "streamint/errors.hpp"

namespace streamint {

std::set<std::string> StreamSummary::community_union_window() const {
    std::set<std::string> out;
    for (const auto& snap : snapshots)
        for (const auto& comp : snap.components) out.insert(comp.nodes.begin(), comp.nodes.end());
    return out;
}

std::set<std::string> StreamSummary::community_union_all() const {
    auto out = community_union_window();
    for (const auto& comp : global_communities.components)
        out.insert(comp.nodes.begin(), comp.nodes.end());
    return out;
}

StreamSummary StreamSummary::from_state(const EdgeStreamState& state, std::string name) {
    StreamSummary s;
    s.name = std::move(name);
    for (std::uint32_t i = 0; i < state.registry().size(); ++i)
        s.node_set.insert(state.registry().name(i));
    s.snapshots = state.snapshots();
    s.global_communities = state.global_communities();
    return s;
}

namespace {

double overlap_ratio(const std::set<std::string>& a, const std::set<std::string>& b,
                     const char* what) {
    if (a.empty() && b.empty())
        throw UndefinedCorrelationError(std::string(what) + ": both inputs empty");
    std::vector<std::string> common;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
    return static_cast<double>(common.size()) /
           static_cast<double>(std::max(a.size(), b.size()));
}

} // namespace

double node_correlation(const StreamSummary& a, const StreamSummary& b) {
    return overlap_ratio(a.node_set, b.node_set, "node correlation");
}

double community_correlation(const StreamSummary& a, const StreamSummary& b) {
    return overlap_ratio(a.community_union_all(), b.community_union_all(),
                         "community correlation");
}

double community_correlation_window(const StreamSummary& a, const StreamSummary& b) {
    return overlap_ratio(a.community_union_window(), b.community_union_window(),
                         "community correlation");
}

double edge_correlation_oracle(const std::vector<Edge>& e1, const std::vector<Edge>& e2) {
    auto canonical = [](const std::vector<Edge>& edges) {
        std::set<std::pair<std::string, std::string>> out;
        for (const auto& e : edges)
            out.insert(e.src <= e.dst ? std::make_pair(e.src, e.dst)
                                      : std::make_pair(e.dst, e.src));
        return out;
    };
    const auto s1 = canonical(e1);
    const auto s2 = canonical(e2);
    if (s1.empty() && s2.empty())
        throw UndefinedCorrelationError("edge correlation: both inputs empty");
    std::size_t common = 0;
    for (const auto& e : s1) common += s2.count(e);
    return static_cast<double>(common) / static_cast<double>(std::max(s1.size(), s2.size()));
}

IntegrationResult integrate_pair(const StreamSummary& a, const StreamSummary& b) {
    IntegrationResult r;
    r.name_1 = a.name;
    r.name_2 = b.name;
    r.v1_size = a.node_set.size();
    r.v2_size = b.node_set.size();
    std::set_intersection(a.node_set.begin(), a.node_set.end(), b.node_set.begin(),
                          b.node_set.end(), std::back_inserter(r.common_nodes));
    r.communities_1 = a.snapshots;
    r.communities_2 = b.snapshots;
    r.rho_v = node_correlation(a, b);
    r.rho_c = community_correlation(a, b);
    const auto w1 = a.community_union_window();
    const auto w2 = b.community_union_window();
    if (!w1.empty() || !w2.empty()) r.rho_c_window = community_correlation_window(a, b);
    if (!r.common_nodes.empty()) {
        const auto c1 = a.community_union_all();
        const auto c2 = b.community_union_all();
        std::vector<std::string> cc;
        std::set_intersection(c1.begin(), c1.end(), c2.begin(), c2.end(),
                              std::back_inserter(cc));
        r.rho_c_common = static_cast<double>(cc.size()) /
                         static_cast<double>(r.common_nodes.size());
    }
    return r;
}

CorrelationMatrix integrate_all(const std::vector<StreamSummary>& summaries) {
    if (summaries.size() < 2)
        throw DomainError("integration needs at least two streams");
    const std::size_t n = summaries.size();
    CorrelationMatrix m;
    for (const auto& s : summaries) m.names.push_back(s.name);
    m.rho_v.assign(n, std::vector<double>(n, 1.0));
    m.rho_c.assign(n, std::vector<double>(n, 1.0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double rv = node_correlation(summaries[i], summaries[j]);
            const double rc = community_correlation(summaries[i], summaries[j]);
            m.rho_v[i][j] = m.rho_v[j][i] = rv;
            m.rho_c[i][j] = m.rho_c[j][i] = rc;
        }
    }
    return m;
}

} // namespace streamint
