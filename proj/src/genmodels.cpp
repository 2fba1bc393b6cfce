#include "streamint/genmodels.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>
#include <unordered_map>

namespace streamint {

std::size_t DegreeDistribution::node_count() const {
    std::size_t n = 0;
    for (auto c : counts) n += c;
    return n;
}

std::uint64_t DegreeDistribution::stub_count() const {
    std::uint64_t s = 0;
    for (std::size_t i = 0; i < counts.size(); ++i) s += (i + 1) * counts[i];
    return s;
}

std::size_t DegreeDistribution::max_degree() const {
    for (std::size_t i = counts.size(); i > 0; --i)
        if (counts[i - 1] > 0) return i;
    return 0;
}

std::vector<std::size_t> DegreeDistribution::degree_sequence() const {
    std::vector<std::size_t> seq;
    seq.reserve(node_count());
    for (std::size_t i = counts.size(); i > 0; --i)
        for (std::uint64_t j = 0; j < counts[i - 1]; ++j) seq.push_back(i);
    return seq;
}

DegreeDistribution DegreeDistribution::power_law(std::uint64_t target_edges) {
    if (target_edges == 0) throw DomainError("target edge count must be positive");
    const auto max_deg = static_cast<std::size_t>(
        std::ceil(std::sqrt(2.0 * static_cast<double>(target_edges))));
    auto stubs_for = [&](double c) {
        std::uint64_t stubs = 0;
        for (std::size_t i = 1; i <= max_deg; ++i)
            stubs += i * static_cast<std::uint64_t>(std::ceil(c / (double(i) * double(i))));
        return stubs;
    };
    double lo = 1.0, hi = 1.0;
    while (stubs_for(hi) < 2 * target_edges) hi *= 2;
    while (hi - lo > 0.5) {
        const double mid = (lo + hi) / 2;
        (stubs_for(mid) < 2 * target_edges ? lo : hi) = mid;
    }
    const double c = hi;
    DegreeDistribution delta;
    delta.counts.resize(max_deg, 0);
    for (std::size_t i = 1; i <= max_deg; ++i)
        delta.counts[i - 1] = static_cast<std::uint64_t>(std::ceil(c / (double(i) * double(i))));
    if (!delta.even_stub_count()) {
        delta.counts[0] += 1;
    }
    return delta;
}

std::vector<std::size_t> GeneratedGraph::degrees() const {
    std::vector<std::size_t> deg(node_count, 0);
    for (const auto& [a, b] : edges) {
        ++deg[a];
        ++deg[b];
    }
    return deg;
}

GeneratedGraph gen_gnp(std::size_t n, double p, Rng& rng) {
    if (n == 0) throw DomainError("gnp: n must be positive");
    if (p < 0.0 || p > 1.0) throw DomainError("gnp: p must be in [0,1]");
    GeneratedGraph g;
    g.node_count = n;
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = i + 1; j < n; ++j)
            if (p >= 1.0 || rng.bernoulli(p)) g.edges.emplace_back(i, j);
    return g;
}

GeneratedGraph gen_pa(std::size_t n, std::size_t m, Rng& rng) {
    if (m == 0) throw DomainError("pa: m must be positive");
    if (n <= m) throw DomainError("pa: n must exceed m");
    GeneratedGraph g;
    g.node_count = n;
    const std::size_t seed_nodes = m + 1;
    std::vector<std::uint32_t> endpoints; // one entry per half-edge
    for (std::uint32_t i = 0; i < seed_nodes; ++i) {
        for (std::uint32_t j = i + 1; j < seed_nodes; ++j) {
            g.edges.emplace_back(i, j);
            endpoints.push_back(i);
            endpoints.push_back(j);
        }
    }
    for (std::uint32_t v = seed_nodes; v < n; ++v) {
        const std::size_t pool = endpoints.size(); // degrees before v joins
        for (std::size_t e = 0; e < m; ++e) {
            const std::uint32_t target = endpoints[rng.next_index(pool)];
            g.edges.emplace_back(v, target);
        }
        for (std::size_t e = g.edges.size() - m; e < g.edges.size(); ++e) {
            endpoints.push_back(g.edges[e].first);
            endpoints.push_back(g.edges[e].second);
        }
    }
    return g;
}

namespace {

std::vector<std::pair<std::uint32_t, std::uint32_t>>
pair_stubs_uniform(std::vector<std::uint32_t>& stubs, Rng& rng) {
    rng.shuffle(stubs);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    edges.reserve(stubs.size() / 2);
    for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) edges.emplace_back(stubs[i], stubs[i + 1]);
    return edges;
}

// Swap self-loop endpoints with other pairs. Loops that survive the budget
// are kept; the degree realization is unaffected either way.
void reduce_self_loops(std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges, Rng& rng) {
    if (edges.size() < 2) return;
    int budget = static_cast<int>(edges.size()) * 10;
    for (std::size_t i = 0; i < edges.size() && budget > 0;) {
        if (edges[i].first != edges[i].second) {
            ++i;
            continue;
        }
        --budget;
        std::size_t j = rng.next_index(edges.size());
        if (j == i) continue;
        std::swap(edges[i].second, edges[j].second);
        // Re-examine both pairs; i is only advanced once clean.
        if (j < i) i = j;
    }
}

// Node ids are assigned in descending degree order, so the community core of
// size s is exactly the nodes 0..s-1.
std::vector<std::uint32_t> stub_list(const DegreeDistribution& delta) {
    const auto seq = delta.degree_sequence();
    std::vector<std::uint32_t> stubs;
    stubs.reserve(delta.stub_count());
    for (std::uint32_t node = 0; node < seq.size(); ++node)
        for (std::size_t d = 0; d < seq[node]; ++d) stubs.push_back(node);
    return stubs;
}

} // namespace

bool concentration_holds(const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges,
                         const std::vector<std::uint32_t>& core) {
    if (core.empty()) return false;
    std::vector<std::uint32_t> sorted_core = core;
    std::sort(sorted_core.begin(), sorted_core.end());
    auto in_core = [&](std::uint32_t v) {
        return std::binary_search(sorted_core.begin(), sorted_core.end(), v);
    };
    // in/out neighbor-endpoint counts per core node, multiedges included.
    std::unordered_map<std::uint32_t, std::pair<std::size_t, std::size_t>> tally;
    for (auto v : sorted_core) tally[v] = {0, 0};
    for (const auto& [a, b] : edges) {
        if (a == b) continue;
        if (in_core(a)) (in_core(b) ? tally[a].first : tally[a].second) += 1;
        if (in_core(b)) (in_core(a) ? tally[b].first : tally[b].second) += 1;
    }
    for (const auto& [node, counts] : tally)
        if (counts.first <= counts.second) return false;
    return true;
}

ConfigurationResult gen_configuration(const DegreeDistribution& delta, Rng& rng,
                                      bool concentrated, double bias, int max_retries) {
    if (!delta.even_stub_count())
        throw DomainError("configuration model needs an even degree sum");
    if (delta.node_count() == 0) throw DomainError("empty degree distribution");

    const std::uint64_t m = delta.edge_count();
    const auto n = delta.node_count();
    GeneratedGraph g;
    g.node_count = n;

    if (!concentrated) {
        auto stubs = stub_list(delta);
        g.edges = pair_stubs_uniform(stubs, rng);
        reduce_self_loops(g.edges, rng);
        ConcentrationReport report;
        report.community_size =
            static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(m) / 2.0)));
        report.satisfied = false;
        return ConfigurationResult{std::move(g), report};
    }

    const auto s = static_cast<std::size_t>(
        std::ceil(std::sqrt(static_cast<double>(m) / 2.0)));
    const auto max_expected = static_cast<std::size_t>(
        std::ceil(std::sqrt(2.0 * static_cast<double>(m))));
    if (delta.max_degree() > max_expected)
        throw DomainError("concentrated generation expects a power-law distribution: max degree " +
                          std::to_string(delta.max_degree()) + " exceeds ceil(sqrt(2m)) = " +
                          std::to_string(max_expected));

    std::vector<std::uint32_t> core(std::min<std::size_t>(s, n));
    std::iota(core.begin(), core.end(), 0);

    ConcentrationReport best;
    best.community_size = s;
    for (int attempt = 0; attempt < max_retries; ++attempt) {
        const std::size_t pool_nodes = std::min<std::size_t>(2 * s, n);
        std::vector<std::uint32_t> pool, rest;
        {
            auto stubs = stub_list(delta);
            for (auto v : stubs) (v < pool_nodes ? pool : rest).push_back(v);
        }
        rng.shuffle(pool);
        rng.shuffle(rest);

        std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
        edges.reserve(m);
        while (pool.size() >= 2) {
            if (rest.empty() || rng.bernoulli(bias)) {
                edges.emplace_back(pool.back(), pool[pool.size() - 2]);
                pool.pop_back();
                pool.pop_back();
            } else {
                edges.emplace_back(pool.back(), rest.back());
                pool.pop_back();
                rest.pop_back();
            }
        }
        for (auto v : pool) rest.push_back(v);
        rng.shuffle(rest);
        for (std::size_t i = 0; i + 1 < rest.size(); i += 2)
            edges.emplace_back(rest[i], rest[i + 1]);

        reduce_self_loops(edges, rng);
        if (concentration_holds(edges, core)) {
            g.edges = std::move(edges);
            ConcentrationReport report;
            report.community_size = s;
            report.satisfied = true;
            g.planted.clear();
            return ConfigurationResult{std::move(g), report};
        }
    }
    throw ConcentrationError("no concentrated matching found within " +
                                 std::to_string(max_retries) + " attempts",
                             best);
}

GeneratedGraph gen_communities(const DegreeDistribution& delta, std::size_t p,
                               double bridge_fraction, Rng& rng, double bias) {
    if (p == 0) throw DomainError("community count must be positive");
    if (bridge_fraction < 0.0 || bridge_fraction > 1.0)
        throw DomainError("bridge fraction must be in [0,1]");

    const std::size_t n = delta.node_count();
    GeneratedGraph combined;
    combined.node_count = n * p;
    for (std::size_t j = 0; j < p; ++j) {
        auto result = gen_configuration(delta, rng, /*concentrated=*/true, bias);
        const auto offset = static_cast<std::uint32_t>(j * n);
        for (const auto& [a, b] : result.graph.edges)
            combined.edges.emplace_back(a + offset, b + offset);
        PlantedCommunity community;
        community.core.resize(result.report.community_size);
        std::iota(community.core.begin(), community.core.end(), offset);
        community.members.resize(n);
        std::iota(community.members.begin(), community.members.end(), offset);
        combined.planted.push_back(std::move(community));
    }

    if (p >= 2 && bridge_fraction > 0.0) {
        // Bridge endpoints come from the lowest degree class of each block;
        // node ids are degree-descending, so that class is the block's tail.
        const auto seq = delta.degree_sequence();
        const std::size_t low_degree = seq.back();
        std::size_t low_count = 0;
        for (auto d : seq) low_count += d == low_degree;
        const auto bridges = static_cast<std::size_t>(
            std::ceil(bridge_fraction * static_cast<double>(combined.edges.size())));
        for (std::size_t b = 0; b < bridges; ++b) {
            const std::size_t c1 = rng.next_index(p);
            std::size_t c2 = rng.next_index(p - 1);
            if (c2 >= c1) ++c2;
            auto pick = [&](std::size_t block) {
                const std::size_t tail_start = block * n + (n - low_count);
                return static_cast<std::uint32_t>(tail_start + rng.next_index(low_count));
            };
            combined.edges.emplace_back(pick(c1), pick(c2));
        }
    }
    return combined;
}

ConcentrationReport estimate_constants(const GeneratedGraph& graph, std::size_t trials,
                                       Rng& rng, std::size_t k, std::size_t h) {
    if (graph.planted.empty())
        throw DomainError("constant estimation needs planted communities");
    if (trials == 0) throw DomainError("trials must be positive");
    if (graph.edges.empty()) throw DomainError("graph has no edges");

    std::vector<std::uint32_t> core_union;
    for (const auto& c : graph.planted)
        core_union.insert(core_union.end(), c.core.begin(), c.core.end());
    std::sort(core_union.begin(), core_union.end());
    auto in_core = [&](std::uint32_t v) {
        return std::binary_search(core_union.begin(), core_union.end(), v);
    };
    auto internal = [&](const std::pair<std::uint32_t, std::uint32_t>& e) {
        return in_core(e.first) && in_core(e.second);
    };

    const std::size_t m = graph.edges.size();
    ConcentrationReport report;
    report.community_size = core_union.size();
    report.satisfied = true;
    for (const auto& c : graph.planted)
        report.satisfied = report.satisfied && concentration_holds(graph.edges, c.core);

    std::size_t alpha_hits = 0;
    for (std::size_t t = 0; t < trials; ++t)
        alpha_hits += internal(graph.edges[rng.next_index(m)]);
    report.alpha_hat = static_cast<double>(alpha_hits) / static_cast<double>(trials);

    std::size_t beta_hits = 0;
    for (std::size_t t = 0; t < trials; ++t) {
        const auto& e1 = graph.edges[rng.next_index(m)];
        const auto& e2 = graph.edges[rng.next_index(m)];
        const bool share = e1.first == e2.first || e1.first == e2.second ||
                           e1.second == e2.first || e1.second == e2.second;
        beta_hits += internal(e1) && internal(e2) && share;
    }
    report.beta_hat = static_cast<double>(beta_hits) / static_cast<double>(trials);

    // gamma: uniform k-subsets of the edge list, component check restricted
    // to core-internal sampled edges.
    std::vector<std::size_t> index(m);
    std::iota(index.begin(), index.end(), 0);
    std::size_t gamma_hits = 0;
    const std::size_t sample = std::min(k, m);
    for (std::size_t t = 0; t < trials; ++t) {
        for (std::size_t i = 0; i < sample; ++i)
            std::swap(index[i], index[i + rng.next_index(m - i)]);
        std::unordered_map<std::uint32_t, std::uint32_t> parent;
        std::function<std::uint32_t(std::uint32_t)> find = [&](std::uint32_t x) {
            while (parent[x] != x) {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            return x;
        };
        for (std::size_t i = 0; i < sample; ++i) {
            const auto& e = graph.edges[index[i]];
            if (!internal(e) || e.first == e.second) continue;
            if (!parent.count(e.first)) parent[e.first] = e.first;
            if (!parent.count(e.second)) parent[e.second] = e.second;
            parent[find(e.first)] = find(e.second);
        }
        std::unordered_map<std::uint32_t, std::size_t> comp_nodes;
        std::size_t largest = 0;
        for (const auto& [node, _] : parent)
            largest = std::max(largest, ++comp_nodes[find(node)]);
        gamma_hits += largest >= h;
    }
    report.gamma_hat = static_cast<double>(gamma_hits) / static_cast<double>(trials);
    return report;
}

} // namespace streamint
