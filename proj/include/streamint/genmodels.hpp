#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "streamint/errors.hpp"
#include "streamint/rng.hpp"

namespace streamint {

// Degree histogram: counts[i] is the number of nodes of degree i+1.
struct DegreeDistribution {
    std::vector<std::uint64_t> counts;

    std::size_t node_count() const;
    std::uint64_t stub_count() const; // sum of i * D(i)
    std::uint64_t edge_count() const { return stub_count() / 2; }
    std::size_t max_degree() const;
    bool even_stub_count() const { return stub_count() % 2 == 0; }

    // Node degrees in descending order, e.g. [4,3,2] -> [3,3,2,2,2,1,1,1,1].
    std::vector<std::size_t> degree_sequence() const;

    // D(i) = ceil(c/i^2) truncated at degree ceil(sqrt(2m)), with c chosen so
    // the graph has at least target_edges edges and D(1) adjusted for parity.
    static DegreeDistribution power_law(std::uint64_t target_edges);
};

struct PlantedCommunity {
    std::vector<std::uint32_t> core;    // the high-degree dense set
    std::vector<std::uint32_t> members; // every node of the component block
};

struct GeneratedGraph {
    std::size_t node_count = 0;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges; // multigraph
    std::vector<PlantedCommunity> planted;

    std::vector<std::size_t> degrees() const; // realized; a self-loop counts 2
};

struct ConcentrationReport {
    std::size_t community_size = 0; // ceil(sqrt(m/2))
    bool satisfied = false;
    std::optional<double> alpha_hat;
    std::optional<double> beta_hat;
    std::optional<double> gamma_hat;
};

// Thrown when the biased matching cannot reach a concentrated graph within
// the retry budget; carries the closest attempt's report.
struct ConcentrationError : std::runtime_error {
    ConcentrationError(const std::string& what, ConcentrationReport best)
        : std::runtime_error(what), best(best) {}
    ConcentrationReport best;
};

// Each unordered pair independently an edge with probability p.
GeneratedGraph gen_gnp(std::size_t n, double p, Rng& rng);

// Preferential attachment: seed clique on m+1 nodes, then every new node
// attaches m edges to existing nodes chosen proportionally to degree.
GeneratedGraph gen_pa(std::size_t n, std::size_t m, Rng& rng);

struct ConfigurationResult {
    GeneratedGraph graph;
    ConcentrationReport report;
};

// Configuration model: uniform matching of half-edges, realizing the degree
// distribution exactly. With `concentrated`, the matching prefers pairs
// inside the high-degree pool (probability `bias`) and the result is
// regenerated until the majority predicate holds on the top ceil(sqrt(m/2))
// nodes. Self-loops are swapped away where possible.
ConfigurationResult gen_configuration(const DegreeDistribution& delta, Rng& rng,
                                      bool concentrated = false, double bias = 0.9,
                                      int max_retries = 100);

// p disjoint concentrated components plus a few bridge edges between their
// low-degree nodes.
GeneratedGraph gen_communities(const DegreeDistribution& delta, std::size_t p,
                               double bridge_fraction, Rng& rng, double bias = 0.9);

// True iff every core node has a strict majority of its incident edge
// endpoints inside the core (multiplicity counted, self-loops skipped).
bool concentration_holds(const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges,
                         const std::vector<std::uint32_t>& core);

// Monte Carlo estimates against the planted cores: alpha = chance a uniform
// edge is core-internal; beta = chance two independent edges are internal and
// adjacent; gamma = chance a uniform k-edge sample's largest core-internal
// component reaches h nodes.
ConcentrationReport estimate_constants(const GeneratedGraph& graph, std::size_t trials,
                                       Rng& rng, std::size_t k = 400, std::size_t h = 3);

} // namespace streamint
