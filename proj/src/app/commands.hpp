#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "experiments.hpp"
#include "streamint/graphstream.hpp"

namespace streamint::app {

struct GenerateOptions {
    std::string model; // gnp | pa | config | ddelta | ddelta<p>
    std::size_t n = 0;
    double p = 0.0;
    std::size_t m = 0;
    std::vector<std::uint64_t> delta;
    std::size_t communities = 1;
    double bridge_fraction = 0.01;
    bool concentrated = false;
    double bias = 0.9;
    std::int64_t start = 1700000000;
    std::uint64_t seed = 1;
    std::string out;
};

struct GenerateSummary {
    std::size_t nodes = 0;
    std::size_t edges = 0;
    std::size_t communities = 0;
};

GenerateSummary cmd_generate(const GenerateOptions& options);

struct OlapOptions {
    std::string input;
    char delimiter = ',';
    std::vector<std::string> dims; // one or more columns; several form a product
    std::string measure_column;
    std::vector<std::string> values; // declared values (single dimension only)
    bool allow_other = false;
    std::uint64_t k = 0;           // 0: derive from epsilon/delta
    double epsilon = 0.0;
    double delta = 0.0;
    std::size_t cardinality = 0;   // 0: use declared/observed values
    std::vector<std::pair<std::string, std::string>> filters; // column == value
    std::uint64_t seed = 1;
    std::string out;
};

struct OlapSummary {
    std::uint64_t k = 0;
    std::uint64_t tuples = 0;
    std::uint64_t filtered_out = 0;
    nlohmann::json exact;
    nlohmann::json estimate;
};

OlapSummary cmd_olap(const OlapOptions& options);

struct DetectOptions {
    std::string edges;  // exactly one of edges / tweets
    std::string tweets;
    std::vector<std::string> exclude_tags;
    std::optional<std::int64_t> from;
    std::optional<std::int64_t> to;
    DCConfig dc;
    std::uint64_t seed = 1;
    std::string out;
};

struct DetectSummary {
    StreamCounters counters;
    std::size_t nodes = 0;
    std::size_t snapshots = 0;
    std::size_t global_communities = 0;
    std::size_t max_retained = 0;
    std::uint64_t ingest_edges = 0; // edges produced by tweet conversion
};

DetectSummary cmd_detect(const DetectOptions& options);

struct IntegrateOptions {
    std::vector<std::string> dirs;
    std::string out;
};

struct IntegrateSummary {
    double rho_v = 0.0;
    double rho_c = 0.0;
    std::size_t streams = 0;
};

IntegrateSummary cmd_integrate(const IntegrateOptions& options);

struct ExperimentOptions {
    std::string name;
    std::size_t trials = 100000;
    std::size_t runs = 1000;
    std::size_t seeds = 50;
    std::size_t edges_per_community = 10000;
    std::size_t k = 400;
    std::size_t sample_size = 100; // density-example reservoir
    std::string input;             // optional edge file
    std::uint64_t seed = 1;
    std::string out;
    std::size_t threads = 0;
};

ExperimentReport cmd_experiment(const ExperimentOptions& options);

// Names accepted by cmd_experiment.
const std::vector<std::string>& experiment_names();

} // namespace streamint::app
