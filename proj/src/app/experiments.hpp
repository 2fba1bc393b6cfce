#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

namespace streamint::app {

struct ExperimentReport {
    std::string name;
    bool pass = false;
    nlohmann::json stats;

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["experiment"] = name;
        j["pass"] = pass;
        j["stats"] = stats;
        return j;
    }
};

// Inclusion frequencies of a weighted reservoir against k*w/T, every item
// within 4 binomial sigma over the trial count.
ExperimentReport run_inclusion_freq(std::size_t trials, std::uint64_t seed);

// Density estimation error at the computed sample size: the fraction of runs
// with L1 error above epsilon stays within the confidence budget, and the
// mean estimate is unbiased.
ExperimentReport run_density_error(std::size_t runs, std::uint64_t seed);

// Desk-scale density fixture (exact CNN density 2/3): one seeded estimate
// must land inside the Chernoff band [0.56, 0.76] for k = 100. Writes the
// exact and estimated density files when out_dir is nonempty.
ExperimentReport run_density_example(std::uint64_t seed, std::size_t k,
                                     const std::string& out_dir);

// Planted-community detection: concentrated two-community graphs streamed in
// random order; the rate at which stored components hit both planted cores
// must beat a label-permuted null by at least 3 sigma.
ExperimentReport run_detection(std::size_t seeds, std::size_t edges_per_community,
                               std::uint64_t seed, const std::string& out_dir,
                               std::size_t threads = 0);

// Two independent half-size reservoirs over the same stream; emits both
// component-size series for side-by-side comparison. Observational.
ExperimentReport run_split_reservoir(const std::string& edges_path, std::size_t k,
                                     std::uint64_t seed, const std::string& out_dir);

// Lineage churn over a replay: births, deaths, reappearances. Observational.
ExperimentReport run_stability(const std::string& edges_path, std::uint64_t seed,
                               const std::string& out_dir);

} // namespace streamint::app
