#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "streamint/reservoir.hpp"

namespace streamint {

// A dimension with a declared, ordered set of categorical values.
class DimensionSpec {
public:
    DimensionSpec() = default;
    DimensionSpec(std::string name, std::vector<std::string> values);

    const std::string& name() const { return name_; }
    const std::vector<std::string>& values() const { return values_; }
    std::size_t cardinality() const { return values_.size(); }
    std::optional<std::size_t> index_of(const std::string& value) const;

    // Product dimension: value tuples joined into single composite values,
    // cardinality the product of the factors'.
    static DimensionSpec cross(const DimensionSpec& a, const DimensionSpec& b,
                               char separator = '|');

private:
    std::string name_;
    std::vector<std::string> values_;
    std::map<std::string, std::size_t> index_;
};

struct Tuple {
    std::map<std::string, std::string> dims;
    double measure = 0.0;
};

// Relative-measure distribution of a dimension's values.
struct DensityVector {
    DimensionSpec dimension;
    std::vector<double> densities;         // aligned with dimension.values()
    std::vector<std::uint64_t> counts;     // contributing tuples / retained samples

    double density_of(const std::string& value) const;
    double l1_distance(const DensityVector& other) const;
};

enum class UnknownValuePolicy {
    error,        // value outside the spec is a schema error
    other_bucket, // collect unknown values under OTHER
};

inline constexpr const char* kOtherBucket = "OTHER";

// Exact relative measures; one full pass, constant state per value.
class ExactDensity {
public:
    explicit ExactDensity(DimensionSpec dim,
                          UnknownValuePolicy policy = UnknownValuePolicy::error);
    void add(const std::string& value, double measure);
    DensityVector result() const;
    std::uint64_t tuples_seen() const { return seen_; }

private:
    DimensionSpec dim_;
    UnknownValuePolicy policy_;
    std::vector<double> weight_;
    std::vector<std::uint64_t> count_;
    double total_ = 0.0;
    std::uint64_t seen_ = 0;
};

// Density estimated from a weighted reservoir of capacity k; retained samples
// are counted with measure 1.
class EstimatedDensity {
public:
    EstimatedDensity(DimensionSpec dim, std::size_t k,
                     UnknownValuePolicy policy = UnknownValuePolicy::error);
    void add(const std::string& value, double measure, Rng& rng);
    DensityVector result() const;
    std::uint64_t tuples_seen() const { return reservoir_.count_seen(); }

private:
    DimensionSpec dim_;
    UnknownValuePolicy policy_;
    Reservoir<std::size_t> reservoir_;
};

DensityVector exact_density(const std::vector<Tuple>& tuples, const DimensionSpec& dim,
                            UnknownValuePolicy policy = UnknownValuePolicy::error);
DensityVector estimate_density(const std::vector<Tuple>& tuples, const DimensionSpec& dim,
                               std::size_t k, Rng& rng,
                               UnknownValuePolicy policy = UnknownValuePolicy::error);

// Smallest sample size sufficient for an (epsilon, delta) density
// approximation over a dimension of the given cardinality:
// ceil(0.5 * (cardinality/epsilon)^2 * ln(1/delta)).
std::uint64_t required_sample_size(std::size_t cardinality, double epsilon, double delta);

struct ApproximationBudget {
    double epsilon = 0.0;
    double delta = 0.0;
    std::uint64_t required_k = 0;

    static ApproximationBudget compute(std::size_t cardinality, double epsilon, double delta);
};

} // namespace streamint
