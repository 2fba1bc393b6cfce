#include "streamint/olap.hpp"

#include <cmath>

#include "streamint/errors.hpp"

namespace streamint {

DimensionSpec::DimensionSpec(std::string name, std::vector<std::string> values)
    : name_(std::move(name)), values_(std::move(values)) {
    if (values_.empty()) throw DomainError("dimension '" + name_ + "' needs at least one value");
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!index_.emplace(values_[i], i).second)
            throw DomainError("dimension '" + name_ + "': duplicate value '" + values_[i] + "'");
    }
}

std::optional<std::size_t> DimensionSpec::index_of(const std::string& value) const {
    auto it = index_.find(value);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

DimensionSpec DimensionSpec::cross(const DimensionSpec& a, const DimensionSpec& b,
                                   char separator) {
    std::vector<std::string> values;
    values.reserve(a.cardinality() * b.cardinality());
    for (const auto& va : a.values())
        for (const auto& vb : b.values()) values.push_back(va + separator + vb);
    return DimensionSpec(a.name() + separator + b.name(), std::move(values));
}

double DensityVector::density_of(const std::string& value) const {
    auto idx = dimension.index_of(value);
    if (!idx) throw SchemaError("value '" + value + "' not in dimension " + dimension.name());
    return densities[*idx];
}

double DensityVector::l1_distance(const DensityVector& other) const {
    if (densities.size() != other.densities.size())
        throw DomainError("density vectors over different dimensions");
    double d = 0;
    for (std::size_t i = 0; i < densities.size(); ++i)
        d += std::abs(densities[i] - other.densities[i]);
    return d;
}

namespace {

DimensionSpec with_policy(DimensionSpec dim, UnknownValuePolicy policy) {
    if (policy == UnknownValuePolicy::other_bucket && !dim.index_of(kOtherBucket)) {
        auto values = dim.values();
        values.push_back(kOtherBucket);
        return DimensionSpec(dim.name(), std::move(values));
    }
    return dim;
}

std::size_t resolve_index(const DimensionSpec& dim, UnknownValuePolicy policy,
                          const std::string& value) {
    if (auto idx = dim.index_of(value)) return *idx;
    if (policy == UnknownValuePolicy::other_bucket) return *dim.index_of(kOtherBucket);
    throw SchemaError("value '" + value + "' not in dimension " + dim.name());
}

const std::string& tuple_value(const Tuple& t, const DimensionSpec& dim) {
    auto it = t.dims.find(dim.name());
    if (it == t.dims.end())
        throw SchemaError("tuple missing dimension " + dim.name());
    return it->second;
}

} // namespace

ExactDensity::ExactDensity(DimensionSpec dim, UnknownValuePolicy policy)
    : dim_(with_policy(std::move(dim), policy)), policy_(policy),
      weight_(dim_.cardinality(), 0.0), count_(dim_.cardinality(), 0) {}

void ExactDensity::add(const std::string& value, double measure) {
    if (!(measure > 0.0)) throw DomainError("tuple measure must be positive");
    const std::size_t idx = resolve_index(dim_, policy_, value);
    weight_[idx] += measure;
    ++count_[idx];
    total_ += measure;
    ++seen_;
}

DensityVector ExactDensity::result() const {
    if (seen_ == 0) throw DomainError("density of an empty stream is undefined");
    DensityVector out{dim_, std::vector<double>(dim_.cardinality(), 0.0), count_};
    for (std::size_t i = 0; i < weight_.size(); ++i) out.densities[i] = weight_[i] / total_;
    return out;
}

EstimatedDensity::EstimatedDensity(DimensionSpec dim, std::size_t k, UnknownValuePolicy policy)
    : dim_(with_policy(std::move(dim), policy)), policy_(policy), reservoir_(k) {}

void EstimatedDensity::add(const std::string& value, double measure, Rng& rng) {
    reservoir_.offer(resolve_index(dim_, policy_, value), measure, rng);
}

DensityVector EstimatedDensity::result() const {
    if (reservoir_.size() == 0) throw DomainError("density of an empty stream is undefined");
    DensityVector out{dim_, std::vector<double>(dim_.cardinality(), 0.0),
                      std::vector<std::uint64_t>(dim_.cardinality(), 0)};
    for (auto idx : reservoir_.items()) ++out.counts[idx];
    const double retained = static_cast<double>(reservoir_.size());
    for (std::size_t i = 0; i < out.counts.size(); ++i)
        out.densities[i] = static_cast<double>(out.counts[i]) / retained;
    return out;
}

DensityVector exact_density(const std::vector<Tuple>& tuples, const DimensionSpec& dim,
                            UnknownValuePolicy policy) {
    ExactDensity acc(dim, policy);
    for (const auto& t : tuples) acc.add(tuple_value(t, dim), t.measure);
    return acc.result();
}

DensityVector estimate_density(const std::vector<Tuple>& tuples, const DimensionSpec& dim,
                               std::size_t k, Rng& rng, UnknownValuePolicy policy) {
    EstimatedDensity acc(dim, k, policy);
    for (const auto& t : tuples) acc.add(tuple_value(t, dim), t.measure, rng);
    return acc.result();
}

std::uint64_t required_sample_size(std::size_t cardinality, double epsilon, double delta) {
    if (cardinality == 0) throw DomainError("cardinality must be positive");
    if (!(epsilon > 0.0) || !(epsilon < 1.0)) throw DomainError("epsilon must be in (0,1)");
    if (!(delta > 0.0) || !(delta < 1.0)) throw DomainError("delta must be in (0,1)");
    const double ratio = static_cast<double>(cardinality) / epsilon;
    return static_cast<std::uint64_t>(std::ceil(0.5 * ratio * ratio * std::log(1.0 / delta)));
}

ApproximationBudget ApproximationBudget::compute(std::size_t cardinality, double epsilon,
                                                 double delta) {
    return ApproximationBudget{epsilon, delta, required_sample_size(cardinality, epsilon, delta)};
}

} // namespace streamint
