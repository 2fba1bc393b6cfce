#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "streamint/olap.hpp"
#include "testutil.hpp"

using namespace streamint;

namespace {

std::vector<Tuple> channel_tuples() {
    return {Tuple{{{"Channel", "CNN"}}, 2.0}, Tuple{{{"Channel", "PBS"}}, 1.0}};
}

const DimensionSpec kChannel("Channel", {"CNN", "PBS"});

} // namespace

TEST_SUITE("olap") {

TEST_CASE("exact density of the two-channel example") {
    const auto q = exact_density(channel_tuples(), kChannel);
    CHECK(q.density_of("CNN") == doctest::Approx(2.0 / 3.0));
    CHECK(q.density_of("PBS") == doctest::Approx(1.0 / 3.0));
    CHECK(q.counts == std::vector<std::uint64_t>{1, 1});
}

TEST_CASE("single tuple concentrates all density") {
    const auto q = exact_density({Tuple{{{"Channel", "PBS"}}, 7.5}}, kChannel);
    CHECK(q.density_of("PBS") == doctest::Approx(1.0));
    CHECK(q.density_of("CNN") == doctest::Approx(0.0));
}

TEST_CASE("equal measures reduce densities to frequencies") {
    std::vector<Tuple> tuples;
    for (int i = 0; i < 6; ++i)
        tuples.push_back(Tuple{{{"Channel", i % 3 == 0 ? "CNN" : "PBS"}}, 4.0});
    const auto q = exact_density(tuples, kChannel);
    CHECK(q.density_of("CNN") == doctest::Approx(2.0 / 6.0));
    CHECK(q.density_of("PBS") == doctest::Approx(4.0 / 6.0));
}

TEST_CASE("empty stream has no density") {
    CHECK_THROWS_AS(exact_density({}, kChannel), DomainError);
    Rng rng(1);
    CHECK_THROWS_AS(estimate_density({}, kChannel, 10, rng), DomainError);
}

TEST_CASE("value outside the dimension is a schema error") {
    std::vector<Tuple> tuples{Tuple{{{"Channel", "BBC"}}, 1.0}};
    CHECK_THROWS_AS(exact_density(tuples, kChannel), SchemaError);
}

TEST_CASE("missing dimension key is a schema error") {
    std::vector<Tuple> tuples{Tuple{{{"User", "x"}}, 1.0}};
    CHECK_THROWS_AS(exact_density(tuples, kChannel), SchemaError);
}

TEST_CASE("OTHER bucket collects undeclared values when allowed") {
    std::vector<Tuple> tuples{Tuple{{{"Channel", "CNN"}}, 1.0},
                              Tuple{{{"Channel", "BBC"}}, 3.0}};
    const auto q = exact_density(tuples, kChannel, UnknownValuePolicy::other_bucket);
    CHECK(q.density_of(kOtherBucket) == doctest::Approx(0.75));
    CHECK(q.density_of("CNN") == doctest::Approx(0.25));
}

TEST_CASE("nonpositive measures are rejected") {
    ExactDensity acc(kChannel);
    CHECK_THROWS_AS(acc.add("CNN", 0.0), DomainError);
    CHECK_THROWS_AS(acc.add("CNN", -1.0), DomainError);
}

TEST_CASE("exact density is permutation invariant") {
    std::vector<Tuple> tuples;
    Rng rng(17);
    for (int i = 0; i < 200; ++i)
        tuples.push_back(Tuple{{{"Channel", rng.bernoulli(0.3) ? "CNN" : "PBS"}},
                               rng.next_in(0.5, 9.5)});
    const auto q1 = exact_density(tuples, kChannel);
    rng.shuffle(tuples);
    const auto q2 = exact_density(tuples, kChannel);
    CHECK(q1.density_of("CNN") == doctest::Approx(q2.density_of("CNN")));
}

TEST_CASE("densities sum to one") {
    std::vector<Tuple> tuples;
    Rng rng(23);
    for (int i = 0; i < 500; ++i)
        tuples.push_back(Tuple{{{"Channel", rng.bernoulli(0.7) ? "CNN" : "PBS"}},
                               rng.next_in(1.0, 10.0)});
    const auto exact = exact_density(tuples, kChannel);
    CHECK(std::abs(exact.densities[0] + exact.densities[1] - 1.0) < 1e-9);
    Rng est_rng(5);
    const auto est = estimate_density(tuples, kChannel, 50, est_rng);
    CHECK(std::abs(est.densities[0] + est.densities[1] - 1.0) < 1e-12);
}

TEST_CASE("estimate with k >= stream length and unit measures equals exact") {
    std::vector<Tuple> tuples;
    Rng rng(31);
    for (int i = 0; i < 40; ++i)
        tuples.push_back(Tuple{{{"Channel", rng.bernoulli(0.4) ? "CNN" : "PBS"}}, 1.0});
    const auto exact = exact_density(tuples, kChannel);
    Rng est_rng(7);
    const auto est = estimate_density(tuples, kChannel, 64, est_rng);
    CHECK(est.l1_distance(exact) == doctest::Approx(0.0));
}

TEST_CASE("estimator is unbiased over seeds") {
    // 10^4 independent k=30 estimates. The stream keeps the reservoir on the
    // exact-inclusion regime: a constant-measure head at the maximum measure
    // (so the fill phase is unbiased and nothing ever clamps), then a mix of
    // lighter tuples.
    std::vector<Tuple> tuples;
    for (int i = 0; i < 30; ++i)
        tuples.push_back(Tuple{{{"Channel", i % 3 == 0 ? "CNN" : "PBS"}}, 8.0});
    for (int i = 0; i < 270; ++i) {
        const bool cnn = i % 2 == 0;
        tuples.push_back(Tuple{{{"Channel", cnn ? "CNN" : "PBS"}}, cnn ? 4.0 : 1.0});
    }
    const auto exact = exact_density(tuples, kChannel);
    const int runs = 10000;
    Rng root(99);
    double mean_cnn = 0;
    for (int r = 0; r < runs; ++r) {
        Rng rng = root.split();
        mean_cnn += estimate_density(tuples, kChannel, 30, rng).density_of("CNN");
    }
    mean_cnn /= runs;
    CHECK(std::abs(mean_cnn - exact.density_of("CNN")) < 0.01);
}

TEST_CASE("required sample size: frozen values") {
    CHECK(required_sample_size(2, 0.1, 0.05) == 600);
    CHECK(required_sample_size(1, 0.999, 1.0 / std::exp(1.0)) == 1);
    CHECK(required_sample_size(10, 0.05, 0.01) == 92104);
}

TEST_CASE("required sample size rejects out-of-range parameters") {
    CHECK_THROWS_AS(required_sample_size(2, 0.0, 0.05), DomainError);
    CHECK_THROWS_AS(required_sample_size(2, 1.0, 0.05), DomainError);
    CHECK_THROWS_AS(required_sample_size(2, 0.1, 0.0), DomainError);
    CHECK_THROWS_AS(required_sample_size(2, 0.1, 1.0), DomainError);
    CHECK_THROWS_AS(required_sample_size(0, 0.1, 0.1), DomainError);
}

TEST_CASE("approximation budget carries the computed k") {
    const auto budget = ApproximationBudget::compute(2, 0.1, 0.05);
    CHECK(budget.required_k == 600);
    CHECK(budget.epsilon == doctest::Approx(0.1));
}

TEST_CASE("composite dimensions multiply cardinalities") {
    const DimensionSpec rt("RT", {"0", "1"});
    const auto cross = DimensionSpec::cross(kChannel, rt);
    CHECK(cross.cardinality() == 4);
    CHECK(cross.index_of("CNN|1").has_value());

    std::vector<Tuple> tuples{Tuple{{{"Channel|RT", "CNN|1"}}, 3.0},
                              Tuple{{{"Channel|RT", "PBS|0"}}, 1.0}};
    const auto q = exact_density(tuples, cross);
    CHECK(q.density_of("CNN|1") == doctest::Approx(0.75));
}

TEST_CASE("dimension spec rejects duplicates and empty value sets") {
    CHECK_THROWS_AS(DimensionSpec("C", {}), DomainError);
    CHECK_THROWS_AS(DimensionSpec("C", {"a", "a"}), DomainError);
}

TEST_CASE("(epsilon, delta) guarantee at the computed sample size") {
    // Small-budget spot check: |C|=2, eps=0.25, delta=0.1 -> k = 74.
    const std::uint64_t k = required_sample_size(2, 0.25, 0.1);
    CHECK(k == 74);
    std::vector<Tuple> tuples;
    Rng mk(3);
    for (int i = 0; i < 2000; ++i)
        tuples.push_back(Tuple{{{"Channel", mk.bernoulli(0.4) ? "CNN" : "PBS"}},
                               mk.next_in(1.0, 10.0)});
    const auto exact = exact_density(tuples, kChannel);
    const int runs = 400;
    int failures = 0;
    Rng root(8);
    for (int r = 0; r < runs; ++r) {
        Rng rng = root.split();
        failures += estimate_density(tuples, kChannel, k, rng).l1_distance(exact) > 0.25;
    }
    const double fail_fraction = static_cast<double>(failures) / runs;
    CHECK(fail_fraction <= 0.1 + 4 * std::sqrt(0.1 / runs));
}

} // TEST_SUITE olap
