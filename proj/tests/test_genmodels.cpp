#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "streamint/genmodels.hpp"
#include "testutil.hpp"

using namespace streamint;

namespace {

// Independent majority check over an adjacency tally (test-local, distinct
// from the generator's own predicate).
bool oracle_concentrated(const GeneratedGraph& g, const std::vector<std::uint32_t>& core) {
    std::set<std::uint32_t> core_set(core.begin(), core.end());
    std::map<std::uint32_t, int> inside, outside;
    for (const auto& [a, b] : g.edges) {
        if (a == b) continue;
        if (core_set.count(a)) (core_set.count(b) ? inside[a] : outside[a])++;
        if (core_set.count(b)) (core_set.count(a) ? inside[b] : outside[b])++;
    }
    for (auto v : core)
        if (inside[v] <= outside[v]) return false;
    return true;
}

std::multiset<std::size_t> degree_multiset(const GeneratedGraph& g) {
    const auto d = g.degrees();
    return {d.begin(), d.end()};
}

DegreeDistribution random_even_delta(Rng& rng) {
    DegreeDistribution delta;
    const std::size_t max_deg = 1 + rng.next_index(6);
    delta.counts.resize(max_deg);
    for (auto& c : delta.counts) c = rng.next_index(5);
    if (delta.node_count() == 0) delta.counts[0] = 2;
    if (!delta.even_stub_count()) delta.counts[0] += 1;
    return delta;
}

} // namespace

TEST_SUITE("genmodels") {

TEST_CASE("degree distribution bookkeeping for [4,3,2]") {
    const DegreeDistribution delta{{4, 3, 2}};
    CHECK(delta.node_count() == 9);
    CHECK(delta.edge_count() == 8);
    CHECK(delta.degree_sequence() ==
          std::vector<std::size_t>{3, 3, 2, 2, 2, 1, 1, 1, 1});
    CHECK(delta.even_stub_count());
    CHECK(delta.max_degree() == 3);
}

TEST_CASE("gnp edge cases") {
    Rng rng(1);
    CHECK(gen_gnp(10, 0.0, rng).edges.empty());
    CHECK(gen_gnp(4, 1.0, rng).edges.size() == 6);
    CHECK(gen_gnp(1, 0.5, rng).edges.empty());
    CHECK_THROWS_AS(gen_gnp(0, 0.5, rng), DomainError);
    CHECK_THROWS_AS(gen_gnp(4, 1.5, rng), DomainError);
}

TEST_CASE("gnp edge count concentrates around the binomial mean") {
    const int seeds = 200;
    double mean = 0;
    for (int s = 0; s < seeds; ++s) {
        Rng rng(1000 + s);
        mean += static_cast<double>(gen_gnp(100, 0.05, rng).edges.size());
    }
    mean /= seeds;
    const double expected = 4950 * 0.05; // C(100,2) * p
    const double sigma_mean = std::sqrt(4950 * 0.05 * 0.95 / seeds);
    CHECK(std::abs(mean - expected) < 4 * sigma_mean);
}

TEST_CASE("preferential attachment edge counting") {
    Rng rng(2);
    // Seed clique on m+1 nodes, then m edges per arrival.
    const auto g = gen_pa(1000, 2, rng);
    CHECK(g.node_count == 1000);
    CHECK(g.edges.size() == 3 + 2 * (1000 - 3));
    Rng tiny_rng(3);
    const auto tiny = gen_pa(4, 3, tiny_rng); // n = m+1: just the seed clique
    CHECK(tiny.edges.size() == 6);
    CHECK_THROWS_AS(gen_pa(3, 3, rng), DomainError);
    CHECK_THROWS_AS(gen_pa(5, 0, rng), DomainError);
}

TEST_CASE("preferential attachment degrees follow a heavy-tailed law") {
    // Least-squares slope of the log-log degree histogram.
    for (std::uint64_t seed : {11u, 12u, 13u}) {
        Rng rng(seed);
        const auto g = gen_pa(10000, 2, rng);
        const auto deg = g.degrees();
        std::map<std::size_t, std::size_t> hist;
        for (auto d : deg) ++hist[d];
        std::vector<double> xs, ys;
        for (const auto& [d, count] : hist) {
            if (d < 2) continue;
            xs.push_back(std::log(static_cast<double>(d)));
            ys.push_back(std::log(static_cast<double>(count)));
        }
        const double n = static_cast<double>(xs.size());
        const double sx = std::accumulate(xs.begin(), xs.end(), 0.0);
        const double sy = std::accumulate(ys.begin(), ys.end(), 0.0);
        double sxy = 0, sxx = 0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            sxy += xs[i] * ys[i];
            sxx += xs[i] * xs[i];
        }
        const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        CHECK(slope > -2.6);
        CHECK(slope < -1.6);
    }
}

TEST_CASE("configuration model realizes the degree distribution exactly") {
    Rng rng(42);
    for (int trial = 0; trial < 50; ++trial) {
        const auto delta = random_even_delta(rng);
        const auto result = gen_configuration(delta, rng);
        CHECK(result.graph.edges.size() == delta.edge_count());
        const auto want = delta.degree_sequence();
        CHECK(degree_multiset(result.graph) ==
              std::multiset<std::size_t>(want.begin(), want.end()));
    }
}

TEST_CASE("odd degree sums are rejected") {
    Rng rng(1);
    CHECK_THROWS_AS(gen_configuration(DegreeDistribution{{3}}, rng), DomainError);
}

TEST_CASE("concentrated generation satisfies the majority predicate") {
    Rng rng(7);
    const auto delta = DegreeDistribution::power_law(500);
    const auto result = gen_configuration(delta, rng, /*concentrated=*/true);
    CHECK(result.report.satisfied);
    const std::size_t s = result.report.community_size;
    CHECK(s == static_cast<std::size_t>(
                   std::ceil(std::sqrt(static_cast<double>(delta.edge_count()) / 2.0))));
    std::vector<std::uint32_t> core(s);
    std::iota(core.begin(), core.end(), 0);
    CHECK(oracle_concentrated(result.graph, core));
    // Degree realization still exact under the biased matching.
    const auto want = delta.degree_sequence();
    CHECK(degree_multiset(result.graph) ==
          std::multiset<std::size_t>(want.begin(), want.end()));
}

TEST_CASE("the example distribution admits a concentrated multigraph") {
    Rng rng(19);
    const auto result = gen_configuration(DegreeDistribution{{4, 3, 2}}, rng,
                                          /*concentrated=*/true);
    CHECK(result.report.satisfied);
    CHECK(result.report.community_size == 2);
    CHECK(oracle_concentrated(result.graph, {0, 1}));
}

TEST_CASE("concentration retry exhaustion reports the attempt") {
    Rng rng(3);
    // All-degree-1 nodes: the single core node's only neighbor is outside,
    // so no matching can ever satisfy the majority predicate.
    bool threw = false;
    try {
        gen_configuration(DegreeDistribution{{4}}, rng, true, 0.9, /*max_retries=*/5);
    } catch (const ConcentrationError& e) {
        threw = true;
        CHECK(e.best.community_size == 1);
        CHECK_FALSE(e.best.satisfied);
    }
    CHECK(threw);
}

TEST_CASE("concentrated generation rejects non-power-law distributions") {
    Rng rng(1);
    // A lone degree-9 hub among degree-1 nodes: max degree far above
    // sqrt(2m).
    DegreeDistribution star{{9, 0, 0, 0, 0, 0, 0, 0, 1}};
    REQUIRE(star.even_stub_count());
    CHECK_THROWS_AS(gen_configuration(star, rng, true), DomainError);
}

TEST_CASE("power-law construction hits the edge target with bounded max degree") {
    for (std::uint64_t target : {500u, 2000u, 10000u}) {
        const auto delta = DegreeDistribution::power_law(target);
        CHECK(delta.even_stub_count());
        CHECK(delta.edge_count() >= target);
        CHECK(delta.edge_count() <= target + target / 10 + 200);
        const auto bound = static_cast<std::size_t>(std::ceil(std::sqrt(2.0 * target)));
        CHECK(delta.max_degree() <= bound);
        // Counts decay as c / i^2 within rounding.
        const double c = static_cast<double>(delta.counts[0]);
        for (std::size_t i = 1; i <= delta.max_degree(); ++i) {
            const double expect = c / (static_cast<double>(i) * i);
            CHECK(static_cast<double>(delta.counts[i - 1]) >= std::floor(expect));
            CHECK(static_cast<double>(delta.counts[i - 1]) <= std::ceil(expect) + 1);
        }
    }
}

TEST_CASE("community composition: two example blocks plus a bridge") {
    Rng rng(23);
    const auto g = gen_communities(DegreeDistribution{{4, 3, 2}}, 2, 0.01, rng);
    CHECK(g.node_count == 18);
    CHECK(g.edges.size() == 17); // 2 * 8 + ceil(0.01 * 16)
    REQUIRE(g.planted.size() == 2);
    CHECK(g.planted[0].core == std::vector<std::uint32_t>{0, 1});
    CHECK(g.planted[1].core == std::vector<std::uint32_t>{9, 10});
    CHECK(g.planted[0].members.size() == 9);
    // Planted sets are disjoint.
    std::set<std::uint32_t> all;
    for (const auto& c : g.planted) all.insert(c.members.begin(), c.members.end());
    CHECK(all.size() == 18);
}

TEST_CASE("degenerate composition equals a single concentrated graph") {
    Rng rng(29);
    const auto g = gen_communities(DegreeDistribution{{4, 3, 2}}, 1, 0.0, rng);
    CHECK(g.node_count == 9);
    CHECK(g.edges.size() == 8);
    CHECK(g.planted.size() == 1);
    const auto want = DegreeDistribution{{4, 3, 2}}.degree_sequence();
    CHECK(degree_multiset(g) == std::multiset<std::size_t>(want.begin(), want.end()));
    CHECK(oracle_concentrated(g, g.planted[0].core));
}

TEST_CASE("composed blocks keep approximately the block distribution") {
    Rng rng(31);
    const auto delta = DegreeDistribution::power_law(400);
    const auto g = gen_communities(delta, 2, 0.0, rng);
    // Without bridges the degree histogram is exactly twice the block's.
    std::map<std::size_t, std::size_t> hist;
    for (auto d : g.degrees()) ++hist[d];
    for (std::size_t i = 1; i <= delta.max_degree(); ++i)
        CHECK(hist[i] == 2 * delta.counts[i - 1]);
}

TEST_CASE("bridges never add nodes") {
    Rng rng(37);
    const auto delta = DegreeDistribution::power_law(300);
    const auto with = gen_communities(delta, 3, 0.02, rng);
    CHECK(with.node_count == 3 * delta.node_count());
    for (const auto& [a, b] : with.edges) {
        CHECK(a < with.node_count);
        CHECK(b < with.node_count);
    }
}

TEST_CASE("constant estimation on a complete graph community is exact") {
    Rng gen_rng(3);
    auto g = gen_gnp(6, 1.0, gen_rng);
    PlantedCommunity all;
    for (std::uint32_t v = 0; v < 6; ++v) all.core.push_back(v);
    all.members = all.core;
    g.planted.push_back(all);
    Rng rng(5);
    const auto report = estimate_constants(g, 2000, rng, 5, 2);
    CHECK(*report.alpha_hat == doctest::Approx(1.0));
    CHECK(*report.gamma_hat == doctest::Approx(1.0));
    CHECK(report.satisfied);
}

TEST_CASE("constant estimation on a double star matches enumeration") {
    // Centers 0 and 1 joined by one edge, with 6 and 5 leaves: the only
    // core-internal edge is the bridge, so alpha = 1/12.
    GeneratedGraph g;
    g.node_count = 13;
    g.edges.emplace_back(0, 1);
    for (std::uint32_t leaf = 2; leaf < 8; ++leaf) g.edges.emplace_back(0, leaf);
    for (std::uint32_t leaf = 8; leaf < 13; ++leaf) g.edges.emplace_back(1, leaf);
    PlantedCommunity centers;
    centers.core = {0, 1};
    centers.members = {0, 1};
    g.planted.push_back(centers);

    const double exact_alpha = 1.0 / 12.0;
    Rng rng(7);
    const std::size_t trials = 40000;
    const auto report = estimate_constants(g, trials, rng, 4, 2);
    const double sigma = testutil::binom_sigma(exact_alpha, trials);
    CHECK(std::abs(*report.alpha_hat - exact_alpha) < 4 * sigma);
    CHECK(*report.beta_hat >= 0.0);
    CHECK(*report.beta_hat <= 1.0);
    // Both centers' neighbors are mostly leaves: not concentrated.
    CHECK_FALSE(report.satisfied);
}

TEST_CASE("constants are bounded away from zero on concentrated graphs") {
    for (std::uint64_t seed : {41u, 43u}) {
        Rng rng(seed);
        const auto delta = DegreeDistribution::power_law(2000);
        auto result = gen_configuration(delta, rng, true);
        auto g = std::move(result.graph);
        PlantedCommunity c;
        c.core.resize(result.report.community_size);
        std::iota(c.core.begin(), c.core.end(), 0);
        c.members.resize(g.node_count);
        std::iota(c.members.begin(), c.members.end(), 0);
        g.planted.push_back(std::move(c));
        const auto report = estimate_constants(g, 4000, rng, 400, 3);
        CHECK(*report.alpha_hat > 0.05);
        CHECK(*report.beta_hat > 0.0);
        CHECK(*report.gamma_hat > 0.5);
    }
}

TEST_CASE("constant estimation requires planted communities") {
    Rng rng(1);
    auto g = gen_gnp(5, 0.5, rng);
    CHECK_THROWS_AS(estimate_constants(g, 100, rng), DomainError);
}

} // TEST_SUITE genmodels
