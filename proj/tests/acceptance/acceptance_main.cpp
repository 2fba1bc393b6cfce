// Acceptance suite: one verdict line per criterion, nonzero exit on any
// failure. Run with no arguments for all criteria or with a list of ids.

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "app/commands.hpp"
#include "app/experiments.hpp"
#include "app/fixtures.hpp"
#include "streamint/genmodels.hpp"
#include "streamint/graphstream.hpp"
#include "streamint/ingest.hpp"
#include "streamint/integrate.hpp"
#include "streamint/io.hpp"
#include "streamint/olap.hpp"
#include "testutil.hpp"

using namespace streamint;
using namespace streamint::app;

namespace {

constexpr std::uint64_t kSuiteSeed = 20240901;

struct Verdict {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* format, ...) {
    va_list args;
    va_start(args, format);
    char buf[512];
    std::vsnprintf(buf, sizeof(buf), format, args);
    va_end(args);
    return buf;
}

// ---------------------------------------------------------------- 1
// Weighted inclusion frequencies: every item of a 100-item stream with
// measures in [1,10] lands in a k=10 reservoir with frequency k*w/T,
// within 4 binomial sigma over 1e5 trials.
Verdict criterion_inclusion() {
    const auto report = run_inclusion_freq(100000, kSuiteSeed);
    return {report.pass,
            fmt("max deviation %.2f sigma (tolerance 4.00) over %d trials",
                report.stats["max_deviation_sigmas"].get<double>(), 100000)};
}

// ---------------------------------------------------------------- 2
// Density error bound: |C|=2, eps=0.1, delta=0.05 gives k=600; of 1e3 seeded
// runs over a 1e4-tuple weighted stream, at most 0.05+0.028 may exceed L1
// error 0.1, and the mean estimate must be unbiased to 0.01.
Verdict criterion_density_bound() {
    const auto report = run_density_error(1000, kSuiteSeed + 1);
    const bool k_ok = report.stats["k"].get<std::uint64_t>() == 600;
    return {report.pass && k_ok,
            fmt("k=%llu fail_fraction=%.4f (limit %.4f) max_bias=%.5f (limit 0.010)",
                static_cast<unsigned long long>(report.stats["k"].get<std::uint64_t>()),
                report.stats["fail_fraction"].get<double>(),
                report.stats["fail_threshold"].get<double>(),
                report.stats["max_mean_bias"].get<double>())};
}

// ---------------------------------------------------------------- 3
// Desk-scale density fixture: exact CNN density 2/3; a single seeded k=100
// estimate lands in [0.56, 0.76].
Verdict criterion_density_fixture() {
    const auto report = run_density_example(kSuiteSeed + 2, 100, "");
    return {report.pass, fmt("exact=%.4f estimate=%.4f band=[0.56,0.76]",
                             report.stats["exact_cnn"].get<double>(),
                             report.stats["estimate_cnn"].get<double>())};
}

// ---------------------------------------------------------------- 4
// Planted-community detection over 50 seeded two-community graphs
// (~1e4 edges per community) streamed in random order with k=400, h=3, c=3:
// the both-communities hit rate must beat a label-permuted null by >= 3
// sigma; the detection rate itself is reported.
Verdict criterion_detection() {
    const auto report = run_detection(50, 10000, kSuiteSeed + 3, "");
    return {report.pass,
            fmt("detection_rate=%.2f null_rate=%.2f margin=%.1f sigma (needs >= 3)",
                report.stats["detection_rate"].get<double>(),
                report.stats["null_rate"].get<double>(),
                report.stats["margin_sigmas"].get<double>())};
}

// ---------------------------------------------------------------- 5
// Configuration model exactness: 100 random even-sum degree vectors, the
// realized degree multiset equals the requested one every time.
Verdict criterion_configuration_exactness() {
    Rng rng(kSuiteSeed + 4);
    int failures = 0;
    for (int trial = 0; trial < 100; ++trial) {
        DegreeDistribution delta;
        delta.counts.resize(1 + rng.next_index(8));
        for (auto& c : delta.counts) c = rng.next_index(6);
        if (delta.node_count() == 0) delta.counts[0] = 2;
        if (!delta.even_stub_count()) delta.counts[0] += 1;

        const auto result = gen_configuration(delta, rng);
        auto want = delta.degree_sequence();
        auto got = result.graph.degrees();
        std::sort(want.begin(), want.end());
        std::sort(got.begin(), got.end());
        failures += !(want == got);
    }
    return {failures == 0, fmt("%d/100 degree multisets exact", 100 - failures)};
}

// ---------------------------------------------------------------- 6
// Every graph the concentrated generator accepts satisfies the majority
// predicate under an independent adjacency-list checker.
Verdict criterion_concentration_predicate() {
    auto independent_check = [](const GeneratedGraph& g, std::size_t core_size) {
        std::vector<std::vector<std::uint32_t>> adj(g.node_count);
        for (const auto& [a, b] : g.edges) {
            if (a == b) continue;
            adj[a].push_back(b);
            adj[b].push_back(a);
        }
        for (std::uint32_t v = 0; v < core_size; ++v) {
            std::size_t inside = 0;
            for (auto u : adj[v]) inside += u < core_size;
            if (2 * inside <= adj[v].size()) return false;
        }
        return true;
    };

    Rng rng(kSuiteSeed + 5);
    int checked = 0, failures = 0;
    for (int trial = 0; trial < 50; ++trial) {
        const std::uint64_t target = 100 + rng.next_index(1900);
        const auto delta = DegreeDistribution::power_law(target);
        const auto result = gen_configuration(delta, rng, /*concentrated=*/true);
        ++checked;
        failures += !independent_check(result.graph, result.report.community_size);
    }
    for (int trial = 0; trial < 10; ++trial) {
        const auto result =
            gen_configuration(DegreeDistribution{{4, 3, 2}}, rng, /*concentrated=*/true);
        ++checked;
        failures += !independent_check(result.graph, result.report.community_size);
    }
    return {failures == 0, fmt("%d/%d accepted graphs pass the independent checker",
                               checked - failures, checked)};
}

// ---------------------------------------------------------------- 7
// Union-find components equal brute-force BFS components on 500 random
// reservoirs of at most 50 edges.
Verdict criterion_components_oracle() {
    Rng rng(kSuiteSeed + 6);
    int failures = 0;
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t edge_count = 1 + rng.next_index(50);
        std::vector<Edge> edges;
        std::vector<std::pair<std::string, std::string>> plain;
        for (std::size_t i = 0; i < edge_count; ++i) {
            std::string a = "v" + std::to_string(rng.next_index(40));
            std::string b = "v" + std::to_string(rng.next_index(40));
            if (a == b) continue;
            edges.push_back(Edge{a, b, static_cast<std::int64_t>(i)});
            plain.emplace_back(a, b);
        }
        const auto set = components_of(edges);
        std::vector<std::vector<std::string>> got;
        for (const auto& c : set.components) got.push_back(c.nodes);
        failures += !(got == testutil::bfs_components(plain));
    }
    return {failures == 0, fmt("%d/500 reservoirs match the BFS oracle", 500 - failures)};
}

// ---------------------------------------------------------------- 8
// Survey-scale bookkeeping: 1e4 tweet records averaging 2.5 tags with one
// excluded tag yield 15000 +- 500 edges; a 4-hour span at tau=15min yields
// exactly 16 snapshots.
Verdict criterion_ingest_bookkeeping() {
    testutil::TempDir tmp("acceptance_ingest");
    TweetFixtureConfig cfg; // 1e4 records over 4 hours, 40% excluded tag
    write_tweet_fixture(tmp.file("tweets.jsonl"), cfg, kSuiteSeed + 7);

    DetectOptions det;
    det.tweets = tmp.file("tweets.jsonl");
    det.exclude_tags = {cfg.excluded_tag};
    det.dc = DCConfig{}; // survey defaults: k=400, h=3, c=3, tau=15min
    det.seed = kSuiteSeed + 8;
    det.out = tmp.file("out");
    const auto summary = cmd_detect(det);

    const bool edges_ok = summary.ingest_edges >= 14500 && summary.ingest_edges <= 15500;
    const bool snaps_ok = summary.snapshots == 16;
    return {edges_ok && snaps_ok,
            fmt("edges=%llu (want 15000 +- 500), snapshots=%zu (want 16), nodes=%zu",
                static_cast<unsigned long long>(summary.ingest_edges), summary.snapshots,
                summary.nodes)};
}

// ---------------------------------------------------------------- 9
// Correlation identities under randomized inputs: symmetry, identity = 1,
// disjoint = 0, range within [0,1] for node, community and edge-oracle
// correlations.
Verdict criterion_correlation_identities() {
    Rng rng(kSuiteSeed + 9);
    int failures = 0;
    auto expect = [&](bool ok) { failures += !ok; };
    for (int trial = 0; trial < 1000; ++trial) {
        auto make_summary = [&] {
            StreamSummary s;
            const std::size_t n = 1 + rng.next_index(25);
            for (std::size_t i = 0; i < n; ++i)
                s.node_set.insert("n" + std::to_string(rng.next_index(40)));
            CommunitySnapshot snap;
            snap.at = 1;
            Component c;
            for (const auto& v : s.node_set)
                if (rng.bernoulli(0.4)) c.nodes.push_back(v);
            if (!c.nodes.empty()) {
                c.id = c.nodes.front();
                snap.components.push_back(c);
                s.snapshots.push_back(snap);
            }
            return s;
        };
        const auto a = make_summary();
        const auto b = make_summary();

        const double v_ab = node_correlation(a, b);
        expect(std::abs(v_ab - node_correlation(b, a)) < 1e-12);
        expect(v_ab >= 0.0 && v_ab <= 1.0);
        expect(std::abs(node_correlation(a, a) - 1.0) < 1e-12);

        if (!a.community_union_all().empty()) {
            expect(std::abs(community_correlation(a, a) - 1.0) < 1e-12);
            if (!b.community_union_all().empty()) {
                const double c_ab = community_correlation(a, b);
                expect(std::abs(c_ab - community_correlation(b, a)) < 1e-12);
                expect(c_ab >= 0.0 && c_ab <= 1.0);
            }
        }

        std::vector<Edge> e1, e2;
        const std::size_t m1 = 1 + rng.next_index(15);
        for (std::size_t i = 0; i < m1; ++i)
            e1.push_back(Edge{"x" + std::to_string(rng.next_index(12)),
                              "x" + std::to_string(rng.next_index(12)), 0});
        for (std::size_t i = 0; i < m1; ++i)
            e2.push_back(Edge{"x" + std::to_string(rng.next_index(12)),
                              "x" + std::to_string(rng.next_index(12)), 0});
        const double e_ab = edge_correlation_oracle(e1, e2);
        expect(std::abs(e_ab - edge_correlation_oracle(e2, e1)) < 1e-12);
        expect(e_ab >= 0.0 && e_ab <= 1.0);
        expect(std::abs(edge_correlation_oracle(e1, e1) - 1.0) < 1e-12);

        // Disjoint rename: prefix makes the node sets disjoint.
        StreamSummary renamed;
        for (const auto& v : b.node_set) renamed.node_set.insert("zz_" + v);
        expect(node_correlation(a, renamed) == 0.0);
    }
    return {failures == 0, fmt("%d identity violations over 1000 randomized trials", failures)};
}

// ---------------------------------------------------------------- 10
// Memory contract during detection-scale runs: retained edges (global +
// window) never exceed 2k, checked after every single ingest.
Verdict criterion_memory_contract() {
    const auto delta = DegreeDistribution::power_law(10000);
    Rng rng(kSuiteSeed + 10);
    std::size_t max_retained = 0;
    std::uint64_t steps = 0;
    for (int run = 0; run < 3; ++run) {
        const auto graph = gen_communities(delta, 2, 0.01, rng);
        const auto stream = edge_stream_of(graph, 0, rng);
        DCConfig cfg; // k=400: the contract bound is 800 retained edges
        cfg.tau = static_cast<std::int64_t>(stream.size()) + 1;
        cfg.window_length = cfg.tau;
        EdgeStreamState state(cfg, rng.next_u64());
        for (const auto& e : stream) {
            state.ingest(e);
            ++steps;
            max_retained = std::max(max_retained, state.retained_total());
            if (state.retained_total() > 2 * cfg.k)
                return {false, fmt("retained %zu edges exceeds 2k after %llu steps",
                                   state.retained_total(),
                                   static_cast<unsigned long long>(steps))};
        }
    }
    return {true, fmt("max retained %zu of %d allowed over %llu ingest steps", max_retained,
                      800, static_cast<unsigned long long>(steps))};
}

// ---------------------------------------------------------------- 11
// Determinism: the density fixture, the detection pipeline and the tweet
// replay produce byte-identical artifacts when re-run with the same seed.
Verdict criterion_determinism() {
    testutil::TempDir tmp("acceptance_determinism");
    std::vector<std::string> mismatches;

    auto compare_dirs = [&](const std::string& a, const std::string& b,
                            const std::string& label) {
        namespace fs = std::filesystem;
        std::set<std::string> names;
        for (const auto& entry : fs::directory_iterator(a))
            names.insert(entry.path().filename().string());
        for (const auto& entry : fs::directory_iterator(b))
            names.insert(entry.path().filename().string());
        for (const auto& name : names) {
            const auto fa = fs::path(a) / name;
            const auto fb = fs::path(b) / name;
            if (!fs::exists(fa) || !fs::exists(fb) ||
                testutil::read_file(fa.string()) != testutil::read_file(fb.string()))
                mismatches.push_back(label + "/" + name);
        }
    };

    run_density_example(kSuiteSeed + 11, 100, tmp.file("fig_a"));
    run_density_example(kSuiteSeed + 11, 100, tmp.file("fig_b"));
    compare_dirs(tmp.file("fig_a"), tmp.file("fig_b"), "density");

    GenerateOptions gen;
    gen.model = "ddelta2";
    gen.delta = {12, 6, 4, 2, 2};
    gen.seed = kSuiteSeed + 12;
    gen.out = tmp.file("graph_a");
    cmd_generate(gen);
    gen.out = tmp.file("graph_b");
    cmd_generate(gen);
    compare_dirs(tmp.file("graph_a"), tmp.file("graph_b"), "generate");

    DetectOptions det;
    det.edges = (std::filesystem::path(tmp.file("graph_a")) / kEdgesFile).string();
    det.dc.k = 60;
    det.dc.tau = 10;
    det.dc.window_length = 20;
    det.seed = kSuiteSeed + 13;
    det.out = tmp.file("detect_a");
    cmd_detect(det);
    det.out = tmp.file("detect_b");
    cmd_detect(det);
    // The output directory name must not leak into the artifacts.
    compare_dirs(tmp.file("detect_a"), tmp.file("detect_b"), "detect");

    TweetFixtureConfig cfg;
    cfg.records = 3000;
    write_tweet_fixture(tmp.file("tweets.jsonl"), cfg, kSuiteSeed + 14);
    DetectOptions tdet;
    tdet.tweets = tmp.file("tweets.jsonl");
    tdet.exclude_tags = {cfg.excluded_tag};
    tdet.seed = kSuiteSeed + 15;
    tdet.out = tmp.file("replay_a");
    cmd_detect(tdet);
    tdet.out = tmp.file("replay_b");
    cmd_detect(tdet);
    compare_dirs(tmp.file("replay_a"), tmp.file("replay_b"), "replay");

    std::string detail = "density, generate, detect and replay artifacts byte-identical";
    if (!mismatches.empty()) {
        detail = "mismatched: ";
        for (const auto& m : mismatches) detail += m + " ";
    }
    return {mismatches.empty(), detail};
}

struct Criterion {
    int id;
    const char* name;
    Verdict (*run)();
};

const Criterion kCriteria[] = {
    {1, "reservoir-inclusion", criterion_inclusion},
    {2, "density-bound", criterion_density_bound},
    {3, "density-fixture", criterion_density_fixture},
    {4, "community-detection", criterion_detection},
    {5, "configuration-exactness", criterion_configuration_exactness},
    {6, "concentration-predicate", criterion_concentration_predicate},
    {7, "components-oracle", criterion_components_oracle},
    {8, "ingest-bookkeeping", criterion_ingest_bookkeeping},
    {9, "correlation-identities", criterion_correlation_identities},
    {10, "memory-contract", criterion_memory_contract},
    {11, "determinism", criterion_determinism},
};

} // namespace

int main(int argc, char** argv) {
    std::set<int> wanted;
    for (int i = 1; i < argc; ++i) wanted.insert(std::atoi(argv[i]));

    int failures = 0;
    for (const auto& criterion : kCriteria) {
        if (!wanted.empty() && !wanted.count(criterion.id)) continue;
        Verdict verdict;
        try {
            verdict = criterion.run();
        } catch (const std::exception& e) {
            verdict = {false, std::string("exception: ") + e.what()};
        }
        std::printf("criterion %2d [%s] %-25s %s\n", criterion.id,
                    verdict.pass ? "PASS" : "FAIL", criterion.name, verdict.detail.c_str());
        std::fflush(stdout);
        failures += !verdict.pass;
    }
    return failures == 0 ? 0 : 1;
}
