#include "fixtures.hpp"

#include <fstream>

#include <json.hpp>

#include "streamint/errors.hpp"

namespace streamint::app {

std::vector<double> inclusion_stream_measures(std::size_t n, std::size_t k, std::uint64_t seed) {
    if (n <= k) throw DomainError("stream must be longer than the reservoir");
    std::vector<double> w(n);
    Rng rng(seed);
    for (std::size_t i = 0; i < n; ++i) w[i] = i < k ? 10.0 : rng.next_in(1.0, 10.0);
    return w;
}

std::vector<Tuple> channel_example_tuples() {
    // Heavy constant-measure head (100 tuples at measure 8, half CNN), then
    // 150 CNN at 4 and 100 PBS at 1: exact density 1000/1500 = 2/3 for CNN.
    // The head keeps any reservoir of up to 100 slots on the exact-inclusion
    // regime: equal measures through the fill phase and no later item heavy
    // enough to clamp the acceptance probability.
    std::vector<Tuple> tuples;
    for (int i = 0; i < 100; ++i)
        tuples.push_back(Tuple{{{"Channel", i % 2 == 0 ? "CNN" : "PBS"}}, 8.0});
    for (int i = 0; i < 50; ++i) {
        tuples.push_back(Tuple{{{"Channel", "CNN"}}, 4.0});
        tuples.push_back(Tuple{{{"Channel", "CNN"}}, 4.0});
        tuples.push_back(Tuple{{{"Channel", "CNN"}}, 4.0});
        tuples.push_back(Tuple{{{"Channel", "PBS"}}, 1.0});
        tuples.push_back(Tuple{{{"Channel", "PBS"}}, 1.0});
    }
    return tuples;
}

std::vector<Tuple> two_value_tuples(std::size_t n, std::uint64_t seed,
                                    std::size_t heavy_prefix) {
    std::vector<Tuple> tuples;
    tuples.reserve(n);
    Rng rng(seed);
    for (std::size_t i = 0; i < n; ++i) {
        const bool a = rng.bernoulli(0.35);
        const double measure = i < heavy_prefix ? 10.0 : rng.next_in(1.0, 10.0);
        tuples.push_back(Tuple{{{"value", a ? "A" : "B"}}, measure});
    }
    return tuples;
}

void write_tweet_fixture(const std::string& path, const TweetFixtureConfig& config,
                         std::uint64_t seed) {
    std::ofstream out(path);
    if (!out) throw IoError(path, "cannot open for writing");
    Rng rng(seed);
    for (std::size_t i = 0; i < config.records; ++i) {
        const std::int64_t ts =
            config.records <= 1
                ? config.start
                : config.start + static_cast<std::int64_t>(
                                     (static_cast<double>(i) * config.span) /
                                     static_cast<double>(config.records - 1) + 0.5);
        const std::size_t sender = rng.next_index(config.senders);
        const std::size_t tag_count = 2 + (rng.bernoulli(config.extra_tag_prob) ? 1 : 0);
        nlohmann::json j;
        j["sender"] = "@user" + std::to_string(sender);
        auto tags = nlohmann::json::array();
        for (std::size_t t = 0; t < tag_count; ++t) {
            if (rng.bernoulli(config.excluded_prob)) {
                tags.push_back(config.excluded_tag);
            } else if (rng.bernoulli(config.mention_prob)) {
                tags.push_back("@user" + std::to_string(rng.next_index(config.senders)));
            } else {
                tags.push_back("#topic" + std::to_string(rng.next_index(config.topics)));
            }
        }
        j["tags"] = std::move(tags);
        j["timestamp"] = ts;
        out << j.dump() << '\n';
    }
    if (!out) throw IoError(path, "write failure");
}

std::string node_name(std::uint32_t id) { return "n" + std::to_string(id); }

std::vector<Edge> edge_stream_of(const GeneratedGraph& graph, std::int64_t start, Rng& rng) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> order = graph.edges;
    rng.shuffle(order);
    std::vector<Edge> stream;
    stream.reserve(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        stream.push_back(Edge{node_name(order[i].first), node_name(order[i].second),
                              start + static_cast<std::int64_t>(i)});
    }
    return stream;
}

} // namespace streamint::app
