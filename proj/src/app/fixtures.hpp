#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "streamint/genmodels.hpp"
#include "streamint/graphstream.hpp"
#include "streamint/olap.hpp"

namespace streamint::app {

// Measures for the inclusion-frequency experiment: constant through the fill
// phase (heavier than anything after it), then uniform in [1,10]. On such a
// stream the retention probability of every item is exactly k*w/T with no
// clamping, which is what the experiment asserts.
std::vector<double> inclusion_stream_measures(std::size_t n, std::size_t k, std::uint64_t seed);

// Channel tuples whose exact density is CNN 2/3, PBS 1/3. Safe for any
// reservoir of up to 100 slots (constant-measure fill phase, no clamping).
std::vector<Tuple> channel_example_tuples();

// Two-value weighted tuple stream ("A"/"B") for the density error
// experiment; the first heavy_prefix tuples carry the maximum measure so a
// reservoir that large stays on the exact-inclusion regime.
std::vector<Tuple> two_value_tuples(std::size_t n, std::uint64_t seed,
                                    std::size_t heavy_prefix = 600);

struct TweetFixtureConfig {
    std::size_t records = 10000;
    std::int64_t start = 1700000000; // epoch seconds
    std::int64_t span = 14400;       // records spread over [start, start+span]
    std::size_t senders = 500;
    std::size_t topics = 3100;
    double extra_tag_prob = 0.5;    // 2 tags, plus one more with this probability
    double excluded_prob = 0.4;     // chance a tag slot is the excluded tag
    std::string excluded_tag = "#headline";
    double mention_prob = 0.2;      // tag is an @mention instead of a #topic
};

// Line-delimited tweet records for replay tests and experiments.
void write_tweet_fixture(const std::string& path, const TweetFixtureConfig& config,
                         std::uint64_t seed);

// Turns a generated graph into a timestamped edge stream: edges in random
// order, one second apart, node i named "n<i>".
std::vector<Edge> edge_stream_of(const GeneratedGraph& graph, std::int64_t start,
                                 Rng& rng);

std::string node_name(std::uint32_t id);

} // namespace streamint::app
