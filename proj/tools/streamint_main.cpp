// streamint: approximate density queries and dynamic communities over edge
// streams with bounded-size reservoirs, plus stream integration.
//
//   streamint generate   synthetic graphs (gnp, pa, config, ddelta<p>)
//   streamint olap       exact + reservoir-estimated density vectors
//   streamint detect     dynamic communities of an edge or tweet stream
//   streamint integrate  correlate finished streams
//   streamint experiment statistical experiments and demos

#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "app/commands.hpp"
#include "streamint/errors.hpp"
#include "streamint/timeutil.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;
constexpr int kExitExperimentFailed = 4;

std::int64_t parse_time_flag(const std::string& text, const std::string& flag) {
    auto ts = streamint::parse_timestamp(text);
    if (!ts) throw streamint::DomainError(flag + ": cannot parse timestamp '" + text + "'");
    return *ts;
}

} // namespace

int main(int argc, char** argv) {
    using namespace streamint;
    using namespace streamint::app;

    CLI::App cli("approximate stream analytics over bounded reservoirs", "streamint");
    cli.require_subcommand(1);
    cli.fallthrough();
    cli.set_config("--config");
    // --h is a real option (community threshold); help is --help only.
    cli.set_help_flag("--help", "print help");

    std::uint64_t seed = 1;
    std::string out;
    cli.add_option("--seed", seed, "random seed; identical seeds replay identical runs");
    cli.add_option("--out", out, "output directory");

    // generate ---------------------------------------------------------
    GenerateOptions gen;
    auto* generate = cli.add_subcommand("generate", "write a synthetic edge stream");
    generate->add_option("--model", gen.model, "gnp | pa | config | ddelta | ddelta<p>")
        ->required();
    generate->add_option("--n", gen.n, "node count (gnp, pa)");
    generate->add_option("--p", gen.p, "edge probability (gnp)");
    generate->add_option("--m", gen.m, "edges per new node (pa)");
    generate->add_option("--delta", gen.delta, "degree counts D(1),D(2),... (config, ddelta)")
        ->delimiter(',');
    generate->add_option("--communities", gen.communities, "community count (ddelta)");
    generate->add_option("--bridge-fraction", gen.bridge_fraction,
                         "bridge edges as a fraction of total edges");
    generate->add_flag("--concentrated", gen.concentrated, "biased matching (config)");
    generate->add_option("--bias", gen.bias, "high-degree matching bias");
    generate->add_option("--start", gen.start, "first timestamp (epoch seconds)");

    // olap --------------------------------------------------------------
    OlapOptions olap;
    std::string delimiter = ",";
    auto* olap_cmd = cli.add_subcommand("olap", "density vector of a tuple stream");
    olap_cmd->add_option("--input", olap.input, "tuple file with a header row")->required();
    olap_cmd->add_option("--dim", olap.dims, "dimension column (repeat for a product)")
        ->required();
    olap_cmd->add_option("--measure", olap.measure_column, "measure column")->required();
    olap_cmd->add_option("--values", olap.values, "declared dimension values")->delimiter(',');
    olap_cmd->add_flag("--allow-other", olap.allow_other,
                       "collect undeclared values under OTHER instead of failing");
    olap_cmd->add_option("--k", olap.k, "reservoir size for the estimate");
    olap_cmd->add_option("--epsilon", olap.epsilon, "target error (with --delta)");
    olap_cmd->add_option("--delta", olap.delta, "target failure probability");
    olap_cmd->add_option("--cardinality", olap.cardinality,
                         "dimension cardinality for the sample-size bound");
    olap_cmd->add_option("--delimiter", delimiter, "field delimiter (default ,)");
    std::vector<std::string> filter_specs;
    olap_cmd->add_option("--filter", filter_specs, "keep rows where column=value (repeatable)");

    // detect -------------------------------------------------------------
    DetectOptions det;
    std::string from_text, to_text, window_mode = "exact", late = "strict";
    auto* detect = cli.add_subcommand("detect", "dynamic communities of one stream");
    detect->set_help_flag("--help", "print help");
    auto* det_edges = detect->add_option("--input", det.edges, "edge stream file");
    auto* det_tweets = detect->add_option("--tweets", det.tweets, "tweet record file");
    det_edges->excludes(det_tweets);
    detect->add_option("--exclude-tag", det.exclude_tags, "drop edges to this tag (repeatable)");
    detect->add_option("--from", from_text, "ignore records before this time");
    detect->add_option("--to", to_text, "ignore records at or after this time");
    detect->add_option("--k", det.dc.k, "reservoir capacity");
    detect->add_option("--h", det.dc.h, "community size threshold (nodes)");
    detect->add_option("--c", det.dc.c, "component recompute period (edges)");
    detect->add_option("--tau", det.dc.tau, "snapshot interval (seconds)");
    detect->add_option("--window", det.dc.window_length, "window length (seconds)");
    detect->add_option("--window-mode", window_mode, "exact | compat");
    detect->add_option("--late", late, "strict | reject | clamp");

    // integrate -----------------------------------------------------------
    IntegrateOptions integ;
    auto* integrate = cli.add_subcommand("integrate", "correlate finished streams");
    integrate->add_option("dirs", integ.dirs, "detect output directories")->expected(-2);

    // experiment ------------------------------------------------------------
    ExperimentOptions exp;
    auto* experiment = cli.add_subcommand("experiment", "statistical experiments");
    std::string known;
    for (const auto& n : experiment_names()) known += (known.empty() ? "" : " | ") + n;
    experiment->add_option("name", exp.name, known)->required();
    experiment->add_option("--trials", exp.trials, "Monte Carlo trials");
    experiment->add_option("--runs", exp.runs, "estimation runs");
    experiment->add_option("--seeds", exp.seeds, "independent seeded graphs");
    experiment->add_option("--edges-per-community", exp.edges_per_community,
                           "graph scale for detection");
    experiment->add_option("--k", exp.k, "reservoir capacity");
    experiment->add_option("--sample-size", exp.sample_size, "reservoir size (density-example)");
    experiment->add_option("--input", exp.input, "edge stream file (split-reservoir, stability)");
    experiment->add_option("--threads", exp.threads, "worker threads (0 = hardware)");

    try {
        cli.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return cli.exit(e) == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (*generate) {
            gen.seed = seed;
            gen.out = out;
            const auto summary = cmd_generate(gen);
            std::printf("generated %zu nodes, %zu edges, %zu planted communities -> %s\n",
                        summary.nodes, summary.edges, summary.communities, out.c_str());
        } else if (*olap_cmd) {
            olap.seed = seed;
            olap.out = out;
            if (delimiter.size() != 1) throw DomainError("--delimiter must be one character");
            olap.delimiter = delimiter[0];
            for (const auto& f : filter_specs) {
                const auto pos = f.find('=');
                if (pos == std::string::npos)
                    throw DomainError("--filter expects column=value, got '" + f + "'");
                olap.filters.emplace_back(f.substr(0, pos), f.substr(pos + 1));
            }
            const auto summary = cmd_olap(olap);
            std::printf("k=%llu over %llu tuples (%llu filtered out)\n",
                        static_cast<unsigned long long>(summary.k),
                        static_cast<unsigned long long>(summary.tuples),
                        static_cast<unsigned long long>(summary.filtered_out));
            std::printf("exact:    %s\n", summary.exact.dump().c_str());
            std::printf("estimate: %s\n", summary.estimate.dump().c_str());
        } else if (*detect) {
            det.seed = seed;
            det.out = out;
            if (!from_text.empty()) det.from = parse_time_flag(from_text, "--from");
            if (!to_text.empty()) det.to = parse_time_flag(to_text, "--to");
            if (window_mode == "exact") det.dc.window_mode = WindowMode::exact;
            else if (window_mode == "compat") det.dc.window_mode = WindowMode::compat;
            else throw DomainError("--window-mode must be exact or compat");
            if (late == "strict") det.dc.late = LatePolicy::strict;
            else if (late == "reject") det.dc.late = LatePolicy::reject;
            else if (late == "clamp") det.dc.late = LatePolicy::clamp;
            else throw DomainError("--late must be strict, reject or clamp");
            const auto summary = cmd_detect(det);
            std::printf("accepted %llu edges (%llu self-loops, %llu malformed), %zu nodes\n",
                        static_cast<unsigned long long>(summary.counters.accepted),
                        static_cast<unsigned long long>(summary.counters.self_loops),
                        static_cast<unsigned long long>(summary.counters.malformed),
                        summary.nodes);
            std::printf("%zu snapshots, %zu global communities, max retained edges %zu -> %s\n",
                        summary.snapshots, summary.global_communities, summary.max_retained,
                        out.c_str());
        } else if (*integrate) {
            integ.out = out;
            const auto summary = cmd_integrate(integ);
            if (summary.streams == 2)
                std::printf("rho_v=%.6f rho_c=%.6f -> %s\n", summary.rho_v, summary.rho_c,
                            out.c_str());
            else
                std::printf("pairwise matrices for %zu streams -> %s\n", summary.streams,
                            out.c_str());
        } else if (*experiment) {
            exp.seed = seed;
            exp.out = out;
            const auto report = cmd_experiment(exp);
            std::printf("%s\n", report.to_json().dump(2).c_str());
            if (!report.pass) return kExitExperimentFailed;
        }
    } catch (const IoError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitIo;
    } catch (const SchemaError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitIo;
    } catch (const OrderingError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitIo;
    } catch (const DomainError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitConfig;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitConfig;
    }
    return kExitOk;
}
