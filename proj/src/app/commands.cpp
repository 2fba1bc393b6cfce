#include "commands.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <regex>
#include <set>

#include "fixtures.hpp"
#include "streamint/errors.hpp"
#include "streamint/genmodels.hpp"
#include "streamint/ingest.hpp"
#include "streamint/integrate.hpp"
#include "streamint/io.hpp"
#include "streamint/olap.hpp"

namespace streamint::app {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path ensure_out_dir(const std::string& out) {
    if (out.empty()) throw DomainError("an output directory is required (--out)");
    fs::path dir(out);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError(out, "cannot create output directory");
    return dir;
}

void write_run_config(const fs::path& dir, const std::string& command, const json& resolved) {
    json j;
    j["command"] = command;
    j["options"] = resolved;
    std::ofstream out((dir / kRunConfigFile).string());
    if (!out) throw IoError((dir / kRunConfigFile).string(), "cannot write run config");
    out << j.dump(2) << '\n';
}

} // namespace

GenerateSummary cmd_generate(const GenerateOptions& options) {
    const fs::path dir = ensure_out_dir(options.out);
    Rng rng(options.seed);

    std::string model = options.model;
    std::size_t communities = options.communities;
    // "ddelta2" is shorthand for --model ddelta --communities 2.
    std::smatch match;
    if (std::regex_match(model, match, std::regex("^ddelta([0-9]+)$"))) {
        communities = std::stoul(match[1]);
        model = "ddelta";
    }

    GeneratedGraph graph;
    if (model == "gnp") {
        graph = gen_gnp(options.n, options.p, rng);
    } else if (model == "pa") {
        graph = gen_pa(options.n, options.m, rng);
    } else if (model == "config" || model == "ddelta") {
        if (options.delta.empty()) throw DomainError("model needs --delta counts");
        DegreeDistribution delta{options.delta};
        if (model == "config") {
            graph = gen_configuration(delta, rng, options.concentrated, options.bias).graph;
        } else {
            graph = gen_communities(delta, communities, options.bridge_fraction, rng,
                                    options.bias);
        }
    } else {
        throw DomainError("unknown model '" + options.model +
                          "' (expected gnp | pa | config | ddelta | ddelta<p>)");
    }

    const auto stream = edge_stream_of(graph, options.start, rng);
    write_edge_stream_csv((dir / kEdgesFile).string(), stream);
    write_planted((dir / kPlantedFile).string(), graph, node_name);

    json resolved = {{"model", options.model},
                     {"n", options.n},
                     {"p", options.p},
                     {"m", options.m},
                     {"delta", options.delta},
                     {"communities", communities},
                     {"bridge_fraction", options.bridge_fraction},
                     {"concentrated", options.concentrated},
                     {"bias", options.bias},
                     {"start", options.start},
                     {"seed", options.seed}};
    write_run_config(dir, "generate", resolved);

    return GenerateSummary{graph.node_count, graph.edges.size(), graph.planted.size()};
}

namespace {

struct TupleScan {
    std::vector<std::size_t> dim_columns;
    std::size_t measure_column = 0;
    std::vector<std::pair<std::size_t, std::string>> filters;
};

TupleScan resolve_columns(const TupleReader& reader, const OlapOptions& options) {
    TupleScan scan;
    if (options.dims.empty()) throw DomainError("at least one dimension column is required");
    for (const auto& d : options.dims) scan.dim_columns.push_back(reader.column_of(d));
    if (options.measure_column.empty()) throw DomainError("a measure column is required");
    scan.measure_column = reader.column_of(options.measure_column);
    for (const auto& [col, value] : options.filters)
        scan.filters.emplace_back(reader.column_of(col), value);
    return scan;
}

std::string composite_value(const std::vector<std::string>& row, const TupleScan& scan) {
    std::string value = row[scan.dim_columns[0]];
    for (std::size_t i = 1; i < scan.dim_columns.size(); ++i) {
        value.push_back('|');
        value += row[scan.dim_columns[i]];
    }
    return value;
}

bool passes_filters(const std::vector<std::string>& row, const TupleScan& scan) {
    for (const auto& [col, want] : scan.filters)
        if (row[col] != want) return false;
    return true;
}

double parse_measure(const std::string& text, std::uint64_t line) {
    try {
        return std::stod(text);
    } catch (...) {
        throw SchemaError("line " + std::to_string(line) + ": bad measure '" + text + "'");
    }
}

} // namespace

OlapSummary cmd_olap(const OlapOptions& options) {
    if (options.input.empty()) throw DomainError("an input tuple file is required");
    if (!options.values.empty() && options.dims.size() > 1)
        throw DomainError("declared values only apply to a single dimension");

    // Pass 1 when values are not declared: collect the observed value set.
    std::vector<std::string> values = options.values;
    if (values.empty()) {
        TupleReader reader(options.input, options.delimiter);
        const auto scan = resolve_columns(reader, options);
        std::set<std::string> seen;
        std::vector<std::string> row;
        while (reader.next(row)) {
            if (!passes_filters(row, scan)) continue;
            seen.insert(composite_value(row, scan));
        }
        values.assign(seen.begin(), seen.end());
        if (values.empty()) throw DomainError("no tuples survive the filters");
    }

    std::string dim_name = options.dims[0];
    for (std::size_t i = 1; i < options.dims.size(); ++i) dim_name += "|" + options.dims[i];
    const DimensionSpec dim(dim_name, values);
    const auto policy =
        options.allow_other ? UnknownValuePolicy::other_bucket : UnknownValuePolicy::error;

    const std::size_t cardinality =
        options.cardinality > 0 ? options.cardinality : dim.cardinality();
    std::uint64_t k = options.k;
    if (k == 0) {
        if (!(options.epsilon > 0.0) || !(options.delta > 0.0))
            throw DomainError("either --k or both --epsilon and --delta are required");
        k = required_sample_size(cardinality, options.epsilon, options.delta);
    }

    ExactDensity exact_acc(dim, policy);
    EstimatedDensity estimate_acc(dim, k, policy);
    Rng rng(options.seed);
    std::uint64_t filtered_out = 0;

    TupleReader reader(options.input, options.delimiter);
    const auto scan = resolve_columns(reader, options);
    std::vector<std::string> row;
    while (reader.next(row)) {
        if (!passes_filters(row, scan)) {
            ++filtered_out;
            continue;
        }
        const auto value = composite_value(row, scan);
        const double measure = parse_measure(row[scan.measure_column], reader.line_no());
        exact_acc.add(value, measure);
        estimate_acc.add(value, measure, rng);
    }

    const auto exact = exact_acc.result();
    const auto estimate = estimate_acc.result();

    OlapSummary summary;
    summary.k = k;
    summary.tuples = exact_acc.tuples_seen();
    summary.filtered_out = filtered_out;
    for (std::size_t i = 0; i < exact.dimension.cardinality(); ++i) {
        summary.exact[exact.dimension.values()[i]] = exact.densities[i];
        summary.estimate[exact.dimension.values()[i]] = estimate.densities[i];
    }

    if (!options.out.empty()) {
        const fs::path dir = ensure_out_dir(options.out);
        write_density((dir / "density_exact.jsonl").string(), exact);
        write_density((dir / "density_estimate.jsonl").string(), estimate);
        json resolved = {{"input", options.input},
                         {"dims", options.dims},
                         {"measure", options.measure_column},
                         {"values", values},
                         {"allow_other", options.allow_other},
                         {"k", k},
                         {"epsilon", options.epsilon},
                         {"delta", options.delta},
                         {"cardinality", cardinality},
                         {"seed", options.seed}};
        write_run_config(dir, "olap", resolved);
    }
    return summary;
}

DetectSummary cmd_detect(const DetectOptions& options) {
    if (options.edges.empty() == options.tweets.empty())
        throw DomainError("exactly one of an edge file or a tweet file is required");
    const fs::path dir = ensure_out_dir(options.out);

    EdgeStreamState state(options.dc, options.seed);
    DetectSummary summary;
    std::optional<std::int64_t> stream_end;

    if (!options.tweets.empty()) {
        FilterConfig filter;
        for (const auto& t : options.exclude_tags) filter.excluded_tags.insert(normalize_tag(t));
        filter.from = options.from;
        filter.to = options.to;
        const auto stats =
            replay(options.tweets, filter, [&](const Edge& e) { state.ingest(e); });
        summary.ingest_edges = stats.edges;
        stream_end = stats.last_timestamp;
    } else {
        read_edge_stream(options.edges, [&](const Edge& e) {
            state.ingest(e);
            stream_end = std::max(stream_end.value_or(e.timestamp), e.timestamp);
        });
    }
    // The input is exhausted; let the event clock reach the last record so
    // snapshots due at the stream's end still fire.
    if (stream_end && *stream_end > state.last_timestamp())
        state.advance_time(*stream_end);

    const auto final_result = state.finalize();
    const auto series = component_size_series(state.snapshots());

    write_snapshots((dir / kSnapshotsFile).string(), state.snapshots());
    write_registry((dir / kRegistryFile).string(), state.registry());
    write_components((dir / kGlobalComponentsFile).string(), final_result.global_communities);
    write_series((dir / kSeriesFile).string(), series);

    json resolved = {{"edges", options.edges},
                     {"tweets", options.tweets},
                     {"exclude_tags", options.exclude_tags},
                     {"k", options.dc.k},
                     {"h", options.dc.h},
                     {"c", options.dc.c},
                     {"tau", options.dc.tau},
                     {"window_length", options.dc.window_length},
                     {"window_mode",
                      options.dc.window_mode == WindowMode::exact ? "exact" : "compat"},
                     {"late",
                      options.dc.late == LatePolicy::strict
                          ? "strict"
                          : options.dc.late == LatePolicy::reject ? "reject" : "clamp"},
                     {"seed", options.seed}};
    if (options.from) resolved["from"] = *options.from;
    if (options.to) resolved["to"] = *options.to;
    write_run_config(dir, "detect", resolved);

    summary.counters = state.counters();
    summary.nodes = state.registry().size();
    summary.snapshots = state.snapshots().size();
    summary.global_communities = final_result.global_communities.size();
    summary.max_retained = state.max_retained_total();
    return summary;
}

IntegrateSummary cmd_integrate(const IntegrateOptions& options) {
    if (options.dirs.size() < 2) throw DomainError("integration needs at least two summaries");
    const fs::path dir = ensure_out_dir(options.out);

    std::vector<StreamSummary> summaries;
    for (const auto& d : options.dirs) summaries.push_back(load_summary_dir(d));

    IntegrateSummary result;
    result.streams = summaries.size();
    if (summaries.size() == 2) {
        const auto integration = integrate_pair(summaries[0], summaries[1]);
        write_integration((dir / kIntegrationFile).string(), integration);
        result.rho_v = integration.rho_v;
        result.rho_c = integration.rho_c;
    } else {
        const auto matrix = integrate_all(summaries);
        write_matrix_csv((dir / "matrix_rho_v.csv").string(), matrix.names, matrix.rho_v);
        write_matrix_csv((dir / "matrix_rho_c.csv").string(), matrix.names, matrix.rho_c);
    }

    json resolved = {{"dirs", options.dirs}};
    write_run_config(dir, "integrate", resolved);
    return result;
}

const std::vector<std::string>& experiment_names() {
    static const std::vector<std::string> names = {
        "inclusion-freq", "density-error", "density-example",
        "detection",      "split-reservoir", "stability"};
    return names;
}

ExperimentReport cmd_experiment(const ExperimentOptions& options) {
    ExperimentReport report;
    if (options.name == "inclusion-freq") {
        report = run_inclusion_freq(options.trials, options.seed);
    } else if (options.name == "density-error") {
        report = run_density_error(options.runs, options.seed);
    } else if (options.name == "density-example") {
        report = run_density_example(options.seed, options.sample_size, options.out);
    } else if (options.name == "detection") {
        report = run_detection(options.seeds, options.edges_per_community, options.seed,
                               options.out, options.threads);
    } else if (options.name == "split-reservoir") {
        report = run_split_reservoir(options.input, options.k, options.seed, options.out);
    } else if (options.name == "stability") {
        report = run_stability(options.input, options.seed, options.out);
    } else {
        std::string known;
        for (const auto& n : experiment_names()) known += (known.empty() ? "" : ", ") + n;
        throw DomainError("unknown experiment '" + options.name + "' (known: " + known + ")");
    }

    if (!options.out.empty()) {
        const fs::path dir = ensure_out_dir(options.out);
        std::ofstream out((dir / (report.name + "_report.json")).string());
        out << report.to_json().dump(2) << '\n';
        json resolved = {{"name", options.name},     {"trials", options.trials},
                         {"runs", options.runs},     {"seeds", options.seeds},
                         {"k", options.k},           {"input", options.input},
                         {"seed", options.seed},     {"threads", options.threads},
                         {"edges_per_community", options.edges_per_community},
                         {"sample_size", options.sample_size}};
        write_run_config(dir, "experiment", resolved);
    }
    return report;
}

} // namespace streamint::app
