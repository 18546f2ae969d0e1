#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <sra/sra.hpp>

#include "svg.hpp"

namespace {

using namespace sra;

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_input(const std::string& path) {
    std::ostringstream buffer;
    if (path == "-") {
        buffer << std::cin.rdbuf();
        return buffer.str();
    }
    std::ifstream file(path, std::ios::binary);
    if (!file) throw IoError("cannot open '" + path + "' for reading");
    buffer << file.rdbuf();
    if (file.bad()) throw IoError("failed reading '" + path + "'");
    return buffer.str();
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        std::cout.flush();
        if (!std::cout) throw IoError("failed writing to standard output");
        return;
    }
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw IoError("cannot open '" + path + "' for writing");
    file << content;
    file.flush();
    if (!file) throw IoError("failed writing '" + path + "'");
}

struct InputFlags {
    std::string path;
    bool items_as_rows = false;
    bool scores = false;
    bool allow_ties = false;
    std::optional<ItemId> universe_size;
    std::string delimiter;
    std::vector<std::string> extra_na;

    ParseOptions parse_options() const {
        ParseOptions opts;
        opts.orientation = (items_as_rows || scores) ? Orientation::ItemsAsRows
                                                     : Orientation::RanksAsRows;
        opts.scores = scores;
        opts.allow_midrank_ties = allow_ties;
        opts.universe_size = universe_size;
        if (delimiter == "tab") opts.delimiter = '\t';
        else if (delimiter == "comma") opts.delimiter = ',';
        else if (!delimiter.empty()) opts.delimiter = delimiter.front();
        for (const auto& token : extra_na) opts.na_tokens.push_back(token);
        return opts;
    }
};

struct RunFlags {
    std::string metric = "sd";
    std::optional<int> max_depth;
    std::optional<std::uint64_t> seed;
    int threads = 0;
    std::string format = "csv";
    std::string output;

    AgreementMetric metric_value() const { return *metric_from_name(metric); }
    OutputFormat format_value() const {
        return format == "json" ? OutputFormat::StructuredRecord : OutputFormat::DelimitedText;
    }
    RandomSeed seed_value() const {
        return seed ? RandomSeed{*seed} : RandomSeed::from_entropy();
    }
};

void add_input_flags(CLI::App* cmd, InputFlags& in, bool positional_required) {
    auto* pos = cmd->add_option("input", in.path, "List document ('-' reads standard input)");
    if (positional_required) pos->required();
    cmd->add_flag("--items-as-rows", in.items_as_rows,
                  "Input has one row per item: an item-label column, then one rank column per "
                  "list (default layout is one column per list holding item labels by rank)");
    cmd->add_flag("--scores", in.scores,
                  "Items-as-rows cells are real-valued scores; lists are ranked by descending "
                  "|score| (implies --items-as-rows)");
    cmd->add_flag("--allow-ties-midrank", in.allow_ties,
                  "Resolve tied ranks/scores by their mid-rank span in row order instead of "
                  "rejecting the document (resolution is reported in output metadata)");
    cmd->add_option("--universe-size", in.universe_size,
                    "Total number of items P; required for censored ranks-as-rows input")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--delimiter", in.delimiter,
                    "Field separator: one character, 'tab', or 'comma' (default: sniffed)")
        ->check(CLI::Validator(
            [](std::string& s) -> std::string {
                if (s == "tab" || s == "comma" || s.size() == 1) return {};
                return "must be one character, 'tab', or 'comma'";
            },
            "DELIM"));
    cmd->add_option("--na", in.extra_na,
                    "Additional cell token marking a censored entry (repeatable; '' and 'NA' "
                    "always count)");
}

void add_metric_flag(CLI::App* cmd, RunFlags& run) {
    cmd->add_option("--metric", run.metric,
                    "Per-item agreement statistic: sd (sample standard deviation) or mad "
                    "(median absolute deviation)")
        ->check(CLI::IsMember({"sd", "mad"}));
}

void add_run_flags(CLI::App* cmd, RunFlags& run, bool with_seed) {
    cmd->add_option("--max-depth", run.max_depth, "Truncate the curve at this depth")
        ->check(CLI::PositiveNumber);
    if (with_seed)
        cmd->add_option("--seed", run.seed,
                        "Root seed for all randomized steps (default: drawn from entropy; the "
                        "value used is always echoed in output metadata)");
    cmd->add_option("--threads", run.threads,
                    "Worker thread count; 0 uses SRA_THREADS or the hardware count. Results "
                    "are identical for every thread count")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--format", run.format, "Output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--output,-o", run.output, "Output file (default: standard output)");
}

CurveMetadata base_metadata(const ParsedListSet& parsed) {
    CurveMetadata md;
    md.universe_size = parsed.lists.universe_size();
    md.list_count = static_cast<int>(parsed.lists.list_count());
    md.ties_broken = parsed.ties_broken;
    return md;
}

ParsedListSet load_listset(const InputFlags& in) {
    return parse_listset(read_input(in.path), in.parse_options());
}

// Replicate reference curves: each path is a curve document, a list document
// (its agreement curve is computed), or a directory of such files taken in
// filename order.
struct ReplicateCurves {
    std::vector<DepthCurve> curves;
    bool computed_any = false;  // at least one file was a list document
    bool used_random = false;   // some computed curve needed censored fill-outs
};

ReplicateCurves load_replicates(const std::vector<std::string>& paths, const InputFlags& in,
                                const RunFlags& run, int fill_b, RandomSeed seed) {
    std::vector<std::string> files;
    for (const auto& path : paths) {
        if (std::filesystem::is_directory(path)) {
            std::vector<std::string> inside;
            for (const auto& entry : std::filesystem::directory_iterator(path))
                if (entry.is_regular_file()) inside.push_back(entry.path().string());
            std::sort(inside.begin(), inside.end());
            files.insert(files.end(), inside.begin(), inside.end());
        } else {
            files.push_back(path);
        }
    }
    if (files.empty()) throw IoError("no replicate files found");

    ReplicateCurves result;
    for (std::size_t i = 0; i < files.size(); ++i) {
        const std::string text = read_input(files[i]);
        try {
            result.curves.push_back(parse_curve(text).curve);
            continue;
        } catch (const ParseError&) {
        }
        std::optional<ParsedListSet> replicate;
        try {
            replicate = parse_listset(text, in.parse_options());
        } catch (const ParseError& e) {
            throw ParseError("replicate '" + files[i] +
                             "' is neither a curve document nor a list document (" + e.what() +
                             ")");
        }
        result.computed_any = true;
        if (replicate->lists.any_censored()) {
            result.used_random = true;
            MonteCarloConfig config;
            config.permutations = fill_b;
            config.seed.value = rng::substream(seed.value, rng::kReplicateList,
                                               static_cast<std::uint64_t>(i));
            config.threads = run.threads;
            result.curves.push_back(
                sra_censored(replicate->lists, run.metric_value(), config, run.max_depth));
        } else {
            result.curves.push_back(
                sra_complete(replicate->lists, run.metric_value(), run.max_depth));
        }
    }
    return result;
}

void cmd_sra(const InputFlags& in, const RunFlags& run, int fill_b) {
    const ParsedListSet parsed = load_listset(in);
    const RandomSeed seed = run.seed_value();

    CurveMetadata md = base_metadata(parsed);
    md.metric = run.metric_value();
    md.seed = seed.value;
    md.permutations = fill_b;

    DepthCurve curve;
    if (parsed.lists.any_censored()) {
        MonteCarloConfig config{fill_b, seed, run.threads};
        curve = sra_censored(parsed.lists, run.metric_value(), config, run.max_depth);
        const int deepest = recommended_max_depth(parsed.lists);
        if (static_cast<int>(curve.depth_count()) > deepest) md.flagged_from = deepest;
    } else {
        curve = sra_complete(parsed.lists, run.metric_value(), run.max_depth);
    }
    write_output(run.output, emit_curve(curve, md, run.format_value()));
}

void cmd_overlap(const InputFlags& in, const RunFlags& run) {
    const ParsedListSet parsed = load_listset(in);
    const DepthCurve curve = average_overlap(parsed.lists, run.max_depth);
    write_output(run.output, emit_curve(curve, base_metadata(parsed), run.format_value()));
}

void cmd_nullband(const InputFlags& in, const RunFlags& run, int band_b, int fill_b,
                  const std::vector<double>& quantiles,
                  const std::vector<std::string>& replicates) {
    if (!replicates.empty() && !in.path.empty())
        throw InvalidInputError("give either a shape document or --replicates, not both");

    const RandomSeed seed = run.seed_value();
    ReferenceBand band;
    CurveMetadata md;

    if (!replicates.empty()) {
        const ReplicateCurves loaded = load_replicates(replicates, in, run, fill_b, seed);
        band = band_from_replicates(loaded.curves, quantiles);
        if (loaded.computed_any) md.metric = run.metric_value();
        if (loaded.used_random) {
            md.seed = seed.value;
            md.permutations = fill_b;
        }
    } else {
        if (in.path.empty())
            throw InvalidInputError("a shape document (or --replicates) is required");
        const ParsedListSet parsed = load_listset(in);
        H0Config config;
        config.band_permutations = band_b;
        config.fill_permutations = fill_b;
        config.seed = seed;
        config.metric = run.metric_value();
        config.max_depth = run.max_depth;
        config.threads = run.threads;
        band = h0_band(parsed.lists, config, quantiles);
        md = base_metadata(parsed);
        md.metric = run.metric_value();
        md.seed = seed.value;
        md.permutations = fill_b;
    }
    write_output(run.output, emit_band(band, md, run.format_value()));
}

void cmd_pvalues(const InputFlags& in, const RunFlags& run, int band_b, int fill_b,
                 const std::vector<std::string>& replicates) {
    const ParsedListSet parsed = load_listset(in);
    const RandomSeed seed = run.seed_value();
    const AgreementMetric metric = run.metric_value();

    DepthCurve observed;
    if (parsed.lists.any_censored()) {
        MonteCarloConfig config{fill_b, seed, run.threads};
        observed = sra_censored(parsed.lists, metric, config, run.max_depth);
    } else {
        observed = sra_complete(parsed.lists, metric, run.max_depth);
    }

    std::vector<DepthCurve> nulls;
    if (!replicates.empty()) {
        nulls = load_replicates(replicates, in, run, fill_b, seed).curves;
    } else {
        H0Config config;
        config.band_permutations = band_b;
        config.fill_permutations = fill_b;
        config.seed = seed;
        config.metric = metric;
        config.max_depth = run.max_depth;
        config.threads = run.threads;
        nulls = h0_curves(parsed.lists, config);
    }

    CurveMetadata md = base_metadata(parsed);
    md.metric = metric;
    md.seed = seed.value;
    md.permutations = fill_b;
    md.band_permutations = replicates.empty() ? band_b : static_cast<int>(nulls.size());
    if (parsed.lists.any_censored()) {
        const int deepest = recommended_max_depth(parsed.lists);
        if (static_cast<int>(observed.depth_count()) > deepest) md.flagged_from = deepest;
    }
    write_output(run.output, emit_curve(pointwise_pvalues(observed, nulls), md,
                                        run.format_value()));
}

void cmd_plot(const std::vector<std::string>& curve_files, const std::string& band_file,
              const srank::PlotOptions& options, const std::string& output) {
    std::vector<srank::PlotCurve> curves;
    for (const auto& file : curve_files) {
        ParsedCurve parsed = parse_curve(read_input(file));
        curves.push_back({std::move(parsed.curve), parsed.metadata.flagged_from});
    }
    std::optional<ParsedBand> band;
    if (!band_file.empty()) band = parse_band(read_input(band_file));
    write_output(output,
                 srank::render_svg(curves, band ? &band->band : nullptr, options));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sequential rank agreement over ranked lists"};
    app.set_version_flag("--version", "srank 1.0.0");
    app.require_subcommand(1);

    InputFlags sra_in;
    RunFlags sra_run;
    int sra_b = 1000;
    auto* sra_cmd = app.add_subcommand(
        "sra", "Agreement curve of a list document (censored lists are Monte-Carlo completed)");
    add_input_flags(sra_cmd, sra_in, true);
    add_metric_flag(sra_cmd, sra_run);
    sra_cmd->add_option("--B", sra_b, "Fill-out permutations for censored input")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    add_run_flags(sra_cmd, sra_run, true);
    sra_cmd->callback([&] { cmd_sra(sra_in, sra_run, sra_b); });

    InputFlags ov_in;
    RunFlags ov_run;
    auto* ov_cmd = app.add_subcommand("overlap",
                                      "Average-overlap curve (complete lists only)");
    add_input_flags(ov_cmd, ov_in, true);
    add_run_flags(ov_cmd, ov_run, false);
    ov_cmd->callback([&] { cmd_overlap(ov_in, ov_run); });

    InputFlags nb_in;
    RunFlags nb_run;
    int nb_b = 400;
    int nb_fill = 50;
    std::vector<double> nb_quantiles;
    std::vector<std::string> nb_replicates;
    auto* nb_cmd = app.add_subcommand(
        "nullband",
        "Reference band: quantiles of agreement curves from independently permuted lists "
        "shaped like the input, or from supplied replicate curves");
    add_input_flags(nb_cmd, nb_in, false);
    add_metric_flag(nb_cmd, nb_run);
    nb_cmd->add_option("--B", nb_b, "Number of reference curves")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    nb_cmd->add_option("--fill-B", nb_fill,
                       "Fill-out permutations inside each reference curve when the shape is "
                       "censored")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    nb_cmd->add_option("--quantiles", nb_quantiles,
                       "Quantile levels, e.g. 0.025,0.5,0.975 (the default)")
        ->delimiter(',');
    nb_cmd->add_option("--replicates", nb_replicates,
                       "Replicate curve/list files or directories; the band is built from "
                       "them instead of permutations");
    add_run_flags(nb_cmd, nb_run, true);
    nb_cmd->callback([&] {
        cmd_nullband(nb_in, nb_run, nb_b, nb_fill,
                     nb_quantiles.empty() ? std::vector<double>{0.025, 0.5, 0.975}
                                          : nb_quantiles,
                     nb_replicates);
    });

    InputFlags pv_in;
    RunFlags pv_run;
    int pv_b = 400;
    int pv_fill = 50;
    std::vector<std::string> pv_replicates;
    auto* pv_cmd = app.add_subcommand(
        "pvalues",
        "Pointwise p-values of the input's agreement curve against reference curves");
    add_input_flags(pv_cmd, pv_in, true);
    add_metric_flag(pv_cmd, pv_run);
    pv_cmd->add_option("--B", pv_b, "Number of reference curves")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    pv_cmd->add_option("--fill-B", pv_fill,
                       "Fill-out permutations for every censored estimate (observed and "
                       "reference alike, so both use one estimator)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    pv_cmd->add_option("--replicates", pv_replicates,
                       "Reference curve/list files or directories replacing the permutation "
                       "null");
    add_run_flags(pv_cmd, pv_run, true);
    pv_cmd->callback([&] { cmd_pvalues(pv_in, pv_run, pv_b, pv_fill, pv_replicates); });

    std::vector<std::string> plot_files;
    std::string plot_band;
    std::string plot_output;
    srank::PlotOptions plot_options;
    auto* plot_cmd = app.add_subcommand("plot", "Render curve documents (plus an optional "
                                                "band) as a standalone SVG");
    plot_cmd->add_option("curves", plot_files, "Curve documents to overlay")->required();
    plot_cmd->add_option("--band", plot_band, "Band document drawn as shaded regions");
    plot_cmd->add_option("--title", plot_options.title, "Plot title");
    plot_cmd->add_option("--y-label", plot_options.y_label, "Value-axis label")
        ->capture_default_str();
    plot_cmd->add_option("--width", plot_options.width, "Image width in pixels")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    plot_cmd->add_option("--height", plot_options.height, "Image height in pixels")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    plot_cmd->add_option("--output,-o", plot_output, "Output file (default: standard output)");
    plot_cmd->callback([&] { cmd_plot(plot_files, plot_band, plot_options, plot_output); });

    try {
        app.parse(argc, argv);
        return 0;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const IoError& e) {
        std::cerr << "srank: " << e.what() << "\n";
        return 3;
    } catch (const ParseError& e) {
        std::cerr << "srank: " << e.what() << "\n";
        return 4;
    } catch (const Error& e) {
        std::cerr << "srank: " << e.what() << "\n";
        return 5;
    } catch (const std::exception& e) {
        std::cerr << "srank: " << e.what() << "\n";
        return 1;
    }
}
