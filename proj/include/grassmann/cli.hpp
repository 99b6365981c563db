#ifndef GRASSMANN_CLI_HPP
#define GRASSMANN_CLI_HPP

// Command-line front end. Exit codes: 0 success, 1 usage error, 2 data or
// validation error, 3 numerical failure. Results go to stdout as key=value
// lines; warnings and errors go to stderr.

#include <cstdio>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "grassmann/dataset.hpp"
#include "grassmann/error.hpp"
#include "grassmann/io.hpp"
#include "grassmann/mds.hpp"
#include "grassmann/pipeline.hpp"
#include "grassmann/svg_plot.hpp"

namespace grassmann {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitNumerical = 3;

namespace detail {

inline std::string fixed(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

}  // namespace detail

/// Summary table: one row per k, and for each of the three quantities
/// one column per metric present in the reports.
inline std::string format_report_table(const std::vector<ExperimentReport>& reports) {
    if (reports.empty()) throw ValidationError("report: no reports given");
    std::set<std::size_t> ks;
    std::set<MetricKind> metric_set;
    std::map<std::pair<std::size_t, MetricKind>, const ExperimentReport*> cell;
    for (const auto& r : reports) {
        const auto key = std::pair{r.config.k, r.config.metric};
        if (cell.count(key)) {
            throw ValidationError("report: two reports for k=" + std::to_string(r.config.k) + ", metric " +
                                  std::string(to_string(r.config.metric)));
        }
        cell[key] = &r;
        ks.insert(r.config.k);
        metric_set.insert(r.config.metric);
    }
    std::vector<MetricKind> metrics;
    for (MetricKind m : {MetricKind::Chordal, MetricKind::Geodesic, MetricKind::Pseudo})
        if (metric_set.count(m)) metrics.push_back(m);

    struct Group {
        std::string title;
        double ExperimentReport::*field;
        int digits;
    };
    const std::vector<Group> groups = {
        {"Number of negative eigenvalues of B", &ExperimentReport::mean_negative_count, 1},
        {"SSVM Accuracy (%)", &ExperimentReport::mean_accuracy, 2},
        {"Number of dimensions selected", &ExperimentReport::mean_selected_count, 1},
    };

    // Column 0 is k; then groups.size() * metrics.size() value columns.
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> sub = {"k"};
    for (std::size_t g = 0; g < groups.size(); ++g)
        for (MetricKind m : metrics) {
            std::string name(to_string(m));
            name[0] = static_cast<char>(name[0] - 'a' + 'A');
            sub.push_back(name);
        }
    for (std::size_t k : ks) {
        std::vector<std::string> row = {std::to_string(k)};
        for (const auto& g : groups)
            for (MetricKind m : metrics) {
                auto it = cell.find({k, m});
                row.push_back(it == cell.end() ? "-" : detail::fixed(it->second->*(g.field), g.digits));
            }
        rows.push_back(std::move(row));
    }

    std::vector<std::size_t> width(sub.size());
    for (std::size_t c = 0; c < sub.size(); ++c) {
        width[c] = sub[c].size();
        for (const auto& row : rows) width[c] = std::max(width[c], row[c].size());
    }
    const std::size_t nm = metrics.size();
    for (std::size_t g = 0; g < groups.size(); ++g) {
        std::size_t span = 0;
        for (std::size_t j = 0; j < nm; ++j) span += width[1 + g * nm + j] + (j ? 2 : 0);
        if (span < groups[g].title.size()) width[1 + g * nm + nm - 1] += groups[g].title.size() - span;
    }
    auto pad_left = [](const std::string& s, std::size_t w) { return std::string(w - s.size(), ' ') + s; };
    auto pad_right = [](const std::string& s, std::size_t w) { return s + std::string(w - s.size(), ' '); };
    auto render = [&](const std::vector<std::string>& cells) {
        std::string line = pad_left(cells[0], width[0]);
        for (std::size_t g = 0; g < groups.size(); ++g) {
            line += " | ";
            for (std::size_t j = 0; j < nm; ++j) {
                if (j) line += "  ";
                line += pad_left(cells[1 + g * nm + j], width[1 + g * nm + j]);
            }
        }
        return line + "\n";
    };

    std::string out;
    std::string head = std::string(width[0], ' ');
    for (std::size_t g = 0; g < groups.size(); ++g) {
        std::size_t span = 0;
        for (std::size_t j = 0; j < nm; ++j) span += width[1 + g * nm + j] + (j ? 2 : 0);
        head += " | " + pad_right(groups[g].title, span);
    }
    out += head + "\n";
    out += render(sub);
    out += std::string(head.size(), '-') + "\n";
    for (const auto& row : rows) out += render(row);
    std::set<std::string> class_sets;
    for (const auto& r : reports) class_sets.insert(detail::join_ints(r.classes));
    out += "classes: ";
    bool first = true;
    for (const auto& c : class_sets) {
        out += (first ? "" : " / ") + c;
        first = false;
    }
    out += "; values are means over runs\n";
    return out;
}

namespace detail {

inline std::filesystem::path resolve_from(const std::filesystem::path& base_dir, const std::string& p) {
    std::filesystem::path path(p);
    return path.is_absolute() || base_dir.empty() ? path : base_dir / path;
}

struct DatasetOptions {
    std::string config;
    std::string matrix;
    std::string labels;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> k;
    std::optional<std::string> metric;
    std::optional<std::size_t> points_per_class;
    std::optional<int> runs;
    unsigned threads = 0;
};

inline void add_dataset_options(CLI::App* cmd, DatasetOptions& o) {
    cmd->add_option("--matrix", o.matrix, "Bands x pixels matrix file (overrides the config)");
    cmd->add_option("--labels", o.labels, "Labels file (overrides the config)");
    cmd->add_option("--seed", o.seed, "Experiment seed (overrides the config)");
    cmd->add_option("--k", o.k, "Subspace dimension (overrides the config)");
    cmd->add_option("--metric", o.metric, "geodesic, chordal or pseudo (overrides the config)");
    cmd->add_option("--points-per-class", o.points_per_class, "Subspaces per class (overrides the config)");
    cmd->add_option("--threads", o.threads, "Distance-matrix worker threads (0 = hardware concurrency)");
}

// Config file (optional) plus command-line overrides. Paths inside the config
// resolve relative to the config file's directory.
inline ConfigFile resolve_config(const DatasetOptions& o) {
    ConfigFile cf;
    if (!o.config.empty()) {
        cf = read_config(o.config);
        const auto dir = std::filesystem::path(o.config).parent_path();
        if (!cf.matrix.empty()) cf.matrix = resolve_from(dir, cf.matrix).string();
        if (!cf.labels.empty()) cf.labels = resolve_from(dir, cf.labels).string();
    }
    if (!o.matrix.empty()) cf.matrix = o.matrix;
    if (!o.labels.empty()) cf.labels = o.labels;
    auto& e = cf.experiment;
    if (o.seed) e.seed = *o.seed;
    if (o.k) e.k = *o.k;
    if (o.metric) {
        const auto m = parse_metric(*o.metric);
        if (!m) throw ValidationError("--metric must be geodesic, chordal or pseudo, got '" + *o.metric + "'");
        e.metric = *m;
    }
    if (o.points_per_class) e.points_per_class = *o.points_per_class;
    if (o.runs) e.runs = *o.runs;
    e.threads = o.threads;
    if (cf.matrix.empty() || cf.labels.empty()) {
        throw ValidationError("no dataset: give matrix= and labels= in the config or --matrix and --labels");
    }
    return cf;
}

}  // namespace detail

/// Entry point shared by the executable and the tests.
inline int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Grassmann subspace embedding and sparse SVM classification of labeled spectra", "grassmann"};
    app.require_subcommand(1);

    // synth
    SyntheticSpec spec;
    std::string synth_out = "synthetic";
    bool dark_free = false;
    auto* synth = app.add_subcommand("synth", "Write a seeded synthetic labeled dataset");
    synth->add_option("--classes", spec.classes, "Number of classes")->capture_default_str();
    synth->add_option("--dim", spec.class_dim, "Per-class subspace dimension")->capture_default_str();
    synth->add_option("--bands", spec.bands, "Ambient dimension n")->capture_default_str();
    synth->add_option("--pixels", spec.pixels_per_class, "Pixels per class")->capture_default_str();
    synth->add_option("--sigma", spec.sigma, "Gaussian noise level")->capture_default_str();
    synth->add_option("--seed", spec.seed, "Random seed")->required();
    synth->add_option("--shared-dim", spec.shared_dim, "Dimension of a subspace shared by all classes")->capture_default_str();
    synth->add_option("--shared-scale", spec.shared_scale, "Coefficient scale of the shared subspace")->capture_default_str();
    synth->add_option("--offset", spec.coefficient_offset, "Coefficients are uniform on [offset, offset+1)")
        ->capture_default_str();
    synth->add_flag("--no-brightness", dark_free, "Disable per-pixel brightness scaling");
    synth->add_option("--out", synth_out, "Output prefix: <out>.matrix.txt and <out>.labels.txt")->capture_default_str();

    // experiment
    detail::DatasetOptions exp_opts;
    std::string exp_out;
    bool timing = false;
    auto* experiment = app.add_subcommand("experiment", "Run a configured experiment and write its report");
    experiment->add_option("--config", exp_opts.config, "Config file (key=value)")->required();
    experiment->add_option("--out", exp_out, "Report output path")->required();
    experiment->add_option("--runs", exp_opts.runs, "Number of runs (overrides the config)");
    experiment->add_flag("--timing", timing, "Include wall-clock seconds in the report");
    detail::add_dataset_options(experiment, exp_opts);

    // embed
    detail::DatasetOptions emb_opts;
    std::string emb_out;
    int emb_run = 1;
    auto* embed = app.add_subcommand("embed", "Embed one run's subspaces with classical MDS");
    embed->add_option("--config", emb_opts.config, "Config file (key=value)");
    embed->add_option("--run", emb_run, "Run index whose split and samples are embedded")->capture_default_str();
    embed->add_option("--out", emb_out, "Output prefix: <out>.embedding.txt and <out>.spectrum.txt")->required();
    detail::add_dataset_options(embed, emb_opts);

    // plot
    std::string plot_in, plot_out;
    std::vector<std::size_t> plot_dims = {1, 2};
    auto* plot = app.add_subcommand("plot", "Render an embedding file as an SVG scatter plot");
    plot->add_option("--embedding", plot_in, "Embedding file written by embed")->required();
    plot->add_option("--out", plot_out, "SVG output path")->required();
    plot->add_option("--dims", plot_dims, "Two 1-based embedding columns, e.g. 1,3")
        ->expected(2)
        ->delimiter(',')
        ->capture_default_str();

    // report
    std::vector<std::string> report_in;
    std::string report_out;
    auto* report = app.add_subcommand("report", "Print reports as a table with one row per k");
    report->add_option("reports", report_in, "Report files")->required();
    report->add_option("--out", report_out, "Also write the table to this file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        const auto* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
        err << sub->help();
        return kExitUsage;
    }

    try {
        if (synth->parsed()) {
            spec.vary_brightness = !dark_free;
            const SpectralDataset ds = make_synthetic(spec);
            const std::string mpath = synth_out + ".matrix.txt", lpath = synth_out + ".labels.txt";
            save_dataset(mpath, lpath, ds);
            out << "matrix=" << mpath << "\nlabels=" << lpath << "\nbands=" << ds.bands() << "\npixels=" << ds.pixels()
                << "\n";
        } else if (experiment->parsed()) {
            const ConfigFile cf = detail::resolve_config(exp_opts);
            const SpectralDataset ds = load_dataset(cf.matrix, cf.labels);
            const ExperimentReport r = run_experiment(ds, cf.experiment);
            for (const auto& w : r.warnings) err << "warning: " << w << "\n";
            write_report(exp_out, r, timing);
            out << "report=" << exp_out << "\nruns=" << r.runs.size()
                << "\nmean_accuracy=" << format_double(r.mean_accuracy)
                << "\nmean_negative_eigenvalues=" << format_double(r.mean_negative_count)
                << "\nmean_selected_dims=" << format_double(r.mean_selected_count) << "\n";
        } else if (embed->parsed()) {
            const ConfigFile cf = detail::resolve_config(emb_opts);
            if (emb_run < 1) throw ValidationError("--run must be at least 1");
            const SpectralDataset ds = prepare_dataset(load_dataset(cf.matrix, cf.labels), cf.experiment);
            const auto run_seed = cf.experiment.seed + static_cast<std::uint64_t>(emb_run);
            const EmbeddedRun er = embed_run(ds, cf.experiment, run_seed, emb_run);
            for (const auto& w : er.split.warnings) err << "warning: " << w << "\n";
            const auto iso = isometry_report(er.distances, er.embedding);
            const std::string epath = emb_out + ".embedding.txt", spath = emb_out + ".spectrum.txt";
            write_embedding(epath, er.embedding);
            write_spectrum(spath, er.embedding);
            out << "embedding=" << epath << "\nspectrum=" << spath << "\npoints=" << er.embedding.size()
                << "\nretained_dim=" << er.embedding.retained_dim
                << "\nnegative_eigenvalues=" << er.embedding.negative_count
                << "\nmax_distortion=" << format_double(iso.max_distortion)
                << "\nmean_distortion=" << format_double(iso.mean_distortion)
                << "\nnegative_mass_ratio=" << format_double(iso.negative_mass_ratio) << "\n";
        } else if (plot->parsed()) {
            const EmbeddingResult E = read_embedding(plot_in);
            emit_embedding_plot(E, plot_out, plot_dims[0], plot_dims[1]);
            out << "plot=" << plot_out << "\nmarkers=" << E.size() << "\n";
        } else if (report->parsed()) {
            std::vector<ExperimentReport> reports;
            for (const auto& p : report_in) reports.push_back(read_report(p));
            const std::string table = format_report_table(reports);
            if (!report_out.empty()) write_file_atomic(report_out, table);
            out << table;
        }
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const NumericalError& e) {
        err << "numerical error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    return kExitOk;
}

}  // namespace grassmann

#endif  // GRASSMANN_CLI_HPP
