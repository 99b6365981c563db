#ifndef GRASSMANN_IO_HPP
#define GRASSMANN_IO_HPP

// Text file formats. Every writer prints doubles with 17 significant digits
// and replaces the target atomically (temp file, then rename).
//
//   matrix:    optional '#' comment lines, then "rows cols", then rows lines
//              of cols space-separated numbers.
//   labels:    one integer per line; "# name=<label>:<name>" comments name
//              classes. Label 0 marks unlabeled background.
//   key=value: config, report and model files. '#' lines and blank lines are
//              ignored; keys may appear at most once.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "grassmann/dataset.hpp"
#include "grassmann/error.hpp"
#include "grassmann/matrix.hpp"
#include "grassmann/mds.hpp"
#include "grassmann/pipeline.hpp"
#include "grassmann/ssvm.hpp"
#include "grassmann/subspace.hpp"

namespace grassmann {

inline std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline std::string where(const std::string& source, std::size_t line) {
    return source + ":" + std::to_string(line) + ": ";
}

inline std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
        const std::size_t b = i;
        while (i < s.size() && s[i] != ' ' && s[i] != '\t' && s[i] != '\r') ++i;
        if (i > b) out.push_back(s.substr(b, i - b));
    }
    return out;
}

inline std::vector<std::string_view> split_on(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    if (s.empty()) return out;
    std::size_t b = 0;
    for (;;) {
        const auto e = s.find(sep, b);
        out.push_back(trim(s.substr(b, e == std::string_view::npos ? std::string_view::npos : e - b)));
        if (e == std::string_view::npos) break;
        b = e + 1;
    }
    return out;
}

}  // namespace detail

/// Parses a finite double; throws ValidationError prefixed with `ctx`.
inline double parse_double(std::string_view tok, const std::string& ctx) {
    double v = 0.0;
    const auto* end = tok.data() + tok.size();
    const auto [ptr, ec] = std::from_chars(tok.data(), end, v);
    if (ec != std::errc() || ptr != end) throw ValidationError(ctx + "cannot parse '" + std::string(tok) + "' as a number");
    if (!std::isfinite(v)) throw ValidationError(ctx + "non-finite value '" + std::string(tok) + "'");
    return v;
}

template <typename Int>
Int parse_int(std::string_view tok, const std::string& ctx) {
    Int v{};
    const auto* end = tok.data() + tok.size();
    const auto [ptr, ec] = std::from_chars(tok.data(), end, v);
    if (ec != std::errc() || ptr != end) throw ValidationError(ctx + "cannot parse '" + std::string(tok) + "' as an integer");
    return v;
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open file: " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Writes `content` to a sibling temp file and renames it over `path`.
inline void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ValidationError("cannot write file: " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) throw ValidationError("write failed: " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw ValidationError("cannot replace " + path.string() + ": " + ec.message());
    }
}

// ---- matrix files ----

inline std::string serialize_matrix(const DenseMatrix& m, const std::vector<std::string>& comments = {}) {
    std::string out;
    for (const auto& c : comments) out += "# " + c + "\n";
    out += std::to_string(m.rows()) + " " + std::to_string(m.cols()) + "\n";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) out += ' ';
            out += format_double(m(i, j));
        }
        out += '\n';
    }
    return out;
}

inline DenseMatrix parse_matrix(std::string_view text, const std::string& source = "<matrix>") {
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    bool have_header = false;
    std::size_t rows = 0, cols = 0, r = 0;
    std::vector<double> values;
    while (std::getline(in, line)) {
        ++lineno;
        const auto t = detail::trim(line);
        if (!have_header) {
            if (t.empty() || t.front() == '#') continue;
            const auto toks = detail::split_ws(t);
            const auto ctx = detail::where(source, lineno);
            if (toks.size() != 2) throw ValidationError(ctx + "header must be 'rows cols'");
            rows = parse_int<std::size_t>(toks[0], ctx);
            cols = parse_int<std::size_t>(toks[1], ctx);
            if (rows == 0 || cols == 0) throw ValidationError(ctx + "matrix dimensions must be positive");
            values.reserve(rows * cols);
            have_header = true;
            continue;
        }
        if (t.empty() && r == rows) continue;
        const auto ctx = detail::where(source, lineno);
        if (r == rows) throw ValidationError(ctx + "more than the declared " + std::to_string(rows) + " rows");
        const auto toks = detail::split_ws(t);
        if (toks.size() != cols) {
            throw ValidationError(ctx + "expected " + std::to_string(cols) + " values, found " + std::to_string(toks.size()));
        }
        for (auto tok : toks) values.push_back(parse_double(tok, ctx));
        ++r;
    }
    if (!have_header) throw ValidationError(source + ": missing 'rows cols' header");
    if (r != rows) {
        throw ValidationError(source + ": header declares " + std::to_string(rows) + " rows, found " + std::to_string(r));
    }
    return DenseMatrix(rows, cols, std::move(values));
}

inline void write_matrix(const std::filesystem::path& path, const DenseMatrix& m,
                         const std::vector<std::string>& comments = {}) {
    write_file_atomic(path, serialize_matrix(m, comments));
}

inline DenseMatrix read_matrix(const std::filesystem::path& path) { return parse_matrix(read_file(path), path.string()); }

// ---- labels files ----

struct LabelsFile {
    std::vector<int> labels;
    std::map<int, std::string> names;

    bool operator==(const LabelsFile&) const = default;
};

inline std::string serialize_labels(const LabelsFile& lf) {
    std::string out;
    for (const auto& [label, name] : lf.names) out += "# name=" + std::to_string(label) + ":" + name + "\n";
    for (int l : lf.labels) out += std::to_string(l) + "\n";
    return out;
}

inline LabelsFile parse_labels(std::string_view text, const std::string& source = "<labels>") {
    LabelsFile lf;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto t = detail::trim(line);
        if (t.empty()) continue;
        const auto ctx = detail::where(source, lineno);
        if (t.front() == '#') {
            auto body = detail::trim(t.substr(1));
            if (body.rfind("name=", 0) != 0) continue;
            body = body.substr(5);
            const auto colon = body.find(':');
            if (colon == std::string_view::npos) throw ValidationError(ctx + "class name comment must be '# name=<label>:<name>'");
            lf.names[parse_int<int>(detail::trim(body.substr(0, colon)), ctx)] = std::string(detail::trim(body.substr(colon + 1)));
            continue;
        }
        lf.labels.push_back(parse_int<int>(t, ctx));
    }
    return lf;
}

inline void write_labels(const std::filesystem::path& path, const LabelsFile& lf) {
    write_file_atomic(path, serialize_labels(lf));
}

inline LabelsFile read_labels(const std::filesystem::path& path) { return parse_labels(read_file(path), path.string()); }

/// Pairs a bands x pixels matrix with its labels. Pixels labeled 0
/// (unlabeled background) are excluded.
inline SpectralDataset load_dataset(const std::filesystem::path& matrix_path, const std::filesystem::path& labels_path) {
    DenseMatrix m = read_matrix(matrix_path);
    LabelsFile lf = read_labels(labels_path);
    if (lf.labels.size() != m.cols()) {
        throw ValidationError(labels_path.string() + ": " + std::to_string(lf.labels.size()) + " labels for " +
                              std::to_string(m.cols()) + " pixels in " + matrix_path.string());
    }
    std::vector<std::size_t> keep;
    for (std::size_t j = 0; j < lf.labels.size(); ++j)
        if (lf.labels[j] != 0) keep.push_back(j);
    if (keep.empty()) throw ValidationError(labels_path.string() + ": every pixel is labeled 0 (background)");

    SpectralDataset ds;
    if (keep.size() == m.cols()) {
        ds.data = std::move(m);
        ds.labels = std::move(lf.labels);
    } else {
        ds.data = DenseMatrix(m.rows(), keep.size());
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t jj = 0; jj < keep.size(); ++jj) ds.data(i, jj) = m(i, keep[jj]);
        for (std::size_t j : keep) ds.labels.push_back(lf.labels[j]);
    }
    for (const auto& [label, name] : lf.names)
        if (label != 0) ds.class_names[label] = name;
    return ds;
}

inline void save_dataset(const std::filesystem::path& matrix_path, const std::filesystem::path& labels_path,
                         const SpectralDataset& ds) {
    write_matrix(matrix_path, ds.data, {"bands x pixels"});
    write_labels(labels_path, LabelsFile{ds.labels, ds.class_names});
}

// ---- key=value files ----

struct KeyValue {
    std::string key;
    std::string value;
    std::size_t line = 0;
};

inline std::vector<KeyValue> parse_key_values(std::string_view text, const std::string& source) {
    std::vector<KeyValue> out;
    std::map<std::string, std::size_t> seen;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto t = detail::trim(line);
        if (t.empty() || t.front() == '#') continue;
        const auto eq = t.find('=');
        const auto ctx = detail::where(source, lineno);
        if (eq == std::string_view::npos) throw ValidationError(ctx + "expected key=value");
        std::string key(detail::trim(t.substr(0, eq)));
        if (key.empty()) throw ValidationError(ctx + "empty key");
        if (auto it = seen.find(key); it != seen.end()) {
            throw ValidationError(ctx + "duplicate key '" + key + "' (first on line " + std::to_string(it->second) + ")");
        }
        seen[key] = lineno;
        out.push_back({std::move(key), std::string(detail::trim(t.substr(eq + 1))), lineno});
    }
    return out;
}

namespace detail {

inline std::string join_ints(const std::vector<int>& v, char sep = ',') {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += sep;
        out += std::to_string(v[i]);
    }
    return out;
}

inline std::string join_sizes(const std::vector<std::size_t>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ' ';
        out += std::to_string(v[i]);
    }
    return out;
}

inline std::string join_doubles(const std::vector<double>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ' ';
        out += format_double(v[i]);
    }
    return out;
}

inline std::vector<int> parse_int_list(std::string_view s, const std::string& ctx) {
    std::vector<int> out;
    for (auto tok : split_on(s, ',')) out.push_back(parse_int<int>(tok, ctx));
    return out;
}

inline std::vector<std::size_t> parse_size_list(std::string_view s, const std::string& ctx) {
    std::vector<std::size_t> out;
    for (auto tok : split_ws(s)) out.push_back(parse_int<std::size_t>(tok, ctx));
    return out;
}

inline std::vector<double> parse_double_list(std::string_view s, const std::string& ctx) {
    std::vector<double> out;
    for (auto tok : split_ws(s)) out.push_back(parse_double(tok, ctx));
    return out;
}

inline bool parse_bool(std::string_view s, const std::string& ctx) {
    if (s == "true" || s == "1") return true;
    if (s == "false" || s == "0") return false;
    throw ValidationError(ctx + "expected true or false, got '" + std::string(s) + "'");
}

inline const char* bool_text(bool b) { return b ? "true" : "false"; }

}  // namespace detail

// ---- config files ----

/// An experiment configuration plus the dataset it runs on. Empty paths
/// mean the dataset is supplied some other way.
struct ConfigFile {
    ExperimentConfig experiment;
    std::string matrix;
    std::string labels;

    bool operator==(const ConfigFile&) const = default;
};

inline std::string serialize_config_body(const ExperimentConfig& c, const std::string& prefix = "") {
    std::string out;
    auto put = [&](const char* key, const std::string& value) { out += prefix + key + "=" + value + "\n"; };
    put("k", std::to_string(c.k));
    put("points_per_class", std::to_string(c.points_per_class));
    put("metric", std::string(to_string(c.metric)));
    put("train_fraction", format_double(c.train_fraction));
    put("seed", std::to_string(c.seed));
    put("runs", std::to_string(c.runs));
    put("construction", std::string(to_string(c.construction)));
    put("centering", c.centering == CenteringPopulation::AllLabeled ? "all" : "train");
    put("classes", detail::join_ints(c.classes));
    put("eig_rel_tol", format_double(c.eig_rel_tol));
    put("lambda", format_double(c.ssvm.lambda));
    put("max_iters", std::to_string(c.ssvm.max_iters));
    put("step", format_double(c.ssvm.step));
    put("tol", format_double(c.ssvm.tol));
    put("tau", format_double(c.ssvm.tau));
    put("ssvm_seed", std::to_string(c.ssvm.seed));
    put("standardize", detail::bool_text(c.ssvm.standardize));
    put("solver", std::string(to_string(c.ssvm.solver)));
    return out;
}

/// Applies one config key; returns false when the key is unknown.
inline bool apply_config_key(ExperimentConfig& c, const std::string& key, std::string_view v, const std::string& ctx) {
    if (key == "k") {
        c.k = parse_int<std::size_t>(v, ctx);
    } else if (key == "points_per_class") {
        c.points_per_class = parse_int<std::size_t>(v, ctx);
    } else if (key == "metric") {
        const auto m = parse_metric(v);
        if (!m) throw ValidationError(ctx + "metric must be geodesic, chordal or pseudo, got '" + std::string(v) + "'");
        c.metric = *m;
    } else if (key == "train_fraction") {
        c.train_fraction = parse_double(v, ctx);
    } else if (key == "seed") {
        c.seed = parse_int<std::uint64_t>(v, ctx);
    } else if (key == "runs") {
        c.runs = parse_int<int>(v, ctx);
    } else if (key == "construction") {
        const auto m = parse_construction(v);
        if (!m) throw ValidationError(ctx + "construction must be svd or qr, got '" + std::string(v) + "'");
        c.construction = *m;
    } else if (key == "centering") {
        if (v == "all") {
            c.centering = CenteringPopulation::AllLabeled;
        } else if (v == "train") {
            c.centering = CenteringPopulation::TrainOnly;
        } else {
            throw ValidationError(ctx + "centering must be all or train, got '" + std::string(v) + "'");
        }
    } else if (key == "classes") {
        c.classes = detail::parse_int_list(v, ctx);
    } else if (key == "eig_rel_tol") {
        c.eig_rel_tol = parse_double(v, ctx);
    } else if (key == "lambda") {
        c.ssvm.lambda = parse_double(v, ctx);
    } else if (key == "max_iters") {
        c.ssvm.max_iters = parse_int<int>(v, ctx);
    } else if (key == "step") {
        c.ssvm.step = parse_double(v, ctx);
    } else if (key == "tol") {
        c.ssvm.tol = parse_double(v, ctx);
    } else if (key == "tau") {
        c.ssvm.tau = parse_double(v, ctx);
    } else if (key == "ssvm_seed") {
        c.ssvm.seed = parse_int<std::uint64_t>(v, ctx);
    } else if (key == "standardize") {
        c.ssvm.standardize = detail::parse_bool(v, ctx);
    } else if (key == "solver") {
        const auto s = parse_solver(v);
        if (!s) throw ValidationError(ctx + "solver must be simplex, admm or subgradient, got '" + std::string(v) + "'");
        c.ssvm.solver = *s;
    } else {
        return false;
    }
    return true;
}

inline std::string serialize_config(const ConfigFile& cf) {
    std::string out = "# grassmann experiment config\n";
    out += serialize_config_body(cf.experiment);
    if (!cf.matrix.empty()) out += "matrix=" + cf.matrix + "\n";
    if (!cf.labels.empty()) out += "labels=" + cf.labels + "\n";
    return out;
}

/// Missing keys keep the ExperimentConfig defaults; unknown keys are errors.
inline ConfigFile parse_config(std::string_view text, const std::string& source = "<config>") {
    ConfigFile cf;
    for (const auto& kv : parse_key_values(text, source)) {
        const auto ctx = detail::where(source, kv.line);
        if (kv.key == "matrix") {
            cf.matrix = kv.value;
        } else if (kv.key == "labels") {
            cf.labels = kv.value;
        } else if (!apply_config_key(cf.experiment, kv.key, kv.value, ctx)) {
            throw ValidationError(ctx + "unknown config key '" + kv.key + "'");
        }
    }
    return cf;
}

inline ConfigFile read_config(const std::filesystem::path& path) {
    std::ifstream probe(path);
    if (!probe) throw ValidationError("cannot open config file: " + path.string());
    return parse_config(read_file(path), path.string());
}

// ---- reports ----

/// Wall-clock seconds are written only when `include_timing` is set, so
/// reports of identical configurations are byte-identical by default.
inline std::string serialize_report(const ExperimentReport& r, bool include_timing = false) {
    std::string out = "# grassmann experiment report\n";
    out += serialize_config_body(r.config, "config.");
    out += "classes=" + detail::join_ints(r.classes) + "\n";
    out += "runs=" + std::to_string(r.runs.size()) + "\n";
    for (std::size_t i = 0; i < r.runs.size(); ++i) {
        const auto& run = r.runs[i];
        const std::string p = "run." + std::to_string(i + 1) + ".";
        out += p + "index=" + std::to_string(run.run) + "\n";
        out += p + "seed=" + std::to_string(run.seed) + "\n";
        out += p + "accuracy=" + format_double(run.accuracy) + "\n";
        out += p + "accuracy_selected=" + format_double(run.accuracy_selected) + "\n";
        out += p + "negative_eigenvalues=" + std::to_string(run.negative_count) + "\n";
        out += p + "selected_dims=" + std::to_string(run.selected_count) + "\n";
        out += p + "retained_dim=" + std::to_string(run.retained_dim) + "\n";
        std::string conf;
        for (std::size_t a = 0; a < run.confusion.size(); ++a) {
            if (a) conf += ';';
            conf += detail::join_sizes(run.confusion[a]);
        }
        out += p + "confusion=" + conf + "\n";
        if (include_timing) out += p + "seconds=" + format_double(run.seconds) + "\n";
    }
    out += "mean.accuracy=" + format_double(r.mean_accuracy) + "\n";
    out += "mean.accuracy_selected=" + format_double(r.mean_accuracy_selected) + "\n";
    out += "mean.negative_eigenvalues=" + format_double(r.mean_negative_count) + "\n";
    out += "mean.selected_dims=" + format_double(r.mean_selected_count) + "\n";
    out += "mean.retained_dim=" + format_double(r.mean_retained_dim) + "\n";
    if (include_timing) out += "mean.seconds=" + format_double(r.mean_seconds) + "\n";
    out += "warnings=" + std::to_string(r.warnings.size()) + "\n";
    for (std::size_t i = 0; i < r.warnings.size(); ++i) out += "warning." + std::to_string(i + 1) + "=" + r.warnings[i] + "\n";
    return out;
}

inline ExperimentReport parse_report(std::string_view text, const std::string& source = "<report>") {
    ExperimentReport r;
    std::map<std::string, KeyValue> kv;
    for (auto& e : parse_key_values(text, source)) {
        if (e.key.rfind("config.", 0) == 0) {
            const auto ctx = detail::where(source, e.line);
            if (!apply_config_key(r.config, e.key.substr(7), e.value, ctx)) {
                throw ValidationError(ctx + "unknown report key '" + e.key + "'");
            }
            continue;
        }
        std::string key = e.key;
        kv.emplace(std::move(key), std::move(e));
    }
    auto take = [&](const std::string& key, bool required = true) -> const KeyValue* {
        auto it = kv.find(key);
        if (it == kv.end()) {
            if (required) throw ValidationError(source + ": missing report key '" + key + "'");
            return nullptr;
        }
        return &it->second;
    };
    std::set<std::string> used;
    auto field = [&](const std::string& key, auto&& apply, bool required = true) {
        if (const auto* e = take(key, required)) {
            apply(e->value, detail::where(source, e->line));
            used.insert(key);
        }
    };

    field("classes", [&](const std::string& v, const std::string& ctx) { r.classes = detail::parse_int_list(v, ctx); });
    std::size_t nruns = 0;
    field("runs", [&](const std::string& v, const std::string& ctx) { nruns = parse_int<std::size_t>(v, ctx); });
    r.runs.resize(nruns);
    for (std::size_t i = 0; i < nruns; ++i) {
        auto& run = r.runs[i];
        const std::string p = "run." + std::to_string(i + 1) + ".";
        field(p + "index", [&](const std::string& v, const std::string& ctx) { run.run = parse_int<int>(v, ctx); });
        field(p + "seed", [&](const std::string& v, const std::string& ctx) { run.seed = parse_int<std::uint64_t>(v, ctx); });
        field(p + "accuracy", [&](const std::string& v, const std::string& ctx) { run.accuracy = parse_double(v, ctx); });
        field(p + "accuracy_selected",
              [&](const std::string& v, const std::string& ctx) { run.accuracy_selected = parse_double(v, ctx); });
        field(p + "negative_eigenvalues",
              [&](const std::string& v, const std::string& ctx) { run.negative_count = parse_int<std::size_t>(v, ctx); });
        field(p + "selected_dims",
              [&](const std::string& v, const std::string& ctx) { run.selected_count = parse_int<std::size_t>(v, ctx); });
        field(p + "retained_dim",
              [&](const std::string& v, const std::string& ctx) { run.retained_dim = parse_int<std::size_t>(v, ctx); });
        field(p + "confusion", [&](const std::string& v, const std::string& ctx) {
            for (auto row : detail::split_on(v, ';')) run.confusion.push_back(detail::parse_size_list(row, ctx));
        });
        field(p + "seconds", [&](const std::string& v, const std::string& ctx) { run.seconds = parse_double(v, ctx); }, false);
    }
    field("mean.accuracy", [&](const std::string& v, const std::string& ctx) { r.mean_accuracy = parse_double(v, ctx); });
    field("mean.accuracy_selected",
          [&](const std::string& v, const std::string& ctx) { r.mean_accuracy_selected = parse_double(v, ctx); });
    field("mean.negative_eigenvalues",
          [&](const std::string& v, const std::string& ctx) { r.mean_negative_count = parse_double(v, ctx); });
    field("mean.selected_dims",
          [&](const std::string& v, const std::string& ctx) { r.mean_selected_count = parse_double(v, ctx); });
    field("mean.retained_dim",
          [&](const std::string& v, const std::string& ctx) { r.mean_retained_dim = parse_double(v, ctx); });
    field("mean.seconds", [&](const std::string& v, const std::string& ctx) { r.mean_seconds = parse_double(v, ctx); }, false);
    std::size_t nwarn = 0;
    field("warnings", [&](const std::string& v, const std::string& ctx) { nwarn = parse_int<std::size_t>(v, ctx); });
    for (std::size_t i = 0; i < nwarn; ++i) {
        field("warning." + std::to_string(i + 1), [&](const std::string& v, const std::string&) { r.warnings.push_back(v); });
    }
    for (const auto& [key, e] : kv) {
        if (!used.count(key)) throw ValidationError(detail::where(source, e.line) + "unexpected report key '" + key + "'");
    }
    return r;
}

inline void write_report(const std::filesystem::path& path, const ExperimentReport& r, bool include_timing = false) {
    write_file_atomic(path, serialize_report(r, include_timing));
}

inline ExperimentReport read_report(const std::filesystem::path& path) {
    return parse_report(read_file(path), path.string());
}

// ---- models ----

inline std::string serialize_model_body(const SsvmModel& m, const std::string& prefix = "") {
    std::string out;
    auto put = [&](const char* key, const std::string& value) { out += prefix + key + "=" + value + "\n"; };
    put("weights", detail::join_doubles(m.weights));
    put("bias", format_double(m.bias));
    put("lambda", format_double(m.lambda));
    put("tau", format_double(m.tau));
    put("selected_dims", detail::join_sizes(m.selected_dims));
    put("feature_mean", detail::join_doubles(m.feature_mean));
    put("feature_scale", detail::join_doubles(m.feature_scale));
    put("objective", format_double(m.objective));
    put("iterations", std::to_string(m.iterations));
    return out;
}

/// Model files store 0-based selected dimension indices.
inline std::string serialize_model(const MulticlassModel& mc) {
    std::string out = "# grassmann sparse svm model\n";
    out += "classes=" + detail::join_ints(mc.classes) + "\n";
    for (std::size_t c = 0; c < mc.models.size(); ++c)
        out += serialize_model_body(mc.models[c], "model." + std::to_string(c + 1) + ".");
    return out;
}

inline MulticlassModel parse_model(std::string_view text, const std::string& source = "<model>") {
    MulticlassModel mc;
    bool have_classes = false;
    std::map<std::size_t, SsvmModel> models;
    for (const auto& e : parse_key_values(text, source)) {
        const auto ctx = detail::where(source, e.line);
        if (e.key == "classes") {
            mc.classes = detail::parse_int_list(e.value, ctx);
            have_classes = true;
            continue;
        }
        const auto dot = e.key.find('.', 6);
        if (e.key.rfind("model.", 0) != 0 || dot == std::string::npos) {
            throw ValidationError(ctx + "unknown model key '" + e.key + "'");
        }
        const auto idx = parse_int<std::size_t>(std::string_view(e.key).substr(6, dot - 6), ctx);
        if (idx == 0) throw ValidationError(ctx + "model indices start at 1");
        auto& m = models[idx - 1];
        const auto field = e.key.substr(dot + 1);
        const std::string_view v = e.value;
        if (field == "weights") {
            m.weights = detail::parse_double_list(v, ctx);
        } else if (field == "bias") {
            m.bias = parse_double(v, ctx);
        } else if (field == "lambda") {
            m.lambda = parse_double(v, ctx);
        } else if (field == "tau") {
            m.tau = parse_double(v, ctx);
        } else if (field == "selected_dims") {
            m.selected_dims = detail::parse_size_list(v, ctx);
        } else if (field == "feature_mean") {
            m.feature_mean = detail::parse_double_list(v, ctx);
        } else if (field == "feature_scale") {
            m.feature_scale = detail::parse_double_list(v, ctx);
        } else if (field == "objective") {
            m.objective = parse_double(v, ctx);
        } else if (field == "iterations") {
            m.iterations = parse_int<int>(v, ctx);
        } else {
            throw ValidationError(ctx + "unknown model key '" + e.key + "'");
        }
    }
    if (!have_classes) throw ValidationError(source + ": missing 'classes'");
    for (std::size_t c = 0; c < models.size(); ++c) {
        if (!models.count(c)) throw ValidationError(source + ": model " + std::to_string(c + 1) + " missing");
        mc.models.push_back(std::move(models[c]));
    }
    if (mc.models.size() != mc.classes.size()) {
        throw ValidationError(source + ": " + std::to_string(mc.models.size()) + " models for " +
                              std::to_string(mc.classes.size()) + " classes");
    }
    return mc;
}

// ---- embeddings ----

/// p x (d + 2) matrix: label, split (0 train, 1 test), then d coordinates.
inline DenseMatrix embedding_table(const EmbeddingResult& E) {
    DenseMatrix t(E.size(), E.retained_dim + 2);
    for (std::size_t i = 0; i < E.size(); ++i) {
        t(i, 0) = E.labels[i];
        t(i, 1) = E.splits[i] == Split::Train ? 0.0 : 1.0;
        for (std::size_t j = 0; j < E.retained_dim; ++j) t(i, j + 2) = E.coordinates(i, j);
    }
    return t;
}

inline void write_embedding(const std::filesystem::path& path, const EmbeddingResult& E) {
    write_matrix(path, embedding_table(E),
                 {"embedding: label split(0=train,1=test) coordinates (d=" + std::to_string(E.retained_dim) + ")"});
}

/// Spectrum file: p x 1 matrix of all eigenvalues of B, nonincreasing.
inline void write_spectrum(const std::filesystem::path& path, const EmbeddingResult& E) {
    DenseMatrix s(E.eigenvalues_all.size(), 1, E.eigenvalues_all);
    write_matrix(path, s, {"eigenvalues of B, nonincreasing; negative_count=" + std::to_string(E.negative_count)});
}

/// Reads an embedding table back; eigenvalues are left empty.
inline EmbeddingResult read_embedding(const std::filesystem::path& path) {
    const DenseMatrix t = read_matrix(path);
    if (t.cols() < 3) throw ValidationError(path.string() + ": embedding needs label, split and at least one coordinate");
    EmbeddingResult E;
    E.retained_dim = t.cols() - 2;
    E.coordinates = DenseMatrix(t.rows(), E.retained_dim);
    for (std::size_t i = 0; i < t.rows(); ++i) {
        const double label = t(i, 0);
        if (label != std::round(label)) throw ValidationError(path.string() + ": row " + std::to_string(i + 1) + " label is not an integer");
        E.labels.push_back(static_cast<int>(label));
        if (t(i, 1) != 0.0 && t(i, 1) != 1.0) {
            throw ValidationError(path.string() + ": row " + std::to_string(i + 1) + " split must be 0 or 1");
        }
        E.splits.push_back(t(i, 1) == 0.0 ? Split::Train : Split::Test);
        for (std::size_t j = 0; j < E.retained_dim; ++j) E.coordinates(i, j) = t(i, j + 2);
    }
    return E;
}

}  // namespace grassmann

#endif  // GRASSMANN_IO_HPP
