#include <gtest/gtest.h>

#include <sstream>
#include <string>
#include <vector>

#include "grassmann/cli.hpp"
#include "test_support.hpp"

using namespace grassmann;
using grassmann::testing::TempDir;

namespace {

struct CliResult {
    int code = -1;
    std::string out;
    std::string err;
};

CliResult run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "grassmann");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    CliResult r;
    r.code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

// Small two-class dataset plus a config next to it that refers to the data
// by relative path.
void write_fixture(const TempDir& dir) {
    const auto synth = run_cli({"synth", "--classes", "2", "--dim", "5", "--bands", "20", "--pixels", "60", "--sigma",
                                "0.01", "--seed", "7", "--out", (dir / "data").string()});
    ASSERT_EQ(synth.code, 0) << synth.err;
    write_file_atomic(dir / "c.cfg", "k=5\npoints_per_class=20\nruns=2\nseed=3\nmatrix=data.matrix.txt\nlabels=data.labels.txt\n");
}

}  // namespace

TEST(Cli, SynthIsRerunnableBitIdentically) {
    TempDir dir("cli_synth");
    const std::vector<std::string> base = {"synth",   "--classes", "2",    "--dim",  "5",    "--bands", "20",
                                           "--pixels", "200",      "--sigma", "0.01", "--seed", "7",      "--out"};
    auto a = base, b = base;
    a.push_back((dir / "a").string());
    b.push_back((dir / "b").string());
    const auto ra = run_cli(a), rb = run_cli(b);
    ASSERT_EQ(ra.code, 0) << ra.err;
    ASSERT_EQ(rb.code, 0) << rb.err;
    EXPECT_NE(ra.out.find("pixels=400"), std::string::npos);
    EXPECT_EQ(read_file(dir / "a.matrix.txt"), read_file(dir / "b.matrix.txt"));
    EXPECT_EQ(read_file(dir / "a.labels.txt"), read_file(dir / "b.labels.txt"));
    const auto ds = load_dataset(dir / "a.matrix.txt", dir / "a.labels.txt");
    EXPECT_EQ(ds.bands(), 20u);
    EXPECT_EQ(ds.pixels(), 400u);
}

TEST(Cli, ExperimentWritesReport) {
    TempDir dir("cli_experiment");
    write_fixture(dir);
    const auto r = run_cli({"experiment", "--config", (dir / "c.cfg").string(), "--out", (dir / "r.txt").string()});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("runs=2\n"), std::string::npos);
    EXPECT_NE(r.out.find("mean_accuracy=100\n"), std::string::npos) << r.out;
    const auto report = read_report(dir / "r.txt");
    EXPECT_EQ(report.runs.size(), 2u);
    EXPECT_EQ(report.config.k, 5u);
    EXPECT_EQ(report.runs[0].seed, 4u);
}

TEST(Cli, ExperimentOverridesAndTiming) {
    TempDir dir("cli_override");
    write_fixture(dir);
    const auto r = run_cli({"experiment", "--config", (dir / "c.cfg").string(), "--out", (dir / "r.txt").string(),
                            "--runs", "1", "--k", "2", "--metric", "geodesic", "--seed", "9", "--timing"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto report = read_report(dir / "r.txt");
    EXPECT_EQ(report.runs.size(), 1u);
    EXPECT_EQ(report.config.k, 2u);
    EXPECT_EQ(report.config.metric, MetricKind::Geodesic);
    EXPECT_EQ(report.runs[0].seed, 10u);
    EXPECT_NE(read_file(dir / "r.txt").find("run.1.seconds="), std::string::npos);
}

TEST(Cli, MissingConfigExitsTwoNamingThePath) {
    TempDir dir("cli_missing");
    const auto path = (dir / "nope.cfg").string();
    const auto r = run_cli({"experiment", "--config", path, "--out", (dir / "r.txt").string()});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find(path), std::string::npos) << r.err;
    EXPECT_TRUE(r.out.empty());
}

TEST(Cli, UsageErrorsExitOneWithUsageOnStderr) {
    const auto unknown = run_cli({"experiment", "--config", "c.cfg", "--out", "r.txt", "--frobnicate"});
    EXPECT_EQ(unknown.code, 1);
    EXPECT_NE(unknown.err.find("--frobnicate"), std::string::npos) << unknown.err;
    EXPECT_NE(unknown.err.find("Usage"), std::string::npos) << unknown.err;
    EXPECT_TRUE(unknown.out.empty());

    EXPECT_EQ(run_cli({}).code, 1);
    EXPECT_EQ(run_cli({"transmogrify"}).code, 1);
    EXPECT_EQ(run_cli({"synth"}).code, 1);  // --seed is required: no hidden entropy
    const auto help = run_cli({"--help"});
    EXPECT_EQ(help.code, 0);
    EXPECT_NE(help.out.find("experiment"), std::string::npos);
}

TEST(Cli, BadDataExitsTwo) {
    TempDir dir("cli_bad");
    write_file_atomic(dir / "m.txt", "2 2\n1 NaN\n3 4\n");
    write_file_atomic(dir / "l.txt", "1\n2\n");
    const auto r = run_cli({"experiment", "--config", (dir / "c.cfg").string(), "--out", (dir / "r.txt").string()});
    EXPECT_EQ(r.code, 2);
    write_file_atomic(dir / "c.cfg", "matrix=m.txt\nlabels=l.txt\n");
    const auto nan = run_cli({"experiment", "--config", (dir / "c.cfg").string(), "--out", (dir / "r.txt").string()});
    EXPECT_EQ(nan.code, 2);
    EXPECT_NE(nan.err.find("m.txt:2"), std::string::npos) << nan.err;
}

TEST(Cli, NumericalFailureExitsThree) {
    TempDir dir("cli_numerical");
    // Every pixel of class 1 is the same spectrum, so k=2 can never be full rank.
    std::string m = "3 20\n";
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 20; ++j) m += (j ? " " : "") + std::to_string(j < 10 ? i + 1 : (i * 7 + j * 3) % 11);
        m += "\n";
    }
    std::string l;
    for (int j = 0; j < 20; ++j) l += j < 10 ? "1\n" : "2\n";
    write_file_atomic(dir / "m.txt", m);
    write_file_atomic(dir / "l.txt", l);
    write_file_atomic(dir / "c.cfg", "k=2\npoints_per_class=4\nruns=1\ncentering=train\nmatrix=m.txt\nlabels=l.txt\n");
    const auto r = run_cli({"experiment", "--config", (dir / "c.cfg").string(), "--out", (dir / "r.txt").string()});
    EXPECT_EQ(r.code, 3) << r.err;
    EXPECT_NE(r.err.find("stage sample"), std::string::npos) << r.err;
}

TEST(Cli, EmbedThenPlot) {
    TempDir dir("cli_embed");
    write_fixture(dir);
    const auto prefix = (dir / "run1").string();
    const auto e = run_cli({"embed", "--config", (dir / "c.cfg").string(), "--out", prefix});
    ASSERT_EQ(e.code, 0) << e.err;
    EXPECT_NE(e.out.find("points=40\n"), std::string::npos) << e.out;
    EXPECT_NE(e.out.find("negative_mass_ratio="), std::string::npos);

    const auto p = run_cli({"plot", "--embedding", prefix + ".embedding.txt", "--out", (dir / "a.svg").string()});
    ASSERT_EQ(p.code, 0) << p.err;
    EXPECT_NE(p.out.find("markers=40"), std::string::npos);
    EXPECT_NE(read_file(dir / "a.svg").find("<svg"), std::string::npos);

    const auto p13 =
        run_cli({"plot", "--embedding", prefix + ".embedding.txt", "--out", (dir / "b.svg").string(), "--dims", "1,3"});
    EXPECT_EQ(p13.code, 0) << p13.err;
    const auto bad =
        run_cli({"plot", "--embedding", prefix + ".embedding.txt", "--out", (dir / "c.svg").string(), "--dims", "1,999"});
    EXPECT_EQ(bad.code, 2);
    EXPECT_NE(bad.err.find("out of range"), std::string::npos);
}

TEST(Cli, ReportTableUsesTableVocabulary) {
    TempDir dir("cli_report");
    write_fixture(dir);
    std::vector<std::string> files;
    for (const char* metric : {"chordal", "geodesic", "pseudo"}) {
        for (const char* k : {"1", "5"}) {
            const auto path = (dir / (std::string(metric) + k + ".txt")).string();
            const auto r = run_cli({"experiment", "--config", (dir / "c.cfg").string(), "--out", path, "--metric", metric,
                                    "--k", k, "--runs", "1"});
            ASSERT_EQ(r.code, 0) << r.err;
            files.push_back(path);
        }
    }
    std::vector<std::string> args = {"report"};
    args.insert(args.end(), files.begin(), files.end());
    args.push_back("--out");
    args.push_back((dir / "table.txt").string());
    const auto t = run_cli(args);
    ASSERT_EQ(t.code, 0) << t.err;
    for (const char* h : {"Number of negative eigenvalues of B", "SSVM Accuracy (%)", "Number of dimensions selected",
                          "Chordal", "Geodesic", "Pseudo"})
        EXPECT_NE(t.out.find(h), std::string::npos) << h;
    EXPECT_EQ(read_file(dir / "table.txt"), t.out);
    // Header, sub-header, rule, one row per k, footer.
    EXPECT_EQ(std::count(t.out.begin(), t.out.end(), '\n'), 6);

    const auto dup = run_cli({"report", files[0], files[0]});
    EXPECT_EQ(dup.code, 2);
}
