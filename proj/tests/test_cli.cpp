#include <gtest/gtest.h>

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include "qrefine/commands.hpp"
#include "qrefine/error.hpp"
#include "qrefine/plots.hpp"
#include "qrefine/problem.hpp"
#include "qrefine/qubo_json.hpp"
#include "qrefine/refine.hpp"
#include "qrefine/trace_csv.hpp"

namespace qrefine {
namespace {

namespace fs = std::filesystem;

class TempDir {
 public:
  TempDir() {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    path_ = fs::temp_directory_path() /
            ("qrefine_" + std::string(info->test_suite_name()) + "_" + info->name() + "_" + std::to_string(::getpid()));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  fs::path operator/(const std::string& name) const { return path_ / name; }

 private:
  fs::path path_;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun cli(std::vector<std::string> args) {
  args.insert(args.begin(), "qrefine");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string benchmark_problem() {
  const LinearSystem s = irrational_benchmark_system();
  const Vector t = irrational_benchmark_truth();
  auto f = [](double v) { return format_double(v); };
  return "{\"a\": [[" + f(s.a(0, 0)) + ", " + f(s.a(0, 1)) + "], [" + f(s.a(1, 0)) + ", " + f(s.a(1, 1)) +
         "]], \"b\": [" + f(s.b[0]) + ", " + f(s.b[1]) + "], \"x_true\": [" + f(t[0]) + ", " + f(t[1]) + "]}";
}

RefinementTrace benchmark_trace() {
  RefinementConfig c;
  c.m_max = 20;
  c.l_min = -40;
  return refine(irrational_benchmark_system(), c, irrational_benchmark_truth());
}

std::string parse_error(const std::string& text) {
  try {
    parse_problem(text);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParse);
    return e.what();
  }
  ADD_FAILURE() << "accepted: " << text;
  return {};
}

TEST(ParseProblem, Valid) {
  const ProblemDocument d = parse_problem(R"({"a": [[1, 0], [0, 1]], "b": [3, -2]})");
  EXPECT_EQ(d.system.a, Matrix::identity(2));
  EXPECT_EQ(d.system.b, (Vector{3.0, -2.0}));
  EXPECT_FALSE(d.x_true);
  EXPECT_EQ(*parse_problem(R"({"a": [[2]], "b": [1], "x_true": [0.5]})").x_true, (Vector{0.5}));
}

TEST(ParseProblem, ErrorsNameTheField) {
  EXPECT_NE(parse_error(R"({"a": [[1, 0], [0, "x"]], "b": [1, 2]})").find("a[1]"), std::string::npos);
  EXPECT_NE(parse_error(R"({"a": [[1, 0], [0]], "b": [1, 2]})").find("a[1]"), std::string::npos);
  EXPECT_NE(parse_error(R"({"a": [[1]], "b": [1, 2]})").find("b"), std::string::npos);
  EXPECT_NE(parse_error(R"({"a": [[1]], "b": [1], "c": 2})").find("c"), std::string::npos);
  EXPECT_NE(parse_error(R"({"b": [1]})").find("a"), std::string::npos);
  EXPECT_NE(parse_error(R"({"a": [[1]], "b": [1], "x_true": [1, 2]})").find("x_true"), std::string::npos);
  parse_error(R"({"a": [[1]], "b": [NaN]})");
  parse_error(R"({"a": [[1]], "b": [1e999]})");
  parse_error(R"({"a": [[1]], "b": [1]} trailing)");
  parse_error(R"({"a": [[1, 2]], "b": [1]})");
  parse_error("");
}

TEST(LoadProblem, MissingFile) {
  try {
    load_problem("/nonexistent/problem.json");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParse);
  }
}

TEST(FormatDouble, ShortestRoundTrip) {
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(-2.0), "-2");
  for (double v : {3216.990877275948, -86.98501851068944, 1e-300, 5e-324, 1.7976931348623157e308}) {
    EXPECT_EQ(std::strtod(format_double(v).c_str(), nullptr), v);
  }
}

TEST(TraceCsv, HeaderAndRoundTrip) {
  const RefinementTrace t = benchmark_trace();
  std::ostringstream out;
  write_trace_csv(out, t);
  const std::string text = out.str();
  EXPECT_EQ(text.substr(0, text.find('\n')),
            "ordinal,level,recenter_index,bits,qubo_energy,target_energy,residual_norm_sq,error_vs_truth,c0,c1");
  std::istringstream in(text);
  const auto back = read_trace_csv(in);
  ASSERT_EQ(back.size(), t.records.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    const IterationRecord& a = t.records[i];
    const IterationRecord& b = back[i];
    EXPECT_EQ(a.ordinal, b.ordinal);
    EXPECT_EQ(a.level, b.level);
    EXPECT_EQ(a.recenter_index, b.recenter_index);
    EXPECT_EQ(a.bits, b.bits);
    EXPECT_EQ(a.qubo_energy, b.qubo_energy);
    EXPECT_EQ(a.target_energy, b.target_energy);
    EXPECT_EQ(a.residual_norm_sq, b.residual_norm_sq);
    EXPECT_EQ(a.error_vs_truth, b.error_vs_truth);
    EXPECT_EQ(a.center_after, b.center_after);
  }
}

TEST(TraceCsv, EmptyErrorColumnWithoutTruth) {
  RefinementConfig c;
  c.m_max = 1;
  c.l_min = 0;
  const RefinementTrace t = refine(LinearSystem(Matrix::identity(1), {1.0}), c);
  std::ostringstream out;
  write_trace_csv(out, t);
  std::istringstream in(out.str());
  for (const auto& r : read_trace_csv(in)) EXPECT_FALSE(r.error_vs_truth);
  EXPECT_NE(out.str().find(",,"), std::string::npos);
}

TEST(TraceCsv, RejectsMalformed) {
  std::istringstream bad("ordinal,level\n1,2\n");
  EXPECT_THROW(read_trace_csv(bad), Error);
}

TEST(Plots, BenchmarkDecaySpansExpectedDecades) {
  const std::string svg = render_error_decay_svg(benchmark_trace());
  EXPECT_EQ(svg.rfind("<svg", 0), 0U);
  EXPECT_NE(svg.find("viewBox=\"0 0 800 600\""), std::string::npos);
  EXPECT_NE(svg.find("<polyline"), std::string::npos);
  EXPECT_NE(svg.find(">1e3<"), std::string::npos);
  EXPECT_NE(svg.find(">1e-13<"), std::string::npos);
  EXPECT_EQ(svg.find(">1e-14<"), std::string::npos);
  EXPECT_EQ(svg.find(">1e5<"), std::string::npos);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
}

TEST(Plots, SingleRecord) {
  RefinementTrace t;
  IterationRecord r;
  r.center_after = DyadicVector(2);
  r.error_vs_truth = 1.0;
  r.bits = BitVector(4, 0);
  t.records.push_back(r);
  t.initial_center = t.final_center = DyadicVector(2);
  const std::string svg = render_error_decay_svg(t);
  EXPECT_NE(svg.find("<circle"), std::string::npos);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
}

TEST(Plots, TrajectoryMarksLevelsAndTruth) {
  const std::string svg = render_trajectory_svg(benchmark_trace(), irrational_benchmark_truth());
  EXPECT_NE(svg.find("stroke-dasharray"), std::string::npos);
  EXPECT_NE(svg.find("<polygon"), std::string::npos);
}

TEST(Plots, ThreeVariablesGetDecayOnly) {
  TempDir dir;
  RefinementConfig c;
  c.m_max = 2;
  c.l_min = 0;
  const Vector truth{1.0, 2.0, 3.0};
  const RefinementTrace t = refine(LinearSystem(Matrix::identity(3), truth), c, truth);
  std::ostringstream notices;
  const auto written = emit_plots(t, truth, dir / "decay.svg", notices);
  ASSERT_EQ(written.size(), 1U);
  EXPECT_TRUE(fs::exists(dir / "decay.svg"));
  EXPECT_FALSE(fs::exists(dir / "decay_trajectory.svg"));
  EXPECT_NE(notices.str().find("trajectory"), std::string::npos);
  EXPECT_THROW(render_trajectory_svg(t, truth), Error);
}

TEST(Cli, SolveIdentity) {
  TempDir dir;
  write(dir / "p.json", R"({"a": [[1, 0], [0, 1]], "b": [3, -2]})");
  const CliRun r = cli({"solve", (dir / "p.json").string()});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("x[0] = 3\n"), std::string::npos);
  EXPECT_NE(r.out.find("x[1] = -2\n"), std::string::npos);
  EXPECT_NE(r.out.find("residual_norm_sq = 0\n"), std::string::npos);
}

TEST(Cli, SolveBenchmarkWritesArtifacts) {
  TempDir dir;
  write(dir / "p.json", benchmark_problem());
  const CliRun r = cli({"solve", (dir / "p.json").string(), "--m-max", "20", "--l-min", "-40", "--sampler", "exhaustive",
                     "--trace", (dir / "t.csv").string(), "--plot", (dir / "decay.svg").string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  std::smatch m;
  ASSERT_TRUE(std::regex_search(r.out, m, std::regex("x\\[0\\] = (\\S+)\n")));
  EXPECT_NEAR(std::stod(m[1]), irrational_benchmark_truth()[0], 5e-12);
  ASSERT_TRUE(std::regex_search(r.out, m, std::regex("x\\[1\\] = (\\S+)\n")));
  EXPECT_NEAR(std::stod(m[1]), irrational_benchmark_truth()[1], 5e-12);
  EXPECT_NE(r.out.find("error = "), std::string::npos);
  EXPECT_TRUE(fs::exists(dir / "decay.svg"));
  EXPECT_TRUE(fs::exists(dir / "decay_trajectory.svg"));

  const std::string first_csv = slurp(dir / "t.csv");
  const std::string first_svg = slurp(dir / "decay_trajectory.svg");
  ASSERT_EQ(cli({"solve", (dir / "p.json").string(), "--m-max", "20", "--l-min", "-40", "--trace",
                 (dir / "t.csv").string(), "--plot", (dir / "decay.svg").string()})
                .code,
            kExitOk);
  EXPECT_EQ(slurp(dir / "t.csv"), first_csv);
  EXPECT_EQ(slurp(dir / "decay_trajectory.svg"), first_svg);
}

TEST(Cli, InputErrorsExitTwo) {
  TempDir dir;
  write(dir / "bad.json", R"({"a": [[1, 0], [0, "x"]], "b": [1, 2]})");
  CliRun r = cli({"solve", (dir / "bad.json").string()});
  EXPECT_EQ(r.code, kExitInput);
  EXPECT_NE(r.err.find("a[1]"), std::string::npos);
  EXPECT_EQ(std::count(r.err.begin(), r.err.end(), '\n'), 1);

  EXPECT_EQ(cli({"solve", (dir / "missing.json").string()}).code, kExitInput);
  write(dir / "p.json", R"({"a": [[1]], "b": [1]})");
  EXPECT_EQ(cli({"solve", (dir / "p.json").string(), "--sampler", "qpu"}).code, kExitInput);
  EXPECT_EQ(cli({"solve", (dir / "p.json").string(), "--bits-per-sign", "0"}).code, kExitInput);
  EXPECT_EQ(cli({"frobnicate"}).code, kExitInput);
  EXPECT_EQ(cli({}).code, kExitInput);
}

TEST(Cli, SingularSystemExitsThree) {
  TempDir dir;
  write(dir / "p.json", R"({"a": [[1, 2], [2, 4]], "b": [1, 2]})");
  const CliRun r = cli({"solve", (dir / "p.json").string()});
  EXPECT_EQ(r.code, kExitSolver) << r.out << r.err;
}

TEST(Cli, HelpExitsZero) { EXPECT_EQ(cli({"--help"}).code, kExitOk); }

TEST(Cli, QuboDumpUnitSystem) {
  TempDir dir;
  write(dir / "p.json", R"({"a": [[1]], "b": [0]})");
  const CliRun r = cli({"qubo-dump", (dir / "p.json").string(), "--center", "0", "--level", "0"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.out, "{\"num_qubits\":2,\"linear\":{\"0\":1.0,\"1\":1.0},\"quadratic\":{\"0,1\":-2.0}}\n");
}

TEST(Cli, QuboDumpBenchmarkIsStable) {
  TempDir dir;
  write(dir / "p.json", benchmark_problem());
  for (const char* name : {"a.json", "b.json"}) {
    ASSERT_EQ(cli({"qubo-dump", (dir / "p.json").string(), "--center", "0,0", "--level", "20", "--bits-per-sign",
                   "1", "-o", (dir / name).string()})
                  .code,
              kExitOk);
  }
  const std::string a = slurp(dir / "a.json");
  EXPECT_EQ(a, slurp(dir / "b.json"));
  const QuboMatrix q = parse_qubo(a);
  EXPECT_EQ(q.n_qubits(), 4U);
  EXPECT_EQ(q.linear().size(), 4U);
  EXPECT_EQ(q.quadratic().size(), 6U);
}

TEST(Cli, QuboDumpRejectsBadCenter) {
  TempDir dir;
  write(dir / "p.json", R"({"a": [[1, 0], [0, 1]], "b": [0, 0]})");
  EXPECT_EQ(cli({"qubo-dump", (dir / "p.json").string(), "--center", "0.1,0", "--level", "0"}).code, kExitInput);
  EXPECT_EQ(cli({"qubo-dump", (dir / "p.json").string(), "--center", "0", "--level", "0"}).code, kExitInput);
}

TEST(Cli, ReproTable) {
  const CliRun r = cli({"repro-table1"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n') > 12, true);
  std::size_t passes = 0;
  for (std::size_t p = r.out.find("PASS"); p != std::string::npos; p = r.out.find("PASS", p + 1)) ++passes;
  EXPECT_EQ(passes, 12U);
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
}

TEST(Cli, ReproTableMultiBit) {
  const CliRun r = cli({"repro-table1", "--bits-per-sign", "3", "--level-step", "3"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  std::smatch m;
  ASSERT_TRUE(std::regex_search(r.out, m, std::regex("qubo_solves = (\\d+)")));
  EXPECT_LE(std::stoi(m[1]), 60);
}

}  // namespace
}  // namespace qrefine
