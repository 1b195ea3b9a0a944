#include "qrefine/commands.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "qrefine/error.hpp"
#include "qrefine/plots.hpp"
#include "qrefine/problem.hpp"
#include "qrefine/qubo_json.hpp"
#include "qrefine/refine.hpp"
#include "qrefine/trace_csv.hpp"

namespace qrefine {
namespace {

std::shared_ptr<spdlog::logger> logger() {
  static const std::shared_ptr<spdlog::logger> instance = [] {
    auto l = std::make_shared<spdlog::logger>("qrefine", std::make_shared<spdlog::sinks::stderr_sink_mt>());
    const char* env = std::getenv("QREFINE_LOG");
    const std::string level = env ? env : "error";
    l->set_level(level == "debug" ? spdlog::level::debug
                                  : (level == "info" ? spdlog::level::info : spdlog::level::err));
    return l;
  }();
  return instance;
}

struct RunFlags {
  std::optional<int> m_max;
  int l_min = -40;
  std::size_t bits_per_sign = 1;
  std::optional<std::size_t> level_step;
  std::string sampler = "exhaustive";
  std::size_t reads = 1000;
  std::size_t sweeps = 100;
  std::uint64_t seed = 0;
  bool eigenbasis = false;
  double tol = 0.0;
  std::size_t max_recenters = 1000;
  std::string trace_path;
  std::string plot_path;
};

void add_run_flags(CLI::App* cmd, RunFlags& f, bool with_range) {
  if (with_range) {
    cmd->add_option("--m-max", f.m_max, "Highest exponent of the first window (default: from ||b|| and sigma_min)");
    cmd->add_option("--l-min", f.l_min, "Lowest window exponent to visit")->capture_default_str();
    cmd->add_flag("--eigenbasis", f.eigenbasis, "Move along the eigenvectors of A^T A");
    cmd->add_option("--tol", f.tol, "Stop once ||Ax-b||^2 <= tol")->capture_default_str();
  }
  cmd->add_option("--bits-per-sign", f.bits_per_sign, "Bits per sign per variable (k)")->capture_default_str();
  cmd->add_option("--level-step", f.level_step, "Exponent decrement between windows (default: k)");
  cmd->add_option("--sampler", f.sampler, "QUBO sampler")
      ->check(CLI::IsMember({"exhaustive", "sa"}))
      ->capture_default_str();
  cmd->add_option("--reads", f.reads, "Annealing reads")->capture_default_str();
  cmd->add_option("--sweeps", f.sweeps, "Annealing sweeps per read")->capture_default_str();
  cmd->add_option("--seed", f.seed, "Annealing seed")->capture_default_str();
  cmd->add_option("--max-recenters", f.max_recenters, "Cap on moves per level")->capture_default_str();
  cmd->add_option("--trace", f.trace_path, "Write the per-solve trace as CSV");
  cmd->add_option("--plot", f.plot_path, "Write SVG plots (error decay; trajectory for n = 2)");
}

RefinementConfig to_config(const RunFlags& f) {
  RefinementConfig c;
  c.m_max = f.m_max;
  c.l_min = f.l_min;
  c.bits_per_sign = f.bits_per_sign;
  c.level_step = f.level_step;
  c.max_recenters_per_level = f.max_recenters;
  c.residual_tolerance = f.tol;
  c.use_eigenbasis = f.eigenbasis;
  c.sampler.kind = f.sampler == "sa" ? SamplerKind::kAnneal : SamplerKind::kExhaustive;
  c.sampler.anneal.reads = f.reads;
  c.sampler.anneal.sweeps = f.sweeps;
  c.sampler.anneal.seed = f.seed;
  return c;
}

std::string bits_tuple(const BitVector& bits) {
  std::string s = "(";
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (i) s += ',';
    s += bits[i] ? '1' : '0';
  }
  return s + ")";
}

std::string sci(double v, int digits = 3) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*e", digits - 1, v);
  return buf;
}

// Runs refinement with optional streaming CSV; shared by solve and repro.
RefinementTrace run_with_outputs(const LinearSystem& system, const RefinementConfig& config,
                                 const std::optional<Vector>& truth, const RunFlags& flags, std::ostream& err,
                                 const SolveObserver& extra = {}) {
  std::ofstream csv_file;
  std::unique_ptr<TraceCsvWriter> csv;
  if (!flags.trace_path.empty()) {
    csv_file.open(flags.trace_path, std::ios::binary);
    if (!csv_file) throw Error(ErrorCode::kInvalidArgument, flags.trace_path + ": cannot write");
    csv = std::make_unique<TraceCsvWriter>(csv_file, system.size());
  }
  auto log = logger();
  SolveObserver observer = [&](const IterationRecord& r, const QuboMatrix& q, const SampleSet& s) {
    log->debug("solve {} level {} recenter {} energy {} residual {}", r.ordinal, r.level, r.recenter_index,
               r.qubo_energy, r.residual_norm_sq);
    if (csv) csv->write(r);
    if (extra) extra(r, q, s);
  };
  RefinementTrace trace = refine(system, config, truth, observer);
  log->info("{} QUBO solves, terminated by {}", trace.total_qubo_solves, termination_name(trace.terminated_by));
  if (!flags.plot_path.empty()) emit_plots(trace, truth, flags.plot_path, err);
  return trace;
}

int cmd_solve(const std::string& problem_path, const RunFlags& flags, std::ostream& out, std::ostream& err) {
  ProblemDocument doc;
  RefinementConfig config;
  try {
    doc = load_problem(problem_path);
    config = to_config(flags);
    config.validate(doc.system.size());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
  try {
    const RefinementTrace trace = run_with_outputs(doc.system, config, doc.x_true, flags, err);
    for (std::size_t i = 0; i < trace.final_center.size(); ++i) {
      out << "x[" << i << "] = " << trace.final_center.component(i).to_significant(18) << '\n';
    }
    out << "residual_norm_sq = " << format_double(residual_norm_sq(doc.system, trace.final_center).to_double())
        << '\n';
    if (doc.x_true) out << "error = " << format_double(error_vs_truth(trace.final_center, *doc.x_true)) << '\n';
    out << "qubo_solves = " << trace.total_qubo_solves << '\n';
    out << "terminated_by = " << termination_name(trace.terminated_by) << '\n';
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitSolver;
  }
  return kExitOk;
}

int cmd_repro_table1(RunFlags flags, std::ostream& out, std::ostream& err) {
  RefinementConfig config;
  const LinearSystem system = irrational_benchmark_system();
  const Vector truth = irrational_benchmark_truth();
  try {
    flags.m_max = 20;
    flags.l_min = -40;
    config = to_config(flags);
    config.validate(system.size());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }

  struct FirstSolve {
    BitVector bits;
    std::size_t ground_reads = 0;
    std::size_t total_reads = 0;
  };
  std::map<int, FirstSolve> first_solves;
  SolveObserver table_observer = [&](const IterationRecord& r, const QuboMatrix& q, const SampleSet& samples) {
    if (r.recenter_index != 0) return;
    // Ground energy from exhaustive search, so annealing reads are scored
    // against the true minimum.
    const EncodingSpec spec(system.size(), r.level, r.level + static_cast<int>(config.bits_per_sign) - 1);
    const BitVector ground = config.sampler.kind == SamplerKind::kExhaustive ? samples.best().bits
                                                                               : sample_exhaustive(q).best().bits;
    first_solves[r.level] = {r.bits, occurrences_at(samples, spec, decode_offsets(ground, spec)),
                             samples.total_occurrences()};
  };

  RefinementTrace trace;
  try {
    trace = run_with_outputs(system, config, truth, flags, err, table_observer);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitSolver;
  }

  const int k = static_cast<int>(config.bits_per_sign);
  out << "# system [[sqrt2,-sqrt3],[sqrt5,sqrt7]] x = b, truth (1024 pi, -32 e); m from 20 to -40, k = " << k
      << ", step = " << config.step() << ", sampler = " << flags.sampler << "\n";
  out << "# bits: first solve of the window containing m; occurrences: reads that decode to the exhaustive ground point\n";
  out << "#   m  bits                          occurrences  error       bound       check\n";
  bool all_pass = true;
  const auto ends = level_end_indices(trace);
  for (int m = 15; m >= -40; m -= 5) {
    const IterationRecord* end = nullptr;
    for (std::size_t idx : ends) {
      const auto& r = trace.records[idx];
      if (r.level <= m && m <= r.level + k - 1) end = &r;
    }
    char line[256];
    if (end == nullptr) {
      std::snprintf(line, sizeof line, "%5d  %-28s  %-11s  %-10s  %-10s  %s\n", m, "-", "-", "-", "-", "not visited");
      out << line;
      continue;
    }
    const FirstSolve& fs = first_solves.at(end->level);
    const double bound = 2.0 * std::ldexp(1.0, m);
    const bool pass = *end->error_vs_truth <= bound;
    all_pass = all_pass && pass;
    const std::string occ = std::to_string(fs.ground_reads) + "/" + std::to_string(fs.total_reads);
    std::snprintf(line, sizeof line, "%5d  %-28s  %-11s  %-10s  %-10s  %s\n", m, bits_tuple(fs.bits).c_str(),
                  occ.c_str(), sci(*end->error_vs_truth).c_str(), sci(bound).c_str(), pass ? "PASS" : "FAIL");
    out << line;
  }
  const auto x = trace.final_center;
  out << "final x = (" << x.component(0).to_significant(18) << ", " << x.component(1).to_significant(18) << ")\n";
  out << "final error = " << sci(error_vs_truth(x, truth)) << "\n";
  out << "qubo_solves = " << trace.total_qubo_solves << "\n";
  if (!all_pass) {
    err << "error: a checkpoint exceeded error <= 2 * 2^m\n";
    return kExitAssertion;
  }
  return kExitOk;
}

int cmd_qubo_dump(const std::string& problem_path, const std::string& center_text, int level, std::size_t k,
                  const std::string& out_path, std::ostream& out, std::ostream& err) {
  std::string doc;
  try {
    const ProblemDocument problem = load_problem(problem_path);
    const std::size_t n = problem.system.size();
    std::vector<Dyadic> parts;
    if (!center_text.empty()) {
      std::istringstream in(center_text);
      std::string item;
      while (std::getline(in, item, ',')) parts.push_back(Dyadic::parse_decimal(item));
      if (parts.size() != n) {
        throw Error(ErrorCode::kDimensionMismatch,
                    "--center has " + std::to_string(parts.size()) + " components, expected " + std::to_string(n));
      }
    } else {
      parts.assign(n, Dyadic());
    }
    if (k < 1 || k > 30) throw Error(ErrorCode::kInvalidArgument, "--bits-per-sign must be in [1, 30]");
    const EncodingSpec spec(n, level, level + static_cast<int>(k) - 1);
    doc = dump_qubo(build_window(problem.system, DyadicVector::from_components(parts), spec));
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
  if (out_path.empty() || out_path == "-") {
    out << doc << '\n';
    return kExitOk;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) {
    err << "error: " << out_path << ": cannot write\n";
    return kExitInput;
  }
  f << doc << '\n';
  return kExitOk;
}

}  // namespace

LinearSystem irrational_benchmark_system() {
  const double s2 = std::sqrt(2.0), s3 = std::sqrt(3.0), s5 = std::sqrt(5.0), s7 = std::sqrt(7.0);
  const double pi = std::numbers::pi, e = std::numbers::e;
  return LinearSystem(Matrix{{s2, -s3}, {s5, s7}},
                      {1024.0 * s2 * pi + 32.0 * s3 * e, 1024.0 * s5 * pi - 32.0 * s7 * e});
}

Vector irrational_benchmark_truth() { return {1024.0 * std::numbers::pi, -32.0 * std::numbers::e}; }

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Iterative QUBO refinement for linear systems"};
  app.require_subcommand(1);

  RunFlags solve_flags;
  std::string problem_path;
  auto* solve = app.add_subcommand("solve", "Refine the solution of a problem file");
  solve->add_option("problem", problem_path, "Problem JSON {\"a\":[[...]],\"b\":[...],\"x_true\":[...]}")
      ->required();
  add_run_flags(solve, solve_flags, true);

  RunFlags repro_flags;
  auto* repro = app.add_subcommand("repro-table1", "Reproduce the irrational 2x2 experiment (m = 20 .. -40)");
  add_run_flags(repro, repro_flags, false);

  std::string dump_problem, center, dump_out;
  int level = 0;
  std::size_t dump_k = 1;
  auto* dump = app.add_subcommand("qubo-dump", "Write the window QUBO as interchange JSON");
  dump->add_option("problem", dump_problem, "Problem JSON")->required();
  dump->add_option("--center", center, "Comma-separated dyadic decimals (default: zeros)");
  dump->add_option("--level", level, "Window low exponent l")->capture_default_str();
  dump->add_option("--bits-per-sign", dump_k, "Bits per sign per variable (k)")->capture_default_str();
  dump->add_option("-o,--out", dump_out, "Output file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  if (*solve) return cmd_solve(problem_path, solve_flags, out, err);
  if (*repro) return cmd_repro_table1(repro_flags, out, err);
  return cmd_qubo_dump(dump_problem, center, level, dump_k, dump_out, out, err);
}

}  // namespace qrefine
