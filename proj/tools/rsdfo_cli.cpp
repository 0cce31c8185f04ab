// Command-line front end: solve, bench, profile, sketch-check, problems.
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "rsdfo/bench.hpp"
#include "rsdfo/error.hpp"
#include "rsdfo/problems.hpp"
#include "rsdfo/sketch.hpp"
#include "rsdfo/solvers.hpp"

namespace fs = std::filesystem;
using namespace rsdfo;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ConfigError("cannot read '" + path + "'");
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

void write_text(const fs::path& file, const std::string& text) {
  if (file.has_parent_path()) fs::create_directories(file.parent_path());
  std::ofstream os(file, std::ios::binary);
  if (!os) throw ConfigError("cannot write '" + file.string() + "'");
  os << text;
}

int fail(const std::string& kind, const std::string& message) {
  nlohmann::json j{{"error", {{"kind", kind}, {"message", message}}}};
  std::cerr << j.dump() << "\n";
  return 1;
}

struct SolveArgs {
  std::string problem;
  Index n = 10;
  std::string solver = "rsdfoq";
  Index p = 0;
  Index q = 0;
  std::uint64_t seed = 0;
  double budget_mult = 100.0;
  double time_cap = 600.0;
  std::string config;
  std::string out;
  bool trace = false;
};

int do_solve(const SolveArgs& a) {
  const Problem problem = make_problem(a.problem, a.n);
  SolverConfig cfg;
  if (!a.config.empty()) cfg = config_from_json(read_file(a.config));
  if (a.p) cfg.p = a.p;
  if (a.q) cfg.q = a.q;
  cfg.seed = a.seed;
  cfg.max_time = a.time_cap;
  cfg.max_evals = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(a.budget_mult * static_cast<double>(a.n + 1)));
  const RunRecord rec = run_solver(a.solver, problem, cfg);

  const fs::path dir(a.out);
  fs::create_directories(dir);
  write_text(dir / "run.json", record_to_json(rec) + "\n");
  if (a.trace) {
    std::string lines;
    for (const auto& log : rec.iterations) lines += iteration_to_json(log) + "\n";
    write_text(dir / "trace.jsonl", lines);
  }
  nlohmann::json summary{{"problem", rec.problem},   {"n", rec.n},
                         {"solver", rec.solver},     {"seed", rec.seed},
                         {"f0", rec.f0},             {"f_best", rec.f_best},
                         {"evaluations", rec.evaluations},
                         {"iterations", rec.iterations.size()},
                         {"termination", std::string(to_string(rec.termination))},
                         {"wall_time", rec.wall_time}};
  if (!rec.message.empty()) summary["message"] = rec.message;
  std::cout << summary.dump() << "\n";
  return rec.termination == Termination::error ? 2 : 0;
}

struct BenchArgs {
  std::string suite;
  std::size_t seeds = 10;
  double budget_mult = 100.0;
  double time_cap = 600.0;
  std::uint64_t seed = 0;
  std::size_t jobs = 1;
  std::string out;
  std::string timing;
};

int do_bench(const BenchArgs& a) {
  const Suite suite = parse_suite(read_file(a.suite));
  CampaignOptions opt;
  opt.seeds = a.seeds;
  opt.budget_multiplier = a.budget_mult;
  opt.time_cap = a.time_cap;
  opt.master_seed = a.seed;
  opt.jobs = a.jobs;
  const auto records = run_campaign(suite, opt);
  write_store(a.out, records);
  if (!a.timing.empty()) write_timing(a.timing, records);
  std::size_t errors = 0;
  for (const auto& r : records) errors += r.termination == Termination::error;
  std::cout << nlohmann::json{{"runs", records.size()}, {"errors", errors}, {"out", a.out}}.dump() << "\n";
  return 0;
}

int do_profile(const std::string& in, double tau, const std::string& kind, const std::string& out) {
  const auto records = read_store(in);
  const auto results = solve_results(records, tau);
  const auto curves = kind == "data" ? data_profiles(results) : performance_profiles(results);
  write_text(out, profiles_to_csv(curves));
  return 0;
}

struct SketchArgs {
  std::string kind = "gaussian";
  Index n = 100;
  Index p = 20;
  double alpha = 0.6;
  std::size_t trials = 2000;
  Index rank = 2;
  std::uint64_t seed = 0;
  double p_max = 0.0;
  std::string out;
};

int do_sketch_check(const SketchArgs& a) {
  if (a.rank < 0 || a.rank > a.n) throw ParameterError("rank must lie in [0, n]");
  // Fixed random test objective: gradient and rank-r Hessian drawn from the seed.
  Rng rng(derive_seed(a.seed, 0));
  const Vector grad = standard_normal_vector(a.n, rng);
  Matrix hess = Matrix::Zero(a.n, a.n);
  for (Index j = 0; j < a.rank; ++j) {
    const Vector v = standard_normal_vector(a.n, rng);
    hess += (j % 2 == 0 ? 1.0 : -1.0) * v * v.transpose();
  }
  const SketchKind kind = parse_sketch_kind(a.kind);
  const double p_max = a.p_max > 0.0 ? a.p_max : default_p_max(a.n, a.p);
  const double rate = estimate_alignment_probability(kind, a.n, a.p, grad, hess, a.alpha, p_max, a.trials,
                                                     derive_seed(a.seed, 1));
  char buf[256];
  std::snprintf(buf, sizeof buf, "%s,%ld,%ld,%.17g,%.17g,%zu,%.17g\n", std::string(to_string(kind)).c_str(),
                static_cast<long>(a.n), static_cast<long>(a.p), a.alpha, p_max, a.trials, rate);
  const std::string csv = std::string("kind,n,p,alpha,p_max,trials,pass_rate\n") + buf;
  if (a.out.empty()) std::cout << csv;
  else write_text(a.out, csv);
  return 0;
}

int do_problems_list() {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& e : problem_catalog()) {
    arr.push_back({{"name", e.name}, {"n_min", e.n_min}, {"f_min", e.f_min}, {"x0", e.x0},
                   {"definition", e.description}});
  }
  std::cout << arr.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random-subspace derivative-free optimization"};
  app.require_subcommand(1);

  SolveArgs solve;
  auto* s = app.add_subcommand("solve", "Run one solver on one problem");
  s->add_option("--problem", solve.problem, "Catalog problem name")->required();
  s->add_option("--n", solve.n, "Dimension")->required();
  s->add_option("--solver", solve.solver, "rsdfo, rsdfo2 or rsdfoq")
      ->check(CLI::IsMember({"rsdfo", "rsdfo2", "rsdfoq"}));
  s->add_option("--p", solve.p, "Subspace dimension (default n)");
  s->add_option("--q", solve.q, "Interpolation points for rsdfoq (default 2p+1)");
  s->add_option("--seed", solve.seed, "Random seed");
  s->add_option("--budget-mult", solve.budget_mult, "Budget in units of n+1 evaluations");
  s->add_option("--time-cap", solve.time_cap, "Wall-clock cap in seconds");
  s->add_option("--config", solve.config, "Solver config JSON file");
  s->add_option("--out", solve.out, "Output directory")->required();
  s->add_flag("--trace", solve.trace, "Write per-iteration trace.jsonl");

  BenchArgs bench;
  auto* b = app.add_subcommand("bench", "Run a benchmark campaign");
  b->add_option("--suite", bench.suite, "Suite JSON file")->required();
  b->add_option("--seeds", bench.seeds, "Runs per (problem, solver)");
  b->add_option("--budget-mult", bench.budget_mult, "Budget in units of n+1 evaluations");
  b->add_option("--time-cap", bench.time_cap, "Per-run wall-clock cap in seconds");
  b->add_option("--seed", bench.seed, "Master seed");
  b->add_option("--jobs", bench.jobs, "Parallel runs");
  b->add_option("--timing", bench.timing, "Also write per-run wall times to this CSV");
  b->add_option("--out", bench.out, "Result store directory")->required();

  std::string prof_in, prof_kind = "data", prof_out;
  double prof_tau = 1e-1;
  auto* pr = app.add_subcommand("profile", "Data or performance profile from a result store");
  pr->add_option("--in", prof_in, "Result store directory")->required();
  pr->add_option("--tau", prof_tau, "Accuracy level");
  pr->add_option("--kind", prof_kind, "data or perf")->check(CLI::IsMember({"data", "perf"}));
  pr->add_option("--out", prof_out, "Output CSV")->required();

  SketchArgs sk;
  auto* sc = app.add_subcommand("sketch-check", "Empirical well-aligned frequency of a sketch ensemble");
  sc->add_option("--kind", sk.kind, "gaussian or orthonormal");
  sc->add_option("--n", sk.n, "Ambient dimension");
  sc->add_option("--p", sk.p, "Sketch dimension");
  sc->add_option("--alpha", sk.alpha, "Alignment level in [0, 1)");
  sc->add_option("--trials", sk.trials, "Number of sketches");
  sc->add_option("--rank", sk.rank, "Rank of the test Hessian");
  sc->add_option("--seed", sk.seed, "Random seed");
  sc->add_option("--p-max", sk.p_max, "Sketch norm bound (default 2 sqrt(n/p))");
  sc->add_option("--out", sk.out, "Output CSV (default stdout)");

  auto* pl = app.add_subcommand("problems", "Problem catalog");
  auto* pl_list = pl->add_subcommand("list", "List catalog problems");
  pl->require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail("usage", e.what());
  }

  try {
    if (s->parsed()) return do_solve(solve);
    if (b->parsed()) return do_bench(bench);
    if (pr->parsed()) return do_profile(prof_in, prof_tau, prof_kind, prof_out);
    if (sc->parsed()) return do_sketch_check(sk);
    if (pl_list->parsed()) return do_problems_list();
  } catch (const Error& e) {
    return fail(e.kind(), e.what());
  } catch (const std::exception& e) {
    return fail("internal", e.what());
  }
  return fail("usage", "no command");
}
