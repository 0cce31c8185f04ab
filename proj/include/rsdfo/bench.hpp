#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rsdfo/solvers.hpp"

namespace rsdfo {

/// Smallest evaluation index whose best value is at most
/// f_min + tau (f0 - f_min); nullopt stands for "never".
std::optional<std::uint64_t> evals_to_accuracy(const RunRecord& record, double f0, double f_min, double tau);

/// One (solver, instance) outcome at a fixed accuracy level. An instance is a
/// (problem, n, seed) triple.
struct SolveResult {
  std::string solver;
  std::string instance;
  Index n = 0;
  std::optional<std::uint64_t> evals;
};

std::vector<SolveResult> solve_results(std::span<const RunRecord> records, double tau);

struct ProfileCurve {
  std::vector<double> abscissae;
  std::vector<double> fractions;
};

/// Fraction of `results` with evals / (n + 1) <= beta at each beta.
ProfileCurve data_profile(std::span<const SolveResult> results, std::span<const double> budgets);
/// Sorted distinct finite evals / (n + 1) over `results`.
std::vector<double> data_profile_breakpoints(std::span<const SolveResult> results);

/// Per solver: fraction of its instances whose evals are within ratio r of
/// the smallest evals any solver needed on that instance. Abscissae are the
/// shared sorted distinct finite ratios.
std::map<std::string, ProfileCurve> performance_profiles(std::span<const SolveResult> results);
/// Per solver data profiles on the shared instance breakpoints.
std::map<std::string, ProfileCurve> data_profiles(std::span<const SolveResult> results);

/// CSV with header "abscissa,<solver>..." and one row per abscissa.
std::string profiles_to_csv(const std::map<std::string, ProfileCurve>& curves);

struct SuiteProblem {
  std::string name;
  Index n = 0;
};

struct SuiteSolver {
  std::string name;       // label used in outputs
  std::string algorithm;  // rsdfo, rsdfo2 or rsdfoq
  SolverConfig config;
};

struct Suite {
  std::vector<SuiteProblem> problems;
  std::vector<SuiteSolver> solvers;
};

/// {"problems": [{"name", "n"}], "solvers": [{"name", "algorithm", "config": {...}}]}
Suite parse_suite(std::string_view json_text);

struct CampaignOptions {
  std::size_t seeds = 10;
  double budget_multiplier = 100.0;
  double time_cap = 600.0;
  std::uint64_t master_seed = 0;
  std::size_t jobs = 1;
};

/// Runs every (problem, solver, seed) triple. Seed index i uses
/// derive_seed(master_seed, i) for every solver, so solvers share instances.
/// Output order is canonical (problem, solver, seed index) regardless of jobs.
/// A failing run is recorded with termination = error.
std::vector<RunRecord> run_campaign(const Suite& suite, const CampaignOptions& options);

/// JSON line without wall time (kept out so stores are reproducible).
std::string record_to_json(const RunRecord& record);
RunRecord record_from_json(std::string_view line);

/// Writes runs.jsonl, summary.csv and data/perf profile CSVs for
/// tau in {1e-1, 1e-3} into `dir`.
void write_store(const std::filesystem::path& dir, std::span<const RunRecord> records);
std::vector<RunRecord> read_store(const std::filesystem::path& dir);
/// problem,n,solver,seed,wall_time rows.
void write_timing(const std::filesystem::path& file, std::span<const RunRecord> records);

}  // namespace rsdfo
