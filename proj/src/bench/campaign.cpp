#include <atomic>
#include <cmath>
#include <thread>

#include "json.hpp"
#include "rsdfo/bench.hpp"
#include "rsdfo/error.hpp"
#include "solvers/config_json.hpp"

namespace rsdfo {

Suite parse_suite(std::string_view json_text) {
  using nlohmann::json;
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid suite JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("suite must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key != "problems" && key != "solvers") throw ConfigError("unknown suite key '" + key + "'");
  }
  Suite suite;
  try {
    for (const auto& p : j.at("problems")) {
      for (const auto& [key, value] : p.items()) {
        if (key != "name" && key != "n") throw ConfigError("unknown problem key '" + key + "'");
      }
      suite.problems.push_back({p.at("name").get<std::string>(), p.at("n").get<Index>()});
    }
    for (const auto& s : j.at("solvers")) {
      SuiteSolver solver;
      for (const auto& [key, value] : s.items()) {
        if (key != "name" && key != "algorithm" && key != "config") {
          throw ConfigError("unknown solver key '" + key + "'");
        }
      }
      solver.algorithm = s.at("algorithm").get<std::string>();
      solver.name = s.value("name", solver.algorithm);
      if (s.contains("config")) solver.config = detail::config_from_json(s.at("config"), SolverConfig{});
      if (solver.algorithm != "rsdfo" && solver.algorithm != "rsdfo2" && solver.algorithm != "rsdfoq") {
        throw ConfigError("unknown algorithm '" + solver.algorithm + "'");
      }
      suite.solvers.push_back(std::move(solver));
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad suite: ") + e.what());
  }
  if (suite.problems.empty()) throw EmptyInputError("suite has no problems");
  if (suite.solvers.empty()) throw EmptyInputError("suite has no solvers");
  return suite;
}

std::vector<RunRecord> run_campaign(const Suite& suite, const CampaignOptions& options) {
  if (suite.problems.empty() || suite.solvers.empty()) throw EmptyInputError("campaign needs problems and solvers");
  if (options.seeds == 0) throw ParameterError("campaign needs at least one seed");
  if (!(options.budget_multiplier > 0.0)) throw ParameterError("budget multiplier must be positive");

  struct Task {
    std::size_t problem, solver, seed;
  };
  std::vector<Task> tasks;
  for (std::size_t p = 0; p < suite.problems.size(); ++p) {
    for (std::size_t s = 0; s < suite.solvers.size(); ++s) {
      for (std::size_t k = 0; k < options.seeds; ++k) tasks.push_back({p, s, k});
    }
  }
  std::vector<RunRecord> out(tasks.size());

  auto run_one = [&](std::size_t t) {
    const Task& task = tasks[t];
    const SuiteProblem& sp = suite.problems[task.problem];
    const SuiteSolver& ss = suite.solvers[task.solver];
    const std::uint64_t seed = derive_seed(options.master_seed, task.seed);
    RunRecord rec;
    try {
      const Problem problem = make_problem(sp.name, sp.n);
      SolverConfig cfg = ss.config;
      cfg.seed = seed;
      cfg.max_time = options.time_cap;
      cfg.max_evals = std::max<std::uint64_t>(
          1, static_cast<std::uint64_t>(std::floor(options.budget_multiplier * static_cast<double>(sp.n + 1))));
      rec = run_solver(ss.algorithm, problem, cfg);
      rec.iterations.clear();
      rec.x_best = Vector();
    } catch (const Error& e) {
      rec = RunRecord{};
      rec.problem = sp.name;
      rec.n = sp.n;
      rec.seed = seed;
      rec.termination = Termination::error;
      rec.message = e.what();
    }
    rec.solver = ss.name;
    out[t] = std::move(rec);
  };

  const std::size_t jobs = std::max<std::size_t>(1, std::min(options.jobs, tasks.size()));
  if (jobs == 1) {
    for (std::size_t t = 0; t < tasks.size(); ++t) run_one(t);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < jobs; ++w) {
    pool.emplace_back([&] {
      for (std::size_t t = next++; t < tasks.size(); t = next++) run_one(t);
    });
  }
  for (auto& th : pool) th.join();
  return out;
}

}  // namespace rsdfo
