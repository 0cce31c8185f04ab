#include <algorithm>
#include <cstdio>
#include <limits>
#include <set>
#include <sstream>

#include "rsdfo/bench.hpp"
#include "rsdfo/error.hpp"

namespace rsdfo {

std::optional<std::uint64_t> evals_to_accuracy(const RunRecord& record, double f0, double f_min, double tau) {
  if (!(f0 > f_min)) throw ParameterError("evals_to_accuracy: need f0 > f_min");
  if (!(tau > 0.0 && tau <= 1.0)) throw ParameterError("evals_to_accuracy: tau must lie in (0, 1]");
  const double threshold = f_min + tau * (f0 - f_min);
  for (const auto& tp : record.trace) {
    if (tp.best_f <= threshold) return tp.eval;
  }
  return std::nullopt;
}

std::vector<SolveResult> solve_results(std::span<const RunRecord> records, double tau) {
  std::vector<SolveResult> out;
  out.reserve(records.size());
  for (const auto& r : records) {
    SolveResult s;
    s.solver = r.solver;
    s.instance = r.problem + "|" + std::to_string(r.n) + "|" + std::to_string(r.seed);
    s.n = r.n;
    if (r.f0 > r.f_min) s.evals = evals_to_accuracy(r, r.f0, r.f_min, tau);
    else if (!r.trace.empty()) s.evals = r.trace.front().eval;  // started at the minimum
    out.push_back(std::move(s));
  }
  return out;
}

namespace {

double budget_units(const SolveResult& s) {
  return static_cast<double>(*s.evals) / static_cast<double>(s.n + 1);
}

}  // namespace

std::vector<double> data_profile_breakpoints(std::span<const SolveResult> results) {
  std::set<double> pts;
  for (const auto& s : results) {
    if (s.evals) pts.insert(budget_units(s));
  }
  return {pts.begin(), pts.end()};
}

ProfileCurve data_profile(std::span<const SolveResult> results, std::span<const double> budgets) {
  if (results.empty()) throw EmptyInputError("data_profile: no results");
  ProfileCurve c;
  c.abscissae.assign(budgets.begin(), budgets.end());
  std::sort(c.abscissae.begin(), c.abscissae.end());
  const double total = static_cast<double>(results.size());
  for (double beta : c.abscissae) {
    std::size_t solved = 0;
    for (const auto& s : results) {
      if (s.evals && budget_units(s) <= beta) ++solved;
    }
    c.fractions.push_back(static_cast<double>(solved) / total);
  }
  return c;
}

std::map<std::string, ProfileCurve> data_profiles(std::span<const SolveResult> results) {
  if (results.empty()) throw EmptyInputError("data_profiles: no results");
  std::vector<double> grid = data_profile_breakpoints(results);
  if (grid.empty()) grid.push_back(0.0);
  std::map<std::string, std::vector<SolveResult>> groups;
  for (const auto& s : results) groups[s.solver].push_back(s);
  std::map<std::string, ProfileCurve> out;
  for (const auto& [name, group] : groups) out[name] = data_profile(group, grid);
  return out;
}

std::map<std::string, ProfileCurve> performance_profiles(std::span<const SolveResult> results) {
  if (results.empty()) throw EmptyInputError("performance_profiles: no results");
  std::map<std::string, std::uint64_t> best;
  for (const auto& s : results) {
    if (!s.evals) continue;
    auto it = best.find(s.instance);
    if (it == best.end() || *s.evals < it->second) best[s.instance] = *s.evals;
  }
  auto ratio = [&](const SolveResult& s) {
    return static_cast<double>(*s.evals) / static_cast<double>(best.at(s.instance));
  };
  std::set<double> pts;
  for (const auto& s : results) {
    if (s.evals) pts.insert(ratio(s));
  }
  std::vector<double> grid(pts.begin(), pts.end());
  if (grid.empty()) grid.push_back(1.0);

  std::map<std::string, std::vector<const SolveResult*>> groups;
  for (const auto& s : results) groups[s.solver].push_back(&s);
  std::map<std::string, ProfileCurve> out;
  for (const auto& [name, group] : groups) {
    ProfileCurve c;
    c.abscissae = grid;
    const double total = static_cast<double>(group.size());
    for (double r : grid) {
      std::size_t within = 0;
      for (const SolveResult* s : group) {
        if (s->evals && ratio(*s) <= r) ++within;
      }
      c.fractions.push_back(static_cast<double>(within) / total);
    }
    out[name] = std::move(c);
  }
  return out;
}

std::string profiles_to_csv(const std::map<std::string, ProfileCurve>& curves) {
  std::ostringstream os;
  os << "abscissa";
  for (const auto& [name, c] : curves) os << ',' << name;
  os << '\n';
  if (curves.empty()) return os.str();
  const auto& grid = curves.begin()->second.abscissae;
  char buf[64];
  for (std::size_t i = 0; i < grid.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", grid[i]);
    os << buf;
    for (const auto& [name, c] : curves) {
      std::snprintf(buf, sizeof buf, "%.17g", c.fractions.at(i));
      os << ',' << buf;
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace rsdfo
