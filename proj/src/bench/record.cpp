#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"
#include "rsdfo/bench.hpp"
#include "rsdfo/error.hpp"

namespace rsdfo {

namespace {

using nlohmann::json;

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

double number_or_inf(const json& j) {
  return j.is_null() ? std::numeric_limits<double>::infinity() : j.get<double>();
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string evals_field(const std::optional<std::uint64_t>& e) { return e ? std::to_string(*e) : "inf"; }

void write_file(const std::filesystem::path& file, const std::string& text) {
  std::ofstream os(file, std::ios::binary);
  if (!os) throw ConfigError("cannot write '" + file.string() + "'");
  os << text;
}

constexpr double kTaus[] = {1e-1, 1e-3};
constexpr const char* kTauNames[] = {"1e-1", "1e-3"};

}  // namespace

std::string record_to_json(const RunRecord& r) {
  json trace = json::array();
  for (const auto& tp : r.trace) trace.push_back(json::array({tp.eval, number_or_null(tp.best_f)}));
  json j;
  j["problem"] = r.problem;
  j["n"] = r.n;
  j["solver"] = r.solver;
  j["seed"] = r.seed;
  j["f0"] = number_or_null(r.f0);
  j["f_min"] = r.f_min;
  j["f_best"] = number_or_null(r.f_best);
  j["evaluations"] = r.evaluations;
  j["termination"] = std::string(to_string(r.termination));
  j["message"] = r.message;
  j["trace"] = std::move(trace);
  return j.dump();
}

RunRecord record_from_json(std::string_view line) {
  RunRecord r;
  try {
    const json j = json::parse(line);
    r.problem = j.at("problem").get<std::string>();
    r.n = j.at("n").get<Index>();
    r.solver = j.at("solver").get<std::string>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.f0 = number_or_inf(j.at("f0"));
    r.f_min = j.at("f_min").get<double>();
    r.f_best = number_or_inf(j.at("f_best"));
    r.evaluations = j.at("evaluations").get<std::uint64_t>();
    r.termination = parse_termination(j.at("termination").get<std::string>());
    r.message = j.value("message", "");
    for (const auto& tp : j.at("trace")) {
      r.trace.push_back({tp.at(0).get<std::uint64_t>(), number_or_inf(tp.at(1))});
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad run record: ") + e.what());
  }
  return r;
}

void write_store(const std::filesystem::path& dir, std::span<const RunRecord> records) {
  std::filesystem::create_directories(dir);
  std::string runs;
  for (const auto& r : records) runs += record_to_json(r) + "\n";
  write_file(dir / "runs.jsonl", runs);

  std::vector<std::vector<SolveResult>> per_tau;
  for (double tau : kTaus) per_tau.push_back(solve_results(records, tau));

  std::ostringstream summary;
  summary << "problem,n,solver,seed,f0,f_min,f_best,evaluations,termination";
  for (const char* name : kTauNames) summary << ",evals_tau_" << name;
  summary << '\n';
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    summary << r.problem << ',' << r.n << ',' << r.solver << ',' << r.seed << ',' << fmt(r.f0) << ','
            << fmt(r.f_min) << ',' << fmt(r.f_best) << ',' << r.evaluations << ',' << to_string(r.termination);
    for (const auto& res : per_tau) summary << ',' << evals_field(res[i].evals);
    summary << '\n';
  }
  write_file(dir / "summary.csv", summary.str());

  if (records.empty()) return;
  for (std::size_t t = 0; t < per_tau.size(); ++t) {
    const std::string tag = kTauNames[t];
    write_file(dir / ("data_profile_tau" + tag + ".csv"), profiles_to_csv(data_profiles(per_tau[t])));
    write_file(dir / ("perf_profile_tau" + tag + ".csv"), profiles_to_csv(performance_profiles(per_tau[t])));
  }
}

std::vector<RunRecord> read_store(const std::filesystem::path& dir) {
  std::ifstream is(dir / "runs.jsonl");
  if (!is) throw ConfigError("cannot read '" + (dir / "runs.jsonl").string() + "'");
  std::vector<RunRecord> out;
  std::string line;
  while (std::getline(is, line)) {
    if (!line.empty()) out.push_back(record_from_json(line));
  }
  return out;
}

void write_timing(const std::filesystem::path& file, std::span<const RunRecord> records) {
  std::ostringstream os;
  os << "problem,n,solver,seed,wall_time\n";
  for (const auto& r : records) {
    os << r.problem << ',' << r.n << ',' << r.solver << ',' << r.seed << ',' << fmt(r.wall_time) << '\n';
  }
  write_file(file, os.str());
}

}  // namespace rsdfo
