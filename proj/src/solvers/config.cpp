#include <cmath>
#include <limits>

#include "rsdfo/error.hpp"
#include "solvers/config_json.hpp"

namespace rsdfo {

SolverConfig resolve_config(const SolverConfig& config, const Vector& x0) {
  SolverConfig c = config;
  const Index n = x0.size();
  if (c.p == 0) c.p = n;
  if (c.q == 0) c.q = 2 * c.p + 1;
  if (c.delta0 == 0.0) c.delta0 = 0.1 * std::max(x0.lpNorm<Eigen::Infinity>(), 1.0);
  if (c.max_evals == 0) c.max_evals = 100 * static_cast<std::uint64_t>(n + 1);
  return c;
}

void validate_config(const SolverConfig& c, Index n, bool needs_q) {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw ParameterError(what);
  };
  require(c.p >= 1 && c.p <= n, "p must satisfy 1 <= p <= n");
  if (needs_q) {
    require(c.q >= c.p + 2 && c.q <= (c.p + 1) * (c.p + 2) / 2, "q must satisfy p+2 <= q <= (p+1)(p+2)/2");
  }
  require(c.delta0 > 0.0 && std::isfinite(c.delta0), "delta0 must be positive");
  require(c.delta0 <= c.delta_max, "delta0 must not exceed delta_max");
  require(c.gamma_dec > 0.0 && c.gamma_dec < 1.0, "gamma_dec must lie in (0, 1)");
  require(c.gamma_inc > 1.0 && c.gamma_inc <= c.gamma_inc_bar, "need 1 < gamma_inc <= gamma_inc_bar");
  require(c.gamma_s > 0.0 && c.gamma_s < 1.0, "gamma_s must lie in (0, 1)");
  require(c.alpha1 > 0.0 && c.alpha1 <= c.alpha2 && c.alpha2 < 1.0, "need 0 < alpha1 <= alpha2 < 1");
  require(c.eta > 0.0 && c.eta < 1.0, "eta must lie in (0, 1)");
  require(c.eta1 > 0.0 && c.eta1 <= c.eta2 && c.eta2 < 1.0, "need 0 < eta1 <= eta2 < 1");
  require(c.mu > 0.0, "mu must be positive");
  require(c.n_rho >= 1, "n_rho must be at least 1");
  require(c.rho_end >= 0.0, "rho_end must be nonnegative");
  require(c.max_evals >= 1, "max_evals must be positive");
  if (c.sketch_kind == SketchKind::identity) require(c.p == n, "identity sketch requires p = n");
}

namespace detail {

namespace {

template <class T>
void read(const nlohmann::json& j, const char* key, T& out) {
  try {
    out = j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad value for '") + key + "': " + e.what());
  }
}

}  // namespace

SolverConfig config_from_json(const nlohmann::json& j, const SolverConfig& base) {
  if (!j.is_object()) throw ConfigError("solver config must be a JSON object");
  SolverConfig c = base;
  for (const auto& [key, value] : j.items()) {
    const char* k = key.c_str();
    if (key == "p") read(j, k, c.p);
    else if (key == "q") read(j, k, c.q);
    else if (key == "delta0") read(j, k, c.delta0);
    else if (key == "delta_max") read(j, k, c.delta_max);
    else if (key == "gamma_dec") read(j, k, c.gamma_dec);
    else if (key == "gamma_inc") read(j, k, c.gamma_inc);
    else if (key == "gamma_inc_bar") read(j, k, c.gamma_inc_bar);
    else if (key == "gamma_s") read(j, k, c.gamma_s);
    else if (key == "alpha1") read(j, k, c.alpha1);
    else if (key == "alpha2") read(j, k, c.alpha2);
    else if (key == "eta") read(j, k, c.eta);
    else if (key == "eta1") read(j, k, c.eta1);
    else if (key == "eta2") read(j, k, c.eta2);
    else if (key == "mu") read(j, k, c.mu);
    else if (key == "n_rho") read(j, k, c.n_rho);
    else if (key == "rho_end") read(j, k, c.rho_end);
    else if (key == "max_evals") read(j, k, c.max_evals);
    else if (key == "max_time") read(j, k, c.max_time);
    else if (key == "seed") read(j, k, c.seed);
    else if (key == "sketch_kind") {
      if (!value.is_string()) throw ConfigError("sketch_kind must be a string");
      try {
        c.sketch_kind = parse_sketch_kind(value.get<std::string>());
      } catch (const Error& e) {
        throw ConfigError(e.what());
      }
    } else {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }
  return c;
}

nlohmann::json config_to_json(const SolverConfig& c) {
  return nlohmann::json{{"p", c.p},
                        {"q", c.q},
                        {"delta0", c.delta0},
                        {"delta_max", c.delta_max},
                        {"gamma_dec", c.gamma_dec},
                        {"gamma_inc", c.gamma_inc},
                        {"gamma_inc_bar", c.gamma_inc_bar},
                        {"gamma_s", c.gamma_s},
                        {"alpha1", c.alpha1},
                        {"alpha2", c.alpha2},
                        {"eta", c.eta},
                        {"eta1", c.eta1},
                        {"eta2", c.eta2},
                        {"mu", c.mu},
                        {"n_rho", c.n_rho},
                        {"rho_end", c.rho_end},
                        {"max_evals", c.max_evals},
                        {"max_time", c.max_time},
                        {"seed", c.seed},
                        {"sketch_kind", std::string(to_string(c.sketch_kind))}};
}

}  // namespace detail

SolverConfig config_from_json(std::string_view text, const SolverConfig& base) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
  return detail::config_from_json(j, base);
}

std::string config_to_json(const SolverConfig& config) { return detail::config_to_json(config).dump(); }

std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::budget: return "budget";
    case Termination::time: return "time";
    case Termination::rho_floor: return "rho_floor";
    case Termination::critical: return "critical";
    case Termination::error: return "error";
  }
  return "error";
}

Termination parse_termination(std::string_view name) {
  for (Termination t : {Termination::budget, Termination::time, Termination::rho_floor,
                        Termination::critical, Termination::error}) {
    if (to_string(t) == name) return t;
  }
  throw ConfigError("unknown termination '" + std::string(name) + "'");
}

std::string_view to_string(IterationClass c) {
  switch (c) {
    case IterationClass::successful: return "successful";
    case IterationClass::unsuccessful: return "unsuccessful";
    case IterationClass::safety: return "safety";
    case IterationClass::rho_reduced: return "rho_reduced";
  }
  return "unsuccessful";
}

std::string iteration_to_json(const IterationLog& log) {
  nlohmann::json j;
  j["k"] = log.k;
  j["class"] = std::string(to_string(log.classification));
  j["R"] = log.ratio ? nlohmann::json(*log.ratio) : nlohmann::json(nullptr);
  j["delta"] = log.delta;
  j["rho"] = log.rho ? nlohmann::json(*log.rho) : nlohmann::json(nullptr);
  j["sigma_m"] = log.sigma_m;
  j["evals"] = log.evals_used;
  return j.dump();
}

RunRecord run_solver(std::string_view algorithm, const Problem& problem, const SolverConfig& config,
                     const IterationObserver& observer) {
  if (algorithm == "rsdfo") return run_rsdfo(problem, config, observer);
  if (algorithm == "rsdfo2") return run_rsdfo2(problem, config, observer);
  if (algorithm == "rsdfoq") return run_rsdfoq(problem, config, observer);
  throw ConfigError("unknown solver '" + std::string(algorithm) + "'");
}

}  // namespace rsdfo
