// Drivers that draw a fresh sketch and a fresh model stencil every iteration.
#include <cmath>
#include <limits>

#include "rsdfo/error.hpp"
#include "rsdfo/sketch.hpp"
#include "rsdfo/trs.hpp"
#include "solvers/evaluator.hpp"

namespace rsdfo {

namespace {

enum class Order { first, second };

// Model in sketch coordinates, or nullopt when a stencil value was not finite
// or the fit failed.
std::optional<QuadraticModel> build_model(Order order, const SketchMatrix& sketch, const Vector& x,
                                          double fx, double delta, detail::Evaluator& eval) {
  const Index p = sketch.p();
  if (order == Order::first) {
    Vector g(p);
    bool finite = true;
    for (Index i = 0; i < p; ++i) {
      const double fi = eval(x + delta * sketch.map.col(i));
      finite = finite && std::isfinite(fi);
      g[i] = (fi - fx) / delta;
    }
    if (!finite) return std::nullopt;
    return QuadraticModel(fx, std::move(g), Matrix::Zero(p, p));
  }
  const std::vector<Vector> stencil = full_quadratic_stencil(p, delta);
  std::vector<double> values;
  values.reserve(stencil.size());
  bool finite = true;
  for (const auto& s : stencil) {
    const double fs = s.isZero(0.0) ? fx : eval(x + sketch.map * s);
    finite = finite && std::isfinite(fs);
    values.push_back(fs);
  }
  if (!finite) return std::nullopt;
  try {
    const QuadraticModel fit = build_full_quadratic_model(stencil, values);
    return QuadraticModel(fx, fit.gradient(), fit.hessian());
  } catch (const ModelConstructionError&) {
    return std::nullopt;
  }
}

RunRecord run_sketched(Order order, const Problem& problem, const SolverConfig& config,
                       const IterationObserver& observer) {
  const Index n = problem.dim();
  const SolverConfig cfg = resolve_config(config, problem.x0());
  validate_config(cfg, n, false);

  RunRecord record;
  record.problem = problem.name();
  record.n = n;
  record.solver = order == Order::first ? "rsdfo" : "rsdfo2";
  record.seed = cfg.seed;
  record.f_min = problem.f_min();

  detail::Evaluator eval(problem, cfg.max_evals, cfg.max_time);
  Termination term = Termination::budget;
  try {
    Vector x = problem.x0();
    double fx = eval(x);
    record.f0 = fx;
    if (!std::isfinite(fx)) {
      record.message = "objective is not finite at the starting point";
      detail::finish_record(record, eval, Termination::error);
      return record;
    }
    double delta = cfg.delta0;
    const TrsMode mode = order == Order::first ? TrsMode::first_order : TrsMode::second_order;
    for (std::uint64_t k = 0;; ++k) {
      if (delta < cfg.rho_end) {
        term = Termination::rho_floor;
        break;
      }
      eval.check_time();
      const SketchMatrix sketch = make_sketch(cfg.sketch_kind, n, cfg.p, derive_seed(cfg.seed, k));

      IterationLog log;
      log.k = k;
      log.delta = delta;
      bool success = false;
      const auto model = build_model(order, sketch, x, fx, delta, eval);
      if (model) {
        const ModelCriticality crit = model_criticality(*model);
        log.sigma_m = crit.sigma_m;
        const double measure = order == Order::first ? model->gradient().norm() : crit.sigma_m;
        const TrsResult step = solve_trs(*model, delta, mode);
        if (step.predicted_decrease > 0.0) {
          const Vector trial = x + sketch.map * step.step;
          const double ft = eval(trial);
          const double ratio = std::isfinite(ft) ? decrease_ratio(fx, ft, step.predicted_decrease)
                                                 : -std::numeric_limits<double>::infinity();
          log.ratio = ratio;
          success = ratio >= cfg.eta && measure >= cfg.mu * delta;
          if (success) {
            x = trial;
            fx = ft;
          }
        }
      }
      if (success) {
        log.classification = IterationClass::successful;
        delta = std::min(cfg.gamma_inc * delta, cfg.delta_max);
      } else {
        log.classification = IterationClass::unsuccessful;
        delta = cfg.gamma_dec * delta;
      }
      log.evals_used = eval.count();
      record.iterations.push_back(log);
      if (observer) observer(log, x, eval.elapsed());
    }
  } catch (const detail::StopRun& stop) {
    term = stop.reason;
  } catch (const Error& e) {
    term = Termination::error;
    record.message = e.what();
  }
  detail::finish_record(record, eval, term);
  return record;
}

}  // namespace

RunRecord run_rsdfo(const Problem& problem, const SolverConfig& config, const IterationObserver& observer) {
  return run_sketched(Order::first, problem, config, observer);
}

RunRecord run_rsdfo2(const Problem& problem, const SolverConfig& config, const IterationObserver& observer) {
  return run_sketched(Order::second, problem, config, observer);
}

}  // namespace rsdfo
