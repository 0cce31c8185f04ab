#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

#include "rsdfo/error.hpp"
#include "rsdfo/trs.hpp"
#include "solvers/evaluator.hpp"

namespace rsdfo {

namespace {

struct RhoEntry {
  double rho;
  double step;  // min(||s||, delta)
};

// Orthonormal basis of the primary directions. Dependent directions are
// moved to the secondary set and replaced by fresh orthogonal ones.
Basis primary_basis(InterpolationSet& set, double delta, Rng& rng, detail::Evaluator& eval) {
  auto f = [&](const Vector& y) { return eval(y); };
  for (int attempt = 0; attempt < 4; ++attempt) {
    const std::size_t base = set.base_index();
    const Vector x = set.base();
    std::vector<Vector> dirs;
    std::vector<std::size_t> owner;
    for (std::size_t i = 0; i < set.primary().size(); ++i) {
      if (i == base) continue;
      dirs.push_back(set.primary()[i].x - x);
      owner.push_back(i);
    }
    std::vector<std::size_t> dropped;
    std::optional<Basis> basis;
    try {
      OrthonormalizeResult res = orthonormalize(dirs);
      for (std::size_t d : res.dropped) dropped.push_back(owner[d]);
      basis = std::move(res.basis);
    } catch (const EmptyBasisError&) {
      dropped = owner;
    }
    if (dropped.empty() && basis && basis->rank() == set.p()) return *basis;
    std::sort(dropped.rbegin(), dropped.rend());
    for (std::size_t i : dropped) set.move_to_secondary(i);
    add_orthogonal_points(set, delta, static_cast<std::size_t>(set.p() + 1) - set.primary().size(), rng, f);
  }
  throw DegenerateGeometryError("could not restore a full-rank primary set");
}

// The model from all points, falling back to primary points only.
SubspaceModel fit_model(const InterpolationSet& set, const Basis& basis, const std::optional<SubspaceModel>& prev) {
  const SubspaceModel* prev_ptr = prev ? &*prev : nullptr;
  try {
    return build_mfn_model(set, basis, prev_ptr);
  } catch (const Error&) {
    if (set.secondary().empty()) throw;
  }
  InterpolationSet primary_only(set.p(), set.q());
  for (const auto& pt : set.primary()) primary_only.add_primary(pt.x, pt.f);
  primary_only.set_base(set.base_index());
  return build_mfn_model(primary_only, basis, prev_ptr);
}

void recentre(InterpolationSet& set) {
  std::size_t best = set.base_index();
  for (std::size_t i = 0; i < set.primary().size(); ++i) {
    if (set.primary()[i].f < set.primary()[best].f) best = i;
  }
  set.set_base(best);
}

}  // namespace

RunRecord run_rsdfoq(const Problem& problem, const SolverConfig& config, const IterationObserver& observer) {
  const Index n = problem.dim();
  const SolverConfig cfg = resolve_config(config, problem.x0());
  validate_config(cfg, n, true);
  const Index p = cfg.p;
  const bool full_space = p == n;

  RunRecord record;
  record.problem = problem.name();
  record.n = n;
  record.solver = "rsdfoq";
  record.seed = cfg.seed;
  record.f_min = problem.f_min();

  detail::Evaluator eval(problem, cfg.max_evals, cfg.max_time);
  auto f = [&](const Vector& y) { return eval(y); };
  Rng rng(derive_seed(cfg.seed, 0x51ULL));
  Termination term = Termination::budget;
  try {
    const double f0 = eval(problem.x0());
    record.f0 = f0;
    if (!std::isfinite(f0)) {
      record.message = "objective is not finite at the starting point";
      detail::finish_record(record, eval, Termination::error);
      return record;
    }
    InterpolationSet set(p, cfg.q);
    set.set_base(set.add_primary(problem.x0(), f0));
    double delta = cfg.delta0;
    double rho = cfg.delta0;
    add_orthogonal_points(set, delta, static_cast<std::size_t>(p), rng, f);
    recentre(set);

    std::deque<RhoEntry> history;
    std::optional<SubspaceModel> prev;
    const Vector zero_step = Vector::Zero(n);

    for (std::uint64_t k = 0;; ++k) {
      if (rho <= cfg.rho_end) {
        term = Termination::rho_floor;
        break;
      }
      eval.check_time();
      const Basis basis = primary_basis(set, delta, rng, eval);
      const Vector x = set.base();
      const double fx = set.base_value();

      SubspaceModel sm = fit_model(set, basis, prev);
      const ModelCriticality crit = model_criticality(sm.model);
      const TrsResult step = solve_trs(sm.model, delta, TrsMode::second_order);
      const double snorm = step.step.norm();

      history.push_back({rho, std::min(snorm, delta)});
      if (history.size() > static_cast<std::size_t>(cfg.n_rho) + 1) history.pop_front();
      bool can_reduce = k >= static_cast<std::uint64_t>(cfg.n_rho) &&
                        history.size() == static_cast<std::size_t>(cfg.n_rho) + 1 && history.front().rho == rho;
      for (const auto& h : history) can_reduce = can_reduce && h.step <= h.rho;

      IterationLog log;
      log.k = k;
      log.delta = delta;
      log.rho = rho;
      log.sigma_m = crit.sigma_m;
      log.primary_points = set.primary().size();
      log.secondary_points = set.secondary().size();

      double ratio = 0.0;
      double delta_next = delta;
      if (snorm < cfg.gamma_s * rho) {
        ratio = -1.0;
        log.ratio = ratio;
        log.classification = IterationClass::safety;
        delta_next = std::max(cfg.gamma_dec * delta, rho);
        if (!can_reduce || delta > rho) remove_single_point(set, basis, zero_step, delta, x);
      } else {
        const Vector full_step = basis.expand(step.step);
        const Vector trial = x + full_step;
        const double ft = eval(trial);
        if (!std::isfinite(ft)) {
          ratio = -std::numeric_limits<double>::infinity();
        } else if (step.predicted_decrease > 0.0) {
          ratio = decrease_ratio(fx, ft, step.predicted_decrease);
        } else {
          ratio = ft < fx ? 1.0 : -1.0;
        }
        log.ratio = ratio;
        if (ratio < cfg.eta1) {
          delta_next = std::max(std::min(cfg.gamma_dec * delta, snorm), rho);
        } else if (ratio <= cfg.eta2) {
          delta_next = std::max({cfg.gamma_dec * delta, snorm, rho});
        } else {
          delta_next = std::min(std::max(cfg.gamma_inc * delta, cfg.gamma_inc_bar * snorm), cfg.delta_max);
        }
        const bool accept = ratio > 0.0;
        log.classification = accept ? IterationClass::successful : IterationClass::unsuccessful;

        std::optional<std::size_t> trial_index;
        if (std::isfinite(ft)) {
          trial_index = set.add_primary(trial, ft);
          if (accept) set.set_base(*trial_index);
        }
        if (full_space) {
          // The trial point joins after this removal, so it takes no part in it.
          remove_single_point(set, basis, full_step, delta, x, trial_index);
        }
        const std::size_t drop = std::min(pdrop_heuristic(ratio, p, full_space), set.primary().size() - 1);
        remove_multiple_points(set, basis, drop, delta, set.base());
      }

      if (ratio < 0.0 && delta <= rho && can_reduce) {
        delta_next = cfg.alpha2 * rho;
        rho = cfg.alpha1 * rho;
        log.classification = IterationClass::rho_reduced;
      }
      delta = delta_next;
      prev = std::move(sm);

      const std::size_t missing = static_cast<std::size_t>(p + 1) - set.primary().size();
      add_orthogonal_points(set, delta, missing, rng, f);
      recentre(set);

      log.evals_used = eval.count();
      record.iterations.push_back(log);
      if (observer) observer(log, set.base(), eval.elapsed());
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

}  // namespace rsdfo
