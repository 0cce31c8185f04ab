#include "rsdfo/trs.hpp"

#include <algorithm>
#include <cmath>

#include "rsdfo/error.hpp"

namespace rsdfo {

namespace {

constexpr Index kExactSolveMaxDim = 50;

double model_decrease(const QuadraticModel& m, const Vector& s) {
  return -(m.gradient().dot(s) + 0.5 * s.dot(m.hessian() * s));
}

void check_delta(double delta) {
  if (!(delta > 0.0) || !std::isfinite(delta)) throw ContractViolation("trust-region radius must be positive");
}

// Keeps the step inside the ball against rounding.
void clip(Vector& s, double delta) {
  const double ns = s.norm();
  if (ns > delta) s *= delta / ns;
}

TrsResult make_result(const QuadraticModel& m, Vector s, StepKind kind, double delta) {
  clip(s, delta);
  TrsResult r;
  r.predicted_decrease = std::max(0.0, model_decrease(m, s));
  r.step = std::move(s);
  r.kind = kind;
  return r;
}

void certify(TrsResult& r, const QuadraticModel& m, double delta, double hnorm, double tau) {
  const double gnorm = m.gradient().norm();
  if (gnorm > 0.0) {
    const double bound = 0.5 * gnorm * std::min(delta, gnorm / std::max(hnorm, 1.0));
    r.certified_first_order = r.predicted_decrease >= bound * (1.0 - 1e-12);
  }
  if (tau > 0.0) {
    const double bound = 0.5 * tau * delta * delta;
    r.certified_second_order = r.predicted_decrease >= bound * (1.0 - 1e-12);
  }
}

TrsResult cauchy_impl(const QuadraticModel& m, double delta) {
  const Vector& g = m.gradient();
  const double gnorm = g.norm();
  if (gnorm == 0.0) {
    TrsResult r = make_result(m, Vector::Zero(m.dim()), StepKind::cauchy, delta);
    r.zero_step = true;
    return r;
  }
  const double curv = g.dot(m.hessian() * g);
  double t = 1.0;
  if (curv > 0.0) t = std::min(gnorm * gnorm * gnorm / (delta * curv), 1.0);
  return make_result(m, (-t * delta / gnorm) * g, StepKind::cauchy, delta);
}

TrsResult eigen_impl(const QuadraticModel& m, double delta, const SymmetricEigen& es) {
  const double lambda = es.values[0];
  if (!(lambda < 0.0)) {
    TrsResult r = make_result(m, Vector::Zero(m.dim()), StepKind::eigen, delta);
    r.zero_step = true;
    return r;
  }
  Vector v = es.vectors.col(0);
  const double gv = m.gradient().dot(v);
  // Tie (g^T v = 0) keeps the canonical, lexicographically positive sign.
  if (gv > 1e-14 * m.gradient().norm()) v = -v;
  return make_result(m, delta * v, StepKind::eigen, delta);
}

TrsResult exact_impl(const QuadraticModel& m, double delta, const SymmetricEigen& es) {
  const Index p = m.dim();
  const Vector gamma = es.vectors.transpose() * m.gradient();
  const Vector& lam = es.values;
  const double lmin = lam[0];
  const double gnorm = m.gradient().norm();

  auto step_norm = [&](double mu) {
    double s = 0.0;
    for (Index i = 0; i < p; ++i) {
      const double d = lam[i] + mu;
      s += gamma[i] * gamma[i] / (d * d);
    }
    return std::sqrt(s);
  };
  auto step_at = [&](double mu) {
    Vector coef(p);
    for (Index i = 0; i < p; ++i) coef[i] = -gamma[i] / (lam[i] + mu);
    return Vector(es.vectors * coef);
  };

  if (lmin > 0.0) {
    if (step_norm(0.0) <= delta) return make_result(m, step_at(0.0), StepKind::refined, delta);
  }

  const double lam_scale = std::max({1.0, std::abs(lam[0]), std::abs(lam[p - 1])});
  const double eig_tol = 1e-12 * lam_scale;
  const double g_tol = 1e-12 * std::max(gnorm, 1e-300);
  bool hard_candidate = true;
  for (Index i = 0; i < p && lam[i] - lmin <= eig_tol; ++i) {
    if (std::abs(gamma[i]) > g_tol) {
      hard_candidate = false;
      break;
    }
  }
  const double mu_floor = std::max(0.0, -lmin);
  if (hard_candidate && lmin <= 0.0) {
    // Norm of the step at mu = -lmin with the degenerate components removed.
    Vector coef = Vector::Zero(p);
    for (Index i = 0; i < p; ++i) {
      if (lam[i] - lmin > eig_tol) coef[i] = -gamma[i] / (lam[i] - lmin);
    }
    const double base_norm = coef.norm();
    if (base_norm <= delta) {
      coef[0] += std::sqrt(std::max(0.0, delta * delta - base_norm * base_norm));
      return make_result(m, Vector(es.vectors * coef), StepKind::refined, delta);
    }
  }
  if (gnorm == 0.0) return make_result(m, Vector::Zero(p), StepKind::refined, delta);

  // Boundary solution: ||s(mu)|| = delta with mu > mu_floor. Newton on
  // 1/||s|| - 1/delta, safeguarded by bisection.
  double lo = mu_floor;
  double hi = mu_floor + gnorm / delta + lam_scale * 1e-12 + 1e-300;
  while (step_norm(hi) > delta) hi *= 2.0;
  double mu = hi;
  for (int it = 0; it < 200; ++it) {
    const double sn = step_norm(mu);
    if (std::abs(sn - delta) <= 1e-13 * delta) break;
    if (sn > delta) lo = mu; else hi = mu;
    double dsum = 0.0;
    for (Index i = 0; i < p; ++i) {
      const double d = lam[i] + mu;
      dsum += gamma[i] * gamma[i] / (d * d * d);
    }
    const double phi = 1.0 / sn - 1.0 / delta;
    const double dphi = dsum / (sn * sn * sn);
    double next = dphi > 0.0 ? mu - phi / dphi : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (hi - lo <= 1e-16 * std::max(1.0, hi)) break;
    mu = next;
  }
  if (!(mu > mu_floor)) mu = hi;
  return make_result(m, step_at(mu), StepKind::refined, delta);
}

}  // namespace

std::string_view to_string(StepKind kind) {
  switch (kind) {
    case StepKind::cauchy:
      return "cauchy";
    case StepKind::eigen:
      return "eigen";
    case StepKind::refined:
      return "refined";
  }
  return "unknown";
}

double cauchy_decrease_bound(const QuadraticModel& model, double delta) {
  const double gnorm = model.gradient().norm();
  const double hnorm = model.dim() > 0 ? symmetric_norm(model.hessian()) : 0.0;
  return 0.5 * gnorm * std::min(delta, gnorm / std::max(hnorm, 1.0));
}

double curvature_decrease_bound(const QuadraticModel& model, double delta) {
  return 0.5 * model_criticality(model).tau_m * delta * delta;
}

TrsResult cauchy_step(const QuadraticModel& model, double delta) {
  check_delta(delta);
  TrsResult r = cauchy_impl(model, delta);
  const SymmetricEigen es = symmetric_eigen(model.hessian());
  const double hnorm = std::max(std::abs(es.values[0]), std::abs(es.values[es.values.size() - 1]));
  certify(r, model, delta, hnorm, std::max(-es.values[0], 0.0));
  return r;
}

TrsResult eigen_step(const QuadraticModel& model, double delta) {
  check_delta(delta);
  const SymmetricEigen es = symmetric_eigen(model.hessian());
  TrsResult r = eigen_impl(model, delta, es);
  const double hnorm = std::max(std::abs(es.values[0]), std::abs(es.values[es.values.size() - 1]));
  certify(r, model, delta, hnorm, std::max(-es.values[0], 0.0));
  return r;
}

TrsResult exact_trs(const QuadraticModel& model, double delta) {
  check_delta(delta);
  const SymmetricEigen es = symmetric_eigen(model.hessian());
  TrsResult r = exact_impl(model, delta, es);
  const double hnorm = std::max(std::abs(es.values[0]), std::abs(es.values[es.values.size() - 1]));
  certify(r, model, delta, hnorm, std::max(-es.values[0], 0.0));
  return r;
}

TrsResult truncated_cg(const QuadraticModel& model, double delta) {
  check_delta(delta);
  const Index p = model.dim();
  const Matrix& h = model.hessian();
  Vector s = Vector::Zero(p);
  Vector r = model.gradient();
  Vector d = -r;
  const double tol = std::min(0.5, std::sqrt(r.norm())) * r.norm();
  for (Index it = 0; it < 2 * p + 10 && r.norm() > tol && r.norm() > 0.0; ++it) {
    const Vector hd = h * d;
    const double curv = d.dot(hd);
    auto to_boundary = [&]() {
      // tau >= 0 with ||s + tau d|| = delta
      const double a = d.squaredNorm();
      const double b = 2.0 * s.dot(d);
      const double c = s.squaredNorm() - delta * delta;
      const double tau = (-b + std::sqrt(std::max(0.0, b * b - 4.0 * a * c))) / (2.0 * a);
      return Vector(s + tau * d);
    };
    if (curv <= 0.0) {
      s = to_boundary();
      break;
    }
    const double alpha = r.squaredNorm() / curv;
    if ((s + alpha * d).norm() >= delta) {
      s = to_boundary();
      break;
    }
    s += alpha * d;
    const Vector r_new = r + alpha * hd;
    const double beta = r_new.squaredNorm() / r.squaredNorm();
    r = r_new;
    d = -r + beta * d;
  }
  TrsResult res = make_result(model, std::move(s), StepKind::refined, delta);
  const SymmetricEigen es = symmetric_eigen(h);
  const double hnorm = std::max(std::abs(es.values[0]), std::abs(es.values[es.values.size() - 1]));
  certify(res, model, delta, hnorm, std::max(-es.values[0], 0.0));
  return res;
}

TrsResult solve_trs(const QuadraticModel& model, double delta, TrsMode mode) {
  check_delta(delta);
  if (model.dim() == 0) throw ContractViolation("solve_trs: empty model");
  const SymmetricEigen es = symmetric_eigen(model.hessian());
  const double hnorm = std::max(std::abs(es.values[0]), std::abs(es.values[es.values.size() - 1]));
  const double tau = std::max(-es.values[0], 0.0);

  TrsResult best = cauchy_impl(model, delta);
  if (mode == TrsMode::second_order) {
    TrsResult eig = eigen_impl(model, delta, es);
    if (eig.predicted_decrease > best.predicted_decrease) best = std::move(eig);
  }
  if (model.gradient().norm() == 0.0 && tau == 0.0) {
    TrsResult r = make_result(model, Vector::Zero(model.dim()), StepKind::cauchy, delta);
    r.zero_step = true;
    return r;
  }
  TrsResult refined = model.dim() <= kExactSolveMaxDim ? exact_impl(model, delta, es)
                                                       : truncated_cg(model, delta);
  if (refined.predicted_decrease > best.predicted_decrease) best = std::move(refined);
  best.zero_step = false;
  best.certified_first_order = best.certified_second_order = false;
  certify(best, model, delta, hnorm, tau);
  return best;
}

double decrease_ratio(double f_current, double f_trial, double predicted_decrease) {
  if (!(predicted_decrease > 0.0)) {
    throw ContractViolation("decrease_ratio: predicted decrease must be positive");
  }
  return (f_current - f_trial) / predicted_decrease;
}

}  // namespace rsdfo
