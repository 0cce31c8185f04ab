// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits nonzero if any selected criterion fails.
//
//   acceptance [--only N] [--cli PATH] [--work DIR]
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "rsdfo/bench.hpp"
#include "rsdfo/error.hpp"
#include "rsdfo/interp.hpp"
#include "rsdfo/problems.hpp"
#include "rsdfo/random.hpp"
#include "rsdfo/sketch.hpp"
#include "rsdfo/solvers.hpp"
#include "rsdfo/trs.hpp"

namespace fs = std::filesystem;
using namespace rsdfo;

namespace {

std::string g_cli;
fs::path g_work;

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

Matrix random_symmetric(Index p, Rng& rng, double scale = 1.0) {
  Matrix a(p, p);
  std::normal_distribution<double> nd(0.0, scale);
  for (Index i = 0; i < p; ++i)
    for (Index j = 0; j < p; ++j) a(i, j) = nd(rng);
  return 0.5 * (a + a.transpose());
}

// ---------------------------------------------------------------- 1
bool interpolation_exactness(std::string& detail) {
  Rng rng(101);
  std::uniform_int_distribution<int> pick_p(1, 5);
  double worst = 0.0;
  std::size_t secondary_total = 0, secondary_used = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const Index p = pick_p(rng);
    const Index qmax = (p + 1) * (p + 2) / 2;
    std::uniform_int_distribution<Index> pick_m(p + 1, qmax);
    const Index m = pick_m(rng);
    std::vector<Vector> coords;
    std::vector<double> values;
    std::vector<double> check_values;
    if (trial % 2 == 0) {
      // Direct fit on raw subspace coordinates.
      for (Index j = 0; j < m; ++j) {
        coords.push_back(j == 0 ? Vector::Zero(p) : Vector(0.5 * standard_normal_vector(p, rng)));
        values.push_back(std::normal_distribution<double>(0.0, 10.0)(rng));
      }
      const MfnFit fit = fit_mfn(coords, values, random_symmetric(p, rng));
      for (Index j = 0; j < m; ++j) {
        const double err = std::abs(fit.model.evaluate(coords[j]) - values[j]) / std::max(1.0, std::abs(values[j]));
        worst = std::max(worst, err);
      }
    } else {
      // Through the interpolation set: primary points in a subspace plus
      // secondary points off it, checked at independently projected points.
      const Index n = p + 3;
      const Index q = std::max<Index>(m, p + 2);
      InterpolationSet set(p, q);
      const Vector x = standard_normal_vector(n, rng);
      auto f = [](const Vector& y) { return std::sin(y.sum()) + y.squaredNorm(); };
      set.set_base(set.add_primary(x, f(x)));
      Eigen::HouseholderQR<Matrix> qr(Matrix::Random(n, p));
      const Matrix frame = qr.householderQ() * Matrix::Identity(n, p);
      for (Index j = 0; j < p; ++j) {
        const Vector y = x + 0.3 * frame.col(j) + 0.05 * frame * standard_normal_vector(p, rng);
        set.add_primary(y, f(y));
      }
      for (Index j = 0; j < q - p - 1; ++j) {
        const Vector y = x + 0.3 * frame * standard_normal_vector(p, rng) + 0.05 * standard_normal_vector(n, rng);
        const std::size_t idx = set.add_primary(y, f(y));
        set.move_to_secondary(idx);
      }
      std::vector<Vector> dirs;
      for (std::size_t i = 1; i < set.primary().size(); ++i) dirs.push_back(set.primary()[i].x - x);
      const Basis basis = orthonormal_basis(dirs);
      MfnDiagnostics diag;
      const SubspaceModel sm = build_mfn_model(set, basis, nullptr, &diag);
      const Matrix& qk = basis.columns();
      auto check = [&](const InterpolationSet::Point& pt) {
        const Vector s = qk.transpose() * (pt.x - x);
        const double err = std::abs(sm.model.evaluate(s) - pt.f) / std::max(1.0, std::abs(pt.f));
        worst = std::max(worst, err);
      };
      for (const auto& pt : set.primary()) check(pt);
      // Points the builder reports as left out are not constraints of this model.
      for (std::size_t i = 0; i < set.secondary().size(); ++i) {
        ++secondary_total;
        if (std::find(diag.excluded_secondary.begin(), diag.excluded_secondary.end(), i) !=
            diag.excluded_secondary.end())
          continue;
        ++secondary_used;
        check(set.secondary()[i]);
      }
    }
  }
  detail = "worst relative interpolation error " + fmt("%.3g", worst) + ", secondary constraints used " +
           std::to_string(secondary_used) + "/" + std::to_string(secondary_total);
  return worst <= 1e-9 && 2 * secondary_used >= secondary_total;
}

// ---------------------------------------------------------------- 2
// Monomial coefficient vector [c, g_1..g_p, H_ii (as 1/2 s_i^2), H_ij (i<j, as s_i s_j)].
Vector monomials(const Vector& s) {
  const Index p = s.size();
  Vector row((p + 1) * (p + 2) / 2);
  Index k = 0;
  row[k++] = 1.0;
  for (Index i = 0; i < p; ++i) row[k++] = s[i];
  for (Index i = 0; i < p; ++i) row[k++] = 0.5 * s[i] * s[i];
  for (Index i = 0; i < p; ++i)
    for (Index j = i + 1; j < p; ++j) row[k++] = s[i] * s[j];
  return row;
}

Matrix hessian_of(const Vector& coef, Index p) {
  Matrix h(p, p);
  Index k = 1 + p;
  for (Index i = 0; i < p; ++i) h(i, i) = coef[k++];
  for (Index i = 0; i < p; ++i)
    for (Index j = i + 1; j < p; ++j) h(i, j) = h(j, i) = coef[k++];
  return h;
}

bool mfn_optimality(std::string& detail) {
  Rng rng(202);
  double worst_gap = -1e300;
  int done = 0;
  for (int trial = 0; done < 50 && trial < 500; ++trial) {
    const Index p = 1 + trial % 3;
    const Index dim = (p + 1) * (p + 2) / 2;
    const Index m = dim - 1;  // one free Hessian degree of freedom
    std::vector<Vector> coords;
    std::vector<double> values;
    for (Index j = 0; j < m; ++j) {
      coords.push_back(j == 0 ? Vector::Zero(p) : Vector(standard_normal_vector(p, rng)));
      values.push_back(std::normal_distribution<double>(0.0, 3.0)(rng));
    }
    const Matrix href = random_symmetric(p, rng);
    Matrix design(m, dim);
    Vector rhs(m);
    for (Index j = 0; j < m; ++j) {
      design.row(j) = monomials(coords[j]).transpose();
      rhs[j] = values[j];
    }
    Eigen::JacobiSVD<Matrix> svd(design, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Vector sv = svd.singularValues();
    if (sv[m - 1] < 1e-6 * sv[0]) continue;  // skip poorly posed draws
    const Vector particular = svd.solve(rhs);
    const Vector null = svd.matrixV().col(dim - 1);
    // The free direction must move the Hessian, otherwise the instance has no
    // Hessian degree of freedom.
    if (hessian_of(null, p).norm() < 1e-3) continue;

    auto objective = [&](double t) {
      const Matrix d = hessian_of(particular + t * null, p) - href;
      return d.norm();  // Frobenius
    };
    // Dense scan then zoom.
    double lo = -1e4, hi = 1e4;
    double best_t = 0.0, best = objective(0.0);
    for (int level = 0; level < 12; ++level) {
      const int steps = 2000;
      for (int i = 0; i <= steps; ++i) {
        const double t = lo + (hi - lo) * i / steps;
        const double v = objective(t);
        if (v < best) best = v, best_t = t;
      }
      const double w = (hi - lo) / steps * 2.0;
      lo = best_t - w;
      hi = best_t + w;
    }

    const MfnFit fit = fit_mfn(coords, values, href);
    const double got = (fit.model.hessian() - href).norm();
    worst_gap = std::max(worst_gap, got - best);
    if (got > best + 1e-6) {
      detail = "instance " + std::to_string(done) + ": ||H - Href|| = " + fmt("%.9g", got) +
               " vs brute force " + fmt("%.9g", best);
      return false;
    }
    ++done;
  }
  detail = std::to_string(done) + " instances, worst (model - brute force) " + fmt("%.3g", worst_gap);
  return done == 50;
}

// ---------------------------------------------------------------- 3
bool model_error_scaling(std::string& detail) {
  const Index n = 6, p = 3;
  Rng rng(303);
  const Vector a = standard_normal_vector(n, rng);
  const Matrix b = random_symmetric(n, rng);
  const Vector c = standard_normal_vector(n, rng);
  auto f = [&](const Vector& x) { return a.dot(x) + 0.5 * x.dot(b * x) + c.dot(x.array().cube().matrix()) / 6.0; };
  auto grad = [&](const Vector& x) { return Vector(a + b * x + 0.5 * c.cwiseProduct(x.cwiseProduct(x))); };
  auto hess = [&](const Vector& x) { return Matrix(b + Matrix(c.cwiseProduct(x).asDiagonal())); };
  const Vector x = standard_normal_vector(n, rng);
  const SketchMatrix sk = gaussian_sketch(n, p, 3030);
  const Matrix& pm = sk.map;

  std::vector<double> eg_lib, eh_lib, eg_own, eh_own;
  for (double delta : {1e-1, 1e-2, 1e-3}) {
    // Forward-difference linear model.
    Vector g(p);
    for (Index i = 0; i < p; ++i) g[i] = (f(x + delta * pm.col(i)) - f(x)) / delta;
    const QuadraticModel lin(f(x), g, Matrix::Zero(p, p));
    // Full quadratic stencil model.
    const auto stencil = full_quadratic_stencil(p, delta);
    std::vector<double> vals;
    for (const auto& s : stencil) vals.push_back(f(x + pm * s));
    const QuadraticModel quad = build_full_quadratic_model(stencil, vals);

    eg_lib.push_back(certify_fully_linear(lin, x, pm, f, grad, delta, 300, 7).kappa_eg_est);
    eh_lib.push_back(*certify_fully_quadratic(quad, x, pm, f, grad, hess, delta, 300, 7).kappa_eh_est);

    // Own sampling: gradient error / delta and Hessian error / delta.
    Rng srng(99);
    double eg = 0.0, eh = 0.0;
    for (int k = 0; k < 300; ++k) {
      Vector s = standard_normal_vector(p, srng);
      s *= delta * std::uniform_real_distribution<double>(0.0, 1.0)(srng) / s.norm();
      eg = std::max(eg, (pm.transpose() * grad(x + pm * s) - g).norm() / delta);
      const Matrix herr = pm.transpose() * hess(x + pm * s) * pm - quad.hessian();
      eh = std::max(eh, herr.operatorNorm() / delta);
    }
    eg_own.push_back(eg);
    eh_own.push_back(eh);
  }
  auto spread = [](const std::vector<double>& v) {
    const auto [mn, mx] = std::minmax_element(v.begin(), v.end());
    return *mx / *mn;
  };
  const double s1 = spread(eg_lib), s2 = spread(eh_lib), s3 = spread(eg_own), s4 = spread(eh_own);
  detail = "kappa_eg spread " + fmt("%.3g", s1) + " (own " + fmt("%.3g", s3) + "), kappa_eh spread " +
           fmt("%.3g", s2) + " (own " + fmt("%.3g", s4) + ")";
  return s1 < 10.0 && s2 < 10.0 && s3 < 10.0 && s4 < 10.0;
}

// ---------------------------------------------------------------- 4
bool trs_certificates(std::string& detail) {
  Rng rng(404);
  std::uniform_int_distribution<int> pick_p(1, 8);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  int failures = 0;
  for (int t = 0; t < 10000; ++t) {
    const Index p = pick_p(rng);
    Vector g = standard_normal_vector(p, rng) * std::pow(10.0, 4.0 * unif(rng) - 2.0);
    if (t % 10 == 0) g.setZero();
    Matrix h = random_symmetric(p, rng, std::pow(10.0, 4.0 * unif(rng) - 2.0));
    if (t % 7 == 0) h = h * h;  // positive semidefinite
    const double delta = std::pow(10.0, 4.0 * unif(rng) - 2.0);
    const QuadraticModel m(0.0, g, h);
    const TrsResult r = solve_trs(m, delta, TrsMode::second_order);
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    const double hn = es.eigenvalues().cwiseAbs().maxCoeff();
    const double tau = std::max(-es.eigenvalues()[0], 0.0);
    const double dec = -(g.dot(r.step) + 0.5 * r.step.dot(h * r.step));
    const double slack = 1e-12 * std::max(1.0, std::abs(dec));
    bool ok = r.step.norm() <= delta * (1.0 + 1e-12);
    if (g.norm() > 0.0) ok = ok && dec >= 0.5 * g.norm() * std::min(delta, g.norm() / std::max(hn, 1.0)) - slack;
    if (tau > 0.0) ok = ok && dec >= 0.5 * tau * delta * delta - slack;
    if (!ok) ++failures;
  }

  // Grid oracle for p = 2.
  double worst = 0.0;
  for (int t = 0; t < 200; ++t) {
    const Vector g = standard_normal_vector(2, rng);
    const Matrix h = random_symmetric(2, rng, 2.0);
    const double delta = 0.1 + 1.9 * unif(rng);
    auto model = [&](double x, double y) {
      return g[0] * x + g[1] * y + 0.5 * (h(0, 0) * x * x + 2.0 * h(0, 1) * x * y + h(1, 1) * y * y);
    };
    double best = 0.0, bx = 0.0, by = 0.0;
    const int na = 720, nr = 300;
    for (int i = 0; i < na; ++i) {
      const double th = 2.0 * M_PI * i / na;
      for (int j = 1; j <= nr; ++j) {
        const double rr = delta * j / nr;
        const double v = model(rr * std::cos(th), rr * std::sin(th));
        if (v < best) best = v, bx = rr * std::cos(th), by = rr * std::sin(th);
      }
    }
    // Zoom around the grid minimizer, staying inside the ball.
    double w = 2.0 * delta / nr + 2.0 * M_PI * delta / na;
    for (int level = 0; level < 8; ++level) {
      const double cx = bx, cy = by;
      for (int i = -40; i <= 40; ++i) {
        for (int j = -40; j <= 40; ++j) {
          double x = cx + w * i / 40.0, y = cy + w * j / 40.0;
          const double rr = std::hypot(x, y);
          if (rr > delta) x *= delta / rr, y *= delta / rr;
          const double v = model(x, y);
          if (v < best) best = v, bx = x, by = y;
        }
      }
      w /= 10.0;
    }
    const TrsResult r = solve_trs(QuadraticModel(0.0, g, h), delta, TrsMode::second_order);
    worst = std::max(worst, (-best) - r.predicted_decrease);
  }
  detail = std::to_string(failures) + " certificate failures in 10000 models; worst shortfall vs grid optimum " +
           fmt("%.3g", worst);
  return failures == 0 && worst <= 1e-6;
}

// ---------------------------------------------------------------- 5
bool first_order_convergence(std::string& detail) {
  const Index n = 50;
  Vector diag(n);
  for (Index i = 0; i < n; ++i) diag[i] = std::pow(10.0, static_cast<double>(i) / (n - 1));
  const Problem problem(
      "convex_quadratic", [diag](const Vector& x) { return 0.5 * x.dot(diag.cwiseProduct(x)); }, Vector::Ones(n),
      0.0, [diag](const Vector& x) { return Vector(diag.cwiseProduct(x)); },
      [diag](const Vector&) { return Matrix(diag.asDiagonal()); });
  const double g0 = problem.gradient(problem.x0()).norm();
  int ok = 0;
  std::string ratios;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    SolverConfig cfg;
    cfg.p = 10;
    cfg.seed = seed;
    cfg.max_evals = 100 * (n + 1);
    double min_grad = g0;
    run_rsdfo(problem, cfg, [&](const IterationLog&, const Vector& x, double) {
      min_grad = std::min(min_grad, problem.gradient(x).norm());
    });
    ok += min_grad < 1e-2 * g0;
    ratios += fmt(" %.2g", min_grad / g0);
  }
  detail = std::to_string(ok) + "/10 seeds reached 1e-2 (ratios" + ratios + ")";
  return ok >= 9;
}

// ---------------------------------------------------------------- 6
bool second_order_escape(std::string& detail) {
  const Index n = 5;
  Problem problem = make_problem("saddle_quartic", n);
  problem.set_x0(Vector::Zero(n));
  const double sigma0 = true_criticality(problem, problem.x0()).sigma;
  int ok = 0;
  std::string finals;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    SolverConfig cfg;
    cfg.p = 2;
    cfg.seed = seed;
    cfg.max_evals = 100 * (n + 1);
    Vector last = problem.x0();
    run_rsdfo2(problem, cfg, [&](const IterationLog&, const Vector& x, double) { last = x; });
    const double sigma = true_criticality(problem, last).sigma;
    ok += sigma <= 0.2;
    finals += fmt(" %.2g", sigma);
  }
  detail = "sigma(x0) = " + fmt("%.3g", sigma0) + "; " + std::to_string(ok) + "/10 seeds reached <= 0.2 (final" +
           finals + ")";
  return std::abs(sigma0 - 2.0) < 1e-12 && ok >= 9;
}

// ---------------------------------------------------------------- 7
bool practical_performance(std::string& detail) {
  Suite suite;
  for (const char* name :
       {"sphere", "chained_rosenbrock", "low_rank_quadratic", "saddle_quartic", "sum_of_powers", "trigonometric"}) {
    suite.problems.push_back({name, 100});
  }
  SolverConfig cfg;
  cfg.p = 25;
  cfg.q = 51;
  suite.solvers.push_back({"rsdfoq", "rsdfoq", cfg});
  CampaignOptions opt;
  opt.seeds = 5;
  opt.budget_multiplier = 100.0;
  opt.time_cap = 600.0;
  opt.master_seed = 7;
  const auto records = run_campaign(suite, opt);
  const auto results = solve_results(records, 1e-1);
  std::size_t solved = 0;
  std::string per;
  for (std::size_t i = 0; i < results.size(); ++i) {
    solved += results[i].evals.has_value();
    if (i % 5 == 4) {
      std::size_t s = 0;
      for (std::size_t j = i - 4; j <= i; ++j) s += results[j].evals.has_value();
      per += " " + records[i].problem + "=" + std::to_string(s) + "/5";
    }
  }
  const double frac = static_cast<double>(solved) / static_cast<double>(results.size());
  detail = std::to_string(solved) + "/" + std::to_string(results.size()) + " solved (" + fmt("%.2f", frac) + ");" + per;
  return frac >= 0.8;
}

// ---------------------------------------------------------------- 8
bool linear_cost(std::string& detail) {
  std::vector<double> medians;
  for (Index n : {500, 1000, 2000}) {
    const Problem problem = make_problem("sphere", n);
    SolverConfig cfg;
    cfg.p = 10;
    cfg.q = 21;
    cfg.seed = 1;
    cfg.max_evals = 1200;
    std::vector<double> stamps;
    run_rsdfoq(problem, cfg, [&](const IterationLog&, const Vector&, double t) { stamps.push_back(t); });
    std::vector<double> dt;
    for (std::size_t i = 1; i < stamps.size(); ++i) dt.push_back(stamps[i] - stamps[i - 1]);
    std::nth_element(dt.begin(), dt.begin() + static_cast<std::ptrdiff_t>(dt.size() / 2), dt.end());
    medians.push_back(dt[dt.size() / 2]);
  }
  const double r1 = medians[1] / medians[0], r2 = medians[2] / medians[1];
  detail = "median s/iter " + fmt("%.3g", medians[0]) + ", " + fmt("%.3g", medians[1]) + ", " +
           fmt("%.3g", medians[2]) + "; growth per doubling " + fmt("%.2f", r1) + ", " + fmt("%.2f", r2);
  return r1 <= 2.5 && r2 <= 2.5;
}

// ---------------------------------------------------------------- 9
bool alignment_probability(std::string& detail) {
  const Index n = 100, p = 20;
  const double alpha = 0.6;
  Rng rng(909);
  const Vector grad = standard_normal_vector(n, rng);
  Eigen::HouseholderQR<Matrix> qr(Matrix::Random(n, 2));
  const Matrix v = qr.householderQ() * Matrix::Identity(n, 2);
  const Matrix hess = 3.0 * v.col(0) * v.col(0).transpose() - 1.0 * v.col(1) * v.col(1).transpose();
  const double p_max = 2.0 * std::sqrt(static_cast<double>(n) / p);

  // Independent count of the four conditions.
  std::size_t own = 0;
  for (std::uint64_t s = 0; s < 2000; ++s) {
    const SketchMatrix sk = gaussian_sketch(n, p, derive_seed(5, s));
    const Matrix& pm = sk.map;
    const double pnorm = Eigen::JacobiSVD<Matrix>(pm).singularValues()[0];
    const Vector vh1 = pm.transpose() * v.col(0);  // largest eigenvalue
    const Vector vh2 = pm.transpose() * v.col(1);  // leftmost
    const bool ok = pnorm <= p_max && (pm.transpose() * grad).norm() >= (1 - alpha) * grad.norm() &&
                    vh2.norm() >= 1 - alpha && std::pow(vh1.dot(vh2), 2) <= 4 * alpha * alpha;
    own += ok;
  }
  const double lib = estimate_alignment_probability(SketchKind::gaussian, n, p, grad, hess, alpha, p_max, 2000, 5);
  const double own_rate = static_cast<double>(own) / 2000.0;

  std::size_t falsified = 0, applicable = 0;
  for (std::uint64_t s = 0; s < 500; ++s) {
    const SketchMatrix sk = gaussian_sketch(n, p, derive_seed(6, s));
    try {
      applicable += verify_polarization_bound(sk, v.col(0), v.col(1), alpha);
    } catch (const ContractViolation&) {
      ++falsified;
    }
    // Direct check of the implication.
    const Vector a = sk.map.transpose() * v.col(0), b = sk.map.transpose() * v.col(1);
    auto keeps = [&](const Vector& w, const Vector& hw) {
      return (1 - alpha) * w.norm() <= hw.norm() && hw.norm() <= (1 + alpha) * w.norm();
    };
    const bool cond = keeps(v.col(0), a) && keeps(v.col(1), b) && keeps(v.col(0) + v.col(1), a + b) &&
                      keeps(v.col(0) - v.col(1), a - b);
    if (cond && std::abs(a.dot(b)) > 2 * alpha + 1e-12) ++falsified;
  }
  detail = "well-aligned rate " + fmt("%.4f", lib) + " (independent " + fmt("%.4f", own_rate) + "); polarization: " +
           std::to_string(falsified) + " falsified, " + std::to_string(applicable) + "/500 with hypotheses met";
  return lib >= 0.8 && std::abs(lib - own_rate) < 1e-12 && falsified == 0;
}

// ---------------------------------------------------------------- 10
bool theta_formula(std::string& detail) {
  const double alpha = 0.1, m = 1.0, eps = 1.0;
  const double r = 2.0;
  const double om = (1 - alpha) * (1 - alpha);
  const double expected = om - 4.0 * m * (r - 1.0) * alpha * alpha / (eps * om);
  const double got = theta_margin(0.1, 1.0, 2, 1.0).theta;
  detail = "theta = " + fmt("%.9f", got) + " (independent " + fmt("%.9f", expected) + ")";
  return std::abs(got - 0.760617) <= 1e-6 && std::abs(got - expected) <= 1e-12;
}

// ---------------------------------------------------------------- 11
bool monotone(const std::map<std::string, ProfileCurve>& curves) {
  for (const auto& [name, c] : curves) {
    if (!std::is_sorted(c.abscissae.begin(), c.abscissae.end())) return false;
    for (std::size_t i = 0; i < c.fractions.size(); ++i) {
      if (c.fractions[i] < 0.0 || c.fractions[i] > 1.0) return false;
      if (i > 0 && c.fractions[i] < c.fractions[i - 1]) return false;
    }
  }
  return true;
}

bool profiles(std::string& detail) {
  std::vector<std::string> errs;
  // evals_to_accuracy fixture.
  RunRecord rec;
  rec.trace = {{1, 10.0}, {20, 4.0}, {37, 1.0}, {50, 0.5}};
  if (evals_to_accuracy(rec, 10.0, 0.0, 0.1) != std::optional<std::uint64_t>(37)) errs.push_back("evals_to_accuracy");
  if (evals_to_accuracy(rec, 10.0, 0.0, 1e-3).has_value()) errs.push_back("never-solved");
  if (evals_to_accuracy(rec, 10.0, 0.0, 1.0) != std::optional<std::uint64_t>(1)) errs.push_back("tau boundary");

  // Two-solver fixture on one instance with n = 4.
  const std::vector<SolveResult> fixture = {{"A", "i", 4, 10}, {"B", "i", 4, 25}};
  const std::vector<double> betas = {1.9, 2.0, 5.0};
  const ProfileCurve da = data_profile(std::span(fixture).subspan(0, 1), betas);
  const ProfileCurve db = data_profile(std::span(fixture).subspan(1, 1), betas);
  if (da.fractions != std::vector<double>{0.0, 1.0, 1.0}) errs.push_back("data A");
  if (db.fractions != std::vector<double>{0.0, 0.0, 1.0}) errs.push_back("data B");
  const auto perf = performance_profiles(fixture);
  const ProfileCurve& pa = perf.at("A");
  const ProfileCurve& pb = perf.at("B");
  if (pa.abscissae != std::vector<double>{1.0, 2.5}) errs.push_back("perf grid");
  if (pa.fractions != std::vector<double>{1.0, 1.0}) errs.push_back("perf A");
  if (pb.fractions != std::vector<double>{0.0, 1.0}) errs.push_back("perf B");
  const std::vector<SolveResult> unsolved = {{"A", "i", 4, std::nullopt}, {"B", "i", 4, std::nullopt}};
  for (const auto& [name, c] : performance_profiles(unsolved)) {
    for (double f : c.fractions) if (f != 0.0) errs.push_back("all-infinite perf");
  }

  // Monotonicity on real campaign output.
  Suite suite;
  suite.problems = {{"sphere", 6}, {"chained_rosenbrock", 6}, {"trigonometric", 6}};
  SolverConfig q;
  q.p = 3;
  SolverConfig one;
  one.p = 3;
  suite.solvers = {{"rsdfoq", "rsdfoq", q}, {"rsdfo", "rsdfo", one}};
  CampaignOptions opt;
  opt.seeds = 3;
  opt.budget_multiplier = 50;
  opt.master_seed = 11;
  const auto records = run_campaign(suite, opt);
  std::size_t curves = 0;
  for (double tau : {1e-1, 1e-3, 1e-5}) {
    const auto res = solve_results(records, tau);
    const auto d = data_profiles(res);
    const auto p = performance_profiles(res);
    curves += d.size() + p.size();
    if (!monotone(d) || !monotone(p)) errs.push_back("monotonicity at tau " + fmt("%g", tau));
  }
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto res1 = solve_results(std::span(records).subspan(i, 1), 1e-1)[0];
    const auto res3 = solve_results(std::span(records).subspan(i, 1), 1e-3)[0];
    if (res3.evals && (!res1.evals || *res1.evals > *res3.evals)) errs.push_back("tau monotonicity");
  }
  if (errs.empty()) {
    detail = "fixture exact; " + std::to_string(curves) + " campaign curves monotone";
    return true;
  }
  detail = "mismatch:";
  for (const auto& e : errs) detail += " " + e;
  return false;
}

// ---------------------------------------------------------------- 12
std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

bool determinism(std::string& detail) {
  if (g_cli.empty()) {
    detail = "no --cli path given";
    return false;
  }
  const fs::path dir = g_work / "determinism";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const fs::path suite = dir / "suite.json";
  std::ofstream(suite) << R"({"problems":[{"name":"sphere","n":8},{"name":"saddle_quartic","n":6}],)"
                       << R"("solvers":[{"name":"q","algorithm":"rsdfoq","config":{"p":3}},)"
                       << R"({"name":"one","algorithm":"rsdfo","config":{"p":2}}]})";
  auto run = [&](const char* out, int jobs) {
    const std::string cmd = "\"" + g_cli + "\" bench --suite \"" + suite.string() +
                            "\" --seeds 3 --budget-mult 60 --time-cap 60 --seed 42 --jobs " + std::to_string(jobs) +
                            " --out \"" + (dir / out).string() + "\" > /dev/null";
    return std::system(cmd.c_str());
  };
  if (run("a", 1) != 0 || run("b", 2) != 0) {
    detail = "bench command failed";
    return false;
  }
  std::size_t files = 0;
  for (const auto& entry : fs::directory_iterator(dir / "a")) {
    const fs::path other = dir / "b" / entry.path().filename();
    if (!fs::exists(other) || slurp(entry.path()) != slurp(other)) {
      detail = "store differs at " + entry.path().filename().string();
      return false;
    }
    ++files;
  }
  std::size_t files_b = 0;
  for ([[maybe_unused]] const auto& entry : fs::directory_iterator(dir / "b")) ++files_b;
  detail = std::to_string(files) + " files byte-identical across two runs (1 and 2 jobs)";
  return files == files_b && files > 0;
}

struct Criterion {
  int id;
  const char* name;
  double time_limit;  // seconds
  std::function<bool(std::string&)> check;
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  g_work = fs::temp_directory_path() / "rsdfo_acceptance";
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--only" && i + 1 < argc) only = std::atoi(argv[++i]);
    else if (a == "--cli" && i + 1 < argc) g_cli = argv[++i];
    else if (a == "--work" && i + 1 < argc) g_work = argv[++i];
    else {
      std::cerr << "usage: acceptance [--only N] [--cli PATH] [--work DIR]\n";
      return 2;
    }
  }
  const std::vector<Criterion> all = {
      {1, "interpolation exactness", 10, interpolation_exactness},
      {2, "minimum Frobenius norm optimality", 30, mfn_optimality},
      {3, "fully linear / fully quadratic error scaling", 30, model_error_scaling},
      {4, "trust-region decrease certificates", 60, trs_certificates},
      {5, "first-order convergence", 120, first_order_convergence},
      {6, "second-order saddle escape", 120, second_order_escape},
      {7, "RSDFO-Q practical performance", 900, practical_performance},
      {8, "linear-in-n iteration cost", 600, linear_cost},
      {9, "sketch alignment probability", 60, alignment_probability},
      {10, "theta margin", 1, theta_formula},
      {11, "profiles", 10, profiles},
      {12, "campaign determinism", 120, determinism},
  };
  int failed = 0;
  for (const auto& c : all) {
    if (only && c.id != only) continue;
    std::string detail;
    bool ok = false;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      ok = c.check(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (ok && secs > c.time_limit) {
      ok = false;
      detail += "; over the " + fmt("%.0f", c.time_limit) + " s limit";
    }
    std::printf("%s criterion %d: %s: %s [%.1f s]\n", ok ? "PASS" : "FAIL", c.id, c.name, detail.c_str(), secs);
    std::fflush(stdout);
    failed += !ok;
  }
  return failed == 0 ? 0 : 1;
}
