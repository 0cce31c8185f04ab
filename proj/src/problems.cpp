#include "rsdfo/problems.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "rsdfo/error.hpp"
#include "rsdfo/numerics.hpp"
#include "rsdfo/random.hpp"

namespace rsdfo {

Problem::Problem(std::string name, Objective objective, Vector x0, double f_min, Gradient gradient,
                 Hessian hessian)
    : name_(std::move(name)),
      objective_(std::move(objective)),
      gradient_(std::move(gradient)),
      hessian_(std::move(hessian)),
      x0_(std::move(x0)),
      f_min_(f_min),
      counter_(std::make_unique<std::atomic<std::uint64_t>>(0)) {
  if (!objective_) throw ParameterError("Problem: objective is required");
  if (x0_.size() < 1) throw ParameterError("Problem: empty starting point");
}

void Problem::set_x0(Vector x0) {
  if (x0.size() != x0_.size()) throw ParameterError("Problem::set_x0: dimension mismatch");
  x0_ = std::move(x0);
}

double Problem::operator()(const Vector& x) const {
  counter_->fetch_add(1, std::memory_order_relaxed);
  return objective_(x);
}

Vector Problem::gradient(const Vector& x) const {
  if (!gradient_) throw UnsupportedDiagnostic("problem '" + name_ + "' has no gradient oracle");
  return gradient_(x);
}

Matrix Problem::hessian(const Vector& x) const {
  if (!hessian_) throw UnsupportedDiagnostic("problem '" + name_ + "' has no Hessian oracle");
  return hessian_(x);
}

namespace {

Problem sphere(Index n) {
  return Problem(
      "sphere", [](const Vector& x) { return x.squaredNorm(); }, Vector::Ones(n), 0.0,
      [](const Vector& x) { return Vector(2.0 * x); },
      [](const Vector& x) { return Matrix(2.0 * Matrix::Identity(x.size(), x.size())); });
}

Problem chained_rosenbrock(Index n) {
  Vector x0(n);
  for (Index i = 0; i < n; ++i) x0[i] = (i % 2 == 0) ? -1.2 : 1.0;
  auto f = [](const Vector& x) {
    double s = 0.0;
    for (Index i = 0; i + 1 < x.size(); ++i) {
      const double a = x[i + 1] - x[i] * x[i];
      const double b = 1.0 - x[i];
      s += 100.0 * a * a + b * b;
    }
    return s;
  };
  auto g = [](const Vector& x) {
    Vector out = Vector::Zero(x.size());
    for (Index i = 0; i + 1 < x.size(); ++i) {
      const double a = x[i + 1] - x[i] * x[i];
      out[i] += -400.0 * x[i] * a - 2.0 * (1.0 - x[i]);
      out[i + 1] += 200.0 * a;
    }
    return out;
  };
  auto h = [](const Vector& x) {
    const Index n = x.size();
    Matrix out = Matrix::Zero(n, n);
    for (Index i = 0; i + 1 < n; ++i) {
      out(i, i) += 1200.0 * x[i] * x[i] - 400.0 * x[i + 1] + 2.0;
      out(i, i + 1) += -400.0 * x[i];
      out(i + 1, i) += -400.0 * x[i];
      out(i + 1, i + 1) += 200.0;
    }
    return out;
  };
  return Problem("chained_rosenbrock", f, x0, 0.0, g, h);
}

Problem low_rank_quadratic(Index n, Index r) {
  if (r < 1 || r > n) throw CatalogError("low_rank_quadratic: rank must be in [1, n]");
  // Fixed frame per (n, r) so every run sees the same function.
  Rng rng(derive_seed(0x4c52515544ULL, static_cast<std::uint64_t>(n) * 100003ULL + static_cast<std::uint64_t>(r)));
  Matrix g(n, r);
  for (Index j = 0; j < r; ++j) g.col(j) = standard_normal_vector(n, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix u = qr.householderQ() * Matrix::Identity(n, r);
  Vector lambda(r);
  for (Index j = 0; j < r; ++j) {
    lambda[j] = r == 1 ? 1.0 : std::pow(10.0, 2.0 * static_cast<double>(j) / static_cast<double>(r - 1));
  }
  auto f = [u, lambda](const Vector& x) {
    const Vector c = u.transpose() * x;
    return 0.5 * c.dot(lambda.cwiseProduct(c));
  };
  auto grad = [u, lambda](const Vector& x) {
    const Vector c = u.transpose() * x;
    return Vector(u * lambda.cwiseProduct(c));
  };
  auto hess = [u, lambda](const Vector&) { return Matrix(u * lambda.asDiagonal() * u.transpose()); };
  return Problem("low_rank_quadratic(" + std::to_string(r) + ")", f, Vector::Ones(n), 0.0, grad, hess);
}

Problem saddle_quartic(Index n) {
  auto f = [](const Vector& x) {
    double s = x[0] * x[0] - x[1] * x[1] + x[1] * x[1] * x[1] * x[1];
    for (Index i = 2; i < x.size(); ++i) s += x[i] * x[i];
    return s;
  };
  auto g = [](const Vector& x) {
    Vector out = 2.0 * x;
    out[1] = -2.0 * x[1] + 4.0 * x[1] * x[1] * x[1];
    return out;
  };
  auto h = [](const Vector& x) {
    Matrix out = 2.0 * Matrix::Identity(x.size(), x.size());
    out(1, 1) = -2.0 + 12.0 * x[1] * x[1];
    return out;
  };
  return Problem("saddle_quartic", f, Vector::Ones(n), -0.25, g, h);
}

Problem sum_of_powers(Index n) {
  Vector e(n);
  for (Index i = 0; i < n; ++i) {
    e[i] = 2.0 + 4.0 * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  auto f = [e](const Vector& x) {
    double s = 0.0;
    for (Index i = 0; i < x.size(); ++i) s += std::pow(std::abs(x[i]), e[i]);
    return s;
  };
  auto g = [e](const Vector& x) {
    Vector out(x.size());
    for (Index i = 0; i < x.size(); ++i) {
      const double a = std::abs(x[i]);
      out[i] = a == 0.0 ? 0.0 : std::copysign(e[i] * std::pow(a, e[i] - 1.0), x[i]);
    }
    return out;
  };
  auto h = [e](const Vector& x) {
    Matrix out = Matrix::Zero(x.size(), x.size());
    for (Index i = 0; i < x.size(); ++i) {
      out(i, i) = e[i] * (e[i] - 1.0) * std::pow(std::abs(x[i]), e[i] - 2.0);
    }
    return out;
  };
  return Problem("sum_of_powers", f, Vector::Ones(n), 0.0, g, h);
}

// Residuals r_i = n - sum_j cos x_j + i (1 - cos x_i) - sin x_i, 1-based i.
Vector trig_residuals(const Vector& x) {
  const Index n = x.size();
  const double csum = x.array().cos().sum();
  Vector r(n);
  for (Index i = 0; i < n; ++i) {
    r[i] = static_cast<double>(n) - csum + static_cast<double>(i + 1) * (1.0 - std::cos(x[i])) - std::sin(x[i]);
  }
  return r;
}

Problem trigonometric(Index n) {
  auto f = [](const Vector& x) { return trig_residuals(x).squaredNorm(); };
  auto g = [](const Vector& x) {
    const Vector r = trig_residuals(x);
    const double rsum = r.sum();
    Vector out(x.size());
    for (Index j = 0; j < x.size(); ++j) {
      const double d = static_cast<double>(j + 1) * std::sin(x[j]) - std::cos(x[j]);
      out[j] = 2.0 * (std::sin(x[j]) * rsum + d * r[j]);
    }
    return out;
  };
  auto h = [](const Vector& x) {
    const Index n = x.size();
    const Vector r = trig_residuals(x);
    const double rsum = r.sum();
    Matrix jac(n, n);
    for (Index i = 0; i < n; ++i) jac.row(i) = x.array().sin().matrix().transpose();
    for (Index i = 0; i < n; ++i) jac(i, i) += static_cast<double>(i + 1) * std::sin(x[i]) - std::cos(x[i]);
    Matrix out = jac.transpose() * jac;
    for (Index j = 0; j < n; ++j) {
      out(j, j) += rsum * std::cos(x[j]) + r[j] * (static_cast<double>(j + 1) * std::cos(x[j]) + std::sin(x[j]));
    }
    return Matrix(2.0 * out);
  };
  return Problem("trigonometric", f, Vector::Constant(n, 1.0 / static_cast<double>(n)), 0.0, g, h);
}

}  // namespace

Problem make_problem(std::string_view name, Index n) {
  if (n < 2) throw CatalogError("problem dimension must be at least 2");
  if (name == "sphere") return sphere(n);
  if (name == "chained_rosenbrock") return chained_rosenbrock(n);
  if (name == "saddle_quartic") return saddle_quartic(n);
  if (name == "sum_of_powers") return sum_of_powers(n);
  if (name == "trigonometric") return trigonometric(n);
  if (name == "low_rank_quadratic") return low_rank_quadratic(n, std::min<Index>(5, n));
  constexpr std::string_view prefix = "low_rank_quadratic(";
  if (name.starts_with(prefix) && name.ends_with(")")) {
    const std::string_view digits = name.substr(prefix.size(), name.size() - prefix.size() - 1);
    long r = 0;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), r);
    if (ec != std::errc() || ptr != digits.data() + digits.size()) {
      throw CatalogError("bad rank in '" + std::string(name) + "'");
    }
    return low_rank_quadratic(n, static_cast<Index>(r));
  }
  throw CatalogError("unknown problem '" + std::string(name) + "'");
}

std::vector<CatalogEntry> problem_catalog() {
  return {
      {"sphere", 2, "0", "ones", "||x||^2"},
      {"chained_rosenbrock", 2, "0", "(-1.2, 1, -1.2, ...)",
       "sum_i 100 (x_{i+1} - x_i^2)^2 + (1 - x_i)^2"},
      {"low_rank_quadratic(r)", 2, "0", "ones",
       "0.5 x^T U diag(lambda) U^T x, U seeded orthonormal n x r, lambda log-spaced in [1, 100], default r = min(5, n)"},
      {"saddle_quartic", 2, "-1/4", "ones", "x_1^2 - x_2^2 + x_2^4 + sum_{i>=3} x_i^2"},
      {"sum_of_powers", 2, "0", "ones", "sum_i |x_i|^(2 + 4 (i-1)/(n-1))"},
      {"trigonometric", 2, "0", "1/n", "sum_i (n - sum_j cos x_j + i (1 - cos x_i) - sin x_i)^2"},
  };
}

CriticalityReport true_criticality(const Problem& problem, const Vector& x) {
  const Vector g = problem.gradient(x);
  const Matrix h = problem.hessian(x);
  const double grad_norm = g.norm();
  const double tau = std::max(-min_eigenpair(h).value, 0.0);
  return {std::max(grad_norm, tau), grad_norm, tau};
}

}  // namespace rsdfo
