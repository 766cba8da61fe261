#include "expgof/eigen.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include <boost/math/special_functions/erf.hpp>

#include "expgof/errors.hpp"
#include "expgof/expint.hpp"

namespace expgof {
namespace {

void check_rung(std::size_t m, double B) {
  if (m < 100) throw DomainError("eigen ladder: grid size m must be at least 100");
  if (!(std::exp(-B) < 1e-8)) throw DomainError("eigen ladder: truncation point B too small (need e^{-B} < 1e-8)");
}

// Lattice tables for h2_tilde at u = i h, v = j h.
Eigen::MatrixXd md_lattice(double a, const NystromGrid& grid, double norm) {
  const std::size_t n = grid.nodes.size();
  const std::size_t top = 3 * n;
  const double h = grid.nodes.size() > 1 ? grid.nodes[1] - grid.nodes[0] : 0.0;
  std::vector<double> half(top), full(top), mid(top), inv(top), ex(top), ratio(top);
  for (std::size_t k = 0; k < top; ++k) {
    const double x = h * static_cast<double>(k);
    half[k] = expint_s(0.5 * (a + x));
    full[k] = expint_s(a + x);
    mid[k] = expint_s(0.5 * a + x);
    inv[k] = 1.0 / (a + x);
    ex[k] = std::exp(-x);
    ratio[k] = (2.0 * a + 4.0 * (1.0 + x)) / (a + 2.0 * x);
  }
  const double sa = expint_s(a);
  std::vector<double> root(n);
  for (std::size_t i = 0; i < n; ++i) root[i] = std::sqrt(grid.masses[i] / norm);
  Eigen::MatrixXd out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = h * static_cast<double>(i);
    for (std::size_t j = i; j < n; ++j) {
      const double v = h * static_cast<double>(j);
      const double eu = ex[i], ev = ex[j];
      const double t1 = 3.0 + inv[i + j] - 2.0 * eu * inv[2 * i + j] - 2.0 * ev * inv[i + 2 * j] - (4.0 - a) * sa;
      const double t2 = half[j] - eu * half[2 * i + j];
      const double t3 = 4.0 * eu * full[2 * i] - full[i];
      const double t4 = half[i] - ev * half[i + 2 * j];
      const double t5 = 4.0 * ev * full[2 * j] - full[j];
      const double t6 = eu * ev * ratio[i + j] - 2.0 * (eu + ev);
      const double t7 = -(4.0 + a + 2.0 * u) * eu * mid[i] + (a + 4.0) * mid[0] +
                        (a + 4.0 + 2.0 * (u + v)) * eu * ev * mid[i + j] - (4.0 + a + 2.0 * v) * ev * mid[j];
      const double val = (t1 + t2 + t3 + t4 + t5 + t6 + t7) / 6.0 * root[i] * root[j];
      out(i, j) = val;
      out(j, i) = val;
    }
  }
  return out;
}

Eigen::MatrixXd mp_lattice(double a, const NystromGrid& grid, double norm) {
  const std::size_t n = grid.nodes.size();
  const double h = n > 1 ? grid.nodes[1] - grid.nodes[0] : 0.0;
  std::vector<double> es(2 * n), ex(n);
  for (std::size_t k = 0; k < 2 * n; ++k) es[k] = expint_ei_scaled(a + h * static_cast<double>(k));
  for (std::size_t k = 0; k < n; ++k) ex[k] = std::exp(-h * static_cast<double>(k));
  const double sa = expint_s(a), ea = es[0];
  std::vector<double> root(n);
  for (std::size_t i = 0; i < n; ++i) root[i] = std::sqrt(grid.masses[i] / norm);
  Eigen::MatrixXd out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = h * static_cast<double>(i);
    for (std::size_t j = i; j < n; ++j) {
      const double y = h * static_cast<double>(j);
      const double exx = ex[i], ey = ex[j];
      const double first = sa * (a * (1.0 - 2.0 * exx) * (1.0 - 2.0 * ey) - exx - ey + 4.0 * exx * ey);
      const double second = ea * (4.0 * (a - 1.0) * exx * ey + exx + ey) - es[i] * (4.0 * (a + x - 1.0) * ey + 1.0) -
                            es[j] * (4.0 * (a + y - 1.0) * exx + 1.0) + 4.0 * (a + x + y - 1.0) * es[i + j];
      const double k = (first + second) / 6.0 - 0.5 + (exx + ey) / 3.0 + 1.0 / (6.0 * (a + x + y));
      const double val = k * root[i] * root[j];
      out(i, j) = val;
      out(j, i) = val;
    }
  }
  return out;
}

}  // namespace

NystromGrid make_grid(MeasureKind kind, double a, std::size_t m, double B) {
  if (m < 1) throw DomainError("make_grid: m must be positive");
  double T = B;
  if (kind == MeasureKind::ExpWeight) T = B / a;
  if (kind == MeasureKind::GaussWeight) T = std::sqrt(B / a);
  NystromGrid g;
  g.step = T / static_cast<double>(m);
  g.nodes.resize(m + 1);
  g.masses.resize(m + 1);
  for (std::size_t i = 0; i <= m; ++i) {
    const double t = T * static_cast<double>(i) / static_cast<double>(m);
    g.nodes[i] = t;
    const double lo = std::max(0.0, t - 0.5 * g.step);
    const double hi = std::min(T, t + 0.5 * g.step);
    switch (kind) {
      case MeasureKind::ExpProbability: g.masses[i] = std::exp(-lo) - std::exp(-hi); break;
      case MeasureKind::ExpWeight: g.masses[i] = (std::exp(-a * lo) - std::exp(-a * hi)) / a; break;
      case MeasureKind::GaussWeight: {
        const double r = std::sqrt(a);
        g.masses[i] = std::sqrt(kPi) / (2.0 * r) * (boost::math::erf(r * hi) - boost::math::erf(r * lo));
        break;
      }
      case MeasureKind::Lebesgue: g.masses[i] = hi - lo; break;
    }
  }
  return g;
}

Eigen::MatrixXd nystrom_matrix(const NystromGrid& grid, const Fn2& kernel) {
  const std::size_t n = grid.nodes.size();
  std::vector<double> root(n);
  for (std::size_t i = 0; i < n; ++i) root[i] = std::sqrt(grid.masses[i]);
  Eigen::MatrixXd out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      const double v = root[i] * kernel(grid.nodes[i], grid.nodes[j]) * root[j];
      out(i, j) = v;
      out(j, i) = v;
    }
  return out;
}

std::string format_trace(const std::vector<LadderRung>& trace) {
  std::ostringstream os;
  os.precision(10);
  for (const auto& r : trace) {
    os << "(m=" << r.m << ", B=" << r.B << ", delta=" << r.delta;
    if (std::isfinite(r.extrapolated)) os << ", extrapolated=" << r.extrapolated;
    os << ") ";
  }
  return os.str();
}

double largest_eigenvalue_dense(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericalError("dense eigensolver failed");
  return solver.eigenvalues().maxCoeff();
}

double largest_eigenvalue(const Eigen::MatrixXd& A, double tol) {
  const Eigen::Index n = A.rows();
  if (n <= 64) return largest_eigenvalue_dense(A);
  const Eigen::Index kmax = std::min<Eigen::Index>(n, 400);
  Eigen::MatrixXd V(n, kmax + 1);
  std::vector<double> alpha, beta;
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = 1.0 + 0.25 * std::sin(static_cast<double>(i) + 1.0);
  V.col(0) = v.normalized();
  double theta = -std::numeric_limits<double>::infinity();
  for (Eigen::Index k = 0; k < kmax; ++k) {
    Eigen::VectorXd w = A * V.col(k);
    alpha.push_back(V.col(k).dot(w));
    for (int pass = 0; pass < 2; ++pass) {
      const Eigen::VectorXd c = V.leftCols(k + 1).transpose() * w;
      w -= V.leftCols(k + 1) * c;
    }
    beta.push_back(w.norm());
    const Eigen::Index dim = k + 1;
    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
      T(i, i) = alpha[i];
      if (i + 1 < dim) T(i, i + 1) = T(i + 1, i) = beta[i];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri(T);
    const Eigen::Index top = dim - 1;
    theta = tri.eigenvalues()(top);
    const double residual = std::abs(beta[k] * tri.eigenvectors()(dim - 1, top));
    if (residual <= tol * std::max(std::abs(theta), std::numeric_limits<double>::min()) ||
        beta[k] <= std::numeric_limits<double>::epsilon() * std::abs(theta))
      return theta;
    V.col(k + 1) = w / beta[k];
  }
  if (kmax == n) return theta;
  throw NumericalError("Lanczos iteration did not converge", theta);
}

EigenApproximation eigen_matrix(double a, std::size_t m, double B) {
  if (!(a > 0.0)) throw DomainError("eigen_matrix: a must be positive");
  check_rung(m, B);
  const NystromGrid grid = make_grid(MeasureKind::ExpProbability, a, m, B);
  EigenApproximation out;
  out.a = a;
  out.m = m;
  out.B = B;
  out.matrix = md_lattice(a, grid, -std::expm1(-B));
  return out;
}

Eigen::MatrixXd eigen_matrix_for_kernel(const Fn2& kernel, std::size_t m, double B) {
  check_rung(m, B);
  const NystromGrid grid = make_grid(MeasureKind::ExpProbability, 1.0, m, B);
  const double scale = 1.0 / -std::expm1(-B);
  return nystrom_matrix(grid, kernel) * scale;
}

LadderResult run_ladder(const MatrixBuilder& build, const LadderOptions& opts) {
  LadderResult res;
  double prev_step = 0.0, prev_delta = 0.0;
  double prev_extrap = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t r = 0; r < opts.rungs.size(); ++r) {
    const auto [m, B] = opts.rungs[r];
    check_rung(m, B);
    double step = 0.0;
    double delta;
    {
      const Eigen::MatrixXd mat = build(m, B, step);
      delta = largest_eigenvalue(mat);
    }
    LadderRung rung{m, B, delta, std::numeric_limits<double>::quiet_NaN()};
    if (r > 0) {
      const double h1 = prev_step * prev_step, h2 = step * step;
      rung.extrapolated = (h1 * delta - h2 * prev_delta) / (h1 - h2);
    }
    res.trace.push_back(rung);
    if (r > 1 && std::abs(rung.extrapolated - prev_extrap) <= opts.rel_tol * std::abs(rung.extrapolated)) {
      res.value = rung.extrapolated;
      return res;
    }
    prev_step = step;
    prev_delta = delta;
    prev_extrap = rung.extrapolated;
  }
  throw NumericalError("eigenvalue ladder did not converge: " + format_trace(res.trace),
                       res.trace.empty() ? 0.0 : res.trace.back().extrapolated, format_trace(res.trace));
}

LadderResult largest_eigenvalue_delta1(double a, const LadderOptions& opts) {
  if (!(a > 0.0)) throw DomainError("largest_eigenvalue_delta1: a must be positive");
  return run_ladder(
      [a](std::size_t m, double B, double& step) {
        const NystromGrid grid = make_grid(MeasureKind::ExpProbability, a, m, B);
        step = grid.step;
        return md_lattice(a, grid, -std::expm1(-B));
      },
      opts);
}

LadderResult largest_eigenvalue_mp(double a, const LadderOptions& opts) {
  if (!(a > 0.0)) throw DomainError("largest_eigenvalue_mp: a must be positive");
  return run_ladder(
      [a](std::size_t m, double B, double& step) {
        const NystromGrid grid = make_grid(MeasureKind::ExpProbability, a, m, B);
        step = grid.step;
        return mp_lattice(a, grid, -std::expm1(-B));
      },
      opts);
}

LadderResult largest_eigenvalue_l2(L2Kind kind, double a, const LadderOptions& opts) {
  if (l2_tuned(kind) && !(a > 0.0)) throw DomainError("largest_eigenvalue_l2: a must be positive");
  MeasureKind measure = MeasureKind::Lebesgue;
  if (l2_weight(kind) == WeightKind::Exponential) measure = MeasureKind::ExpWeight;
  if (l2_weight(kind) == WeightKind::Gaussian) measure = MeasureKind::GaussWeight;
  return run_ladder(
      [kind, a, measure](std::size_t m, double B, double& step) {
        const NystromGrid grid = make_grid(measure, a, m, B);
        step = grid.step;
        return nystrom_matrix(grid, [kind](double s, double t) { return l2_covariance(kind, s, t); });
      },
      opts);
}

CovarianceHandle sup_variance(double a) {
  if (!(a > 0.0)) throw DomainError("sup_variance: a must be positive");
  const Maximum best =
      maximize_scan([a](double t) { return covariance_K(t, t, a); }, 1e-4, 40.0 / a, 512, 1e-10, true);
  return {a, best.value, best.argmax};
}

}  // namespace expgof
