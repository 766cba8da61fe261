#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "expgof/kernels.hpp"
#include "expgof/numerics.hpp"

namespace expgof {

// Measure against which a kernel operator is discretized.
enum class MeasureKind {
  ExpProbability,  // Exp(1) law, renormalized on [0, B]
  ExpWeight,       // e^{-a t} dt on [0, B/a]
  GaussWeight,     // e^{-a t^2} dt on [0, sqrt(B/a)]
  Lebesgue,        // dt on [0, B]
};

// Equal-width nodes t_i = T i/m, i = 0..m, with masses of the cells centred
// on the nodes (half cells at both ends).
struct NystromGrid {
  std::vector<double> nodes;
  std::vector<double> masses;
  double step = 0.0;  // node spacing in units of the measure's natural scale
};

NystromGrid make_grid(MeasureKind kind, double a, std::size_t m, double B);

// M_ij = sqrt(p_i) k(t_i, t_j) sqrt(p_j).
Eigen::MatrixXd nystrom_matrix(const NystromGrid& grid, const Fn2& kernel);

struct LadderRung {
  std::size_t m = 0;
  double B = 0.0;
  double delta = 0.0;         // largest eigenvalue at this rung
  double extrapolated = 0.0;  // h^2 Richardson value using the previous rung (NaN on the first)
};

struct EigenApproximation {
  double a = 0.0;
  std::size_t m = 0;
  double B = 0.0;
  Eigen::MatrixXd matrix;
  double delta1 = 0.0;
  std::vector<LadderRung> trace;
};

struct LadderOptions {
  std::vector<std::pair<std::size_t, double>> rungs{{500, 25.0}, {1000, 25.0}, {2000, 30.0}, {3000, 30.0}, {4000, 30.0}};
  double rel_tol = 1e-4;
};

std::string format_trace(const std::vector<LadderRung>& trace);

// Largest algebraic eigenvalue of a symmetric matrix by Lanczos iteration with
// full reorthogonalization.
double largest_eigenvalue(const Eigen::MatrixXd& m, double tol = 1e-12);

// Dense reference solve (Eigen::SelfAdjointEigenSolver).
double largest_eigenvalue_dense(const Eigen::MatrixXd& m);

// Matrix for the second projection of the M^D kernel on the Exp(1) law:
// m_ij = h2(t_i, t_j) sqrt(p_i p_j)/(1 - e^{-B}).
EigenApproximation eigen_matrix(double a, std::size_t m, double B);

// Same construction with an arbitrary kernel (used for analytic checks).
Eigen::MatrixXd eigen_matrix_for_kernel(const Fn2& kernel, std::size_t m, double B);

// Richardson-extrapolated top eigenvalue along the ladder of (m, B) rungs.
// `build(m, B)` returns the matrix and the squared step of the rung.
struct LadderResult {
  double value = 0.0;
  std::vector<LadderRung> trace;
};
using MatrixBuilder = std::function<Eigen::MatrixXd(std::size_t m, double B, double& step)>;
LadderResult run_ladder(const MatrixBuilder& build, const LadderOptions& opts = {});

// delta_1 of the M^D limit (a_T = 1/(6 delta_1)).
LadderResult largest_eigenvalue_delta1(double a, const LadderOptions& opts = {});

// Top eigenvalue of the M^P second projection on the Exp(1) law.
LadderResult largest_eigenvalue_mp(double a, const LadderOptions& opts = {});

// Top eigenvalue of the weighted covariance operator of an L2 statistic.
LadderResult largest_eigenvalue_l2(L2Kind kind, double a, const LadderOptions& opts = {});

// sup_t K(t, t) for the L^D limit, with its maximizer.
struct CovarianceHandle {
  double a = 0.0;
  double sup_variance = 0.0;
  double argmax = 0.0;
};
CovarianceHandle sup_variance(double a);

}  // namespace expgof
