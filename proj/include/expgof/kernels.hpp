#pragma once

#include <string>

namespace expgof {

// Second projection of the M^D kernel under Exp(1), conditioned on (u, v).
double h2_tilde(double u, double v, double a);

// Second projection of the M^P kernel (Puri-Rubin characterization).
double h2_tilde_mp(double x, double y, double a);

// First projection of the L^D process kernel at time t under Exp(1).
double phi1_tilde(double x, double t, double a);

// Limiting covariance of the weighted L^D process.
double covariance_K(double s, double t, double a);

// L2-type statistics defined by a squared weighted distance. Each has a
// V-statistic kernel Phi(x, y) on scaled data and a limiting covariance K(s, t).
enum class L2Kind { CVM, AD, BH, HE, W, HM1, HM2 };

// Integration measure for the covariance operator of each L2 statistic.
enum class WeightKind {
  Lebesgue,     // weight already folded into K
  Exponential,  // e^{-a t}
  Gaussian,     // e^{-a t^2}
};

std::string l2_name(L2Kind kind);
bool l2_tuned(L2Kind kind);
WeightKind l2_weight(L2Kind kind);

// Phi(x, y) with unit mean. For a general mean mu use Phi(x/mu, y/mu).
double l2_kernel(L2Kind kind, double x, double y, double a);
double l2_covariance(L2Kind kind, double s, double t);

}  // namespace expgof
