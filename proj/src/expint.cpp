#include "expgof/expint.hpp"

#include <cmath>
#include <limits>

#include "expgof/errors.hpp"
#include "expgof/numerics.hpp"

namespace expgof {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// sum_{k>=1} x^k / (k k!)
double ei_power_sum(double x) {
  double term = 1.0, sum = 0.0;
  for (int k = 1; k < 1000; ++k) {
    term *= x / k;
    const double add = term / k;
    sum += add;
    if (std::abs(add) < kEps * 1e-2 * std::abs(sum)) break;
  }
  return sum;
}

// e^{z} E1(z) for z > 1 by the continued fraction (modified Lentz).
double scaled_e1_cf(double z) {
  const double tiny = 1e-300;
  double b = z + 1.0;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 10000; ++i) {
    const double an = -static_cast<double>(i) * i;
    b += 2.0;
    d = 1.0 / (an * d + b);
    c = b + an / c;
    const double del = c * d;
    h *= del;
    if (std::abs(del - 1.0) < kEps) return h;
  }
  throw NumericalError("expint: continued fraction did not converge", z);
}

// e^{-x} Ei(x) for large positive x: (1/x) sum k!/x^k.
double scaled_ei_asymptotic(double x) {
  double term = 1.0, sum = 1.0;
  for (int k = 1; k < 200; ++k) {
    const double next = term * k / x;
    if (next > term) break;
    term = next;
    sum += term;
    if (term < kEps * 1e-2 * sum) break;
  }
  return sum / x;
}

constexpr double kSeriesLimit = 40.0;

}  // namespace

double expint_ei(double x) {
  if (x == 0.0) throw DomainError("expint_ei: pole at x = 0");
  if (std::isnan(x)) return x;
  if (x < 0.0) {
    const double z = -x;
    if (z <= 1.0) return kEulerGamma + std::log(z) + ei_power_sum(x);
    return -scaled_e1_cf(z) * std::exp(-z);
  }
  if (x <= kSeriesLimit) return kEulerGamma + std::log(x) + ei_power_sum(x);
  return scaled_ei_asymptotic(x) * std::exp(x);
}

double expint_ei_scaled(double x) {
  if (x == 0.0) throw DomainError("expint_ei_scaled: pole at x = 0");
  if (std::isnan(x)) return x;
  if (x < 0.0) {
    const double z = -x;
    if (z <= 1.0) return std::exp(z) * (kEulerGamma + std::log(z) + ei_power_sum(x));
    return -scaled_e1_cf(z);
  }
  if (x <= kSeriesLimit) return std::exp(-x) * (kEulerGamma + std::log(x) + ei_power_sum(x));
  return scaled_ei_asymptotic(x);
}

}  // namespace expgof
