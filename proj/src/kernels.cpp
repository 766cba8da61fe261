#include "expgof/kernels.hpp"

#include <algorithm>
#include <cmath>

#include "expgof/expint.hpp"
#include "expgof/numerics.hpp"

namespace expgof {

double h2_tilde(double u, double v, double a) {
  using std::exp;
  const double eu = exp(-u), ev = exp(-v);
  const double t1 = 3.0 + 1.0 / (a + u + v) - 2.0 * eu / (a + 2.0 * u + v) - 2.0 * ev / (a + u + 2.0 * v) -
                    (4.0 - a) * expint_s(a);
  const double t2 = expint_s(0.5 * (a + v)) - eu * expint_s(0.5 * (a + 2.0 * u + v));
  const double t3 = 4.0 * eu * expint_s(a + 2.0 * u) - expint_s(a + u);
  const double t4 = expint_s(0.5 * (a + u)) - ev * expint_s(0.5 * (a + u + 2.0 * v));
  const double t5 = 4.0 * ev * expint_s(a + 2.0 * v) - expint_s(a + v);
  const double t6 = eu * ev * (2.0 * a + 4.0 * (1.0 + u + v)) / (a + 2.0 * (u + v)) - 2.0 * (eu + ev);
  const double t7 = -(4.0 + a + 2.0 * u) * eu * expint_s(0.5 * a + u) + (a + 4.0) * expint_s(0.5 * a) +
                    (a + 4.0 + 2.0 * u + 2.0 * v) * eu * ev * expint_s(0.5 * a + u + v) -
                    (4.0 + a + 2.0 * v) * ev * expint_s(0.5 * a + v);
  return (t1 + t2 + t3 + t4 + t5 + t6 + t7) / 6.0;
}

double h2_tilde_mp(double x, double y, double a) {
  using std::exp;
  const double ex = exp(-x), ey = exp(-y);
  const double sa = expint_s(a);                 // e^{a} Ei(-a)
  const double ea = expint_ei_scaled(a);         // e^{-a} Ei(a)
  const double eax = expint_ei_scaled(a + x);    // e^{-a-x} Ei(a+x)
  const double eay = expint_ei_scaled(a + y);
  const double eaxy = expint_ei_scaled(a + x + y);
  const double first = sa * (a * (1.0 - 2.0 * ex) * (1.0 - 2.0 * ey) - ex - ey + 4.0 * ex * ey);
  const double second = ea * (4.0 * (a - 1.0) * ex * ey + ex + ey) -
                        eax * (4.0 * (a + x - 1.0) * ey + 1.0) - eay * (4.0 * (a + y - 1.0) * ex + 1.0) +
                        4.0 * (a + x + y - 1.0) * eaxy;
  return (first + second) / 6.0 - 0.5 + (ex + ey) / 3.0 + 1.0 / (6.0 * (a + x + y));
}

double phi1_tilde(double x, double t, double a) {
  const double c = 2.0 * t + 1.0;
  const double tail = std::exp(-c * x);
  const double pair_min = -std::expm1(-c * x) / c + tail;
  return std::exp(-a * t) * (0.5 * (std::exp(-t * x) + 1.0 / (1.0 + t)) - pair_min);
}

double covariance_K(double s, double t, double a) {
  const double num = s * t *
                     (4.0 + 8.0 * s + 4.0 * s * s + 8.0 * t + 15.0 * s * t + 6.0 * s * s * t + 4.0 * t * t +
                      6.0 * s * t * t);
  const double den = 4.0 * (1.0 + s) * (1.0 + t) * (1.0 + s + t) * (2.0 + 2.0 * s + t) * (2.0 + s + 2.0 * t) *
                     (3.0 + 2.0 * s + 2.0 * t);
  return std::exp(-a * (s + t)) * num / den;
}

std::string l2_name(L2Kind kind) {
  switch (kind) {
    case L2Kind::CVM: return "CVM";
    case L2Kind::AD: return "AD";
    case L2Kind::BH: return "BH";
    case L2Kind::HE: return "HE";
    case L2Kind::W: return "W";
    case L2Kind::HM1: return "HM1";
    case L2Kind::HM2: return "HM2";
  }
  return "?";
}

bool l2_tuned(L2Kind kind) { return kind != L2Kind::CVM && kind != L2Kind::AD; }

WeightKind l2_weight(L2Kind kind) {
  switch (kind) {
    case L2Kind::CVM:
    case L2Kind::AD: return WeightKind::Lebesgue;
    case L2Kind::HM2: return WeightKind::Gaussian;
    default: return WeightKind::Exponential;
  }
}

double l2_kernel(L2Kind kind, double x, double y, double a) {
  using std::exp;
  switch (kind) {
    case L2Kind::CVM:
      return exp(-std::max(x, y)) - exp(-x) - exp(-y) + 0.5 * (exp(-2.0 * x) + exp(-2.0 * y)) + 1.0 / 3.0;
    case L2Kind::AD:
      return std::min(x, y) - 1.0 - std::log(-std::expm1(-std::max(x, y)));
    case L2Kind::BH: {
      const double s = x + y + a;
      return (1.0 - x) * (1.0 - y) / s - (x + y - 2.0 * x * y) / (s * s) + 2.0 * x * y / (s * s * s);
    }
    case L2Kind::HE:
      return 1.0 + 1.0 / (a + x + y) + a * expint_s(a) + expint_s(a + x) + expint_s(a + y);
    case L2Kind::W: {
      const double s = a + x + y;
      return 1.0 / a - (1.0 + a + x) / ((a + x) * (a + x)) - (1.0 + a + y) / ((a + y) * (a + y)) +
             2.0 / (s * s * s) + 2.0 / (s * s) + 1.0 / s;
    }
    case L2Kind::HM1: {
      const double d = (x - y) * (x - y), p = (x + y) * (x + y), A = a * a;
      const double ad = A + d, ap = A + p;
      return a / (2.0 * ad) - a / (2.0 * ap) + a * (A - 3.0 * d) / (ad * ad * ad) +
             a * (A - 3.0 * p) / (ap * ap * ap) - 2.0 * a * (x + y) / (ap * ap);
    }
    case L2Kind::HM2: {
      const double d = (x - y) * (x - y), p = (x + y) * (x + y);
      const double first = (0.5 / a - (x + y) / a - p / (4.0 * a * a) - 1.0) * exp(-p / (4.0 * a));
      const double second = (1.0 + 0.5 / a - d / (4.0 * a * a)) * exp(-d / (4.0 * a));
      return std::sqrt(kPi) / (4.0 * std::sqrt(a)) * (first + second);
    }
  }
  return 0.0;
}

double l2_covariance(L2Kind kind, double s, double t) {
  using std::exp;
  switch (kind) {
    case L2Kind::CVM:
      return exp(-1.5 * (s + t)) * (std::expm1(std::min(s, t)) - s * t);
    case L2Kind::AD: {
      if (s <= 0.0 || t <= 0.0) return 0.0;
      const double num = exp(-s - t) * (std::expm1(std::min(s, t)) - s * t);
      return num / std::sqrt(-std::expm1(-s) * -std::expm1(-t));
    }
    case L2Kind::BH: {
      const double u = 1.0 + s + t;
      return (u + 2.0 * s * t) / (u * u * u) - 1.0 / ((1.0 + s) * (1.0 + s) * (1.0 + t) * (1.0 + t));
    }
    case L2Kind::HE:
      return s * s * t * t / ((s + t + 1.0) * (s + 1.0) * (s + 1.0) * (t + 1.0) * (t + 1.0));
    case L2Kind::W:
      return s * s * t * t / ((s + t + 1.0) * (s + 1.0) * (t + 1.0));
    case L2Kind::HM1:
    case L2Kind::HM2: {
      const double dm = 1.0 + (s - t) * (s - t), dp = 1.0 + (s + t) * (s + t);
      return s * t * (s * s + t * t + 1.0) / (dm * dp) - s * t / ((1.0 + s * s) * (1.0 + t * t));
    }
  }
  return 0.0;
}

}  // namespace expgof
