#include <cmath>

#include <boost/math/special_functions/expint.hpp>
#include <gtest/gtest.h>

#include "expgof/errors.hpp"
#include "expgof/expint.hpp"

using namespace expgof;

TEST(Expint, KnownValues) {
  EXPECT_NEAR(expint_ei(1.0), 1.8951178163559368, 1e-15);
  EXPECT_NEAR(expint_ei(-1.0), -0.21938393439552029, 1e-15);
  const double far = expint_ei(-40.0);
  EXPECT_LT(far, 0.0);
  EXPECT_GT(far, -1.2e-19);
}

TEST(Expint, MatchesBoostAcrossRegimes) {
  for (double x : {-700.0, -80.0, -40.0, -10.0, -2.5, -1.0, -0.3, -1e-6, 1e-6, 0.3, 1.0, 5.0, 20.0, 39.9, 40.1, 80.0,
                   300.0}) {
    const double ref = boost::math::expint(x);
    EXPECT_NEAR(expint_ei(x), ref, 2e-14 * std::abs(ref)) << "x=" << x;
  }
}

TEST(Expint, ScaledFormsStayFinite) {
  for (double x : {-1e5, -800.0, -50.0, -1.0, 0.5, 50.0, 800.0, 1e5}) {
    const double v = expint_ei_scaled(x);
    EXPECT_TRUE(std::isfinite(v)) << x;
  }
  // e^{-x} Ei(x) ~ 1/x for large |x|.
  EXPECT_NEAR(expint_ei_scaled(1e5) * 1e5, 1.0, 2e-5);
  EXPECT_NEAR(expint_s(1e5) * 1e5, -1.0, 2e-5);
  for (double z : {0.1, 1.0, 7.0, 30.0}) {
    EXPECT_NEAR(expint_s(z), std::exp(z) * boost::math::expint(-z), 1e-14 * std::abs(expint_s(z)));
  }
}

TEST(Expint, DerivativeIdentity) {
  // d/dx Ei(x) = e^x / x.
  for (double x : {-5.0, -0.7, 0.4, 3.0, 12.0}) {
    const double h = 1e-5 * std::max(1.0, std::abs(x));
    const double fd = (expint_ei(x + h) - expint_ei(x - h)) / (2.0 * h);
    EXPECT_NEAR(fd, std::exp(x) / x, 1e-7 * std::abs(std::exp(x) / x)) << x;
  }
}

TEST(Expint, RejectsZero) { EXPECT_THROW(expint_ei(0.0), DomainError); }

TEST(Expint, ScaledDerivativeIdentity) {
  // d/dx [e^{-x} Ei(x)] = 1/x - e^{-x} Ei(x).
  for (double x = 0.5; x <= 20.0; x += 0.25) {
    const double h = 1e-5;
    const double fd = (expint_ei_scaled(x + h) - expint_ei_scaled(x - h)) / (2.0 * h);
    EXPECT_NEAR(fd, 1.0 / x - expint_ei_scaled(x), 1e-6) << x;
  }
}
