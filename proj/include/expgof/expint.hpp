#pragma once

namespace expgof {

// Exponential integral Ei(x) = -PV int_{-x}^inf e^{-t}/t dt, x != 0.
double expint_ei(double x);

// e^{-x} Ei(x), finite for all x != 0 without overflow or underflow.
double expint_ei_scaled(double x);

// S(z) = e^{z} Ei(-z) for z > 0 (equals -e^{z} E1(z)).
inline double expint_s(double z) { return expint_ei_scaled(-z); }

}  // namespace expgof
