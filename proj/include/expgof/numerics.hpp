#pragma once

#include <cstddef>
#include <functional>

namespace expgof {

inline constexpr double kEulerGamma = 0.57721566490153286060651209;
inline constexpr double kPi = 3.14159265358979323846264338;

struct QuadOptions {
  double abs_tol = 1e-11;
  double rel_tol = 1e-11;
  std::size_t max_intervals = 4000;
  double inner_factor = 1e-2;  // inner tolerances of nested integrals relative to these
};

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
};

using Fn1 = std::function<double(double)>;
using Fn2 = std::function<double(double, double)>;

// Globally adaptive Gauss-Kronrod (21 point) on [lo, hi]. Throws NumericalError
// carrying the achieved error when max(abs_tol, rel_tol*|I|) is not reached.
QuadResult integrate_checked(const Fn1& f, double lo, double hi, const QuadOptions& opts = {});
double integrate(const Fn1& f, double lo, double hi, const QuadOptions& opts = {});

// Integral over (0, inf) after the substitution x = -log(1-u).
double integrate_half_line(const Fn1& f, const QuadOptions& opts = {});

// Double integral over (0, inf)^2 as nested half-line integrals. The inner
// integral runs with tolerances a hundred times tighter than the outer one.
double integrate_quadrant(const Fn2& f, const QuadOptions& opts = {});

struct Maximum {
  double argmax = 0.0;
  double value = 0.0;
};

// Maximize f on [lo, hi]: scan a grid of `points` nodes (log spaced when lo > 0
// and `log_grid`), then golden-section search in the bracket around the best
// node until the bracket is narrower than `tol`. The result is never below the
// best grid value.
Maximum maximize_scan(const Fn1& f, double lo, double hi, std::size_t points = 512,
                      double tol = 1e-8, bool log_grid = true);

// Worker count: explicit value if positive, else EXPGOF_THREADS, else the
// hardware concurrency.
unsigned resolve_threads(int requested = 0);

// Runs body(i) for i in [0, count) on `threads` workers. The first exception
// thrown by any task is rethrown after all workers stop.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body);

}  // namespace expgof
