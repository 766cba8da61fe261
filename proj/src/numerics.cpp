#include "expgof/numerics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <queue>
#include <sstream>
#include <thread>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "expgof/errors.hpp"

namespace expgof {
namespace {

using Rule = boost::math::quadrature::gauss_kronrod<double, 21>;

struct Piece {
  double lo, hi, value, error;
  bool operator<(const Piece& other) const { return error < other.error; }
};

Piece evaluate_piece(const Fn1& f, double lo, double hi) {
  // Without recursion Boost reports |K - G| on the reference interval [-1, 1].
  double err = 0.0;
  const double v = Rule::integrate(f, lo, hi, 0, 0.0, &err);
  if (!std::isfinite(v)) {
    std::ostringstream os;
    os << "quadrature: non-finite integrand on [" << lo << ", " << hi << "]";
    throw NumericalError(os.str(), std::numeric_limits<double>::infinity());
  }
  return {lo, hi, v, err * 0.5 * (hi - lo)};
}

}  // namespace

QuadResult integrate_checked(const Fn1& f, double lo, double hi, const QuadOptions& opts) {
  if (lo == hi) return {};
  std::priority_queue<Piece> heap;
  Piece first = evaluate_piece(f, lo, hi);
  double value = first.value, error = first.error;
  heap.push(first);
  std::size_t count = 1;
  auto target = [&] { return std::max(opts.abs_tol, opts.rel_tol * std::abs(value)); };
  while (error > target() && count < opts.max_intervals) {
    const Piece worst = heap.top();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (!(mid > worst.lo && mid < worst.hi)) break;
    heap.pop();
    const Piece left = evaluate_piece(f, worst.lo, mid);
    const Piece right = evaluate_piece(f, mid, worst.hi);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++count;
  }
  double v = 0.0, e = 0.0;
  while (!heap.empty()) {
    v += heap.top().value;
    e += heap.top().error;
    heap.pop();
  }
  if (e > std::max(opts.abs_tol, opts.rel_tol * std::abs(v))) {
    std::ostringstream os;
    os << "quadrature did not converge: achieved error " << e << " for value " << v;
    throw NumericalError(os.str(), e);
  }
  return {v, e};
}

double integrate(const Fn1& f, double lo, double hi, const QuadOptions& opts) {
  return integrate_checked(f, lo, hi, opts).value;
}

double integrate_half_line(const Fn1& f, const QuadOptions& opts) {
  // x = -log(1 - u) on [0, X] and x = X / v beyond, so tails decaying only
  // polynomially are still captured.
  constexpr double kSplit = 30.0;
  const double u_split = -std::expm1(-kSplit);
  auto head = [&f](double u) {
    const double x = -std::log1p(-u);
    return f(x) / (1.0 - u);
  };
  auto tail = [&f](double v) {
    const double x = kSplit / v;
    return std::isfinite(x) ? f(x) * kSplit / (v * v) : 0.0;
  };
  const QuadResult h = integrate_checked(head, 0.0, u_split, opts);
  QuadOptions tail_opts = opts;
  tail_opts.abs_tol = std::max(opts.abs_tol, opts.rel_tol * std::abs(h.value));
  return h.value + integrate_checked(tail, 0.0, 1.0, tail_opts).value;
}

double integrate_quadrant(const Fn2& f, const QuadOptions& opts) {
  QuadOptions inner = opts;
  inner.abs_tol = opts.abs_tol * opts.inner_factor;
  inner.rel_tol = opts.rel_tol * opts.inner_factor;
  auto outer = [&](double x) {
    return integrate_half_line([&](double y) { return f(x, y); }, inner);
  };
  return integrate_half_line(outer, opts);
}

Maximum maximize_scan(const Fn1& f, double lo, double hi, std::size_t points, double tol, bool log_grid) {
  if (!(hi > lo) || points < 3) throw DomainError("maximize_scan: invalid bracket or grid");
  const bool use_log = log_grid && lo > 0.0;
  std::vector<double> grid(points);
  for (std::size_t k = 0; k < points; ++k) {
    const double s = static_cast<double>(k) / static_cast<double>(points - 1);
    grid[k] = use_log ? lo * std::pow(hi / lo, s) : lo + (hi - lo) * s;
  }
  grid.back() = hi;
  std::size_t best = 0;
  double best_value = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < points; ++k) {
    const double v = f(grid[k]);
    if (v > best_value) {
      best_value = v;
      best = k;
    }
  }
  double a = grid[best == 0 ? 0 : best - 1];
  double b = grid[best + 1 == points ? best : best + 1];
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - invphi * (b - a), d = a + invphi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
  }
  Maximum out{grid[best], best_value};
  if (fc > out.value) out = {c, fc};
  if (fd > out.value) out = {d, fd};
  return out;
}

unsigned resolve_threads(int requested) {
  if (requested > 0) return static_cast<unsigned>(requested);
  if (const char* env = std::getenv("EXPGOF_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    while (!failed.load()) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        failed = true;
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace expgof
