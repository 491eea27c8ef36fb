#include "lcembed/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <queue>
#include <vector>

namespace lcembed {

int thread_budget() {
  static const int budget = [] {
    const char* env = std::getenv("LCEMBED_THREADS");
    if (!env) return 1;
    int v = std::atoi(env);
    return std::clamp(v, 1, 64);
  }();
  return budget;
}

}  // namespace lcembed

namespace lcembed::quad {
namespace {

// Gauss 7 / Kronrod 15 node-weight pairs on [-1,1] (positive half; the rule
// is symmetric). Kronrod nodes at odd indices are the embedded Gauss nodes.
constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {0.129484966168870, 0.279705391489277,
                           0.381830050505119, 0.417959183673469};

struct Interval {
  double a, b;
  Complex value;
  double error;
  int depth;
  bool operator<(const Interval& o) const { return error < o.error; }
};

Interval evaluate(const std::function<Complex(double)>& f, double a, double b,
                  int depth) {
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  Complex kron = kWgk[7] * f(mid);
  Complex gauss = kWg[3] * f(mid);
  for (int i = 0; i < 7; ++i) {
    const Complex fl = f(mid - half * kXgk[i]);
    const Complex fr = f(mid + half * kXgk[i]);
    kron += kWgk[i] * (fl + fr);
    if (i % 2 == 1) gauss += kWg[i / 2] * (fl + fr);
  }
  kron *= half;
  gauss *= half;
  return {a, b, kron, std::abs(kron - gauss), depth};
}

constexpr double kAbsFloor = 1e-14;
constexpr int kMaxIntervals = 16384;

}  // namespace

Result integrate(const std::function<Complex(double)>& f, double a, double b,
                 double rel_tol, int max_levels) {
  if (!(b > a)) return {Complex{0.0, 0.0}, 0.0, true};
  std::priority_queue<Interval> heap;
  heap.push(evaluate(f, a, b, 0));
  Complex total = heap.top().value;
  double err = heap.top().error;
  int count = 1;
  while (err > std::max(rel_tol * std::abs(total), kAbsFloor) &&
         count < kMaxIntervals) {
    Interval worst = heap.top();
    if (worst.depth >= max_levels) {
      return {total, err, false};
    }
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    Interval left = evaluate(f, worst.a, mid, worst.depth + 1);
    Interval right = evaluate(f, mid, worst.b, worst.depth + 1);
    total += left.value + right.value - worst.value;
    err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++count;
  }
  const bool ok = err <= std::max(rel_tol * std::abs(total), kAbsFloor) ||
                  err <= 10 * rel_tol * std::abs(total);
  return {total, err, ok};
}

Result integrate_real(const std::function<double(double)>& f, double a,
                      double b, double rel_tol, int max_levels) {
  return integrate([&f](double x) { return Complex{f(x), 0.0}; }, a, b,
                   rel_tol, max_levels);
}

Result integrate_to_infinity(const std::function<Complex(double)>& f, double a,
                             double rel_tol, int max_levels) {
  const double b0 = std::max(1.0, 2.0 * a);
  Result head = integrate(f, a, b0, rel_tol, max_levels);
  Result tail = integrate(
      [&f](double u) {
        const double x = 1.0 / u;
        return f(x) * (x * x);
      },
      0.0, 1.0 / b0, rel_tol, max_levels);
  return {head.value + tail.value, head.error + tail.error,
          head.converged && tail.converged};
}

}  // namespace lcembed::quad
