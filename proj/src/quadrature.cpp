#include "partialk/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

#include "partialk/errors.hpp"

namespace partialk {

namespace {

// Gauss-Kronrod 7-15 abscissae (positive half) and weights, QUADPACK values.
constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

struct PanelResult {
  double kronrod;
  double err;
};

PanelResult gk15(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double resk = kWgk[7] * fc;
  double resg = kWg[3] * fc;
  for (int j = 0; j < 7; ++j) {
    const double x = h * kXgk[j];
    const double f1 = f(c - x);
    const double f2 = f(c + x);
    resk += kWgk[j] * (f1 + f2);
    if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
  }
  const double kron = resk * h;
  const double err = std::abs((resk - resg) * h);
  return {kron, err};
}

struct Interval {
  double a, b, value, err;
  bool operator<(const Interval& o) const { return err < o.err; }
};

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double abs_tol, double rel_tol, int max_intervals) {
  if (a == b) return 0.0;
  std::priority_queue<Interval> heap;
  auto first = gk15(f, a, b);
  heap.push({a, b, first.kronrod, first.err});
  double total = first.kronrod;
  double total_err = first.err;
  int n = 1;
  while (total_err > std::max(abs_tol, rel_tol * std::abs(total))) {
    if (n >= max_intervals)
      throw numeric_error("integrate_adaptive: tolerance not reached after " +
                          std::to_string(n) + " intervals");
    Interval worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b)
      throw numeric_error("integrate_adaptive: interval underflow before convergence");
    auto left = gk15(f, worst.a, mid);
    auto right = gk15(f, mid, worst.b);
    total += left.kronrod + right.kronrod - worst.value;
    total_err += left.err + right.err - worst.err;
    heap.push({worst.a, mid, left.kronrod, left.err});
    heap.push({mid, worst.b, right.kronrod, right.err});
    ++n;
  }
  return total;
}

double integrate_panels(const std::function<double(double)>& f, double a, double b,
                        int n_panels) {
  if (n_panels < 1) throw config_error("integrate_panels: need at least one panel");
  const double h = (b - a) / n_panels;
  double sum = 0.0;
  for (int i = 0; i < n_panels; ++i)
    sum += gk15(f, a + i * h, a + (i + 1) * h).kronrod;
  return sum;
}

}  // namespace partialk
