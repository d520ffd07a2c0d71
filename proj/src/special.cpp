#include "partialk/special.hpp"

#include <cmath>
#include <complex>
#include <limits>

#include "partialk/errors.hpp"

namespace partialk {

double bessel_j0(double x) {
  if (x < 0.0) throw config_error("bessel_j0: negative argument");
  return std::cyl_bessel_j(0.0, x);
}

double bessel_j1(double x) {
  if (x < 0.0) throw config_error("bessel_j1: negative argument");
  return std::cyl_bessel_j(1.0, x);
}

double bessel_j32(double x) {
  if (x < 0.0) throw config_error("bessel_j32: negative argument");
  if (x == 0.0) return 0.0;
  return std::cyl_bessel_j(1.5, x);
}

namespace {

// Power series of Si, effective for |x| below ~2.
double si_series(double x) {
  const double x2 = x * x;
  double u = x;  // (-1)^k x^{2k+1} / (2k+1)!, k = 0
  double sum = x;
  for (int k = 1; k < 60; ++k) {
    u *= -x2 / (2.0 * k * (2.0 * k + 1.0));
    sum += u / (2.0 * k + 1.0);
    if (std::abs(u) < 1e-18 * (1.0 + std::abs(sum))) break;
  }
  return sum;
}

// Continued fraction for the auxiliary complex function, Lentz's method.
// Gives Si(t) = pi/2 + Im(e^{-it} H(t)) for t >= 2.
double si_fraction(double t) {
  const double eps = std::numeric_limits<double>::epsilon();
  const double fpmin = std::numeric_limits<double>::min() / eps;
  std::complex<double> b(1.0, t), c(1.0 / fpmin, 0.0);
  std::complex<double> d = 1.0 / b, h = d;
  for (int i = 2; i <= 300; ++i) {
    const double a = -static_cast<double>(i - 1) * (i - 1);
    b += 2.0;
    d = 1.0 / (a * d + b);
    c = b + a / c;
    const std::complex<double> del = c * d;
    h *= del;
    if (std::abs(del - 1.0) <= eps) break;
  }
  h *= std::complex<double>(std::cos(t), -std::sin(t));
  return M_PI / 2.0 + h.imag();
}

}  // namespace

double sine_integral(double x) {
  const double t = std::abs(x);
  double si;
  if (t == 0.0)
    si = 0.0;
  else if (t < 2.0)
    si = si_series(t);
  else
    si = si_fraction(t);
  return x < 0.0 ? -si : si;
}

double unit_ball_volume(int d) {
  switch (d) {
    case 1: return 2.0;
    case 2: return M_PI;
    case 3: return 4.0 * M_PI / 3.0;
    default: throw unsupported_error("unit_ball_volume: dimension must be 1, 2 or 3");
  }
}

double unit_sphere_area(int d) {
  switch (d) {
    case 1: return 2.0;
    case 2: return 2.0 * M_PI;
    case 3: return 4.0 * M_PI;
    default: throw unsupported_error("unit_sphere_area: dimension must be 1, 2 or 3");
  }
}

}  // namespace partialk
