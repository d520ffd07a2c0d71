#pragma once

namespace partialk {

/// Bessel J0(x), x >= 0.
double bessel_j0(double x);

/// Bessel J1(x), x >= 0.
double bessel_j1(double x);

/// Bessel J_{3/2}(x), x >= 0.
double bessel_j32(double x);

/// Sine integral Si(x) = int_0^x sin(y)/y dy, absolute accuracy ~1e-12 or
/// better over the whole real line. Odd in x.
double sine_integral(double x);

/// Volume of the unit ball in dimension d (2, pi, 4pi/3 for d = 1, 2, 3).
double unit_ball_volume(int d);

/// Surface area of the unit sphere boundary in dimension d
/// (2, 2pi, 4pi for d = 1, 2, 3).
double unit_sphere_area(int d);

}  // namespace partialk
