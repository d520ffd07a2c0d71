#pragma once

#include <functional>

namespace partialk {

/// Globally adaptive Gauss-Kronrod (G7, K15) integration of f over [a, b].
///
/// The worst interval is bisected until the accumulated error estimate
/// drops below max(abs_tol, rel_tol * |integral|). Throws numeric_error
/// when max_intervals subdivisions do not reach the tolerance.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double abs_tol = 1e-12, double rel_tol = 1e-10,
                          int max_intervals = 20000);

/// Composite 15-point Gauss-Kronrod rule on n_panels equal panels, no
/// adaptivity. Intended for integrands whose oscillation scale is known,
/// with panels sized well below that scale.
double integrate_panels(const std::function<double(double)>& f, double a, double b,
                        int n_panels);

}  // namespace partialk
