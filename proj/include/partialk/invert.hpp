#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "partialk/errors.hpp"
#include "partialk/pattern.hpp"
#include "partialk/spectra.hpp"

namespace partialk {

/// Settings for the rotational pre-average.  Zeros select the defaults:
/// spacing = min_j spacing_j, bandwidth = 2 max_j spacing_j,
/// kappa_max = min_j realized kmax_j.
struct RadialConfig {
  double spacing = 0.0;
  double bandwidth = 0.0;
  double kappa_max = 0.0;
};

/// Rotational average of one spectral entry: annulus centers s/2 + s Z up to
/// kappa_max, each holding the box-kernel mean of the field over
/// |  ||k|| - kappa | <= b/2.  Annuli that trap no grid nodes are dropped and
/// their centers recorded.
struct RadialSpectrum {
  Eigen::VectorXd kappa;
  Eigen::VectorXcd value;
  double spacing = 0.0;
  double bandwidth = 0.0;
  int dimension = 0;
  std::string kernel = "box";
  std::vector<double> excluded_kappa;
};

/// Point mass of the reduced second moment measure at the origin:
/// lambda_X for a same-type pair, zero otherwise.
double atom_correction(const std::string& a, const std::string& b,
                       const IntensityEstimates& intensities);

/// A real curve recovered from a complex sum, with the discarded imaginary
/// magnitude kept for the symmetry check.
struct CResult {
  Eigen::VectorXd value;
  double max_imag_residual = 0.0;
};

/// C function by a Riemann sum of the spectral field against the
/// dimension-specific Bessel kernel.  Throws numeric_error when the imaginary
/// residual exceeds 1e-6 of the curve scale.
CResult c_direct(const SpectralMatrixField& field, const std::string& a,
                 const std::string& b, double atom, const Eigen::VectorXd& radii);

/// Box-kernel annulus average of entry (a, b) of the field.
RadialSpectrum rotational_average(const SpectralMatrixField& field, const std::string& a,
                                  const std::string& b, const RadialConfig& config = {});

/// C function from a radial spectrum: piecewise-constant annuli integrated
/// exactly through the w_d shell weights.
CResult c_rotational(const RadialSpectrum& rot, double atom, const Eigen::VectorXd& radii);

/// K(r) = C(r) / (lambda_X lambda_Y) + (unit ball volume) r^d.
Eigen::VectorXd k_from_c(const Eigen::VectorXd& c, const Eigen::VectorXd& radii,
                         double lambda_x, double lambda_y, int d);

/// Signed L: sgn(K) (|K| / unit ball volume)^(1/d).
Eigen::VectorXd signed_l(const Eigen::VectorXd& k, int d);

/// Pair correlation by the derivative-kernel sum over the full field.
/// All radii must be positive.
CResult pcf_direct(const SpectralMatrixField& field, const std::string& a,
                   const std::string& b, double atom, const Eigen::VectorXd& radii,
                   double lambda_x, double lambda_y);

/// Pair correlation from a radial spectrum through the shell weight
/// derivatives.
CResult pcf_rotational(const RadialSpectrum& rot, double atom,
                       const Eigen::VectorXd& radii, double lambda_x, double lambda_y);

/// Bessel-type kernel of the C sum at radius r, wavenumber magnitude kappa;
/// continuous at kappa = 0 where it equals the ball volume v_d r^d.
double c_kernel(int d, double r, double kappa);

/// d/dr of c_kernel, the pcf sum kernel; at kappa = 0 equals the sphere area
/// A_{d-1} r^{d-1}.
double pcf_kernel(int d, double r, double kappa);

/// Shell weight w_d(r, y): the C kernel integrated over the ball ||k|| <= y.
double annulus_weight(int d, double r, double y);

/// d/dr of annulus_weight.
double annulus_weight_deriv(int d, double r, double y);

}  // namespace partialk
