#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>

#include "partialk/spectra.hpp"

namespace partialk {

/// Shared-parent Gaussian cluster model: Z is Poisson(lambda_z); X and Y
/// place Poisson(mu) offspring around each Z point at independent
/// Normal(0, sigma^2 I) offsets.  The offset characteristic function is
/// phi(k) = exp(-2 pi^2 sigma^2 ||k||^2).
struct ClusterModelSpec {
  double lambda_z = 0.01;
  double mu_x = 3.0;
  double sigma_x = 2.0;
  double mu_y = 3.0;
  double sigma_y = 2.0;
  int dimension = 2;
};

/// Exact spectral density matrix at one wavenumber, type order X, Y, Z:
///   f_ZZ = lambda_z,
///   f_XZ = mu_X conj(phi_X) f_ZZ,
///   f_XY = mu_X mu_Y conj(phi_X) phi_Y f_ZZ,
///   f_XX = mu_X lambda_z + mu_X^2 |phi_X|^2 f_ZZ,
/// and symmetrically for Y.
Eigen::Matrix3cd cluster_spectra(const ClusterModelSpec& spec,
                                 const Eigen::RowVectorXd& k);

/// cluster_spectra evaluated at every node of a grid, as a field the
/// partial-spectrum routines accept directly.
SpectralMatrixField cluster_spectra_field(const ClusterModelSpec& spec,
                                          const WavenumberGrid& grid);

/// The four closed-form partial spectra of the cluster model. All are real.
struct ClusterPartials {
  double f_xy_z = 0.0;   // cross X,Y given Z (identically zero)
  double f_xz_y = 0.0;   // cross X,Z given Y
  double f_xx_yz = 0.0;  // marginal X given Y,Z (identically lambda_X)
  double f_zz_xy = 0.0;  // marginal Z given X,Y
};

ClusterPartials cluster_partial_spectra(const ClusterModelSpec& spec,
                                        const Eigen::RowVectorXd& k);

/// Partial cross spectrum of the squared-Gaussian Cox pair driven by a
/// common Poisson(lambda_z) pattern smoothed with exp(-||x||^2 / (2 a^2)):
///   f_XY.Z(k) = 2 lambda_z^2 (2 pi a^2)^(2d) (8 pi a^2)^(-d/2)
///               exp(-2 pi^2 a^2 ||k||^2),
/// strictly positive everywhere. The dimension is taken from k.
double cox_squared_partial_spectrum(double lambda_z, double a,
                                    const Eigen::RowVectorXd& k);

/// Summary statistic at one radius from an isotropic spectral density given
/// as a function of ||k||, by adaptive quadrature of
///   C(r) = int_0^inf (f(kappa) - atom) c_kernel(d, r, kappa)
///          A_{d-1} kappa^(d-1) dkappa
/// (derivative kernel for "pcf"). `statistic` is one of "C", "K", "L",
/// "pcf". The integration cutoff is found by scanning for decay of the
/// continuous part; a spectrum that never decays raises numeric_error.
double oracle_summary(const std::function<double(double)>& radial_spectrum,
                      const std::string& statistic, double r, int d,
                      double lambda_x, double lambda_y, double atom);

}  // namespace partialk
