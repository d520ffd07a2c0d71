#include "partialk/oracle.hpp"

#include <cmath>

#include "partialk/errors.hpp"
#include "partialk/invert.hpp"
#include "partialk/quadrature.hpp"
#include "partialk/special.hpp"

namespace partialk {

namespace {

constexpr double kTwoPiSq = 2.0 * M_PI * M_PI;

void check_cluster_spec(const ClusterModelSpec& s) {
  if (!(s.lambda_z > 0.0)) throw config_error("parent intensity must be positive");
  if (!(s.mu_x >= 0.0) || !(s.mu_y >= 0.0))
    throw config_error("offspring means must be nonnegative");
  if (!(s.sigma_x > 0.0) || !(s.sigma_y > 0.0))
    throw config_error("offset scales must be positive");
  if (s.dimension < 1 || s.dimension > 3)
    throw unsupported_error("cluster model dimension must be 1, 2 or 3");
}

double phi(double sigma, double k2) { return std::exp(-kTwoPiSq * sigma * sigma * k2); }

}  // namespace

Eigen::Matrix3cd cluster_spectra(const ClusterModelSpec& spec,
                                 const Eigen::RowVectorXd& k) {
  check_cluster_spec(spec);
  if (k.size() != spec.dimension)
    throw config_error("wavenumber dimension does not match the model");
  const double k2 = k.squaredNorm();
  const double px = phi(spec.sigma_x, k2), py = phi(spec.sigma_y, k2);
  const double lz = spec.lambda_z;

  Eigen::Matrix3cd f;
  f(0, 0) = spec.mu_x * lz + spec.mu_x * spec.mu_x * px * px * lz;
  f(1, 1) = spec.mu_y * lz + spec.mu_y * spec.mu_y * py * py * lz;
  f(2, 2) = lz;
  f(0, 1) = spec.mu_x * spec.mu_y * px * py * lz;
  f(0, 2) = spec.mu_x * px * lz;
  f(1, 2) = spec.mu_y * py * lz;
  f(1, 0) = std::conj(f(0, 1));
  f(2, 0) = std::conj(f(0, 2));
  f(2, 1) = std::conj(f(1, 2));
  return f;
}

SpectralMatrixField cluster_spectra_field(const ClusterModelSpec& spec,
                                          const WavenumberGrid& grid) {
  check_cluster_spec(spec);
  if (grid.dim() != spec.dimension)
    throw config_error("grid dimension does not match the model");
  SpectralMatrixField field;
  field.grid = grid;
  field.labels = {"X", "Y", "Z"};
  field.n_tapers = 0;
  field.values.resize(9, grid.n_nodes());
  for (Eigen::Index i = 0; i < grid.n_nodes(); ++i)
    field.node(i) = cluster_spectra(spec, grid.node(i));
  return field;
}

ClusterPartials cluster_partial_spectra(const ClusterModelSpec& spec,
                                        const Eigen::RowVectorXd& k) {
  check_cluster_spec(spec);
  if (k.size() != spec.dimension)
    throw config_error("wavenumber dimension does not match the model");
  const double k2 = k.squaredNorm();
  const double px = phi(spec.sigma_x, k2), py = phi(spec.sigma_y, k2);
  const double lz = spec.lambda_z;

  ClusterPartials p;
  p.f_xy_z = 0.0;
  p.f_xz_y = spec.mu_x * px * lz / (1.0 + spec.mu_y * py * py);
  p.f_xx_yz = spec.mu_x * lz;
  p.f_zz_xy = lz / (1.0 + spec.mu_x * px * px + spec.mu_y * py * py);
  return p;
}

double cox_squared_partial_spectrum(double lambda_z, double a,
                                    const Eigen::RowVectorXd& k) {
  if (!(lambda_z > 0.0)) throw config_error("driving intensity must be positive");
  if (!(a > 0.0)) throw config_error("cox kernel scale must be positive");
  const int d = static_cast<int>(k.size());
  if (d < 1 || d > 3) throw unsupported_error("dimension must be 1, 2 or 3");
  const double g1 = 2.0 * M_PI * a * a;
  const double amp =
      2.0 * lambda_z * lambda_z * std::pow(g1, 2 * d) * std::pow(8.0 * M_PI * a * a, -0.5 * d);
  return amp * std::exp(-kTwoPiSq * a * a * k.squaredNorm());
}

double oracle_summary(const std::function<double(double)>& radial_spectrum,
                      const std::string& statistic, double r, int d,
                      double lambda_x, double lambda_y, double atom) {
  if (d < 1 || d > 3) throw unsupported_error("dimension must be 1, 2 or 3");
  const bool pcf = statistic == "pcf";
  if (statistic != "C" && statistic != "K" && statistic != "L" && !pcf)
    throw config_error("unknown statistic '" + statistic + "'");
  if (!(r >= 0.0) || (pcf && r == 0.0))
    throw config_error("radius must be positive");

  auto cont = [&](double kap) { return radial_spectrum(kap) - atom; };

  // cutoff by decay scan of the continuous part, area factor included
  double cut = 1.0, ref = 0.0;
  for (double kap = 0.0; kap <= 1.0; kap += 0.05)
    ref = std::max(ref, std::abs(cont(kap)) * std::pow(std::max(kap, 1.0), d - 1));
  while (true) {
    double tail = 0.0;
    for (double frac : {0.85, 0.95, 1.0})
      tail = std::max(tail,
                      std::abs(cont(cut * frac)) * std::pow(cut * frac, d - 1));
    ref = std::max(ref, tail);
    if (tail <= 1e-17 * ref) break;
    if (cut > 1e9)
      throw numeric_error("radial spectrum does not decay; cannot integrate");
    cut *= 2.0;
  }

  const double area = unit_sphere_area(d);
  auto integrand = [&](double kap) {
    const double kernel = pcf ? pcf_kernel(d, r, kap) : c_kernel(d, r, kap);
    return cont(kap) * kernel * area * std::pow(kap, d - 1);
  };
  const double c =
      integrate_adaptive(integrand, 0.0, cut, 1e-13 * (1.0 + ref * cut), 1e-9);

  if (statistic == "C") return c;
  if (!(lambda_x > 0.0) || !(lambda_y > 0.0))
    throw config_error("intensities must be positive");
  if (pcf) return c / (area * std::pow(r, d - 1) * lambda_x * lambda_y) + 1.0;

  const double k = c / (lambda_x * lambda_y) + unit_ball_volume(d) * std::pow(r, d);
  if (statistic == "K") return k;
  Eigen::VectorXd kv(1);
  kv << k;
  return signed_l(kv, d)(0);
}

}  // namespace partialk
