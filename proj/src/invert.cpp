#include "partialk/invert.hpp"

#include <cmath>
#include <complex>
#include <limits>

#include "partialk/parallel.hpp"
#include "partialk/special.hpp"

namespace partialk {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kTwoPi = 2.0 * kPi;

// sin(x)/x - cos(x); series below the cancellation region
double sphere_term(double x) {
  const double x2 = x * x;
  if (std::abs(x) < 1e-2)
    return x2 * (1.0 / 3.0 - x2 * (1.0 / 30.0 - x2 * (1.0 / 840.0 - x2 / 45360.0)));
  return std::sin(x) / x - std::cos(x);
}

// Si(x) - sin(x); both expand as x - x^3/c + ..., so sum the difference
// series directly when x is small
double si_minus_sin(double x) {
  if (std::abs(x) < 0.8) {
    double term = x * x * x / 9.0;
    double sum = term;
    for (int k = 2; k < 40; ++k) {
      term *= -x * x * (2.0 * k - 1.0) /
              ((2.0 * k - 2.0) * (2.0 * k + 1.0) * (2.0 * k + 1.0));
      sum += term;
      if (std::abs(term) <= 1e-18 * std::abs(sum)) break;
    }
    return sum;
  }
  return sine_integral(x) - std::sin(x);
}

// 1 - J0(x); series below the cancellation region
double one_minus_j0(double x) {
  const double x2 = x * x;
  if (std::abs(x) < 0.1)
    return x2 / 4.0 * (1.0 - x2 / 16.0 * (1.0 - x2 / 36.0 * (1.0 - x2 / 64.0)));
  return 1.0 - bessel_j0(x);
}

void check_dim(int d) {
  if (d < 1 || d > 3) throw config_error("dimension must be 1, 2 or 3");
}

void check_radii(const Eigen::VectorXd& radii, bool positive) {
  if (radii.size() == 0) throw config_error("radii grid is empty");
  double prev = -std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < radii.size(); ++i) {
    const double r = radii(i);
    if (!std::isfinite(r)) throw config_error("radii must be finite");
    if (positive ? !(r > 0.0) : !(r >= 0.0))
      throw config_error(positive ? "pair correlation needs strictly positive radii"
                                  : "radii must be nonnegative");
    if (!(r > prev)) throw config_error("radii must be strictly increasing");
    prev = r;
  }
}

void check_intensities(double lambda_x, double lambda_y) {
  if (!(lambda_x > 0.0) || !(lambda_y > 0.0))
    throw config_error("inversion needs strictly positive intensities");
}

// real part of a curve assembled from a conjugate-symmetric field; a large
// imaginary remainder means the field lost its symmetry somewhere upstream
CResult finish_real(const Eigen::VectorXcd& c) {
  CResult out;
  out.max_imag_residual = c.imag().cwiseAbs().maxCoeff();
  const double scale = c.cwiseAbs().maxCoeff();
  if (scale > 0.0 && out.max_imag_residual > 1e-6 * scale)
    throw numeric_error("imaginary residual " + std::to_string(out.max_imag_residual) +
                        " exceeds 1e-6 of the curve scale " + std::to_string(scale) +
                        "; the spectral field is not conjugate symmetric");
  out.value = c.real();
  return out;
}

Eigen::VectorXd node_norms(const WavenumberGrid& grid) {
  Eigen::VectorXd norms(grid.n_nodes());
  for (Eigen::Index i = 0; i < grid.n_nodes(); ++i) norms(i) = grid.node_norm(i);
  return norms;
}

}  // namespace

double atom_correction(const std::string& a, const std::string& b,
                       const IntensityEstimates& intensities) {
  const double la = intensities.at(a);
  intensities.at(b);
  return a == b ? la : 0.0;
}

double c_kernel(int d, double r, double kappa) {
  check_dim(d);
  if (!(r >= 0.0) || !(kappa >= 0.0))
    throw config_error("c_kernel needs nonnegative arguments");
  const double x = kTwoPi * kappa * r;
  switch (d) {
    case 1:
      if (kappa == 0.0) return 2.0 * r;
      return std::sin(x) / (kPi * kappa);
    case 2:
      if (kappa == 0.0) return kPi * r * r;
      return (r / kappa) * bessel_j1(x);
    default:
      if (kappa == 0.0) return 4.0 * kPi / 3.0 * r * r * r;
      return r / (kPi * kappa * kappa) * sphere_term(x);
  }
}

double pcf_kernel(int d, double r, double kappa) {
  check_dim(d);
  if (!(r >= 0.0) || !(kappa >= 0.0))
    throw config_error("pcf_kernel needs nonnegative arguments");
  const double x = kTwoPi * kappa * r;
  switch (d) {
    case 1:
      return 2.0 * std::cos(x);
    case 2:
      return kTwoPi * r * bessel_j0(x);
    default:
      if (kappa == 0.0) return 4.0 * kPi * r * r;
      return 2.0 * r * std::sin(x) / kappa;
  }
}

double annulus_weight(int d, double r, double y) {
  check_dim(d);
  if (!(r >= 0.0) || !(y >= 0.0))
    throw config_error("annulus_weight needs nonnegative arguments");
  const double x = kTwoPi * r * y;
  switch (d) {
    case 1:
      return 2.0 * sine_integral(x) / kPi;
    case 2:
      return one_minus_j0(x);
    default:
      return (2.0 / kPi) * si_minus_sin(x);
  }
}

double annulus_weight_deriv(int d, double r, double y) {
  check_dim(d);
  if (!(r >= 0.0) || !(y >= 0.0))
    throw config_error("annulus_weight_deriv needs nonnegative arguments");
  const double x = kTwoPi * r * y;
  switch (d) {
    case 1:
      if (r == 0.0) return 4.0 * y;
      return 2.0 * std::sin(x) / (kPi * r);
    case 2:
      return kTwoPi * y * bessel_j1(x);
    default:
      return 4.0 * y * sphere_term(x);
  }
}

CResult c_direct(const SpectralMatrixField& field, const std::string& a,
                 const std::string& b, double atom, const Eigen::VectorXd& radii) {
  check_radii(radii, false);
  const int d = field.grid.dim();
  check_dim(d);
  Eigen::VectorXcd g = field.entry(field.index_of(a), field.index_of(b));
  g.array() -= atom;
  const Eigen::VectorXd norms = node_norms(field.grid);
  const double cell = field.grid.cell_volume();
  Eigen::VectorXcd c(radii.size());
  parallel_for(radii.size(), [&](Eigen::Index begin, Eigen::Index end) {
    for (Eigen::Index j = begin; j < end; ++j) {
      std::complex<double> s = 0.0;
      for (Eigen::Index i = 0; i < norms.size(); ++i)
        s += g(i) * c_kernel(d, radii(j), norms(i));
      c(j) = cell * s;
    }
  });
  return finish_real(c);
}

RadialSpectrum rotational_average(const SpectralMatrixField& field, const std::string& a,
                                  const std::string& b, const RadialConfig& config) {
  const auto& grid = field.grid;
  check_dim(grid.dim());
  RadialSpectrum out;
  out.dimension = grid.dim();
  out.spacing = config.spacing > 0.0 ? config.spacing : grid.spacing().minCoeff();
  out.bandwidth =
      config.bandwidth > 0.0 ? config.bandwidth : 2.0 * grid.spacing().maxCoeff();
  const double kmax =
      config.kappa_max > 0.0
          ? config.kappa_max
          : (grid.half_counts().cast<double>().array() * grid.spacing().array())
                .minCoeff();
  if (!(out.spacing > 0.0) || !std::isfinite(out.spacing))
    throw config_error("radial spacing must be positive");
  if (!(out.bandwidth > 0.0) || !std::isfinite(out.bandwidth))
    throw config_error("radial bandwidth must be positive");
  if (!(kmax >= out.spacing / 2.0))
    throw config_error("radial cutoff leaves no annulus centers");

  const double s = out.spacing;
  const Eigen::Index T =
      static_cast<Eigen::Index>(std::floor((kmax * (1.0 + 1e-12) - s / 2.0) / s)) + 1;
  const Eigen::VectorXcd g = field.entry(field.index_of(a), field.index_of(b));
  const Eigen::VectorXd norms = node_norms(grid);

  Eigen::VectorXcd sums = Eigen::VectorXcd::Zero(T);
  Eigen::VectorXd counts = Eigen::VectorXd::Zero(T);
  const double half_t = out.bandwidth / (2.0 * s);
  for (Eigen::Index i = 0; i < norms.size(); ++i) {
    const double tc = norms(i) / s - 0.5;
    auto t0 = static_cast<Eigen::Index>(std::ceil(tc - half_t - 1e-9));
    auto t1 = static_cast<Eigen::Index>(std::floor(tc + half_t + 1e-9));
    t0 = std::max<Eigen::Index>(t0, 0);
    t1 = std::min(t1, T - 1);
    for (Eigen::Index t = t0; t <= t1; ++t) {
      sums(t) += g(i);
      counts(t) += 1.0;
    }
  }

  std::vector<double> kept_kappa;
  std::vector<std::complex<double>> kept_value;
  for (Eigen::Index t = 0; t < T; ++t) {
    const double kappa = s * (0.5 + static_cast<double>(t));
    if (counts(t) > 0.0) {
      kept_kappa.push_back(kappa);
      kept_value.push_back(sums(t) / counts(t));
    } else {
      out.excluded_kappa.push_back(kappa);
    }
  }
  out.kappa = Eigen::Map<const Eigen::VectorXd>(kept_kappa.data(),
                                                Eigen::Index(kept_kappa.size()));
  out.value = Eigen::Map<const Eigen::VectorXcd>(kept_value.data(),
                                                 Eigen::Index(kept_value.size()));
  return out;
}

CResult c_rotational(const RadialSpectrum& rot, double atom,
                     const Eigen::VectorXd& radii) {
  check_radii(radii, false);
  check_dim(rot.dimension);
  if (rot.kappa.size() == 0) throw config_error("radial spectrum is empty");
  const int d = rot.dimension;
  const double h = rot.spacing / 2.0;
  Eigen::VectorXcd c(radii.size());
  parallel_for(radii.size(), [&](Eigen::Index begin, Eigen::Index end) {
    for (Eigen::Index j = begin; j < end; ++j) {
      const double r = radii(j);
      std::complex<double> s = 0.0;
      for (Eigen::Index t = 0; t < rot.kappa.size(); ++t) {
        const double w = annulus_weight(d, r, rot.kappa(t) + h) -
                         annulus_weight(d, r, std::max(rot.kappa(t) - h, 0.0));
        s += (rot.value(t) - atom) * w;
      }
      c(j) = s;
    }
  });
  return finish_real(c);
}

Eigen::VectorXd k_from_c(const Eigen::VectorXd& c, const Eigen::VectorXd& radii,
                         double lambda_x, double lambda_y, int d) {
  check_dim(d);
  check_radii(radii, false);
  check_intensities(lambda_x, lambda_y);
  if (c.size() != radii.size()) throw config_error("C curve length mismatch");
  const double vd = unit_ball_volume(d);
  Eigen::VectorXd k(c.size());
  for (Eigen::Index i = 0; i < c.size(); ++i)
    k(i) = c(i) / (lambda_x * lambda_y) + vd * std::pow(radii(i), d);
  return k;
}

Eigen::VectorXd signed_l(const Eigen::VectorXd& k, int d) {
  check_dim(d);
  const double vd = unit_ball_volume(d);
  Eigen::VectorXd l(k.size());
  for (Eigen::Index i = 0; i < k.size(); ++i) {
    const double mag = std::pow(std::abs(k(i)) / vd, 1.0 / d);
    l(i) = k(i) < 0.0 ? -mag : mag;
  }
  return l;
}

CResult pcf_direct(const SpectralMatrixField& field, const std::string& a,
                   const std::string& b, double atom, const Eigen::VectorXd& radii,
                   double lambda_x, double lambda_y) {
  check_radii(radii, true);
  check_intensities(lambda_x, lambda_y);
  const int d = field.grid.dim();
  check_dim(d);
  Eigen::VectorXcd g = field.entry(field.index_of(a), field.index_of(b));
  g.array() -= atom;
  const Eigen::VectorXd norms = node_norms(field.grid);
  const double cell = field.grid.cell_volume();
  Eigen::VectorXcd dc(radii.size());
  parallel_for(radii.size(), [&](Eigen::Index begin, Eigen::Index end) {
    for (Eigen::Index j = begin; j < end; ++j) {
      std::complex<double> s = 0.0;
      for (Eigen::Index i = 0; i < norms.size(); ++i)
        s += g(i) * pcf_kernel(d, radii(j), norms(i));
      dc(j) = cell * s;
    }
  });
  CResult out = finish_real(dc);
  const double area = unit_sphere_area(d);
  for (Eigen::Index j = 0; j < radii.size(); ++j)
    out.value(j) =
        out.value(j) / (area * std::pow(radii(j), d - 1) * lambda_x * lambda_y) + 1.0;
  return out;
}

CResult pcf_rotational(const RadialSpectrum& rot, double atom,
                       const Eigen::VectorXd& radii, double lambda_x, double lambda_y) {
  check_radii(radii, true);
  check_intensities(lambda_x, lambda_y);
  check_dim(rot.dimension);
  if (rot.kappa.size() == 0) throw config_error("radial spectrum is empty");
  const int d = rot.dimension;
  const double h = rot.spacing / 2.0;
  Eigen::VectorXcd dc(radii.size());
  parallel_for(radii.size(), [&](Eigen::Index begin, Eigen::Index end) {
    for (Eigen::Index j = begin; j < end; ++j) {
      const double r = radii(j);
      std::complex<double> s = 0.0;
      for (Eigen::Index t = 0; t < rot.kappa.size(); ++t) {
        const double w = annulus_weight_deriv(d, r, rot.kappa(t) + h) -
                         annulus_weight_deriv(d, r, std::max(rot.kappa(t) - h, 0.0));
        s += (rot.value(t) - atom) * w;
      }
      dc(j) = s;
    }
  });
  CResult out = finish_real(dc);
  const double area = unit_sphere_area(d);
  for (Eigen::Index j = 0; j < radii.size(); ++j)
    out.value(j) =
        out.value(j) / (area * std::pow(radii(j), d - 1) * lambda_x * lambda_y) + 1.0;
  return out;
}

}  // namespace partialk
