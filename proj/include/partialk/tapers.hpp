#pragma once

#include <Eigen/Dense>
#include <complex>

#include "partialk/window.hpp"

namespace partialk {

/// Family of M product sine tapers on a rectangular window.
///
/// The one dimensional factors on [0, L] are h_m(x) = sqrt(2/L) sin(pi m x / L);
/// a d dimensional taper is the product over axes with index tuple
/// (m_1, ..., m_d). Tuples are ranked by concentration, i.e. by
/// sum_j m_j^2 / L_j^2 ascending with lexicographic tie break.
struct TaperFamily {
  Eigen::VectorXd origin;   // window lower corner
  Eigen::VectorXd lengths;  // window side lengths
  Eigen::MatrixXi indices;  // M x d index tuples, one taper per row

  int count() const { return static_cast<int>(indices.rows()); }
  int dim() const { return static_cast<int>(lengths.size()); }
};

/// First M product sine tapers on the window, concentration order.
TaperFamily make_sine_tapers(int M, const Window& window);

/// Value of taper m at a point (zero outside the window).
double taper_value(const TaperFamily& family, int m,
                   const Eigen::Ref<const Eigen::RowVectorXd>& x);

/// Exact Fourier transform H_m(k) = int h_m(x) e^{-2 pi i <x,k>} dx.
/// Evaluated per axis in closed form with a series branch near the
/// removable singularities k_j = +-m_j / (2 L_j).
std::complex<double> taper_ft(const TaperFamily& family, int m,
                              const Eigen::Ref<const Eigen::RowVectorXd>& k);

/// One dimensional factor: FT of sqrt(2/L) sin(pi m x / L) on [0, L].
std::complex<double> sine_taper_axis_ft(int m, double L, double k);

}  // namespace partialk
