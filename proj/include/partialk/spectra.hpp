#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

#include "partialk/grid.hpp"
#include "partialk/pattern.hpp"
#include "partialk/tapers.hpp"

namespace partialk {

/// Multitaper estimate of the P x P spectral density matrix over a grid.
///
/// Column i of values is the column-major vectorisation of the Hermitian
/// matrix F(k_i); labels fix the type order. The field satisfies
/// F(-k) = conj(F(k)) and every node is positive semidefinite up to
/// roundoff with rank at most the taper count.
struct SpectralMatrixField {
  WavenumberGrid grid;
  std::vector<std::string> labels;
  int n_tapers = 0;
  Eigen::MatrixXcd values;

  int P() const { return static_cast<int>(labels.size()); }

  Eigen::Map<const Eigen::MatrixXcd> node(Eigen::Index i) const {
    return {values.col(i).data(), P(), P()};
  }
  Eigen::Map<Eigen::MatrixXcd> node(Eigen::Index i) {
    return {values.col(i).data(), P(), P()};
  }

  int index_of(const std::string& label) const;

  /// Entry (a, b) as a series over all nodes.
  Eigen::VectorXcd entry(int a, int b) const {
    return values.row(a + static_cast<Eigen::Index>(P()) * b).transpose();
  }
};

/// Centered tapered Fourier statistic of one type for taper m (0-based):
///   J(k) = sum_x h_m(x) e^{-2 pi i <x,k>} - lambda_hat H_m(k)
/// over all grid nodes. An empty type gives the zero vector.
Eigen::VectorXcd tapered_dft(const MultiTypePattern& pattern, const std::string& label,
                             const TaperFamily& tapers, int m, const WavenumberGrid& grid,
                             const IntensityEstimates& intensities);

/// Multitaper spectral matrix: F(k) = (1/M) sum_m J^(m)(k) J^(m)(k)^H with
/// the types of `pattern` in registry order. Requires M >= P.
SpectralMatrixField multitaper_matrix(const MultiTypePattern& pattern,
                                      const TaperFamily& tapers,
                                      const WavenumberGrid& grid,
                                      const IntensityEstimates& intensities);

/// One row per wavenumber: k coordinates, then re/im of the upper triangle.
void write_spectrum_csv(const SpectralMatrixField& field, const std::string& path);

}  // namespace partialk
