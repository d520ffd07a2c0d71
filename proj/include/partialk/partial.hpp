#pragma once

#include <cstdint>
#include <vector>

#include "partialk/spectra.hpp"

namespace partialk {

/// Request for partial spectra: spectra of the targets after removing the
/// best linear prediction from the covariates at every wavenumber.
struct PartialSpec {
  std::vector<std::string> targets;     // one or two labels
  std::vector<std::string> covariates;  // zero or more labels
  bool debias = true;                   // rescale by M / (M - |covariates|)
};

/// Matrix-level Schur complement
///   F_TT - F_TZ F_ZZ^{-1} F_ZT
/// for index sets T (targets) and Z (covariates) into F. No debias factor.
Eigen::MatrixXcd schur_complement(const Eigen::MatrixXcd& F,
                                  const std::vector<int>& targets,
                                  const std::vector<int>& covariates);

/// Best linear prediction coefficients a(k) = F_XZ(k) F_ZZ(k)^{-1} of one
/// target from the covariates, stored one column per node.
struct PredictionKernelField {
  WavenumberGrid grid;
  std::string target;
  std::vector<std::string> covariates;
  Eigen::MatrixXcd values;  // |covariates| x n_nodes
};

PredictionKernelField prediction_kernel_spectrum(const SpectralMatrixField& field,
                                                 const std::string& target,
                                                 const std::vector<std::string>& covariates);

/// Partial spectral matrix via the explicit Schur complement per node.
/// With debias on, the result carries the factor M / (M - |Z|) once;
/// that requires M > |Z|. A covariate matrix with condition number above
/// 1e12 (or a zero matrix) raises numeric_error naming the node.
SpectralMatrixField partial_matrix_schur(const SpectralMatrixField& field,
                                         const PartialSpec& spec);

/// Same contract as partial_matrix_schur, computed from the inverse of the
/// spectral matrix restricted to targets and covariates: the partial matrix
/// is the inverse of the target block of that inverse.
SpectralMatrixField partial_matrix_fast(const SpectralMatrixField& field,
                                        const PartialSpec& spec);

/// Monte-Carlo check of the debias constant. Draws W ~ W_P(M, Sigma/M)
/// complex Wishart, averages the Schur complement of the trailing P-s
/// block, and divides elementwise by the true Schur complement of Sigma.
/// The expected ratio is (M + s - P) / M.
Eigen::MatrixXcd wishart_debias_check(int M, int P, int s, const Eigen::MatrixXcd& Sigma,
                                      int n_draws, std::uint64_t seed);

}  // namespace partialk
