#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>

#include "partialk/estimate.hpp"

namespace partialk {

/// Monte-Carlo null settings. The order statistic behind the band needs
/// n_sim >= ceil(1/alpha) - 1; n_sim must also be at least 19.
struct EnvelopeConfig {
  int n_sim = 199;
  double alpha = 0.05;
  std::string null_kind = "poisson-marginal";  // or "random-shift-pair"
  std::uint64_t seed = 1;
};

/// Constant-width global band about the pointwise median.
struct EnvelopeBand {
  Eigen::VectorXd center;
  Eigen::VectorXd lo;
  Eigen::VectorXd hi;
  double half_width = 0.0;
};

/// Global MAD envelope of simulated curves (one row per simulation):
/// center T0 = pointwise median, deviations D_i = max_r |T_i - T0|,
/// half width = the ceil((1-alpha)(n+1))-th smallest D_i.
EnvelopeBand mad_global_envelope(const Eigen::MatrixXd& curves, double alpha);

/// The requested statistic on `pattern` with a global envelope attached
/// from n_sim null simulations run through the same pipeline.
///
/// poisson-marginal resimulates every target as an independent Poisson
/// process at its estimated intensity; random-shift-pair keeps both target
/// point sets and applies a fresh uniform toroidal shift to the second one
/// (two distinct targets required). Partial statistics are refused: no
/// resampling null is known to preserve the partial structure.
SummaryCurve poisson_null_envelope(const MultiTypePattern& pattern,
                                   const StatisticRequest& req,
                                   const EstimationConfig& cfg,
                                   const EnvelopeConfig& env);

}  // namespace partialk
