#pragma once

#include <string>
#include <utility>
#include <vector>

#include "partialk/config.hpp"
#include "partialk/curve.hpp"
#include "partialk/pattern.hpp"

namespace partialk {

/// What to estimate: a marginal (one target) or cross (two targets)
/// statistic, partialled on the covariates when any are given.
struct StatisticRequest {
  std::vector<std::string> targets;
  std::vector<std::string> covariates;
  std::string statistic = "L";  // "C", "K", "L" or "pcf"
};

/// What an estimate run actually did.
struct RunReport {
  int n_tapers = 0;
  Eigen::Index n_nodes = 0;
  int dimension = 0;
  std::string route;
  std::string partial_route;  // empty for plain statistics
  double debias_factor = 1.0;
  double max_imag_residual = 0.0;
  std::vector<std::string> labels;  // involved types, targets first
  Eigen::VectorXd lambda;           // their intensity estimates
  std::vector<double> excluded_kappa;
  std::vector<std::pair<std::string, double>> stage_seconds;
};

/// Full pipeline: restrict pattern -> intensities -> tapers -> grid ->
/// multitaper spectra -> partial spectra (when covariates are given) ->
/// inversion along the configured route -> statistic chain.
SummaryCurve run_estimate(const MultiTypePattern& pattern, const StatisticRequest& req,
                          const EstimationConfig& cfg, RunReport* report = nullptr);

/// Convergence probe: the L curve at the configured kmax and at twice it.
struct KmaxReport {
  Eigen::VectorXd kmax_base;
  Eigen::VectorXd kmax_doubled;
  Eigen::VectorXd r;
  Eigen::VectorXd l_base;
  Eigen::VectorXd l_doubled;
  double max_abs_delta = 0.0;
  double threshold = 0.0;
  bool converged = false;
};

/// Runs the pipeline twice with the statistic forced to "L". An explicitly
/// configured radial_kappa_max is doubled along with kmax so the rotational
/// route actually sees the new band.
KmaxReport kmax_diagnostic(const MultiTypePattern& pattern, const StatisticRequest& req,
                           const EstimationConfig& cfg, double threshold = 0.05);

}  // namespace partialk
