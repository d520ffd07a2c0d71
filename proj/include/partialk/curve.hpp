#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "partialk/errors.hpp"

namespace partialk {

/// Evenly spaced evaluation radii.
struct RadiiSpec {
  double start = 0.0;
  double stop = 0.0;
  int count = 0;

  /// The radii as a vector; validates start, stop and count.
  Eigen::VectorXd nodes() const;
};

/// One estimated summary function on a radii grid.
///
/// lo/hi are empty unless an envelope has been attached.
struct SummaryCurve {
  std::string statistic;  // "C", "K", "L" or "pcf"
  std::vector<std::string> targets;
  std::vector<std::string> covariates;
  std::string route;  // "direct" or "rotational"
  int dimension = 0;
  int n_tapers = 0;
  bool debiased = false;
  Eigen::VectorXd r;
  Eigen::VectorXd value;
  Eigen::VectorXd lo;
  Eigen::VectorXd hi;

  bool has_band() const {
    return r.size() > 0 && lo.size() == r.size() && hi.size() == r.size();
  }
};

/// Writes a curve as CSV: metadata comments, then `r,value` rows
/// (`r,value,lo,hi` when a band is present).
void write_curve_csv(const std::string& path, const SummaryCurve& curve);

/// Reads back a curve written by write_curve_csv.  Unknown comment lines are
/// ignored, so hand-made files with just the header row also load.
SummaryCurve read_curve_csv(const std::string& path);

}  // namespace partialk
