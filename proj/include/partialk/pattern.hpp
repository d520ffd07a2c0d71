#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "partialk/window.hpp"

namespace partialk {

/// Multitype point pattern on a shared rectangular window.
///
/// Types are kept in a registry whose order is the order of first
/// registration; all spectral matrices index types in this order.
class MultiTypePattern {
 public:
  MultiTypePattern() = default;
  explicit MultiTypePattern(Window window) : window_(std::move(window)) {}

  const Window& window() const { return window_; }
  int dim() const { return window_.dim(); }
  int n_types() const { return static_cast<int>(labels_.size()); }

  /// Registers a type with its point coordinates (one point per row).
  /// Every point must lie inside the window; labels must be unique and
  /// non-empty. Registering an empty matrix records a type with no points.
  void add_type(const std::string& label, Eigen::MatrixXd coords);

  /// Index of a label in the registry; throws config_error if unknown.
  int index_of(const std::string& label) const;
  bool has_type(const std::string& label) const;

  const std::string& label(int i) const { return labels_.at(i); }
  const std::vector<std::string>& labels() const { return labels_; }
  const Eigen::MatrixXd& coords(int i) const { return points_.at(i); }
  const Eigen::MatrixXd& coords(const std::string& label) const { return points_.at(index_of(label)); }

  Eigen::Index count(int i) const { return points_.at(i).rows(); }
  Eigen::Index total_count() const;

  /// Enforces joint simplicity: no two points (of any type) share the exact
  /// same coordinates. Throws config_error on violation.
  void validate_simple() const;

  /// New pattern restricted to the given labels, preserving the given order.
  MultiTypePattern restricted_to(const std::vector<std::string>& labels) const;

 private:
  Window window_;
  std::vector<std::string> labels_;
  std::vector<Eigen::MatrixXd> points_;
};

/// Estimated intensities lambda_hat = n / |W| per type, registry order.
struct IntensityEstimates {
  std::vector<std::string> labels;
  Eigen::VectorXd lambda;
  double window_volume = 0.0;

  double at(const std::string& label) const;
  double operator[](int i) const { return lambda(i); }
};

/// Plain intensity estimates for every registered type. Zero counts give
/// zero intensity; downstream consumers that need positivity check there.
IntensityEstimates estimate_intensities(const MultiTypePattern& pattern);

}  // namespace partialk
