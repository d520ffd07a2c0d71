#pragma once

#include <Eigen/Dense>

#include "partialk/errors.hpp"

namespace partialk {

/// Axis-aligned observation window [lo_1,hi_1] x ... x [lo_d,hi_d], d in {1,2,3}.
class Window {
 public:
  Window() = default;

  Window(Eigen::VectorXd lo, Eigen::VectorXd hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
    if (lo_.size() != hi_.size()) throw config_error("window: lo and hi dimension mismatch");
    if (lo_.size() < 1 || lo_.size() > 3)
      throw config_error("window: dimension must be 1, 2 or 3, got " + std::to_string(lo_.size()));
    for (Eigen::Index j = 0; j < lo_.size(); ++j)
      if (!(hi_(j) > lo_(j)))
        throw config_error("window: hi must exceed lo on every axis");
  }

  /// Rectangle [0,a] x [0,b].
  static Window rect(double a, double b) {
    Eigen::VectorXd lo(2), hi(2);
    lo << 0.0, 0.0;
    hi << a, b;
    return Window(lo, hi);
  }

  /// Interval [0,a].
  static Window interval(double a) {
    Eigen::VectorXd lo(1), hi(1);
    lo << 0.0;
    hi << a;
    return Window(lo, hi);
  }

  /// Box [0,a] x [0,b] x [0,c].
  static Window box(double a, double b, double c) {
    Eigen::VectorXd lo(3), hi(3);
    lo << 0.0, 0.0, 0.0;
    hi << a, b, c;
    return Window(lo, hi);
  }

  int dim() const { return static_cast<int>(lo_.size()); }
  const Eigen::VectorXd& lo() const { return lo_; }
  const Eigen::VectorXd& hi() const { return hi_; }
  Eigen::VectorXd lengths() const { return hi_ - lo_; }
  double volume() const { return (hi_ - lo_).prod(); }

  /// Closed containment test.
  bool contains(const Eigen::Ref<const Eigen::RowVectorXd>& x) const {
    for (Eigen::Index j = 0; j < lo_.size(); ++j)
      if (x(j) < lo_(j) || x(j) > hi_(j)) return false;
    return true;
  }

  /// Distance from x to the window boundary (nonnegative inside).
  double boundary_distance(const Eigen::Ref<const Eigen::RowVectorXd>& x) const {
    double d = std::numeric_limits<double>::infinity();
    for (Eigen::Index j = 0; j < lo_.size(); ++j)
      d = std::min({d, x(j) - lo_(j), hi_(j) - x(j)});
    return d;
  }

 private:
  Eigen::VectorXd lo_, hi_;
};

}  // namespace partialk
