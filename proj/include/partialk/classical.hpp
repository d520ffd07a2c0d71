#pragma once

#include <Eigen/Dense>
#include <string>

#include "partialk/pattern.hpp"

namespace partialk {

/// Border-corrected (minus-sampling) K estimate:
///   K(r) = (1 / lambda_X) * sum over eligible references y of
///          #{x : 0 < ||x - y|| <= r} / #eligible,
/// eligible meaning boundary distance >= r; the point itself is excluded
/// when X = Y.  Radii with no eligible reference give NaN, not an error.
Eigen::VectorXd border_corrected_k(const MultiTypePattern& pattern, const std::string& x,
                                   const std::string& y, const Eigen::VectorXd& radii);

}  // namespace partialk
