#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <limits>
#include <random>
#include <string>

#include "partialk/pattern.hpp"

namespace partialk {

/// Named simulation setup.  Parameters left as NaN take the scenario's
/// defaults; resolve_scenario fills them in.
///
/// Scenarios (types X, Y and, when present, Z are emitted; intermediates are
/// dropped):
///   biv-independent   Y Poisson(lambda); X clusters around Y
///                     (mu_x0, sigma_x0).
///   biv-packs         as biv-independent, then X re-clusters around the
///                     intermediate points (mu_x, sigma_x).
///   biv-solitary      as biv-independent with mu_x0 large, then mark
///                     thinning of X (r_x, p_x).
///   tri-independent   Z Poisson(lambda); X and Y cluster around Z
///                     independently (mu_x, sigma_x, mu_y, sigma_y).
///   tri-cooperative   Z Poisson(lambda); Y clusters around Z; X clusters
///                     around Y (mu_x, sigma_x).
///   tri-antagonistic  Z Poisson(lambda); Y clusters around Z; X0 clusters
///                     around Z (mu_x0, sigma_x0), then X0 points within r_x
///                     of any Y point survive only with probability p_x.
///   cox-squared       Z Poisson(lambda); X, Y conditionally independent Cox
///                     draws from [sum_z exp(-||u-z||^2/(2 a^2))]^2 with
///                     a = cox_scale.
///   custom            tri-independent structure with free parameters, then
///                     optional cross thinning of X by Y (when r_x > 0) and
///                     an optional toroidal shift of X.
struct ScenarioSpec {
  std::string scenario = "tri-independent";
  Window window = Window::rect(300.0, 300.0);
  std::uint64_t seed = 1;

  double lambda = std::numeric_limits<double>::quiet_NaN();
  double mu_x = std::numeric_limits<double>::quiet_NaN();
  double sigma_x = std::numeric_limits<double>::quiet_NaN();
  double mu_y = std::numeric_limits<double>::quiet_NaN();
  double sigma_y = std::numeric_limits<double>::quiet_NaN();
  double mu_x0 = std::numeric_limits<double>::quiet_NaN();
  double sigma_x0 = std::numeric_limits<double>::quiet_NaN();
  double r_x = std::numeric_limits<double>::quiet_NaN();
  double p_x = std::numeric_limits<double>::quiet_NaN();
  double cox_scale = std::numeric_limits<double>::quiet_NaN();
  Eigen::VectorXd shift;  // custom only; empty means no shift
};

/// Homogeneous Poisson sample: count ~ Poisson(lambda |W|), locations
/// i.i.d. uniform.
Eigen::MatrixXd sim_poisson(const Window& window, double lambda, std::mt19937_64& rng);

/// Poisson(mu) offspring per parent at Normal(0, sigma^2 I) offsets;
/// offspring falling outside the window are discarded.
Eigen::MatrixXd sim_cluster(const Eigen::MatrixXd& parents, double mu, double sigma,
                            const Window& window, std::mt19937_64& rng);

/// Matern-type dependent thinning: i.i.d. Uniform[0,1] marks; a point with a
/// higher-marked neighbour within distance r survives with probability p
/// (one trial, however many such neighbours); all other points survive.
Eigen::MatrixXd sim_mark_thinning(const Eigen::MatrixXd& points, double r, double p,
                                  std::mt19937_64& rng);

/// Thinning by another process: a point of `points` within distance r of any
/// point of `by` survives with probability p; all other points survive.
Eigen::MatrixXd sim_cross_thinning(const Eigen::MatrixXd& points,
                                   const Eigen::MatrixXd& by, double r, double p,
                                   std::mt19937_64& rng);

/// Translates every point by s, wrapping toroidally in the window.
Eigen::MatrixXd sim_shift(const Eigen::MatrixXd& points, const Eigen::VectorXd& s,
                          const Window& window);

/// Cox-squared counterexample process with a given driving pattern z
/// (z may extend beyond the window; emitted Z is clipped to it).  X and Y are
/// rejection-sampled against a dominating rate bounded on a lattice of
/// spacing a/4; a bound violation raises numeric_error.
MultiTypePattern sim_cox_squared_given(const Window& window, const Eigen::MatrixXd& z,
                                       double a, std::mt19937_64& rng);

/// Cox-squared process: Z is drawn Poisson(lambda_z) on the window padded by
/// 6a, so the driving field is not starved near the boundary.
MultiTypePattern sim_cox_squared(const Window& window, double lambda_z, double a,
                                 std::mt19937_64& rng);

/// Fills NaN parameters with the named scenario's defaults and validates.
ScenarioSpec resolve_scenario(const ScenarioSpec& spec);

/// One-line key=value rendering of the resolved parameters.
std::string describe_scenario(const ScenarioSpec& resolved);

/// Draws the named scenario; deterministic in (spec, seed).
MultiTypePattern sim_scenario(const ScenarioSpec& spec);

}  // namespace partialk
