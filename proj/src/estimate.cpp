#include "partialk/estimate.hpp"

#include <algorithm>
#include <chrono>

#include "partialk/errors.hpp"
#include "partialk/invert.hpp"
#include "partialk/partial.hpp"
#include "partialk/spectra.hpp"
#include "partialk/tapers.hpp"

namespace partialk {

namespace {

using Clock = std::chrono::steady_clock;

double lap(Clock::time_point& t0) {
  const auto t1 = Clock::now();
  const double s = std::chrono::duration<double>(t1 - t0).count();
  t0 = t1;
  return s;
}

void validate_statistic(const std::string& s) {
  if (s != "C" && s != "K" && s != "L" && s != "pcf")
    throw config_error("unknown statistic '" + s + "'");
}

// one or two target labels; a repeated pair collapses to the marginal
std::vector<std::string> normalized_targets(const StatisticRequest& req) {
  if (req.targets.empty() || req.targets.size() > 2)
    throw config_error("estimate needs one or two targets");
  std::vector<std::string> t = req.targets;
  if (t.size() == 2 && t[0] == t[1]) t.pop_back();
  return t;
}

void check_disjoint(const std::vector<std::string>& targets,
                    const std::vector<std::string>& covariates) {
  for (std::size_t i = 0; i < covariates.size(); ++i) {
    for (std::size_t j = i + 1; j < covariates.size(); ++j)
      if (covariates[i] == covariates[j])
        throw config_error("duplicate covariate '" + covariates[i] + "'");
    for (const std::string& t : targets)
      if (covariates[i] == t)
        throw config_error("'" + t + "' is both target and covariate");
  }
}

Eigen::VectorXd resolve_axes(const Eigen::VectorXd& given, const Eigen::VectorXd& dflt,
                             const char* what) {
  if (given.size() == 0) return dflt;
  Eigen::VectorXd v;
  if (given.size() == 1)
    v = Eigen::VectorXd::Constant(dflt.size(), given(0));
  else if (given.size() == dflt.size())
    v = given;
  else
    throw config_error(std::string(what) + " needs one entry or one per axis");
  if ((v.array() <= 0.0).any())
    throw config_error(std::string(what) + " entries must be positive");
  return v;
}

}  // namespace

SummaryCurve run_estimate(const MultiTypePattern& pattern, const StatisticRequest& req,
                          const EstimationConfig& cfg, RunReport* report) {
  validate_statistic(req.statistic);
  if (cfg.route != "rotational" && cfg.route != "direct")
    throw config_error("unknown route '" + cfg.route + "'");
  if (cfg.partial_route != "schur" && cfg.partial_route != "fast")
    throw config_error("unknown partial route '" + cfg.partial_route + "'");
  if (cfg.n_tapers < 1) throw config_error("taper count must be at least 1");

  const std::vector<std::string> targets = normalized_targets(req);
  const std::vector<std::string>& covariates = req.covariates;
  check_disjoint(targets, covariates);
  const Eigen::VectorXd radii = cfg.radii.nodes();

  std::vector<std::string> involved = targets;
  involved.insert(involved.end(), covariates.begin(), covariates.end());

  RunReport rep;
  Clock::time_point t0 = Clock::now();

  const MultiTypePattern sub = pattern.restricted_to(involved);
  for (const std::string& label : involved)
    if (sub.coords(label).rows() == 0)
      throw config_error("type '" + label + "' has no points");
  const IntensityEstimates lam = estimate_intensities(sub);
  rep.stage_seconds.emplace_back("restrict", lap(t0));

  if (cfg.n_tapers < sub.n_types())
    throw config_error("need at least as many tapers as types involved");
  if (!covariates.empty() && cfg.debias &&
      cfg.n_tapers <= static_cast<int>(covariates.size()))
    throw config_error("debiasing needs more tapers than covariates");
  const TaperFamily tapers = make_sine_tapers(cfg.n_tapers, sub.window());
  rep.stage_seconds.emplace_back("tapers", lap(t0));

  const int d = sub.dim();
  const Eigen::VectorXd kmax =
      resolve_axes(cfg.kmax, Eigen::VectorXd::Constant(d, 0.5), "kmax");
  const Eigen::VectorXd spacing = resolve_axes(
      cfg.spacing, sub.window().lengths().cwiseInverse().eval(), "spacing");
  const WavenumberGrid grid = make_grid(kmax, spacing, cfg.max_nodes);
  rep.stage_seconds.emplace_back("grid", lap(t0));

  SpectralMatrixField field = multitaper_matrix(sub, tapers, grid, lam);
  rep.stage_seconds.emplace_back("spectra", lap(t0));

  double debias_factor = 1.0;
  if (!covariates.empty()) {
    PartialSpec ps;
    ps.targets = targets;
    ps.covariates = covariates;
    ps.debias = cfg.debias;
    field = cfg.partial_route == "schur" ? partial_matrix_schur(field, ps)
                                         : partial_matrix_fast(field, ps);
    if (cfg.debias)
      debias_factor = double(cfg.n_tapers) /
                      (cfg.n_tapers - static_cast<int>(covariates.size()));
    rep.stage_seconds.emplace_back("partial", lap(t0));
  }

  const std::string& a = targets.front();
  const std::string& b = targets.back();
  const double atom = atom_correction(a, b, lam);
  const double lx = lam.at(a), ly = lam.at(b);
  const bool pcf = req.statistic == "pcf";

  CResult c;
  if (cfg.route == "direct") {
    c = pcf ? pcf_direct(field, a, b, atom, radii, lx, ly)
            : c_direct(field, a, b, atom, radii);
  } else {
    RadialConfig rc;
    rc.spacing = cfg.radial_spacing;
    rc.bandwidth = cfg.bandwidth;
    rc.kappa_max = cfg.radial_kappa_max;
    const RadialSpectrum rot = rotational_average(field, a, b, rc);
    rep.excluded_kappa = rot.excluded_kappa;
    c = pcf ? pcf_rotational(rot, atom, radii, lx, ly)
            : c_rotational(rot, atom, radii);
  }

  Eigen::VectorXd value;
  if (req.statistic == "C" || pcf) {
    value = c.value;
  } else {
    value = k_from_c(c.value, radii, lx, ly, d);
    if (req.statistic == "L") value = signed_l(value, d);
  }
  rep.stage_seconds.emplace_back("invert", lap(t0));

  SummaryCurve out;
  out.statistic = req.statistic;
  out.targets = targets;
  out.covariates = covariates;
  out.route = cfg.route;
  out.dimension = d;
  out.n_tapers = cfg.n_tapers;
  out.debiased = !covariates.empty() && cfg.debias;
  out.r = radii;
  out.value = value;

  if (report) {
    rep.n_tapers = cfg.n_tapers;
    rep.n_nodes = grid.n_nodes();
    rep.dimension = d;
    rep.route = cfg.route;
    rep.partial_route = covariates.empty() ? "" : cfg.partial_route;
    rep.debias_factor = debias_factor;
    rep.max_imag_residual = c.max_imag_residual;
    rep.labels = lam.labels;
    rep.lambda = lam.lambda;
    *report = std::move(rep);
  }
  return out;
}

KmaxReport kmax_diagnostic(const MultiTypePattern& pattern, const StatisticRequest& req,
                           const EstimationConfig& cfg, double threshold) {
  if (!(threshold > 0.0)) throw config_error("threshold must be positive");
  StatisticRequest lreq = req;
  lreq.statistic = "L";

  const Eigen::VectorXd base_kmax = resolve_axes(
      cfg.kmax, Eigen::VectorXd::Constant(pattern.dim(), 0.5), "kmax");
  EstimationConfig base = cfg;
  base.kmax = base_kmax;
  EstimationConfig doubled = cfg;
  doubled.kmax = 2.0 * base_kmax;
  if (cfg.radial_kappa_max > 0.0) doubled.radial_kappa_max = 2.0 * cfg.radial_kappa_max;

  const SummaryCurve c1 = run_estimate(pattern, lreq, base);
  const SummaryCurve c2 = run_estimate(pattern, lreq, doubled);

  KmaxReport rep;
  rep.kmax_base = base.kmax;
  rep.kmax_doubled = doubled.kmax;
  rep.r = c1.r;
  rep.l_base = c1.value;
  rep.l_doubled = c2.value;
  rep.max_abs_delta = (c1.value - c2.value).cwiseAbs().maxCoeff();
  rep.threshold = threshold;
  rep.converged = rep.max_abs_delta < threshold;
  return rep;
}

}  // namespace partialk
