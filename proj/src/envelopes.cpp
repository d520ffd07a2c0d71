#include "partialk/envelopes.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "partialk/errors.hpp"
#include "partialk/simulate.hpp"

namespace partialk {

namespace {

double column_median(const Eigen::MatrixXd& curves, Eigen::Index j,
                     std::vector<double>& scratch) {
  scratch.assign(curves.col(j).data(), curves.col(j).data() + curves.rows());
  const std::size_t mid = scratch.size() / 2;
  std::nth_element(scratch.begin(), scratch.begin() + mid, scratch.end());
  double m = scratch[mid];
  if (scratch.size() % 2 == 0) {
    const double below = *std::max_element(scratch.begin(), scratch.begin() + mid);
    m = 0.5 * (m + below);
  }
  return m;
}

Eigen::Index critical_index(Eigen::Index n, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw config_error("alpha must be in (0,1)");
  const auto idx =
      static_cast<Eigen::Index>(std::ceil((1.0 - alpha) * double(n + 1)));
  if (idx > n)
    throw config_error("too few simulations for this alpha: need at least " +
                       std::to_string(static_cast<long>(std::ceil(1.0 / alpha)) - 1));
  return idx;
}

void check_envelope_config(const EnvelopeConfig& env) {
  if (env.n_sim < 19) throw config_error("n_sim must be at least 19");
  critical_index(env.n_sim, env.alpha);
  if (env.null_kind != "poisson-marginal" && env.null_kind != "random-shift-pair")
    throw config_error("unknown null kind '" + env.null_kind + "'");
}

}  // namespace

EnvelopeBand mad_global_envelope(const Eigen::MatrixXd& curves, double alpha) {
  const Eigen::Index n = curves.rows(), nr = curves.cols();
  if (n < 1 || nr < 1) throw config_error("need at least one curve and one radius");
  if (!curves.allFinite())
    throw numeric_error("envelope input contains non-finite curve values");
  const Eigen::Index idx = critical_index(n, alpha);

  EnvelopeBand band;
  band.center.resize(nr);
  std::vector<double> scratch;
  for (Eigen::Index j = 0; j < nr; ++j)
    band.center(j) = column_median(curves, j, scratch);

  Eigen::VectorXd dev =
      (curves.rowwise() - band.center.transpose()).cwiseAbs().rowwise().maxCoeff();
  std::sort(dev.data(), dev.data() + n);
  band.half_width = dev(idx - 1);
  band.lo = band.center.array() - band.half_width;
  band.hi = band.center.array() + band.half_width;
  return band;
}

SummaryCurve poisson_null_envelope(const MultiTypePattern& pattern,
                                   const StatisticRequest& req,
                                   const EstimationConfig& cfg,
                                   const EnvelopeConfig& env) {
  if (!req.covariates.empty())
    throw unsupported_error(
        "envelopes for partial statistics are not supported: no resampling "
        "null preserving the partial structure is known");
  check_envelope_config(env);

  const SummaryCurve observed = run_estimate(pattern, req, cfg);
  const std::vector<std::string>& targets = observed.targets;
  const bool pair_null = env.null_kind == "random-shift-pair";
  if (pair_null && targets.size() != 2)
    throw config_error("random-shift-pair needs two distinct targets");

  const Window& w = pattern.window();
  const MultiTypePattern base = pattern.restricted_to(targets);
  IntensityEstimates lam = estimate_intensities(base);

  Eigen::MatrixXd curves(env.n_sim, observed.r.size());
  for (int i = 0; i < env.n_sim; ++i) {
    std::mt19937_64 rng(env.seed + static_cast<std::uint64_t>(i));
    MultiTypePattern null(w);
    if (pair_null) {
      null.add_type(targets[0], base.coords(targets[0]));
      Eigen::VectorXd s(w.dim());
      std::uniform_real_distribution<double> U(0.0, 1.0);
      for (int j = 0; j < w.dim(); ++j)
        s(j) = U(rng) * (w.hi()(j) - w.lo()(j));
      null.add_type(targets[1], sim_shift(base.coords(targets[1]), s, w));
    } else {
      for (const std::string& t : targets)
        null.add_type(t, sim_poisson(w, lam.at(t), rng));
    }
    curves.row(i) = run_estimate(null, req, cfg).value.transpose();
  }

  const EnvelopeBand band = mad_global_envelope(curves, env.alpha);
  SummaryCurve out = observed;
  out.lo = band.lo;
  out.hi = band.hi;
  return out;
}

}  // namespace partialk
