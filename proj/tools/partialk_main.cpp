// Command line front end: simulate scenarios, run the estimation pipeline,
// attach Monte-Carlo envelopes, check the inversion against closed forms and
// probe kmax convergence.  Exit codes: 0 ok, 2 bad configuration or usage,
// 3 unsupported request, 4 numeric failure (including a failed --tol check).
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "partialk/envelopes.hpp"
#include "partialk/errors.hpp"
#include "partialk/estimate.hpp"
#include "partialk/invert.hpp"
#include "partialk/oracle.hpp"
#include "partialk/parallel.hpp"
#include "partialk/pattern_io.hpp"
#include "partialk/simulate.hpp"

using namespace partialk;

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> split_labels(const std::string& csv) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : csv) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur += c;
    }
  }
  if (!cur.empty() || !out.empty()) out.push_back(cur);
  return out;
}

Window window_from(const std::vector<double>& side) {
  switch (side.size()) {
    case 1: return Window::interval(side[0]);
    case 2: return Window::rect(side[0], side[1]);
    case 3: return Window::box(side[0], side[1], side[2]);
    default: throw config_error("--window takes 1, 2 or 3 side lengths");
  }
}

// Per-key config flags; values land in `raw` and override any --config file.
struct ConfigFlags {
  std::string config_path;
  std::map<std::string, std::string> raw;

  void attach(CLI::App* cmd) {
    cmd->add_option("--config", config_path, "key = value config file");
    const char* keys[] = {"tapers",         "kmax",          "spacing",
                          "radial_spacing", "radial_kappa_max", "bandwidth",
                          "route",          "partial_route", "debias",
                          "radii",          "max_nodes"};
    for (const char* key : keys) {
      std::string flag = "--" + std::string(key);
      for (auto& c : flag)
        if (c == '_') c = '-';
      cmd->add_option(flag, raw[key], "config key " + std::string(key));
    }
  }

  EstimationConfig resolve() const {
    EstimationConfig cfg;
    if (!config_path.empty()) cfg = read_config_file(config_path);
    for (const auto& [key, value] : raw)
      if (!value.empty()) apply_config_entry(cfg, key, value);
    return cfg;
  }
};

void print_report(std::ostream& os, const RunReport& rep) {
  os << "tapers = " << rep.n_tapers << "\n";
  os << "grid nodes = " << rep.n_nodes << "\n";
  os << "dimension = " << rep.dimension << "\n";
  os << "route = " << rep.route << "\n";
  if (!rep.partial_route.empty()) os << "partial route = " << rep.partial_route << "\n";
  os << "debias factor = " << fmt(rep.debias_factor) << "\n";
  os << "max imag residual = " << fmt(rep.max_imag_residual) << "\n";
  for (size_t i = 0; i < rep.labels.size(); ++i)
    os << "lambda " << rep.labels[i] << " = " << fmt(rep.lambda(Eigen::Index(i))) << "\n";
  if (!rep.excluded_kappa.empty()) {
    os << "excluded kappa =";
    for (double k : rep.excluded_kappa) os << " " << fmt(k);
    os << "\n";
  }
  for (const auto& [stage, seconds] : rep.stage_seconds) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "stage %s = %.3f s\n", stage.c_str(), seconds);
    os << buf;
  }
}

StatisticRequest request_from(const std::string& targets, const std::string& covariates,
                              const std::string& stat) {
  StatisticRequest req;
  req.targets = split_labels(targets);
  if (!covariates.empty()) req.covariates = split_labels(covariates);
  req.statistic = stat;
  return req;
}

int run(int argc, char** argv) {
  CLI::App app{"partial K functions of multitype point patterns"};
  app.require_subcommand(1);
  app.fallthrough();
  int threads = 0;
  app.add_option("--threads", threads, "worker thread cap (or PARTIALK_THREADS)");
  const auto apply_threads = [&] {
    if (threads > 0) set_max_threads(threads);
  };

  // ---- simulate ----
  auto* sim = app.add_subcommand("simulate", "draw a named scenario and write a pattern CSV");
  ScenarioSpec spec;
  std::vector<double> window_side, shift;
  std::string sim_out;
  sim->add_option("--scenario", spec.scenario,
                  "biv-independent, biv-packs, biv-solitary, tri-independent, "
                  "tri-cooperative, tri-antagonistic, cox-squared or custom");
  sim->add_option("--seed", spec.seed, "RNG seed");
  sim->add_option("--window", window_side, "window side lengths")->delimiter(',');
  sim->add_option("--lambda", spec.lambda, "parent intensity");
  sim->add_option("--mu-x", spec.mu_x, "offspring mean of X");
  sim->add_option("--sigma-x", spec.sigma_x, "offspring spread of X");
  sim->add_option("--mu-y", spec.mu_y, "offspring mean of Y");
  sim->add_option("--sigma-y", spec.sigma_y, "offspring spread of Y");
  sim->add_option("--mu-x0", spec.mu_x0, "pre-thinning offspring mean of X");
  sim->add_option("--sigma-x0", spec.sigma_x0, "pre-thinning offspring spread of X");
  sim->add_option("--r-x", spec.r_x, "thinning radius");
  sim->add_option("--p-x", spec.p_x, "thinning survival probability");
  sim->add_option("--cox-scale", spec.cox_scale, "cox-squared kernel scale");
  sim->add_option("--shift", shift, "toroidal shift of X (custom scenario)")->delimiter(',');
  sim->add_option("--out", sim_out, "output pattern CSV")->required();
  sim->callback([&] {
    apply_threads();
    if (!window_side.empty()) spec.window = window_from(window_side);
    if (!shift.empty())
      spec.shift = Eigen::Map<const Eigen::VectorXd>(shift.data(), Eigen::Index(shift.size()));
    const ScenarioSpec resolved = resolve_scenario(spec);
    const MultiTypePattern pat = sim_scenario(resolved);
    write_pattern_csv(pat, sim_out, describe_scenario(resolved));
    std::cout << "wrote " << pat.total_count() << " points (";
    for (int t = 0; t < pat.n_types(); ++t)
      std::cout << (t ? ", " : "") << pat.label(t) << "=" << pat.count(t);
    std::cout << ") to " << sim_out << "\n";
  });

  // ---- estimate ----
  auto* est = app.add_subcommand("estimate", "estimate a summary statistic from a pattern CSV");
  std::string est_in, est_targets, est_covariates, est_stat = "L", est_out, est_report;
  ConfigFlags est_cfg;
  est->add_option("--in", est_in, "input pattern CSV")->required();
  est->add_option("--targets", est_targets, "target type label(s), comma separated")->required();
  est->add_option("--covariates", est_covariates, "covariate type labels to partial on");
  est->add_option("--stat", est_stat, "C, K, L or pcf");
  est_cfg.attach(est);
  est->add_option("--out", est_out, "output curve CSV")->required();
  est->add_option("--report", est_report, "write the run report here instead of stderr");
  est->callback([&] {
    apply_threads();
    const MultiTypePattern pat = load_pattern_csv(est_in);
    RunReport rep;
    const SummaryCurve curve =
        run_estimate(pat, request_from(est_targets, est_covariates, est_stat),
                     est_cfg.resolve(), &rep);
    write_curve_csv(est_out, curve);
    if (est_report.empty()) {
      print_report(std::cerr, rep);
    } else {
      std::ofstream out(est_report);
      if (!out) throw config_error("cannot open report file '" + est_report + "'");
      print_report(out, rep);
    }
    std::cout << "wrote " << curve.statistic << " curve (" << curve.r.size()
              << " radii) to " << est_out << "\n";
  });

  // ---- envelope ----
  auto* env_cmd = app.add_subcommand("envelope", "statistic with a global Monte-Carlo band");
  std::string env_in, env_targets, env_covariates, env_stat = "L", env_out;
  std::string env_null = "poisson-marginal";
  EnvelopeConfig env;
  ConfigFlags env_cfg;
  env_cmd->add_option("--in", env_in, "input pattern CSV")->required();
  env_cmd->add_option("--targets", env_targets, "target type label(s)")->required();
  env_cmd->add_option("--covariates", env_covariates, "covariate type labels");
  env_cmd->add_option("--stat", env_stat, "C, K, L or pcf");
  env_cmd->add_option("--null", env_null,
                      "poisson-marginal (alias poisson) or random-shift-pair (alias shift)");
  env_cmd->add_option("--nsim", env.n_sim, "null simulations");
  env_cmd->add_option("--alpha", env.alpha, "global level");
  env_cmd->add_option("--seed", env.seed, "RNG seed");
  env_cfg.attach(env_cmd);
  env_cmd->add_option("--out", env_out, "output curve CSV with lo/hi columns")->required();
  env_cmd->callback([&] {
    apply_threads();
    env.null_kind = env_null == "poisson" ? "poisson-marginal"
                    : env_null == "shift" ? "random-shift-pair"
                                          : env_null;
    const MultiTypePattern pat = load_pattern_csv(env_in);
    const SummaryCurve curve = poisson_null_envelope(
        pat, request_from(env_targets, env_covariates, env_stat), env_cfg.resolve(), env);
    write_curve_csv(env_out, curve);
    std::cout << "wrote " << curve.statistic << " curve with envelope (n_sim=" << env.n_sim
              << ", alpha=" << env.alpha << ") to " << env_out << "\n";
  });

  // ---- oracle-check ----
  auto* chk = app.add_subcommand(
      "oracle-check", "run a closed-form spectrum through the inversion and compare");
  std::string chk_model = "thomas", chk_stat = "K", chk_route = "rotational", chk_out;
  std::string chk_radii = "1:20:20";
  double chk_intensity = 0.01, chk_mu = 3.0, chk_sigma = 1.5;
  double chk_kmax = 0.5, chk_spacing = 1.0 / 300.0, chk_tol = 0.0;
  chk->add_option("--model", chk_model, "thomas or poisson");
  chk->add_option("--stat", chk_stat, "K or L");
  chk->add_option("--r", chk_radii, "radii as start:stop:count");
  chk->add_option("--intensity", chk_intensity, "parent (thomas) or plain (poisson) intensity");
  chk->add_option("--mu", chk_mu, "thomas offspring mean");
  chk->add_option("--sigma", chk_sigma, "thomas offspring spread");
  chk->add_option("--kmax", chk_kmax, "grid extent per axis");
  chk->add_option("--spacing", chk_spacing, "grid spacing per axis");
  chk->add_option("--route", chk_route, "rotational or direct");
  chk->add_option("--tol", chk_tol, "fail (exit 4) when max relative error exceeds this");
  chk->add_option("--out", chk_out, "write r,oracle,estimate,rel_error CSV here");
  chk->callback([&] {
    apply_threads();
    EstimationConfig grid_cfg;
    apply_config_entry(grid_cfg, "radii", chk_radii);
    const Eigen::VectorXd r = grid_cfg.radii.nodes();
    if (chk_stat != "K" && chk_stat != "L") throw config_error("--stat must be K or L");
    if (chk_model != "thomas" && chk_model != "poisson")
      throw config_error("--model must be thomas or poisson");

    ClusterModelSpec model;
    model.lambda_z = chk_intensity;
    model.mu_x = chk_model == "thomas" ? chk_mu : 0.0;
    model.sigma_x = chk_sigma;
    model.mu_y = 0.0;
    const std::string label = chk_model == "thomas" ? "X" : "Z";
    const double lambda =
        chk_model == "thomas" ? model.mu_x * model.lambda_z : model.lambda_z;

    const WavenumberGrid grid = make_grid(Eigen::Vector2d::Constant(chk_kmax),
                                          Eigen::Vector2d::Constant(chk_spacing));
    const SpectralMatrixField field = cluster_spectra_field(model, grid);
    const int a = chk_model == "thomas" ? 0 : 2;
    CResult c;
    if (chk_route == "rotational") {
      const RadialSpectrum rot = rotational_average(field, field.labels[a],
                                                    field.labels[a], RadialConfig{});
      c = c_rotational(rot, lambda, r);
    } else if (chk_route == "direct") {
      c = c_direct(field, field.labels[a], field.labels[a], lambda, r);
    } else {
      throw config_error("--route must be rotational or direct");
    }
    Eigen::VectorXd est = k_from_c(c.value, r, lambda, lambda, 2);
    if (chk_stat == "L") est = signed_l(est, 2);

    const auto radial = [&](double kappa) {
      const Eigen::RowVector2d k(kappa, 0.0);
      return cluster_spectra(model, k)(a, a).real();
    };
    Eigen::VectorXd oracle(r.size()), rel(r.size());
    for (Eigen::Index i = 0; i < r.size(); ++i) {
      oracle(i) = oracle_summary(radial, chk_stat, r(i), 2, lambda, lambda, lambda);
      rel(i) = std::abs(est(i) - oracle(i)) / std::max(std::abs(oracle(i)), 1e-300);
    }
    if (!chk_out.empty()) {
      std::ofstream out(chk_out);
      if (!out) throw config_error("cannot open '" + chk_out + "' for writing");
      out << "r,oracle,estimate,rel_error\n";
      for (Eigen::Index i = 0; i < r.size(); ++i)
        out << fmt(r(i)) << "," << fmt(oracle(i)) << "," << fmt(est(i)) << ","
            << fmt(rel(i)) << "\n";
    }
    const double worst = rel.maxCoeff();
    std::cout << chk_model << " " << chk_stat << " on " << label << ": max relative error "
              << fmt(worst) << " over " << r.size() << " radii\n";
    if (chk_tol > 0 && worst > chk_tol)
      throw numeric_error("oracle check failed: max relative error " + fmt(worst) +
                          " exceeds --tol " + fmt(chk_tol));
  });

  // ---- kmax-diagnostic ----
  auto* diag = app.add_subcommand("kmax-diagnostic",
                                  "re-estimate L at twice the grid extent and compare");
  std::string diag_in, diag_targets, diag_covariates, diag_out;
  double diag_threshold = 0.05;
  ConfigFlags diag_cfg;
  diag->add_option("--in", diag_in, "input pattern CSV")->required();
  diag->add_option("--targets", diag_targets, "target type label(s)")->required();
  diag->add_option("--covariates", diag_covariates, "covariate type labels");
  diag->add_option("--threshold", diag_threshold, "max |delta L| accepted as converged");
  diag_cfg.attach(diag);
  diag->add_option("--out", diag_out, "write r,l_base,l_doubled,delta CSV here");
  diag->callback([&] {
    apply_threads();
    const MultiTypePattern pat = load_pattern_csv(diag_in);
    const KmaxReport rep = kmax_diagnostic(pat, request_from(diag_targets, diag_covariates, "L"),
                                           diag_cfg.resolve(), diag_threshold);
    if (!diag_out.empty()) {
      std::ofstream out(diag_out);
      if (!out) throw config_error("cannot open '" + diag_out + "' for writing");
      out << "r,l_base,l_doubled,delta\n";
      for (Eigen::Index i = 0; i < rep.r.size(); ++i)
        out << fmt(rep.r(i)) << "," << fmt(rep.l_base(i)) << "," << fmt(rep.l_doubled(i))
            << "," << fmt(rep.l_doubled(i) - rep.l_base(i)) << "\n";
    }
    std::cout << "kmax base:";
    for (Eigen::Index j = 0; j < rep.kmax_base.size(); ++j)
      std::cout << " " << fmt(rep.kmax_base(j));
    std::cout << "  doubled:";
    for (Eigen::Index j = 0; j < rep.kmax_doubled.size(); ++j)
      std::cout << " " << fmt(rep.kmax_doubled(j));
    std::cout << "\nmax |delta L| = " << fmt(rep.max_abs_delta) << " (threshold "
              << fmt(rep.threshold) << ")\nconverged: " << (rep.converged ? "yes" : "no")
              << "\n";
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const unsupported_error& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    return 3;
  } catch (const numeric_error& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 4;
  } catch (const config_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
