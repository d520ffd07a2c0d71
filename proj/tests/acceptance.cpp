// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails.  All tolerances are fixed here; seeds are pinned so the
// suite is deterministic.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "partialk/classical.hpp"
#include "partialk/envelopes.hpp"
#include "partialk/estimate.hpp"
#include "partialk/invert.hpp"
#include "partialk/oracle.hpp"
#include "partialk/partial.hpp"
#include "partialk/quadrature.hpp"
#include "partialk/simulate.hpp"
#include "partialk/special.hpp"
#include "partialk/spectra.hpp"
#include "partialk/tapers.hpp"

using namespace partialk;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

bool report(int id, bool ok, const std::string& detail) {
  std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", id, detail.c_str());
  std::fflush(stdout);
  return ok;
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

// ---------------------------------------------------------------- criterion 1
// Schur complement of the analytic cluster spectral matrix reproduces the
// closed-form partials: f_XY.Z = 0 and f_XX.YZ = lambda_X.
bool criterion1() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  double worst = 0.0;
  for (int s = 0; s < 200; ++s) {
    ClusterModelSpec spec;
    spec.dimension = 1 + int(rng() % 3);
    spec.lambda_z = 0.001 + 0.05 * U(rng);
    spec.mu_x = 0.2 + 10.0 * U(rng);
    spec.mu_y = 0.2 + 10.0 * U(rng);
    spec.sigma_x = 0.5 + 2.5 * U(rng);
    spec.sigma_y = 0.5 + 2.5 * U(rng);
    const double lambda_x = spec.mu_x * spec.lambda_z;
    for (int q = 0; q < 50; ++q) {
      Eigen::RowVectorXd k(spec.dimension);
      for (int j = 0; j < spec.dimension; ++j) k(j) = 2.0 * U(rng) - 1.0;
      const Eigen::Matrix3cd F = cluster_spectra(spec, k);
      const std::complex<double> xy_z =
          schur_complement(F, std::vector<int>{0, 1}, std::vector<int>{2})(0, 1);
      const std::complex<double> xx_yz =
          schur_complement(F, std::vector<int>{0}, std::vector<int>{1, 2})(0, 0);
      worst = std::max(worst, std::abs(xy_z));
      worst = std::max(worst, std::abs(xx_yz - lambda_x));
    }
  }
  const double secs = seconds_since(t0);
  return report(1, worst <= 1e-12 && secs < 1.0,
                "partial oracle exactness, 200 specs x 50 wavenumbers (max err " +
                    num(worst) + ", " + num(secs) + " s)");
}

// ---------------------------------------------------------------- criterion 2
// Analytic Thomas spectra through both inversion routes match the
// quadrature oracle K within 1% for r in [1, 20].
bool criterion2() {
  const auto t0 = Clock::now();
  ClusterModelSpec model;
  model.lambda_z = 0.01;
  model.mu_x = 3.0;
  model.sigma_x = 1.5;
  model.mu_y = 0.0;
  const double lambda_x = model.mu_x * model.lambda_z;
  const Eigen::VectorXd r = RadiiSpec{1.0, 20.0, 20}.nodes();

  const WavenumberGrid grid = make_grid(Eigen::Vector2d::Constant(0.5),
                                        Eigen::Vector2d::Constant(1.0 / 300.0));
  const SpectralMatrixField field = cluster_spectra_field(model, grid);

  const Eigen::VectorXd k_dir =
      k_from_c(c_direct(field, "X", "X", lambda_x, r).value, r, lambda_x, lambda_x, 2);
  const RadialSpectrum rot = rotational_average(field, "X", "X", RadialConfig{});
  const Eigen::VectorXd k_rot =
      k_from_c(c_rotational(rot, lambda_x, r).value, r, lambda_x, lambda_x, 2);

  const auto radial = [&](double kappa) {
    const Eigen::RowVector2d k(kappa, 0.0);
    return cluster_spectra(model, k)(0, 0).real();
  };
  double worst = 0.0;
  for (Eigen::Index i = 0; i < r.size(); ++i) {
    const double truth = oracle_summary(radial, "K", r(i), 2, lambda_x, lambda_x, lambda_x);
    worst = std::max(worst, std::abs(k_dir(i) - truth) / truth);
    worst = std::max(worst, std::abs(k_rot(i) - truth) / truth);
  }
  const double secs = seconds_since(t0);
  return report(2, worst <= 0.01 && secs < 30.0,
                "Thomas inversion fidelity, direct and rotational (max rel err " +
                    num(worst) + ", " + num(secs) + " s)");
}

// ---------------------------------------------------------------- criterion 3
// Sign structure of the mean partial L curve over 100 replicates per
// scenario: independence cases stay inside +-0.5 of r on all of [3, 15];
// interaction cases leave the band in the expected direction somewhere on it.
Eigen::VectorXd mean_curve(const std::string& scenario, const StatisticRequest& req,
                           const EstimationConfig& cfg, int reps, std::uint64_t seed0) {
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(cfg.radii.count);
  for (int j = 0; j < reps; ++j) {
    ScenarioSpec sc;
    sc.scenario = scenario;
    sc.seed = seed0 + std::uint64_t(j);
    sum += run_estimate(sim_scenario(sc), req, cfg).value;
  }
  return sum / double(reps);
}

bool criterion3() {
  EstimationConfig cfg;
  cfg.radii = {3.0, 15.0, 13};
  const Eigen::VectorXd r = cfg.radii.nodes();
  const int reps = 100;

  StatisticRequest marginal;
  marginal.targets = {"X"};
  marginal.covariates = {"Y"};
  StatisticRequest cross;
  cross.targets = {"X", "Y"};
  cross.covariates = {"Z"};
  StatisticRequest plain_cross;
  plain_cross.targets = {"X", "Y"};

  struct Row {
    const char* scenario;
    const StatisticRequest* req;
    char mode;  // 'w' within band, 'a' above somewhere, 'b' below somewhere
  };
  const Row rows[] = {
      {"biv-independent", &marginal, 'w'},  {"biv-packs", &marginal, 'a'},
      {"biv-solitary", &marginal, 'b'},     {"tri-independent", &cross, 'w'},
      {"tri-independent", &plain_cross, 'a'}, {"tri-cooperative", &cross, 'a'},
      {"tri-antagonistic", &cross, 'b'},
  };

  bool ok = true;
  std::string detail = "scenario sign structure:";
  std::uint64_t seed0 = 30000;
  double max_secs = 0.0;
  for (const Row& row : rows) {
    const auto t0 = Clock::now();
    const Eigen::VectorXd dev = mean_curve(row.scenario, *row.req, cfg, reps, seed0) - r;
    const double secs = seconds_since(t0);
    max_secs = std::max(max_secs, secs);
    seed0 += 1000;
    bool row_ok = false;
    double stat = 0.0;
    switch (row.mode) {
      case 'w':
        stat = dev.cwiseAbs().maxCoeff();
        row_ok = stat < 0.5;
        break;
      case 'a':
        stat = dev.maxCoeff();
        row_ok = stat > 0.5;
        break;
      case 'b':
        stat = dev.minCoeff();
        row_ok = stat < -0.5;
        break;
    }
    row_ok = row_ok && secs < 900.0;
    ok = ok && row_ok;
    detail += std::string(" ") + row.scenario + (row.req == &plain_cross ? "(plain)" : "") +
              (row_ok ? " ok" : " FAIL") + " (" + num(stat) + ")";
  }
  detail += ", slowest " + num(max_secs) + " s";
  return report(3, ok, detail);
}

// ---------------------------------------------------------------- criterion 4
// (a) Wishart Monte Carlo reproduces the plug-in attenuation (M+s-P)/M.
// (b) The debiased partial L is uniformly at least as close to the oracle
//     identity as the plug-in over r in [0, 5] on tri-independent data.
bool criterion4() {
  Eigen::Matrix3cd Sigma;
  using C = std::complex<double>;
  Sigma << C(2.0, 0.0), C(0.5, 0.3), C(0.0, 0.2),  //
      C(0.5, -0.3), C(1.5, 0.0), C(0.4, -0.1),     //
      C(0.0, -0.2), C(0.4, 0.1), C(1.0, 0.0);
  const Eigen::MatrixXcd ratio = wishart_debias_check(8, 3, 1, Sigma, 100000, 401);
  const double got = ratio(0, 0).real();
  const bool ok_a = std::abs(got - 0.75) <= 0.01 && std::abs(ratio(0, 0).imag()) <= 0.01;

  EstimationConfig cfg;
  cfg.radii = {0.0, 5.0, 21};
  const Eigen::VectorXd r = cfg.radii.nodes();
  StatisticRequest req;
  req.targets = {"X"};
  req.covariates = {"Y", "Z"};
  const int reps = 100;
  Eigen::VectorXd deb = Eigen::VectorXd::Zero(r.size());
  Eigen::VectorXd plug = Eigen::VectorXd::Zero(r.size());
  for (int j = 0; j < reps; ++j) {
    ScenarioSpec sc;
    sc.seed = 42000 + std::uint64_t(j);
    const MultiTypePattern pat = sim_scenario(sc);
    EstimationConfig on = cfg;
    deb += run_estimate(pat, req, on).value;
    on.debias = false;
    plug += run_estimate(pat, req, on).value;
  }
  deb /= double(reps);
  plug /= double(reps);
  bool ok_b = true;
  double margin = 0.0;
  for (Eigen::Index i = 0; i < r.size(); ++i) {
    const double d_deb = std::abs(deb(i) - r(i));
    const double d_plug = std::abs(plug(i) - r(i));
    ok_b = ok_b && d_deb <= d_plug + 1e-12;
    margin = std::max(margin, d_deb - d_plug);
  }
  return report(4, ok_a && ok_b,
                "debiasing: wishart ratio " + num(got) + (ok_a ? " ok" : " FAIL") +
                    "; debiased vs plug-in uniformly closer " +
                    (ok_b ? "ok" : ("FAIL (worst gap " + num(margin) + ")")));
}

// ---------------------------------------------------------------- criterion 5
// Partialling an independent Poisson Z out of a bivariate system leaves the
// cross K unchanged up to Monte-Carlo error.
bool criterion5() {
  EstimationConfig cfg;
  cfg.radii = {1.0, 20.0, 20};
  StatisticRequest partial_req;
  partial_req.targets = {"X", "Y"};
  partial_req.covariates = {"Z"};
  partial_req.statistic = "K";
  StatisticRequest plain_req;
  plain_req.targets = {"X", "Y"};
  plain_req.statistic = "K";

  const int reps = 100;
  const int nr = cfg.radii.count;
  Eigen::MatrixXd diff(reps, nr);
  for (int j = 0; j < reps; ++j) {
    ScenarioSpec sc;
    sc.scenario = "biv-independent";
    sc.seed = 52000 + std::uint64_t(j);
    MultiTypePattern pat = sim_scenario(sc);
    std::mt19937_64 zrng(53000 + std::uint64_t(j));
    pat.add_type("Z", sim_poisson(pat.window(), 0.01, zrng));
    diff.row(j) = (run_estimate(pat, partial_req, cfg).value -
                   run_estimate(pat, plain_req, cfg).value)
                      .transpose();
  }
  const Eigen::RowVectorXd mean = diff.colwise().mean();
  const Eigen::RowVectorXd sd =
      ((diff.rowwise() - mean).colwise().squaredNorm() / double(reps - 1)).cwiseSqrt();
  bool ok = true;
  double worst_z = 0.0;
  for (int i = 0; i < nr; ++i) {
    const double z = std::abs(mean(i)) / (sd(i) / std::sqrt(double(reps)));
    worst_z = std::max(worst_z, z);
    ok = ok && z <= 2.0;
  }
  return report(5, ok,
                "superposition invariance of cross K, 100 replicates (max |mean|/SE " +
                    num(worst_z) + ")");
}

// ---------------------------------------------------------------- criterion 6
// On cox-squared data the estimated partial cross spectrum is positive at
// low wavenumbers and matches the closed form within 25% on ||k|| <= 0.1.
bool criterion6() {
  const WavenumberGrid grid = make_grid(Eigen::Vector2d::Constant(0.12),
                                        Eigen::Vector2d::Constant(1.0 / 300.0));
  const int reps = 100;
  Eigen::VectorXd mean = Eigen::VectorXd::Zero(grid.n_nodes());
  for (int j = 0; j < reps; ++j) {
    ScenarioSpec sc;
    sc.scenario = "cox-squared";
    sc.seed = 62000 + std::uint64_t(j);
    const MultiTypePattern pat = sim_scenario(sc);
    const IntensityEstimates lam = estimate_intensities(pat);
    const TaperFamily tapers = make_sine_tapers(8, pat.window());
    const SpectralMatrixField field = multitaper_matrix(pat, tapers, grid, lam);
    PartialSpec ps;
    ps.targets = {"X", "Y"};
    ps.covariates = {"Z"};
    const SpectralMatrixField pf = partial_matrix_schur(field, ps);
    mean += pf.entry(0, 1).real();
  }
  mean /= double(reps);

  double est_avg = 0.0, truth_avg = 0.0, min_node = 1e300;
  int n_band = 0;
  for (Eigen::Index i = 0; i < grid.n_nodes(); ++i) {
    const double kn = grid.node_norm(i);
    if (kn <= 0.0 || kn > 0.1) continue;
    est_avg += mean(i);
    truth_avg += cox_squared_partial_spectrum(0.01, 1.0, grid.node(i));
    min_node = std::min(min_node, mean(i));
    ++n_band;
  }
  est_avg /= n_band;
  truth_avg /= n_band;
  const double rel = std::abs(est_avg - truth_avg) / truth_avg;
  const bool ok = min_node > 0.0 && rel <= 0.25;
  return report(6, ok,
                "cox-squared partial cross spectrum over " + std::to_string(n_band) +
                    " low-k nodes (band rel err " + num(rel) + ", min mean node " +
                    num(min_node) + ")");
}

// ---------------------------------------------------------------- criterion 7
// Spectral L and border-corrected L agree on Poisson and Thomas data, and
// the spectral estimator loses at most a factor two in MSE.
bool criterion7() {
  const Window w = Window::rect(200.0, 200.0);
  EstimationConfig cfg;
  cfg.radii = {1.0, 20.0, 20};
  const Eigen::VectorXd r = cfg.radii.nodes();
  StatisticRequest req;
  req.targets = {"X"};
  const int reps = 100;

  bool ok = true;
  std::string detail = "estimator parity:";
  for (const std::string model : {"poisson", "thomas"}) {
    Eigen::VectorXd truth(r.size());
    for (Eigen::Index i = 0; i < r.size(); ++i) {
      if (model == "poisson") {
        truth(i) = r(i);
      } else {
        const double k =
            M_PI * r(i) * r(i) + (1.0 - std::exp(-r(i) * r(i) / (4.0 * 1.5 * 1.5))) / 0.01;
        truth(i) = std::sqrt(k / M_PI);
      }
    }
    Eigen::VectorXd absdiff = Eigen::VectorXd::Zero(r.size());
    double mse_spec = 0.0, mse_border = 0.0;
    for (int j = 0; j < reps; ++j) {
      MultiTypePattern pat(w);
      if (model == "poisson") {
        std::mt19937_64 rng(70000 + std::uint64_t(j));
        pat.add_type("X", sim_poisson(w, 0.03, rng));
      } else {
        // stationary Thomas(0.01, 3, 1.5): parents on a 6-sigma padded window
        std::mt19937_64 rng(71000 + std::uint64_t(j));
        const Window padded((w.lo().array() - 9.0).matrix(),
                            (w.hi().array() + 9.0).matrix());
        const Eigen::MatrixXd parents = sim_poisson(padded, 0.01, rng);
        pat.add_type("X", sim_cluster(parents, 3.0, 1.5, w, rng));
      }
      const Eigen::VectorXd l_spec = run_estimate(pat, req, cfg).value;
      const Eigen::VectorXd l_border = signed_l(border_corrected_k(pat, "X", "X", r), 2);
      absdiff += (l_spec - l_border).cwiseAbs();
      mse_spec += (l_spec - truth).squaredNorm();
      mse_border += (l_border - truth).squaredNorm();
    }
    absdiff /= double(reps);
    mse_spec /= double(reps * r.size());
    mse_border /= double(reps * r.size());
    const double worst = absdiff.maxCoeff();
    const bool model_ok = worst < 0.5 && mse_spec <= 2.0 * mse_border;
    ok = ok && model_ok;
    detail += " " + model + (model_ok ? " ok" : " FAIL") + " (max mean |diff| " + num(worst) +
              ", MSE ratio " + num(mse_spec / mse_border) + ")";
  }
  return report(7, ok, detail);
}

// ---------------------------------------------------------------- criterion 8
// Special functions against quadrature references.
bool criterion8() {
  const double pi = M_PI;
  const auto j0_ref = [&](double x) {
    return integrate_adaptive([&](double t) { return std::cos(x * std::sin(t)); }, 0.0, pi,
                              1e-13, 1e-13) /
           pi;
  };
  const auto j1_ref = [&](double x) {
    return integrate_adaptive([&](double t) { return std::cos(t - x * std::sin(t)); }, 0.0,
                              pi, 1e-13, 1e-13) /
           pi;
  };
  const auto j32_ref = [&](double x) {
    const double osc =
        integrate_adaptive([&](double t) { return std::cos(1.5 * t - x * std::sin(t)); },
                           0.0, pi, 1e-13, 1e-13);
    const double tmax = std::asinh(45.0 / x) + 1.0;
    const double tail = integrate_adaptive(
        [&](double t) { return std::exp(-x * std::sinh(t) - 1.5 * t); }, 0.0, tmax, 1e-14,
        1e-13);
    return (osc + tail) / pi;
  };
  const auto si_ref = [&](double x) {
    return integrate_adaptive([](double t) { return t == 0.0 ? 1.0 : std::sin(t) / t; },
                              0.0, x, 1e-13, 1e-13);
  };

  double worst = 0.0;
  const int n = 10000;
  for (int i = 1; i <= n; ++i) {
    const double x = 50.0 * i / n;
    worst = std::max(worst, std::abs(bessel_j0(x) - j0_ref(x)));
    worst = std::max(worst, std::abs(bessel_j1(x) - j1_ref(x)));
    worst = std::max(worst, std::abs(bessel_j32(x) - j32_ref(x)));
    worst = std::max(worst, std::abs(sine_integral(x) - si_ref(x)));
  }
  const bool ok_pointwise = worst <= 1e-10;

  // w3 against the defining Bessel-type integral
  double worst_w3 = 0.0;
  for (double r : {0.4, 0.9, 1.7, 3.2, 6.1, 11.4}) {
    for (double y : {0.07, 0.21, 0.55, 0.9, 1.35, 1.9}) {
      const double quad = integrate_adaptive(
          [&](double u) {
            const double x = 2.0 * pi * u * r;
            if (x == 0.0) return 0.0;
            return 4.0 * r * (std::sin(x) / x - std::cos(x));
          },
          0.0, y, 1e-11, 1e-11);
      worst_w3 = std::max(worst_w3, std::abs(annulus_weight(3, r, y) - quad));
    }
  }
  const bool ok_w3 = worst_w3 <= 1e-8;
  return report(8, ok_pointwise && ok_w3,
                "special functions vs quadrature (max err " + num(worst) + ", w3 err " +
                    num(worst_w3) + ")");
}

// ---------------------------------------------------------------- criterion 9
// MAD global envelope coverage: a fresh null L curve falls inside the band
// of 199 null curves in at least 93% of 500 meta trials.
bool criterion9() {
  const Window w = Window::rect(50.0, 50.0);
  EstimationConfig cfg;
  cfg.radii = {1.0, 10.0, 10};
  StatisticRequest req;
  req.targets = {"X"};
  const int trials = 500, n_sim = 199;

  int covered = 0;
  Eigen::MatrixXd curves(n_sim, cfg.radii.count);
  for (int t = 0; t < trials; ++t) {
    Eigen::VectorXd fresh;
    for (int i = 0; i <= n_sim; ++i) {
      std::mt19937_64 rng(900000 + std::uint64_t(t) * 200 + std::uint64_t(i));
      MultiTypePattern pat(w);
      pat.add_type("X", sim_poisson(w, 0.04, rng));
      const Eigen::VectorXd curve = run_estimate(pat, req, cfg).value;
      if (i < n_sim)
        curves.row(i) = curve.transpose();
      else
        fresh = curve;
    }
    const EnvelopeBand band = mad_global_envelope(curves, 0.05);
    const bool inside = (fresh.array() >= band.lo.array() - 1e-12).all() &&
                        (fresh.array() <= band.hi.array() + 1e-12).all();
    covered += inside ? 1 : 0;
  }
  const double rate = double(covered) / trials;
  return report(9, covered >= 465,
                "MAD envelope coverage " + num(100.0 * rate) + "% of 500 meta trials");
}

}  // namespace

int main() {
  bool ok = true;
  ok = criterion1() && ok;
  ok = criterion2() && ok;
  ok = criterion3() && ok;
  ok = criterion4() && ok;
  ok = criterion5() && ok;
  ok = criterion6() && ok;
  ok = criterion7() && ok;
  ok = criterion8() && ok;
  ok = criterion9() && ok;
  std::printf("%s\n", ok ? "acceptance suite passed" : "acceptance suite FAILED");
  return ok ? 0 : 1;
}
