#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "doctest.h"
#include "partialk/spectra.hpp"

using namespace partialk;
using Cplx = std::complex<double>;

namespace {

Eigen::VectorXd vecd(std::initializer_list<double> v) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

// Literal transcription of the centered tapered DFT, no tables, no reuse.
Eigen::VectorXcd naive_dft(const MultiTypePattern& pat, const std::string& label,
                           const TaperFamily& fam, int m, const WavenumberGrid& grid,
                           const IntensityEstimates& est) {
  const auto& coords = pat.coords(pat.index_of(label));
  Eigen::VectorXcd J(grid.n_nodes());
  for (Eigen::Index i = 0; i < grid.n_nodes(); ++i) {
    const auto k = grid.node(i);
    Cplx sum(0.0, 0.0);
    for (Eigen::Index p = 0; p < coords.rows(); ++p) {
      double phase = 0.0;
      for (int j = 0; j < grid.dim(); ++j) phase -= 2.0 * M_PI * coords(p, j) * k(j);
      sum += taper_value(fam, m, coords.row(p)) * std::polar(1.0, phase);
    }
    J(i) = sum - est.at(label) * taper_ft(fam, m, k);
  }
  return J;
}

MultiTypePattern random_pattern(const Window& w, std::vector<Eigen::Index> counts,
                                unsigned seed) {
  std::mt19937_64 rng(seed);
  MultiTypePattern pat(w);
  const int d = w.dim();
  char label = 'a';
  for (auto n : counts) {
    Eigen::MatrixXd pts(n, d);
    for (Eigen::Index i = 0; i < n; ++i)
      for (int j = 0; j < d; ++j) {
        std::uniform_real_distribution<double> U(w.lo()(j), w.hi()(j));
        pts(i, j) = U(rng);
      }
    pat.add_type(std::string(1, label++), pts);
  }
  return pat;
}

void check_matches_naive(const MultiTypePattern& pat, const TaperFamily& fam,
                         const WavenumberGrid& grid) {
  auto est = estimate_intensities(pat);
  const int M = fam.count();
  const int P = pat.n_types();

  // reference spectral matrix assembled from naive transforms
  std::vector<Eigen::MatrixXcd> Jref(M);
  for (int m = 0; m < M; ++m) {
    Jref[m].resize(P, grid.n_nodes());
    for (int t = 0; t < P; ++t) {
      auto naive = naive_dft(pat, pat.label(t), fam, m, grid, est);
      auto fast = tapered_dft(pat, pat.label(t), fam, m, grid, est);
      double scale = 1.0 + naive.cwiseAbs().maxCoeff();
      CHECK((fast - naive).cwiseAbs().maxCoeff() / scale < 1e-10);
      Jref[m].row(t) = naive.transpose();
    }
  }
  auto field = multitaper_matrix(pat, fam, grid, est);
  double worst = 0.0, scale = 0.0;
  for (Eigen::Index i = 0; i < grid.n_nodes(); ++i) {
    Eigen::MatrixXcd ref = Eigen::MatrixXcd::Zero(P, P);
    for (int m = 0; m < M; ++m)
      ref += Jref[m].col(i) * Jref[m].col(i).adjoint();
    ref /= double(M);
    worst = std::max(worst, (field.node(i) - ref).cwiseAbs().maxCoeff());
    scale = std::max(scale, ref.cwiseAbs().maxCoeff());
  }
  CHECK(worst / (1.0 + scale) < 1e-10);
}

}  // namespace

TEST_CASE("transforms match the naive reference on an aligned grid") {
  // spacing 1/(2L) multiples: exercises the shared-lattice fast path
  Window w = Window::rect(5.0, 4.0);
  auto pat = random_pattern(w, {25, 17}, 101);
  auto fam = make_sine_tapers(3, w);
  auto grid = make_grid(vecd({0.4, 0.5}), vecd({0.1, 0.125}));
  check_matches_naive(pat, fam, grid);
}

TEST_CASE("transforms match the naive reference on an offset unaligned grid") {
  Eigen::VectorXd lo = vecd({2.0, -3.0}), hi = vecd({8.5, 1.5});
  Window w(lo, hi);
  auto pat = random_pattern(w, {30, 12}, 102);
  auto fam = make_sine_tapers(4, w);
  auto grid = make_grid(vecd({0.3, 0.3}), vecd({0.0831, 0.117}));
  check_matches_naive(pat, fam, grid);
}

TEST_CASE("transforms match the naive reference in one and three dimensions") {
  {
    Window w = Window::interval(20.0);
    auto pat = random_pattern(w, {40}, 103);
    auto fam = make_sine_tapers(3, w);
    auto grid = make_grid(vecd({0.6}), vecd({0.05}));
    check_matches_naive(pat, fam, grid);
  }
  {
    Window w = Window::box(4.0, 5.0, 6.0);
    auto pat = random_pattern(w, {20, 15}, 104);
    auto fam = make_sine_tapers(2, w);
    auto grid = make_grid(vecd({0.25, 0.2, 0.2}), vecd({0.125, 0.1, 0.12}));
    check_matches_naive(pat, fam, grid);
  }
}

TEST_CASE("empty types give zero transforms and zero spectra") {
  Window w = Window::rect(5.0, 5.0);
  MultiTypePattern pat(w);
  Eigen::MatrixXd pts(3, 2);
  pts << 1, 1, 2, 3, 4, 2;
  pat.add_type("x", pts);
  pat.add_type("none", Eigen::MatrixXd());
  auto est = estimate_intensities(pat);
  auto fam = make_sine_tapers(2, w);
  auto grid = make_grid(vecd({0.2, 0.2}), vecd({0.1, 0.1}));
  auto J = tapered_dft(pat, "none", fam, 0, grid, est);
  CHECK(J.cwiseAbs().maxCoeff() == 0.0);
  auto field = multitaper_matrix(pat, fam, grid, est);
  for (Eigen::Index i = 0; i < grid.n_nodes(); ++i) {
    CHECK(std::abs(field.node(i)(0, 1)) == 0.0);
    CHECK(std::abs(field.node(i)(1, 1)) == 0.0);
  }
}

TEST_CASE("single point at the window centre") {
  Window w = Window::rect(2.0, 2.0);
  MultiTypePattern pat(w);
  Eigen::MatrixXd pts(1, 2);
  pts << 1.0, 1.0;
  pat.add_type("x", pts);
  auto est = estimate_intensities(pat);
  auto fam = make_sine_tapers(1, w);
  auto grid = make_grid(vecd({0.25, 0.25}), vecd({0.25, 0.25}));
  auto J = tapered_dft(pat, "x", fam, 0, grid, est);
  const auto zero = grid.zero_index();
  Eigen::RowVectorXd centre(2);
  centre << 1.0, 1.0;
  Eigen::RowVectorXd korigin = Eigen::RowVectorXd::Zero(2);
  Cplx expected = taper_value(fam, 0, centre) - est.at("x") * taper_ft(fam, 0, korigin);
  CHECK(std::abs(J(zero) - expected) < 1e-14);
}

TEST_CASE("conjugate symmetry of transform and field") {
  Window w = Window::rect(6.0, 6.0);
  auto pat = random_pattern(w, {40, 20}, 105);
  auto est = estimate_intensities(pat);
  auto fam = make_sine_tapers(3, w);
  auto grid = make_grid(vecd({0.3, 0.3}), vecd({0.085, 0.085}));
  auto J = tapered_dft(pat, "a", fam, 1, grid, est);
  for (Eigen::Index i = 0; i < grid.n_nodes(); ++i) {
    auto diff = J(grid.mirror_index(i)) - std::conj(J(i));
    CHECK(std::abs(diff) < 1e-10);
  }
  auto field = multitaper_matrix(pat, fam, grid, est);
  for (Eigen::Index i = 0; i < grid.n_nodes(); ++i) {
    // mirror nodes are exact conjugates by construction
    CHECK((field.node(grid.mirror_index(i)) - field.node(i).conjugate()).norm() == 0.0);
  }
}

TEST_CASE("field nodes are hermitian positive semidefinite") {
  Window w = Window::rect(8.0, 5.0);
  auto pat = random_pattern(w, {35, 25, 15}, 106);
  auto est = estimate_intensities(pat);
  auto fam = make_sine_tapers(4, w);
  auto grid = make_grid(vecd({0.35, 0.4}), vecd({0.07, 0.08}));
  auto field = multitaper_matrix(pat, fam, grid, est);
  for (Eigen::Index i = 0; i < grid.n_nodes(); ++i) {
    Eigen::MatrixXcd F = field.node(i);
    CHECK((F - F.adjoint()).cwiseAbs().maxCoeff() == 0.0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(F);
    CHECK(es.eigenvalues().minCoeff() >= -1e-10 * std::abs(F.trace().real()));
  }
}

TEST_CASE("homogeneous poisson spectrum is flat at the intensity") {
  // window 200^2 at lambda = 0.01, spectrum away from the origin ridge
  Window w = Window::rect(200.0, 200.0);
  auto fam = make_sine_tapers(8, w);
  auto grid = make_grid(vecd({0.25, 0.25}), vecd({1.0 / 200.0, 1.0 / 200.0}));
  std::mt19937_64 rng(2024);
  const int reps = 100;
  double mean_median = 0.0;
  for (int rep = 0; rep < reps; ++rep) {
    std::poisson_distribution<int> N(0.01 * 200.0 * 200.0);
    std::uniform_real_distribution<double> U(0.0, 200.0);
    const int n = N(rng);
    Eigen::MatrixXd pts(n, 2);
    for (int i = 0; i < n; ++i) {
      pts(i, 0) = U(rng);
      pts(i, 1) = U(rng);
    }
    MultiTypePattern pat(w);
    pat.add_type("x", pts);
    auto est = estimate_intensities(pat);
    auto field = multitaper_matrix(pat, fam, grid, est);
    std::vector<double> vals;
    for (Eigen::Index i = 0; i < grid.n_nodes(); ++i)
      if (grid.node_norm(i) > 0.05) vals.push_back(field.node(i)(0, 0).real());
    std::nth_element(vals.begin(), vals.begin() + vals.size() / 2, vals.end());
    mean_median += vals[vals.size() / 2] / reps;
  }
  CHECK(mean_median == doctest::Approx(0.01).epsilon(0.15));
}

TEST_CASE("estimator guards") {
  Window w = Window::rect(5.0, 5.0);
  auto pat = random_pattern(w, {10, 10, 10}, 107);
  auto est = estimate_intensities(pat);
  auto grid = make_grid(vecd({0.2, 0.2}), vecd({0.1, 0.1}));
  // fewer tapers than types
  auto fam2 = make_sine_tapers(2, w);
  CHECK_THROWS_AS(multitaper_matrix(pat, fam2, grid, est), config_error);
  // family from a different window
  auto fam_other = make_sine_tapers(4, Window::rect(6.0, 5.0));
  CHECK_THROWS_AS(multitaper_matrix(pat, fam_other, grid, est), config_error);
  // intensities from a different pattern
  auto other = random_pattern(w, {5}, 108);
  auto est_other = estimate_intensities(other);
  CHECK_THROWS_AS(multitaper_matrix(pat, make_sine_tapers(4, w), grid, est_other),
                  config_error);
  CHECK_THROWS_AS(tapered_dft(pat, "a", fam2, 5, grid, est), config_error);
}

TEST_CASE("spectrum csv dump") {
  Window w = Window::rect(5.0, 5.0);
  auto pat = random_pattern(w, {8, 6}, 109);
  auto est = estimate_intensities(pat);
  auto fam = make_sine_tapers(2, w);
  auto grid = make_grid(vecd({0.2, 0.2}), vecd({0.1, 0.1}));
  auto field = multitaper_matrix(pat, fam, grid, est);
  const std::string path = "/tmp/partialk_test_spectrum.csv";
  write_spectrum_csv(field, path);
  std::ifstream in(path);
  std::string line;
  REQUIRE(std::getline(in, line));
  CHECK(line == "k1,k2,re_a_a,im_a_a,re_a_b,im_a_b,re_b_b,im_b_b");
  Eigen::Index rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == grid.n_nodes());
}
