#include "partialk/tapers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace partialk {

TaperFamily make_sine_tapers(int M, const Window& window) {
  if (M < 1) throw config_error("make_sine_tapers: taper count must be positive");
  const int d = window.dim();
  const Eigen::VectorXd L = window.lengths();

  // Candidate box {1..M+1}^d always contains the M lowest-energy tuples:
  // raising any component above M+1 is beaten by the M+1 tuples that vary
  // that component alone.
  const int B = M + 1;
  std::vector<Eigen::VectorXi> tuples;
  Eigen::VectorXi t = Eigen::VectorXi::Ones(d);
  while (true) {
    tuples.push_back(t);
    int j = d - 1;
    while (j >= 0 && t(j) == B) t(j--) = 1;
    if (j < 0) break;
    ++t(j);
  }
  auto energy = [&L, d](const Eigen::VectorXi& m) {
    double e = 0.0;
    for (int j = 0; j < d; ++j) e += double(m(j)) * m(j) / (L(j) * L(j));
    return e;
  };
  std::sort(tuples.begin(), tuples.end(),
            [&](const Eigen::VectorXi& a, const Eigen::VectorXi& b) {
              const double ea = energy(a), eb = energy(b);
              if (ea != eb) return ea < eb;
              return std::lexicographical_compare(a.data(), a.data() + a.size(),
                                                  b.data(), b.data() + b.size());
            });

  TaperFamily family;
  family.origin = window.lo();
  family.lengths = L;
  family.indices.resize(M, d);
  for (int m = 0; m < M; ++m) family.indices.row(m) = tuples[m].transpose();
  return family;
}

double taper_value(const TaperFamily& family, int m,
                   const Eigen::Ref<const Eigen::RowVectorXd>& x) {
  double v = 1.0;
  for (int j = 0; j < family.dim(); ++j) {
    const double L = family.lengths(j);
    const double u = x(j) - family.origin(j);
    if (u < 0.0 || u > L) return 0.0;
    v *= std::sqrt(2.0 / L) * std::sin(M_PI * family.indices(m, j) * u / L);
  }
  return v;
}

namespace {

// sin(t)/t with a series branch for small |t|.
double sinc(double t) {
  if (std::abs(t) < 1e-4) {
    const double t2 = t * t;
    return 1.0 - t2 / 6.0 + t2 * t2 / 120.0;
  }
  return std::sin(t) / t;
}

}  // namespace

std::complex<double> sine_taper_axis_ft(int m, double L, double k) {
  const std::complex<double> I(0.0, 1.0);
  const double p = 0.5 * M_PI * (m - 2.0 * L * k);  // (a - w) L / 2
  const double q = 0.5 * M_PI * (m + 2.0 * L * k);  // (a + w) L / 2
  return std::sqrt(2.0 / L) * (L / (2.0 * I)) *
         (std::exp(I * p) * sinc(p) - std::exp(-I * q) * sinc(q));
}

std::complex<double> taper_ft(const TaperFamily& family, int m,
                              const Eigen::Ref<const Eigen::RowVectorXd>& k) {
  std::complex<double> H(1.0, 0.0);
  for (int j = 0; j < family.dim(); ++j) {
    // shift theorem for the window offset
    const double phase = -2.0 * M_PI * k(j) * family.origin(j);
    H *= sine_taper_axis_ft(family.indices(m, j), family.lengths(j), k(j)) *
         std::polar(1.0, phase);
  }
  return H;
}

}  // namespace partialk
