#include "partialk/spectra.hpp"

#include <cmath>
#include <complex>
#include <fstream>
#include <vector>

#include "partialk/parallel.hpp"

namespace partialk {

int SpectralMatrixField::index_of(const std::string& label) const {
  for (size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == label) return static_cast<int>(i);
  throw config_error("spectral field: unknown type '" + label + "'");
}

namespace {

using Cplx = std::complex<double>;
constexpr double kTwoPi = 2.0 * M_PI;

// e^{-2 pi i x_p delta z} for z in [z_lo, z_hi], one row per point. Phases
// advance by a per-point recurrence, re-anchored on the exact value every
// 64 columns to keep the drift at a few ulp.
Eigen::MatrixXcd phase_table(const Eigen::Ref<const Eigen::VectorXd>& x, double delta,
                             int z_lo, int z_hi) {
  const Eigen::Index n = x.size();
  const int cols = z_hi - z_lo + 1;
  Eigen::MatrixXcd T(n, cols);
  if (n == 0) return T;
  Eigen::VectorXcd step(n), cur(n);
  for (Eigen::Index p = 0; p < n; ++p) step(p) = std::polar(1.0, -kTwoPi * x(p) * delta);
  for (int c = 0; c < cols; ++c) {
    const double z = z_lo + c;
    if (c % 64 == 0)
      for (Eigen::Index p = 0; p < n; ++p) cur(p) = std::polar(1.0, -kTwoPi * x(p) * delta * z);
    else
      cur.array() *= step.array();
    T.col(c) = cur;
  }
  return T;
}

// Product sine taper values at every point of one type.
Eigen::VectorXd taper_coefficients(const Eigen::MatrixXd& coords, const TaperFamily& fam,
                                   int m) {
  const Eigen::Index n = coords.rows();
  Eigen::VectorXd c = Eigen::VectorXd::Ones(n);
  for (int j = 0; j < fam.dim(); ++j) {
    const double L = fam.lengths(j);
    const double scale = std::sqrt(2.0 / L);
    const double freq = M_PI * fam.indices(m, j) / L;
    c.array() *= scale * ((coords.col(j).array() - fam.origin(j)) * freq).sin();
  }
  return c;
}

// Per-axis tables of the taper transform factors: row (m-1), column z+n_j
// holds H^{(m)}_j(z d_j) including the window offset phase.
std::vector<Eigen::MatrixXcd> axis_ft_tables(const TaperFamily& fam,
                                             const WavenumberGrid& grid) {
  std::vector<Eigen::MatrixXcd> tables(fam.dim());
  for (int j = 0; j < fam.dim(); ++j) {
    const int mmax = fam.indices.col(j).maxCoeff();
    const int nj = grid.half_counts()(j);
    tables[j].resize(mmax, 2 * nj + 1);
    for (int m = 1; m <= mmax; ++m)
      for (int z = -nj; z <= nj; ++z) {
        const double k = z * grid.spacing()(j);
        tables[j](m - 1, z + nj) =
            sine_taper_axis_ft(m, fam.lengths(j), k) *
            std::polar(1.0, -kTwoPi * k * fam.origin(j));
      }
  }
  return tables;
}

struct HalfRange {
  // nodes with flat index >= zero_index hold one representative of every
  // conjugate pair plus the origin
  Eigen::Index zero;
  Eigen::Index count;
};

}  // namespace

Eigen::VectorXcd tapered_dft(const MultiTypePattern& pattern, const std::string& label,
                             const TaperFamily& tapers, int m, const WavenumberGrid& grid,
                             const IntensityEstimates& intensities) {
  if (m < 0 || m >= tapers.count()) throw config_error("tapered_dft: taper index out of range");
  if (tapers.dim() != pattern.dim() || grid.dim() != pattern.dim())
    throw config_error("tapered_dft: dimension mismatch");
  const int t = pattern.index_of(label);
  const Eigen::MatrixXd& coords = pattern.coords(t);
  const double lam = intensities.at(label);
  const int d = grid.dim();

  std::vector<Eigen::MatrixXcd> T(d);
  for (int j = 0; j < d; ++j)
    T[j] = phase_table(coords.col(j), grid.spacing()(j), -grid.half_counts()(j),
                       grid.half_counts()(j));
  const Eigen::VectorXd c = taper_coefficients(coords, tapers, m);

  Eigen::VectorXcd J(grid.n_nodes());
  parallel_for(grid.n_nodes(), [&](Eigen::Index begin, Eigen::Index end) {
    for (Eigen::Index i = begin; i < end; ++i) {
      Eigen::VectorXi z = grid.node_tuple(i);
      Cplx sum(0.0, 0.0);
      if (coords.rows() > 0) {
        Eigen::ArrayXcd prod = c.array().cast<Cplx>();
        for (int j = 0; j < d; ++j)
          prod *= T[j].col(z(j) + grid.half_counts()(j)).array();
        sum = prod.sum();
      }
      J(i) = sum - lam * taper_ft(tapers, m, grid.node(i));
    }
  });
  return J;
}

namespace {

// Half-lattice representation: when 2 L_j d_j is an integer c_j, every
// shifted node (z d_j +- m/(2 L_j)) lives on the lattice with spacing
// 1/(2 L_j). One plain DFT per type on that lattice then serves all tapers
// as four-term combinations, which beats per-taper transforms once several
// tapers are in play.
struct HalfLattice {
  bool usable = false;
  std::array<int, 2> c{};  // grid spacing in lattice units
  std::array<int, 2> W{};  // lattice extent
};

HalfLattice probe_half_lattice(const TaperFamily& fam, const WavenumberGrid& grid,
                               int n_tapers) {
  HalfLattice hl;
  if (grid.dim() != 2) return hl;
  for (int j = 0; j < 2; ++j) {
    const double cj = 2.0 * fam.lengths(j) * grid.spacing()(j);
    const long long rounded = std::llround(cj);
    if (rounded < 1 || std::abs(cj - rounded) > 1e-9 * std::max(1.0, double(rounded)))
      return hl;
    hl.c[j] = static_cast<int>(rounded);
    hl.W[j] = grid.half_counts()(j) * hl.c[j] + fam.indices.col(j).maxCoeff();
  }
  const double cost_lattice = double(hl.W[0] + 1) * (2.0 * hl.W[1] + 1);
  const double cost_direct = double(grid.half_counts()(0) + 1) *
                             (2.0 * grid.half_counts()(1) + 1) * n_tapers;
  hl.usable = cost_lattice <= cost_direct;
  return hl;
}

}  // namespace

SpectralMatrixField multitaper_matrix(const MultiTypePattern& pattern,
                                      const TaperFamily& tapers,
                                      const WavenumberGrid& grid,
                                      const IntensityEstimates& intensities) {
  const int P = pattern.n_types();
  const int M = tapers.count();
  const int d = pattern.dim();
  if (P < 1) throw config_error("multitaper_matrix: pattern has no types");
  if (M < P)
    throw config_error("multitaper_matrix: " + std::to_string(M) + " tapers for " +
                       std::to_string(P) + " types; need M >= P");
  if (tapers.dim() != d || grid.dim() != d)
    throw config_error("multitaper_matrix: dimension mismatch");
  if ((tapers.origin - pattern.window().lo()).norm() > 1e-9 ||
      (tapers.lengths - pattern.window().lengths()).norm() > 1e-9)
    throw config_error("multitaper_matrix: taper family does not match the pattern window");
  if (intensities.labels != pattern.labels())
    throw config_error("multitaper_matrix: intensity labels do not match the pattern");

  SpectralMatrixField field;
  field.grid = grid;
  field.labels = pattern.labels();
  field.n_tapers = M;
  field.values = Eigen::MatrixXcd::Zero(Eigen::Index(P) * P, grid.n_nodes());

  const Eigen::Index zero = grid.zero_index();
  const Eigen::Index n_half = grid.n_nodes() - zero;
  const auto H_axis = axis_ft_tables(tapers, grid);
  const Eigen::VectorXi halfn = grid.half_counts();

  // H_m(k) for node tuple z, from the per-axis tables
  auto taper_ft_node = [&](int m, const Eigen::VectorXi& z) {
    Cplx h(1.0, 0.0);
    for (int j = 0; j < d; ++j)
      h *= H_axis[j](tapers.indices(m, j) - 1, z(j) + halfn(j));
    return h;
  };

  // J values for one taper, all types, on the half grid (flat index - zero)
  Eigen::MatrixXcd J(P, n_half);

  auto accumulate = [&]() {
    parallel_for(n_half, [&](Eigen::Index begin, Eigen::Index end) {
      for (Eigen::Index h = begin; h < end; ++h) {
        auto Fh = field.node(zero + h);
        const auto Jh = J.col(h);
        for (int b = 0; b < P; ++b)
          for (int a = 0; a < P; ++a) Fh(a, b) += Jh(a) * std::conj(Jh(b));
      }
    });
  };

  const HalfLattice hl = probe_half_lattice(tapers, grid, M);
  if (hl.usable) {
    // plain DFT of every type on the shared half-spacing lattice
    std::vector<Eigen::MatrixXcd> S(P);
    for (int t = 0; t < P; ++t) {
      const auto& coords = pattern.coords(t);
      if (coords.rows() == 0) {
        S[t].setZero(hl.W[0] + 1, 2 * hl.W[1] + 1);
        continue;
      }
      Eigen::MatrixXcd phi =
          phase_table(coords.col(0), 0.5 / tapers.lengths(0), 0, hl.W[0]);
      Eigen::MatrixXcd psi =
          phase_table(coords.col(1), 0.5 / tapers.lengths(1), -hl.W[1], hl.W[1]);
      S[t] = phi.transpose() * psi;
    }
    auto fetch = [&](int t, int w0, int w1) {
      return w0 >= 0 ? S[t](w0, w1 + hl.W[1]) : std::conj(S[t](-w0, -w1 + hl.W[1]));
    };

    for (int m = 0; m < M; ++m) {
      const int m0 = tapers.indices(m, 0), m1 = tapers.indices(m, 1);
      // per-axis coefficients of the two complex exponentials in the sine
      Cplx gamma[2][2];
      for (int j = 0; j < 2; ++j) {
        const int mj = tapers.indices(m, j);
        const double amp = std::sqrt(2.0 / tapers.lengths(j)) / 2.0;
        const double ph = M_PI * mj * tapers.origin(j) / tapers.lengths(j);
        const Cplx minus_i(0.0, -1.0);
        gamma[j][0] = minus_i * amp * std::polar(1.0, -ph);  // epsilon = +1
        gamma[j][1] = -minus_i * amp * std::polar(1.0, ph);  // epsilon = -1
      }
      parallel_for(halfn(0) + 1, [&](Eigen::Index rb, Eigen::Index re) {
        Eigen::VectorXi z(2);
        for (Eigen::Index z0 = rb; z0 < re; ++z0) {
          const int z1_lo = (z0 == 0) ? 0 : -halfn(1);
          for (int z1 = z1_lo; z1 <= halfn(1); ++z1) {
            z << int(z0), z1;
            const Eigen::Index h = grid.flat_index(z) - zero;
            const Cplx hm = taper_ft_node(m, z);
            const int w0 = int(z0) * hl.c[0];
            const int w1 = z1 * hl.c[1];
            for (int t = 0; t < P; ++t) {
              Cplx sum = gamma[0][0] * (gamma[1][0] * fetch(t, w0 - m0, w1 - m1) +
                                        gamma[1][1] * fetch(t, w0 - m0, w1 + m1)) +
                         gamma[0][1] * (gamma[1][0] * fetch(t, w0 + m0, w1 - m1) +
                                        gamma[1][1] * fetch(t, w0 + m0, w1 + m1));
              J(t, h) = sum - intensities[t] * hm;
            }
          }
        }
      });
      accumulate();
    }
  } else {
    // per-taper transforms from per-axis phase tables
    std::vector<std::vector<Eigen::MatrixXcd>> T(P, std::vector<Eigen::MatrixXcd>(d));
    for (int t = 0; t < P; ++t)
      for (int j = 0; j < d; ++j)
        T[t][j] = phase_table(pattern.coords(t).col(j), grid.spacing()(j), -halfn(j),
                              halfn(j));

    for (int m = 0; m < M; ++m) {
      for (int t = 0; t < P; ++t) {
        const auto& coords = pattern.coords(t);
        const Eigen::VectorXd c = taper_coefficients(coords, tapers, m);
        const double lam = intensities[t];
        Eigen::VectorXi z(d);

        if (d == 1) {
          Eigen::VectorXcd row(halfn(0) + 1);
          if (coords.rows() > 0)
            row = T[t][0].rightCols(halfn(0) + 1).transpose() * c.cast<Cplx>();
          else
            row.setZero();
          for (int z0 = 0; z0 <= halfn(0); ++z0) {
            z << z0;
            J(t, grid.flat_index(z) - zero) = row(z0) - lam * taper_ft_node(m, z);
          }
        } else if (d == 2) {
          Eigen::MatrixXcd block;
          if (coords.rows() > 0) {
            Eigen::MatrixXcd scaled = T[t][0].rightCols(halfn(0) + 1);
            scaled.array().colwise() *= c.array().cast<Cplx>();
            block = scaled.transpose() * T[t][1];
          } else {
            block.setZero(halfn(0) + 1, 2 * halfn(1) + 1);
          }
          for (int z0 = 0; z0 <= halfn(0); ++z0) {
            const int z1_lo = (z0 == 0) ? 0 : -halfn(1);
            for (int z1 = z1_lo; z1 <= halfn(1); ++z1) {
              z << z0, z1;
              J(t, grid.flat_index(z) - zero) =
                  block(z0, z1 + halfn(1)) - lam * taper_ft_node(m, z);
            }
          }
        } else {
          for (int z0 = 0; z0 <= halfn(0); ++z0) {
            const int z1_lo = (z0 == 0) ? 0 : -halfn(1);
            for (int z1 = z1_lo; z1 <= halfn(1); ++z1) {
              Eigen::VectorXcd row(2 * halfn(2) + 1);
              if (coords.rows() > 0) {
                Eigen::VectorXcd tmp = c.cast<Cplx>();
                tmp.array() *= T[t][0].col(z0 + halfn(0)).array() *
                               T[t][1].col(z1 + halfn(1)).array();
                row = T[t][2].transpose() * tmp;
              } else {
                row.setZero();
              }
              const int z2_lo = (z0 == 0 && z1 == 0) ? 0 : -halfn(2);
              for (int z2 = z2_lo; z2 <= halfn(2); ++z2) {
                z << z0, z1, z2;
                J(t, grid.flat_index(z) - zero) =
                    row(z2 + halfn(2)) - lam * taper_ft_node(m, z);
              }
            }
          }
        }
      }
      accumulate();
    }
  }

  field.values /= double(M);

  // exact Hermitian symmetry on the computed half, conjugate mirror below
  parallel_for(n_half, [&](Eigen::Index begin, Eigen::Index end) {
    for (Eigen::Index h = begin; h < end; ++h) {
      auto F = field.node(zero + h);
      Eigen::MatrixXcd sym = 0.5 * (F + F.adjoint());
      F = sym;
    }
  });
  {
    // the origin is its own mirror and is real in exact arithmetic
    auto F0 = field.node(zero);
    F0 = F0.real().eval().cast<Cplx>();
  }
  for (Eigen::Index i = 0; i < zero; ++i)
    field.values.col(i) = field.values.col(grid.n_nodes() - 1 - i).conjugate();

  return field;
}

void write_spectrum_csv(const SpectralMatrixField& field, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw config_error("cannot write spectrum file '" + path + "'");
  const int d = field.grid.dim();
  const int P = field.P();
  for (int j = 0; j < d; ++j) out << (j ? "," : "") << "k" << (j + 1);
  for (int a = 0; a < P; ++a)
    for (int b = a; b < P; ++b)
      out << ",re_" << field.labels[a] << "_" << field.labels[b] << ",im_"
          << field.labels[a] << "_" << field.labels[b];
  out << "\n";
  char buf[64];
  for (Eigen::Index i = 0; i < field.grid.n_nodes(); ++i) {
    const auto k = field.grid.node(i);
    for (int j = 0; j < d; ++j) {
      std::snprintf(buf, sizeof(buf), "%s%.15g", j ? "," : "", k(j));
      out << buf;
    }
    const auto F = field.node(i);
    for (int a = 0; a < P; ++a)
      for (int b = a; b < P; ++b) {
        std::snprintf(buf, sizeof(buf), ",%.15g,%.15g", F(a, b).real(), F(a, b).imag());
        out << buf;
      }
    out << "\n";
  }
  if (!out) throw config_error("failed while writing spectrum file '" + path + "'");
}

}  // namespace partialk
