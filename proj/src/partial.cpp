#include "partialk/partial.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include "partialk/parallel.hpp"

namespace partialk {

namespace {

using Cplx = std::complex<double>;

Eigen::MatrixXcd take(const Eigen::MatrixXcd& F, const std::vector<int>& rows,
                      const std::vector<int>& cols) {
  Eigen::MatrixXcd out(rows.size(), cols.size());
  for (size_t a = 0; a < rows.size(); ++a)
    for (size_t b = 0; b < cols.size(); ++b) out(a, b) = F(rows[a], cols[b]);
  return out;
}

// Inverse of a Hermitian positive definite matrix through its spectrum.
// where() describes the node for the error message.
Eigen::MatrixXcd guarded_inverse(const Eigen::MatrixXcd& A,
                                 const std::function<std::string()>& where) {
  if (A.rows() == 1) {
    const double v = A(0, 0).real();
    if (!(v > 0.0))
      throw numeric_error("singular covariate spectrum (zero matrix) at " + where());
    return Eigen::MatrixXcd::Constant(1, 1, 1.0 / v);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(A);
  const auto& ev = es.eigenvalues();
  const double lmax = ev.maxCoeff();
  const double lmin = ev.minCoeff();
  if (!(lmax > 0.0))
    throw numeric_error("singular covariate spectrum (zero matrix) at " + where());
  if (!(lmin > 1e-12 * lmax))
    throw numeric_error("covariate spectrum condition number exceeds 1e12 at " + where());
  return es.eigenvectors() * ev.cwiseInverse().asDiagonal() *
         es.eigenvectors().adjoint();
}

std::string describe_node(const WavenumberGrid& grid, Eigen::Index i) {
  std::ostringstream os;
  os << "node " << i << ", k = (";
  const auto k = grid.node(i);
  for (int j = 0; j < grid.dim(); ++j) os << (j ? ", " : "") << k(j);
  os << ")";
  return os.str();
}

struct ResolvedSpec {
  std::vector<int> tidx, zidx;
};

ResolvedSpec resolve_spec(const SpectralMatrixField& field, const PartialSpec& spec) {
  if (spec.targets.empty() || spec.targets.size() > 2)
    throw config_error("partial spectra: need one or two targets, got " +
                       std::to_string(spec.targets.size()));
  std::set<std::string> seen;
  ResolvedSpec r;
  for (const auto& t : spec.targets) {
    if (!seen.insert(t).second)
      throw config_error("partial spectra: duplicate label '" + t + "'");
    r.tidx.push_back(field.index_of(t));
  }
  for (const auto& z : spec.covariates) {
    if (!seen.insert(z).second)
      throw config_error("partial spectra: duplicate label '" + z + "'");
    r.zidx.push_back(field.index_of(z));
  }
  const int PZ = static_cast<int>(r.zidx.size());
  if (spec.debias && field.n_tapers <= PZ)
    throw config_error("partial spectra: debias needs more tapers than covariates (M = " +
                       std::to_string(field.n_tapers) + ", covariates = " +
                       std::to_string(PZ) + ")");
  return r;
}

// Shared driver: computes the partial matrix on the upper half of the grid
// through node_fn, applies the debias factor, mirrors by conjugation.
SpectralMatrixField run_partial(
    const SpectralMatrixField& field, const PartialSpec& spec,
    const std::function<Eigen::MatrixXcd(const Eigen::MatrixXcd&, const ResolvedSpec&,
                                         const std::function<std::string()>&)>& node_fn) {
  const ResolvedSpec r = resolve_spec(field, spec);
  const int T = static_cast<int>(r.tidx.size());
  const int PZ = static_cast<int>(r.zidx.size());
  const double factor =
      spec.debias ? double(field.n_tapers) / (field.n_tapers - PZ) : 1.0;

  SpectralMatrixField out;
  out.grid = field.grid;
  out.labels = spec.targets;
  out.n_tapers = field.n_tapers;
  out.values.resize(Eigen::Index(T) * T, field.grid.n_nodes());

  const Eigen::Index zero = field.grid.zero_index();
  const Eigen::Index n_half = field.grid.n_nodes() - zero;
  parallel_for(n_half, [&](Eigen::Index begin, Eigen::Index end) {
    for (Eigen::Index h = begin; h < end; ++h) {
      const Eigen::Index i = zero + h;
      auto where = [&field, i] { return describe_node(field.grid, i); };
      Eigen::MatrixXcd S = node_fn(field.node(i), r, where);
      S = (0.5 * factor * (S + S.adjoint())).eval();
      if (i == zero) S = S.real().cast<Cplx>();
      out.node(i) = S;
    }
  });
  for (Eigen::Index i = 0; i < zero; ++i)
    out.values.col(i) = out.values.col(field.grid.n_nodes() - 1 - i).conjugate();
  return out;
}

}  // namespace

Eigen::MatrixXcd schur_complement(const Eigen::MatrixXcd& F,
                                  const std::vector<int>& targets,
                                  const std::vector<int>& covariates) {
  Eigen::MatrixXcd Ftt = take(F, targets, targets);
  if (covariates.empty()) return Ftt;
  auto where = [] { return std::string("matrix input"); };
  Eigen::MatrixXcd inv_zz = guarded_inverse(take(F, covariates, covariates), where);
  Eigen::MatrixXcd Ftz = take(F, targets, covariates);
  return Ftt - Ftz * inv_zz * Ftz.adjoint();
}

PredictionKernelField prediction_kernel_spectrum(
    const SpectralMatrixField& field, const std::string& target,
    const std::vector<std::string>& covariates) {
  PartialSpec spec;
  spec.targets = {target};
  spec.covariates = covariates;
  spec.debias = false;
  const ResolvedSpec r = resolve_spec(field, spec);
  if (r.zidx.empty())
    throw config_error("prediction kernel: need at least one covariate");

  PredictionKernelField out;
  out.grid = field.grid;
  out.target = target;
  out.covariates = covariates;
  out.values.resize(r.zidx.size(), field.grid.n_nodes());

  const Eigen::Index zero = field.grid.zero_index();
  const Eigen::Index n_half = field.grid.n_nodes() - zero;
  parallel_for(n_half, [&](Eigen::Index begin, Eigen::Index end) {
    for (Eigen::Index h = begin; h < end; ++h) {
      const Eigen::Index i = zero + h;
      auto where = [&field, i] { return describe_node(field.grid, i); };
      const Eigen::MatrixXcd F = field.node(i);
      Eigen::MatrixXcd inv_zz = guarded_inverse(take(F, r.zidx, r.zidx), where);
      Eigen::MatrixXcd a = take(F, r.tidx, r.zidx) * inv_zz;  // 1 x PZ
      out.values.col(i) = a.transpose();
    }
  });
  for (Eigen::Index i = 0; i < zero; ++i)
    out.values.col(i) = out.values.col(field.grid.n_nodes() - 1 - i).conjugate();
  return out;
}

SpectralMatrixField partial_matrix_schur(const SpectralMatrixField& field,
                                         const PartialSpec& spec) {
  return run_partial(field, spec,
                     [](const Eigen::MatrixXcd& F, const ResolvedSpec& r,
                        const std::function<std::string()>& where) {
                       Eigen::MatrixXcd Ftt = take(F, r.tidx, r.tidx);
                       if (r.zidx.empty()) return Ftt;
                       Eigen::MatrixXcd inv_zz =
                           guarded_inverse(take(F, r.zidx, r.zidx), where);
                       Eigen::MatrixXcd Ftz = take(F, r.tidx, r.zidx);
                       Eigen::MatrixXcd Fzt = take(F, r.zidx, r.tidx);
                       return (Ftt - Ftz * inv_zz * Fzt).eval();
                     });
}

SpectralMatrixField partial_matrix_fast(const SpectralMatrixField& field,
                                        const PartialSpec& spec) {
  return run_partial(
      field, spec,
      [](const Eigen::MatrixXcd& F, const ResolvedSpec& r,
         const std::function<std::string()>& where) -> Eigen::MatrixXcd {
        Eigen::MatrixXcd Ftt = take(F, r.tidx, r.tidx);
        if (r.zidx.empty()) return Ftt;
        // same singularity contract as the direct route
        guarded_inverse(take(F, r.zidx, r.zidx), where);
        std::vector<int> all = r.tidx;
        all.insert(all.end(), r.zidx.begin(), r.zidx.end());
        Eigen::MatrixXcd g = guarded_inverse(take(F, all, all), where);
        const int T = static_cast<int>(r.tidx.size());
        if (T == 1) return Eigen::MatrixXcd::Constant(1, 1, 1.0 / g(0, 0));
        Eigen::Matrix2cd gtt = g.topLeftCorner(2, 2);
        const Cplx det = gtt(0, 0) * gtt(1, 1) - gtt(0, 1) * gtt(1, 0);
        Eigen::Matrix2cd inv;
        inv << gtt(1, 1), -gtt(0, 1), -gtt(1, 0), gtt(0, 0);
        return (inv / det).eval();
      });
}

Eigen::MatrixXcd wishart_debias_check(int M, int P, int s, const Eigen::MatrixXcd& Sigma,
                                      int n_draws, std::uint64_t seed) {
  if (P < 1 || s < 1 || s > P) throw config_error("wishart check: need 1 <= s <= P");
  if (M < P) throw config_error("wishart check: need M >= P");
  if (n_draws < 1) throw config_error("wishart check: need at least one draw");
  if (Sigma.rows() != P || Sigma.cols() != P)
    throw config_error("wishart check: Sigma must be P x P");
  Eigen::LLT<Eigen::MatrixXcd> llt(Sigma);
  if (llt.info() != Eigen::Success)
    throw config_error("wishart check: Sigma is not positive definite");
  const Eigen::MatrixXcd A = llt.matrixL();

  std::vector<int> tidx(s), zidx(P - s);
  for (int i = 0; i < s; ++i) tidx[i] = i;
  for (int i = s; i < P; ++i) zidx[i - s] = i;
  const Eigen::MatrixXcd truth = schur_complement(Sigma, tidx, zidx);

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> N(0.0, 1.0);
  const double root_half = std::sqrt(0.5);
  Eigen::MatrixXcd U(P, M), mean = Eigen::MatrixXcd::Zero(s, s);
  for (int draw = 0; draw < n_draws; ++draw) {
    for (int a = 0; a < P; ++a)
      for (int m = 0; m < M; ++m) U(a, m) = Cplx(N(rng) * root_half, N(rng) * root_half);
    Eigen::MatrixXcd Z = A * U;
    Eigen::MatrixXcd W = (Z * Z.adjoint()) / double(M);
    if (s == P) {
      mean += W;
      continue;
    }
    Eigen::MatrixXcd W11 = W.topLeftCorner(s, s);
    Eigen::MatrixXcd W12 = W.topRightCorner(s, P - s);
    Eigen::MatrixXcd W22 = W.bottomRightCorner(P - s, P - s);
    mean += W11 - W12 * W22.llt().solve(W12.adjoint());
  }
  mean /= double(n_draws);
  return mean.array() / truth.array();
}

}  // namespace partialk
