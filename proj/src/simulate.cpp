#include "partialk/simulate.hpp"

#include <cmath>
#include <cstdio>
#include <vector>

namespace partialk {

namespace {

bool is_set(double v) { return !std::isnan(v); }

// uniform grid of buckets over [lo, hi] for fixed-radius neighbour scans
class CellIndex {
 public:
  CellIndex(const Eigen::MatrixXd& pts, const Eigen::VectorXd& lo,
            const Eigen::VectorXd& hi, double cell)
      : lo_(lo), cell_(cell), dims_(lo.size()) {
    for (Eigen::Index j = 0; j < lo.size(); ++j)
      dims_(j) = static_cast<int>(std::max<Eigen::Index>(
          1, static_cast<Eigen::Index>(std::ceil((hi(j) - lo(j)) / cell))));
    buckets_.resize(static_cast<std::size_t>(dims_.prod()));
    for (Eigen::Index i = 0; i < pts.rows(); ++i)
      buckets_[flat(cell_of(pts.row(i)))].push_back(i);
  }

  // fn(row) for every stored point within `reach` cells of u's cell
  template <class F>
  void visit(const Eigen::RowVectorXd& u, Eigen::Index reach, F&& fn) const {
    const Eigen::VectorXi c = cell_of(u);
    Eigen::VectorXi t(c.size());
    visit_axis(0, c, reach, t, fn);
  }

 private:
  Eigen::VectorXi cell_of(const Eigen::RowVectorXd& u) const {
    Eigen::VectorXi c(lo_.size());
    for (Eigen::Index j = 0; j < lo_.size(); ++j) {
      auto v = static_cast<Eigen::Index>(std::floor((u(j) - lo_(j)) / cell_));
      c(j) = static_cast<int>(std::clamp<Eigen::Index>(v, 0, dims_(j) - 1));
    }
    return c;
  }

  std::size_t flat(const Eigen::VectorXi& c) const {
    std::size_t f = 0;
    for (Eigen::Index j = 0; j < c.size(); ++j)
      f = f * static_cast<std::size_t>(dims_(j)) + static_cast<std::size_t>(c(j));
    return f;
  }

  template <class F>
  void visit_axis(Eigen::Index axis, const Eigen::VectorXi& c, Eigen::Index reach,
                  Eigen::VectorXi& t, F&& fn) const {
    if (axis == c.size()) {
      for (Eigen::Index row : buckets_[flat(t)]) fn(row);
      return;
    }
    const int from = std::max(0, c(axis) - static_cast<int>(reach));
    const int to =
        std::min(static_cast<int>(dims_(axis)) - 1, c(axis) + static_cast<int>(reach));
    for (int v = from; v <= to; ++v) {
      t(axis) = v;
      visit_axis(axis + 1, c, reach, t, fn);
    }
  }

  Eigen::VectorXd lo_;
  double cell_;
  Eigen::VectorXi dims_;
  std::vector<std::vector<Eigen::Index>> buckets_;
};

Eigen::MatrixXd rows_of(const Eigen::MatrixXd& pts, const std::vector<Eigen::Index>& keep) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(keep.size()), pts.cols());
  for (std::size_t i = 0; i < keep.size(); ++i) out.row(Eigen::Index(i)) = pts.row(keep[i]);
  return out;
}

void check_thinning_params(double r, double p) {
  if (!(r >= 0.0)) throw config_error("thinning radius must be nonnegative");
  if (!(p >= 0.0 && p <= 1.0)) throw config_error("survival probability must be in [0,1]");
}

double fallback(double v, double dflt) { return is_set(v) ? v : dflt; }

void append_kv(std::string& s, const char* key, double v) {
  if (!is_set(v)) return;
  char buf[64];
  std::snprintf(buf, sizeof buf, " %s=%.15g", key, v);
  s += buf;
}

}  // namespace

Eigen::MatrixXd sim_poisson(const Window& window, double lambda, std::mt19937_64& rng) {
  if (!(lambda >= 0.0)) throw config_error("intensity must be nonnegative");
  const double mean = lambda * window.volume();
  Eigen::Index n = 0;
  if (mean > 0.0) n = std::poisson_distribution<Eigen::Index>(mean)(rng);
  Eigen::MatrixXd pts(n, window.dim());
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (Eigen::Index i = 0; i < n; ++i)
    for (int j = 0; j < window.dim(); ++j)
      pts(i, j) = window.lo()(j) + U(rng) * (window.hi()(j) - window.lo()(j));
  return pts;
}

Eigen::MatrixXd sim_cluster(const Eigen::MatrixXd& parents, double mu, double sigma,
                            const Window& window, std::mt19937_64& rng) {
  if (!(mu >= 0.0)) throw config_error("cluster mean must be nonnegative");
  if (!(sigma > 0.0)) throw config_error("cluster offset scale must be positive");
  if (parents.rows() > 0 && parents.cols() != window.dim())
    throw config_error("parent dimension does not match the window");
  std::normal_distribution<double> N(0.0, sigma);
  std::vector<Eigen::RowVectorXd> kept;
  Eigen::RowVectorXd child(window.dim());
  for (Eigen::Index i = 0; i < parents.rows(); ++i) {
    Eigen::Index n = 0;
    if (mu > 0.0) n = std::poisson_distribution<Eigen::Index>(mu)(rng);
    for (Eigen::Index c = 0; c < n; ++c) {
      for (int j = 0; j < window.dim(); ++j) child(j) = parents(i, j) + N(rng);
      if (window.contains(child)) kept.push_back(child);
    }
  }
  Eigen::MatrixXd out(static_cast<Eigen::Index>(kept.size()), window.dim());
  for (std::size_t i = 0; i < kept.size(); ++i) out.row(Eigen::Index(i)) = kept[i];
  return out;
}

Eigen::MatrixXd sim_mark_thinning(const Eigen::MatrixXd& points, double r, double p,
                                  std::mt19937_64& rng) {
  check_thinning_params(r, p);
  const Eigen::Index n = points.rows();
  if (n == 0 || r == 0.0 || p == 1.0) return points;

  std::uniform_real_distribution<double> U(0.0, 1.0);
  Eigen::VectorXd mark(n), trial(n);
  for (Eigen::Index i = 0; i < n; ++i) mark(i) = U(rng);
  for (Eigen::Index i = 0; i < n; ++i) trial(i) = U(rng);

  const Eigen::VectorXd lo = points.colwise().minCoeff().transpose();
  const Eigen::VectorXd hi = points.colwise().maxCoeff().transpose();
  CellIndex cells(points, lo, hi, r);
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < n; ++i) {
    bool dominated = false;
    cells.visit(points.row(i), 1, [&](Eigen::Index j) {
      if (dominated || j == i) return;
      if (mark(j) > mark(i) && (points.row(j) - points.row(i)).norm() <= r)
        dominated = true;
    });
    if (!dominated || trial(i) < p) keep.push_back(i);
  }
  return rows_of(points, keep);
}

Eigen::MatrixXd sim_cross_thinning(const Eigen::MatrixXd& points,
                                   const Eigen::MatrixXd& by, double r, double p,
                                   std::mt19937_64& rng) {
  check_thinning_params(r, p);
  const Eigen::Index n = points.rows();
  if (n == 0 || r == 0.0 || p == 1.0 || by.rows() == 0) return points;
  if (by.cols() != points.cols()) throw config_error("thinning dimension mismatch");

  std::uniform_real_distribution<double> U(0.0, 1.0);
  Eigen::VectorXd trial(n);
  for (Eigen::Index i = 0; i < n; ++i) trial(i) = U(rng);

  const Eigen::VectorXd lo = by.colwise().minCoeff().transpose();
  const Eigen::VectorXd hi = by.colwise().maxCoeff().transpose();
  CellIndex cells(by, lo, hi, r);
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < n; ++i) {
    bool exposed = false;
    cells.visit(points.row(i), 1, [&](Eigen::Index j) {
      if (!exposed && (by.row(j) - points.row(i)).norm() <= r) exposed = true;
    });
    if (!exposed || trial(i) < p) keep.push_back(i);
  }
  return rows_of(points, keep);
}

Eigen::MatrixXd sim_shift(const Eigen::MatrixXd& points, const Eigen::VectorXd& s,
                          const Window& window) {
  if (s.size() != window.dim()) throw config_error("shift dimension mismatch");
  Eigen::MatrixXd out = points;
  for (Eigen::Index i = 0; i < out.rows(); ++i) {
    for (int j = 0; j < window.dim(); ++j) {
      const double len = window.hi()(j) - window.lo()(j);
      double v = std::fmod(out(i, j) + s(j) - window.lo()(j), len);
      if (v < 0.0) v += len;
      out(i, j) = window.lo()(j) + v;
    }
  }
  return out;
}

MultiTypePattern sim_cox_squared_given(const Window& window, const Eigen::MatrixXd& z,
                                       double a, std::mt19937_64& rng) {
  if (!(a > 0.0)) throw config_error("cox kernel scale must be positive");
  if (z.rows() > 0 && z.cols() != window.dim())
    throw config_error("driving pattern dimension does not match the window");
  const int d = window.dim();
  const double cutoff = 6.0 * a;

  // S(u) = sum_z exp(-||u - z||^2 / (2 a^2)), truncated at 6a
  Eigen::VectorXd zlo(d), zhi(d);
  for (int j = 0; j < d; ++j) {
    zlo(j) = window.lo()(j) - cutoff;
    zhi(j) = window.hi()(j) + cutoff;
  }
  CellIndex cells(z, zlo, zhi, a);
  auto field = [&](const Eigen::RowVectorXd& u) {
    double s = 0.0;
    if (z.rows() > 0)
      cells.visit(u, 6, [&](Eigen::Index i) {
        const double d2 = (z.row(i) - u).squaredNorm();
        if (d2 <= cutoff * cutoff) s += std::exp(-d2 / (2.0 * a * a));
      });
    return s;
  };

  // dominating rate from a lattice of spacing a/4, with headroom
  double smax = 0.0;
  {
    const double h = a / 4.0;
    Eigen::VectorXi steps(d);
    for (int j = 0; j < d; ++j)
      steps(j) = static_cast<int>(std::ceil((window.hi()(j) - window.lo()(j)) / h)) + 1;
    Eigen::RowVectorXd u(d);
    Eigen::VectorXi idx = Eigen::VectorXi::Zero(d);
    const Eigen::Index total = steps.cast<Eigen::Index>().prod();
    for (Eigen::Index t = 0; t < total; ++t) {
      Eigen::Index rem = t;
      for (int j = d - 1; j >= 0; --j) {
        idx(j) = static_cast<int>(rem % steps(j));
        rem /= steps(j);
      }
      for (int j = 0; j < d; ++j)
        u(j) = std::min(window.lo()(j) + idx(j) * h, window.hi()(j));
      smax = std::max(smax, field(u));
    }
  }
  const double bound = 1.5 * smax * smax;

  MultiTypePattern pattern(window);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (const char* label : {"X", "Y"}) {
    std::vector<Eigen::RowVectorXd> kept;
    if (bound > 0.0) {
      const double mean = bound * window.volume();
      const Eigen::Index n = std::poisson_distribution<Eigen::Index>(mean)(rng);
      Eigen::RowVectorXd u(d);
      for (Eigen::Index i = 0; i < n; ++i) {
        for (int j = 0; j < d; ++j)
          u(j) = window.lo()(j) + U(rng) * (window.hi()(j) - window.lo()(j));
        const double s = field(u);
        const double rate = s * s;
        if (rate > bound)
          throw numeric_error(
              "cox-squared dominating bound violated; evaluation lattice too coarse");
        if (U(rng) * bound < rate) kept.push_back(u);
      }
    }
    Eigen::MatrixXd pts(static_cast<Eigen::Index>(kept.size()), d);
    for (std::size_t i = 0; i < kept.size(); ++i) pts.row(Eigen::Index(i)) = kept[i];
    pattern.add_type(label, pts);
  }

  // emitted driving points are those inside the window
  std::vector<Eigen::Index> inside;
  for (Eigen::Index i = 0; i < z.rows(); ++i)
    if (window.contains(z.row(i))) inside.push_back(i);
  pattern.add_type("Z", rows_of(z, inside));
  return pattern;
}

MultiTypePattern sim_cox_squared(const Window& window, double lambda_z, double a,
                                 std::mt19937_64& rng) {
  if (!(a > 0.0)) throw config_error("cox kernel scale must be positive");
  Eigen::VectorXd lo(window.dim()), hi(window.dim());
  for (int j = 0; j < window.dim(); ++j) {
    lo(j) = window.lo()(j) - 6.0 * a;
    hi(j) = window.hi()(j) + 6.0 * a;
  }
  const Eigen::MatrixXd z = sim_poisson(Window(lo, hi), lambda_z, rng);
  return sim_cox_squared_given(window, z, a, rng);
}

ScenarioSpec resolve_scenario(const ScenarioSpec& spec) {
  ScenarioSpec r = spec;
  const std::string& id = r.scenario;
  if (id == "biv-independent") {
    r.lambda = fallback(r.lambda, 0.01);
    r.mu_x0 = fallback(r.mu_x0, 3.0);
    r.sigma_x0 = fallback(r.sigma_x0, 1.5);
  } else if (id == "biv-packs") {
    r.lambda = fallback(r.lambda, 0.01);
    r.mu_x0 = fallback(r.mu_x0, 3.0);
    r.sigma_x0 = fallback(r.sigma_x0, 1.5);
    r.mu_x = fallback(r.mu_x, 1.0);
    r.sigma_x = fallback(r.sigma_x, 1.0);
  } else if (id == "biv-solitary") {
    r.lambda = fallback(r.lambda, 0.01);
    r.mu_x0 = fallback(r.mu_x0, 15.0);
    r.sigma_x0 = fallback(r.sigma_x0, 1.5);
    r.r_x = fallback(r.r_x, 3.0);
    r.p_x = fallback(r.p_x, 0.1);
  } else if (id == "tri-independent") {
    r.lambda = fallback(r.lambda, 0.01);
    r.mu_x = fallback(r.mu_x, 3.0);
    r.sigma_x = fallback(r.sigma_x, 2.0);
    r.mu_y = fallback(r.mu_y, 3.0);
    r.sigma_y = fallback(r.sigma_y, 2.0);
  } else if (id == "tri-cooperative") {
    r.lambda = fallback(r.lambda, 0.01);
    r.mu_y = fallback(r.mu_y, 3.0);
    r.sigma_y = fallback(r.sigma_y, 2.0);
    r.mu_x = fallback(r.mu_x, 1.0);
    r.sigma_x = fallback(r.sigma_x, 2.0);
  } else if (id == "tri-antagonistic") {
    r.lambda = fallback(r.lambda, 0.01);
    r.mu_y = fallback(r.mu_y, 3.0);
    r.sigma_y = fallback(r.sigma_y, 2.0);
    r.mu_x0 = fallback(r.mu_x0, 10.0);
    r.sigma_x0 = fallback(r.sigma_x0, 2.0);
    r.r_x = fallback(r.r_x, 3.0);
    r.p_x = fallback(r.p_x, 0.1);
  } else if (id == "cox-squared") {
    r.lambda = fallback(r.lambda, 0.01);
    r.cox_scale = fallback(r.cox_scale, 1.0);
  } else if (id == "custom") {
    r.lambda = fallback(r.lambda, 0.01);
    r.mu_x = fallback(r.mu_x, 3.0);
    r.sigma_x = fallback(r.sigma_x, 2.0);
    r.mu_y = fallback(r.mu_y, 3.0);
    r.sigma_y = fallback(r.sigma_y, 2.0);
    r.r_x = fallback(r.r_x, 0.0);
    r.p_x = fallback(r.p_x, 1.0);
  } else {
    throw config_error("unknown scenario '" + id +
                       "' (valid: biv-independent, biv-packs, biv-solitary, "
                       "tri-independent, tri-cooperative, tri-antagonistic, "
                       "cox-squared, custom)");
  }
  if (!(r.lambda >= 0.0)) throw config_error("intensity must be nonnegative");
  for (double m : {r.mu_x, r.mu_y, r.mu_x0})
    if (is_set(m) && !(m >= 0.0)) throw config_error("cluster mean must be nonnegative");
  for (double s : {r.sigma_x, r.sigma_y, r.sigma_x0})
    if (is_set(s) && !(s > 0.0))
      throw config_error("cluster offset scale must be positive");
  if (is_set(r.r_x) && !(r.r_x >= 0.0))
    throw config_error("thinning radius must be nonnegative");
  if (is_set(r.p_x) && !(r.p_x >= 0.0 && r.p_x <= 1.0))
    throw config_error("survival probability must be in [0,1]");
  if (is_set(r.cox_scale) && !(r.cox_scale > 0.0))
    throw config_error("cox kernel scale must be positive");
  if (r.shift.size() > 0 && r.shift.size() != r.window.dim())
    throw config_error("shift dimension mismatch");
  return r;
}

std::string describe_scenario(const ScenarioSpec& r) {
  std::string s = "scenario=" + r.scenario;
  append_kv(s, "lambda", r.lambda);
  append_kv(s, "mu_x", r.mu_x);
  append_kv(s, "sigma_x", r.sigma_x);
  append_kv(s, "mu_y", r.mu_y);
  append_kv(s, "sigma_y", r.sigma_y);
  append_kv(s, "mu_x0", r.mu_x0);
  append_kv(s, "sigma_x0", r.sigma_x0);
  append_kv(s, "r_x", r.r_x);
  append_kv(s, "p_x", r.p_x);
  append_kv(s, "a", r.cox_scale);
  if (r.shift.size() > 0) {
    s += " shift=";
    for (Eigen::Index j = 0; j < r.shift.size(); ++j) {
      if (j) s += ',';
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.15g", r.shift(j));
      s += buf;
    }
  }
  s += " seed=" + std::to_string(r.seed);
  return s;
}

MultiTypePattern sim_scenario(const ScenarioSpec& spec) {
  const ScenarioSpec r = resolve_scenario(spec);
  std::mt19937_64 rng(r.seed);
  const Window& w = r.window;
  MultiTypePattern pattern(w);
  const std::string& id = r.scenario;

  if (id == "biv-independent" || id == "biv-packs" || id == "biv-solitary") {
    const Eigen::MatrixXd y = sim_poisson(w, r.lambda, rng);
    const Eigen::MatrixXd x0 = sim_cluster(y, r.mu_x0, r.sigma_x0, w, rng);
    Eigen::MatrixXd x;
    if (id == "biv-independent") x = x0;
    else if (id == "biv-packs") x = sim_cluster(x0, r.mu_x, r.sigma_x, w, rng);
    else x = sim_mark_thinning(x0, r.r_x, r.p_x, rng);
    pattern.add_type("X", x);
    pattern.add_type("Y", y);
    return pattern;
  }
  if (id == "tri-independent" || id == "tri-cooperative" || id == "tri-antagonistic") {
    const Eigen::MatrixXd z = sim_poisson(w, r.lambda, rng);
    Eigen::MatrixXd x, y;
    if (id == "tri-independent") {
      x = sim_cluster(z, r.mu_x, r.sigma_x, w, rng);
      y = sim_cluster(z, r.mu_y, r.sigma_y, w, rng);
    } else if (id == "tri-cooperative") {
      y = sim_cluster(z, r.mu_y, r.sigma_y, w, rng);
      x = sim_cluster(y, r.mu_x, r.sigma_x, w, rng);
    } else {
      y = sim_cluster(z, r.mu_y, r.sigma_y, w, rng);
      const Eigen::MatrixXd x0 = sim_cluster(z, r.mu_x0, r.sigma_x0, w, rng);
      x = sim_cross_thinning(x0, y, r.r_x, r.p_x, rng);
    }
    pattern.add_type("X", x);
    pattern.add_type("Y", y);
    pattern.add_type("Z", z);
    return pattern;
  }
  if (id == "cox-squared") return sim_cox_squared(w, r.lambda, r.cox_scale, rng);

  // custom
  const Eigen::MatrixXd z = sim_poisson(w, r.lambda, rng);
  Eigen::MatrixXd x = sim_cluster(z, r.mu_x, r.sigma_x, w, rng);
  const Eigen::MatrixXd y = sim_cluster(z, r.mu_y, r.sigma_y, w, rng);
  if (r.r_x > 0.0) x = sim_cross_thinning(x, y, r.r_x, r.p_x, rng);
  if (r.shift.size() > 0) x = sim_shift(x, r.shift, w);
  pattern.add_type("X", x);
  pattern.add_type("Y", y);
  pattern.add_type("Z", z);
  return pattern;
}

}  // namespace partialk
