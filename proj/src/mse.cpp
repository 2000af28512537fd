#include "mindisk/mse.hpp"

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/Sparse>
#include <algorithm>
#include <cmath>
#include <limits>

namespace mindisk {

Grid2 AnnularDomain::grid() const {
  return {{std::log(r_in), std::log(r_out), n_sigma}, {-sheets * M_PI, sheets * M_PI, n_theta}};
}

void AnnularDomain::validate() const {
  if (!(r_in > 0.0)) throw InvalidInputError("domain: r_in must be positive");
  if (!(r_out > r_in)) throw InvalidInputError("domain: r_out must exceed r_in");
  if (sheets < 1 || sheets > 64) throw InvalidInputError("domain: sheet count outside [1, 64]");
  if (n_sigma < 2 || n_theta < 2) throw InvalidInputError("domain: need at least 2 cells per direction");
  if (n_theta % sheets != 0)
    throw InvalidInputError("domain: theta spacing must divide 2 pi (n_theta % sheets != 0)");
}

void BoundaryData::validate(const AnnularDomain& d) const {
  std::size_t nt = static_cast<std::size_t>(d.n_theta) + 1;
  std::size_t ns = static_cast<std::size_t>(d.n_sigma) + 1;
  if (inner.size() != nt || outer.size() != nt || theta_min.size() != ns || theta_max.size() != ns)
    throw InvalidInputError("boundary: edge lengths do not match the domain grid");
  for (const auto* edge : {&inner, &outer, &theta_min, &theta_max})
    for (double v : *edge)
      if (!std::isfinite(v)) throw InvalidInputError("boundary: non-finite value");
  if (inner.front() != theta_min.front() || inner.back() != theta_max.front() ||
      outer.front() != theta_min.back() || outer.back() != theta_max.back())
    throw InvalidInputError("boundary: corner values disagree where edges meet");
}

BoundaryData sample_boundary(const AnnularDomain& d,
                             const std::function<double(double, double)>& height) {
  d.validate();
  Grid2 g = d.grid();
  BoundaryData b;
  b.inner.resize(g.cols());
  b.outer.resize(g.cols());
  b.theta_min.resize(g.rows());
  b.theta_max.resize(g.rows());
  for (int j = 0; j <= g.nt(); ++j) {
    b.inner[j] = height(std::exp(g.s.at(0)), g.t.at(j));
    b.outer[j] = height(std::exp(g.s.at(g.ns())), g.t.at(j));
  }
  for (int i = 0; i <= g.ns(); ++i) {
    b.theta_min[i] = height(std::exp(g.s.at(i)), g.t.at(0));
    b.theta_max[i] = height(std::exp(g.s.at(i)), g.t.at(g.nt()));
  }
  b.validate(d);
  return b;
}

void SolverConfig::validate() const {
  if (!(tol_residual > 0.0)) throw InvalidInputError("config: tol_residual must be positive");
  if (max_newton_iters < 1) throw InvalidInputError("config: max_newton_iters must be >= 1");
  if (!(backtrack_factor > 0.0 && backtrack_factor < 1.0))
    throw InvalidInputError("config: backtracking factor outside (0,1)");
  if (!(min_step > 0.0 && min_step <= 1.0)) throw InvalidInputError("config: bad minimum step");
  if (!(linear_tol > 0.0)) throw InvalidInputError("config: linear tolerance must be positive");
}

namespace {

// Transfinite interpolation of the four edges, written as a radial blend plus
// edge corrections so that fields constant in sigma reproduce exactly.
std::vector<double> coons_guess(const Grid2& g, const BoundaryData& b) {
  std::vector<double> u(g.count());
  int ns = g.ns(), nt = g.nt();
  for (int i = 0; i <= ns; ++i) {
    double x = static_cast<double>(i) / ns;
    for (int j = 0; j <= nt; ++j) {
      double y = static_cast<double>(j) / nt;
      double radial = b.inner[j] + x * (b.outer[j] - b.inner[j]);
      double lo = b.theta_min[i] - (b.inner[0] + x * (b.outer[0] - b.inner[0]));
      double hi = b.theta_max[i] - (b.inner[nt] + x * (b.outer[nt] - b.inner[nt]));
      u[g.idx(i, j)] = radial + (1.0 - y) * lo + y * hi;
    }
  }
  // boundary rows are the data, bit-for-bit
  for (int j = 0; j <= nt; ++j) {
    u[g.idx(0, j)] = b.inner[j];
    u[g.idx(ns, j)] = b.outer[j];
  }
  for (int i = 0; i <= ns; ++i) {
    u[g.idx(i, 0)] = b.theta_min[i];
    u[g.idx(i, nt)] = b.theta_max[i];
  }
  return u;
}

struct GaussPoint {
  double dn_s[4], dn_t[4];  // shape gradients in (sigma, theta)
  double m;                 // e^{-2 sigma} at the point
  double jac;               // e^{+2 sigma}
};

// Area density in (sigma, theta): e^{2 sigma} W with
// W = sqrt(1 + e^{-2 sigma} (u_sigma^2 + u_theta^2)); its (p, q) gradient is
// (p/W, q/W) and the 2x2 Hessian is positive definite, so the discrete energy
// is convex and Newton directions are descent directions.
class EnergyAssembler {
 public:
  EnergyAssembler(const Grid2& grid) : g_(grid) {
    double hs = g_.s.h(), ht = g_.t.h();
    wq_ = hs * ht / 4.0;
    const double gp = 1.0 / std::sqrt(3.0);
    for (int a = 0; a < 2; ++a) {
      for (int bq = 0; bq < 2; ++bq) {
        double xi = a ? gp : -gp, eta = bq ? gp : -gp;
        GaussPoint& q = pts_[a * 2 + bq];
        double dxi[4] = {-(1 - eta) / 4, (1 - eta) / 4, -(1 + eta) / 4, (1 + eta) / 4};
        double deta[4] = {-(1 - xi) / 4, -(1 + xi) / 4, (1 - xi) / 4, (1 + xi) / 4};
        for (int c = 0; c < 4; ++c) {
          q.dn_s[c] = dxi[c] * 2 / hs;
          q.dn_t[c] = deta[c] * 2 / ht;
        }
        xi_[a * 2 + bq] = xi;
      }
    }
  }

  // energy + nodal gradient over the full grid (gradient zeroed on boundary
  // rows by the caller's interior map)
  double energy_and_gradient(const std::vector<double>& u, std::vector<double>& grad) const {
    grad.assign(g_.count(), 0.0);
    double energy = 0.0;
    double hs = g_.s.h();
    for (int i = 0; i < g_.ns(); ++i) {
      double sc = 0.5 * (g_.s.at(i) + g_.s.at(i + 1));
      for (int j = 0; j < g_.nt(); ++j) {
        std::size_t nd[4] = {g_.idx(i, j), g_.idx(i + 1, j), g_.idx(i, j + 1),
                             g_.idx(i + 1, j + 1)};
        double uv[4] = {u[nd[0]], u[nd[1]], u[nd[2]], u[nd[3]]};
        for (int q = 0; q < 4; ++q) {
          const GaussPoint& gp = pts_[q];
          double sg = sc + xi_[q] * hs / 2.0;
          double m = std::exp(-2.0 * sg), jac = std::exp(2.0 * sg);
          double p = 0.0, qq = 0.0;
          for (int c = 0; c < 4; ++c) {
            p += gp.dn_s[c] * uv[c];
            qq += gp.dn_t[c] * uv[c];
          }
          double W = std::sqrt(1.0 + m * (p * p + qq * qq));
          energy += wq_ * jac * W;
          double fp = wq_ * p / W, fq = wq_ * qq / W;
          for (int c = 0; c < 4; ++c) grad[nd[c]] += fp * gp.dn_s[c] + fq * gp.dn_t[c];
        }
      }
    }
    return energy;
  }

  Eigen::SparseMatrix<double> hessian(const std::vector<double>& u, const std::vector<int>& imap,
                                      int nin) const {
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(static_cast<std::size_t>(g_.ns()) * g_.nt() * 16);
    double hs = g_.s.h();
    for (int i = 0; i < g_.ns(); ++i) {
      double sc = 0.5 * (g_.s.at(i) + g_.s.at(i + 1));
      for (int j = 0; j < g_.nt(); ++j) {
        std::size_t nd[4] = {g_.idx(i, j), g_.idx(i + 1, j), g_.idx(i, j + 1),
                             g_.idx(i + 1, j + 1)};
        double uv[4] = {u[nd[0]], u[nd[1]], u[nd[2]], u[nd[3]]};
        double loc[4][4] = {};
        for (int q = 0; q < 4; ++q) {
          const GaussPoint& gp = pts_[q];
          double sg = sc + xi_[q] * hs / 2.0;
          double m = std::exp(-2.0 * sg);
          double p = 0.0, qq = 0.0;
          for (int c = 0; c < 4; ++c) {
            p += gp.dn_s[c] * uv[c];
            qq += gp.dn_t[c] * uv[c];
          }
          double W = std::sqrt(1.0 + m * (p * p + qq * qq));
          double W3 = W * W * W;
          double fpp = 1.0 / W - m * p * p / W3;
          double fqq = 1.0 / W - m * qq * qq / W3;
          double fpq = -m * p * qq / W3;
          for (int a = 0; a < 4; ++a) {
            double as = gp.dn_s[a], at = gp.dn_t[a];
            for (int c = 0; c < 4; ++c) {
              double cs = gp.dn_s[c], ct = gp.dn_t[c];
              loc[a][c] += wq_ * (as * (fpp * cs + fpq * ct) + at * (fpq * cs + fqq * ct));
            }
          }
        }
        for (int a = 0; a < 4; ++a) {
          int ra = imap[nd[a]];
          if (ra < 0) continue;
          for (int c = 0; c < 4; ++c) {
            int rc = imap[nd[c]];
            if (rc >= 0) trips.emplace_back(ra, rc, loc[a][c]);
          }
        }
      }
    }
    Eigen::SparseMatrix<double> H(nin, nin);
    H.setFromTriplets(trips.begin(), trips.end());
    return H;
  }

 private:
  Grid2 g_;
  GaussPoint pts_[4];
  double xi_[4];
  double wq_;
};

double scaled_residual(const Grid2& g, const std::vector<double>& grad,
                       const std::vector<int>& imap, double bscale) {
  double mx = 0.0;
  for (std::size_t k = 0; k < grad.size(); ++k)
    if (imap[k] >= 0) mx = std::max(mx, std::abs(grad[k]));
  return mx / (g.s.h() * g.t.h()) / bscale;
}

}  // namespace

SolveResult solve(const AnnularDomain& d, const BoundaryData& b, const SolverConfig& cfg) {
  d.validate();
  b.validate(d);
  cfg.validate();
  Grid2 g = d.grid();

  std::vector<int> imap(g.count(), -1);
  int nin = 0;
  for (int i = 1; i < g.ns(); ++i)
    for (int j = 1; j < g.nt(); ++j) imap[g.idx(i, j)] = nin++;

  double bmax = 0.0;
  for (const auto* edge : {&b.inner, &b.outer, &b.theta_min, &b.theta_max})
    for (double v : *edge) bmax = std::max(bmax, std::abs(v));
  double bscale = 1.0 + bmax;

  std::vector<double> u = coons_guess(g, b);
  EnergyAssembler asmb(g);
  std::vector<double> grad;
  double energy = asmb.energy_and_gradient(u, grad);
  double res = scaled_residual(g, grad, imap, bscale);

  SolveReport rep;
  rep.residual_history.push_back(res);

  while (res > cfg.tol_residual) {
    if (rep.iterations >= cfg.max_newton_iters)
      throw NumericError("solve: Newton did not reach the residual tolerance",
                         rep.residual_history, rep.iterations);
    Eigen::SparseMatrix<double> H = asmb.hessian(u, imap, nin);
    Eigen::VectorXd rhs(nin);
    for (std::size_t k = 0; k < g.count(); ++k)
      if (imap[k] >= 0) rhs[imap[k]] = -grad[k];
    Eigen::ConjugateGradient<Eigen::SparseMatrix<double>, Eigen::Lower | Eigen::Upper,
                             Eigen::IncompleteCholesky<double>>
        cg;
    cg.setTolerance(cfg.linear_tol);
    cg.setMaxIterations(8 * nin + 100);
    cg.compute(H);
    Eigen::VectorXd delta = cg.solve(rhs);
    if (cg.info() != Eigen::Success)
      throw NumericError("solve: inner linear solve failed", rep.residual_history,
                         rep.iterations);

    double alpha = 1.0;
    std::vector<double> u_try(u.size()), grad_try;
    while (true) {
      u_try = u;
      for (std::size_t k = 0; k < g.count(); ++k)
        if (imap[k] >= 0) u_try[k] += alpha * delta[imap[k]];
      double energy_try = asmb.energy_and_gradient(u_try, grad_try);
      double res_try = scaled_residual(g, grad_try, imap, bscale);
      if (res_try <= (1.0 - 1e-4 * alpha) * res &&
          energy_try <= energy + 1e-12 * (1.0 + std::abs(energy))) {
        u.swap(u_try);
        grad.swap(grad_try);
        energy = energy_try;
        res = res_try;
        break;
      }
      alpha *= cfg.backtrack_factor;
      if (alpha < cfg.min_step)
        throw NumericError("solve: line search stalled below the minimum step",
                           rep.residual_history, rep.iterations);
    }
    rep.residual_history.push_back(res);
    ++rep.iterations;
  }

  rep.final_residual = res;
  rep.converged = true;

  MultiGraph out;
  out.r_in = d.r_in;
  out.r_out = d.r_out;
  out.sheets = d.sheets;
  out.grid = g;
  out.u = std::move(u);
  return {std::move(out), std::move(rep)};
}

ResidualField discrete_mse_residual(const MultiGraph& g) {
  g.validate();
  EnergyAssembler asmb(g.grid);
  std::vector<double> grad;
  asmb.energy_and_gradient(g.u, grad);
  ResidualField f;
  f.grid = g.grid;
  f.r.assign(g.grid.count(), 0.0);
  double cell = g.grid.s.h() * g.grid.t.h();
  for (int i = 1; i < g.grid.ns(); ++i) {
    for (int j = 1; j < g.grid.nt(); ++j) {
      std::size_t k = g.grid.idx(i, j);
      f.r[k] = grad[k] / cell;
      f.max_abs = std::max(f.max_abs, std::abs(f.r[k]));
    }
  }
  return f;
}

double area_functional(const MultiGraph& g) {
  g.validate();
  EnergyAssembler asmb(g.grid);
  std::vector<double> grad;
  return asmb.energy_and_gradient(g.u, grad);
}

OrderReport convergence_order(double r_in, double r_out, int sheets,
                              const std::function<double(double, double)>& exact_height,
                              const std::vector<int>& resolutions, const SolverConfig& config) {
  if (resolutions.size() < 3)
    throw InvalidInputError("convergence: need at least 3 resolutions");
  for (std::size_t k = 0; k + 1 < resolutions.size(); ++k)
    if (resolutions[k + 1] != 2 * resolutions[k])
      throw InvalidInputError("convergence: resolutions must double");

  OrderReport rep;
  rep.resolutions = resolutions;
  double scale = 1.0;
  for (int res : resolutions) {
    AnnularDomain d{r_in, r_out, sheets, res, res};
    BoundaryData b = sample_boundary(d, exact_height);
    SolveResult sol = solve(d, b, config);
    const Grid2& g = sol.graph.grid;
    double err = 0.0;
    for (int i = 0; i <= g.ns(); ++i) {
      for (int j = 0; j <= g.nt(); ++j) {
        double ex = exact_height(std::exp(g.s.at(i)), g.t.at(j));
        scale = std::max(scale, 1.0 + std::abs(ex));
        err = std::max(err, std::abs(sol.graph.u[g.idx(i, j)] - ex));
      }
    }
    rep.errors.push_back(err);
  }

  rep.exact = true;
  for (double e : rep.errors) rep.exact = rep.exact && e <= 1e-11 * scale;
  if (rep.exact) return rep;

  for (std::size_t k = 0; k + 1 < rep.errors.size(); ++k)
    if (!(rep.errors[k + 1] < rep.errors[k])) rep.monotone = false;

  // least-squares slope of log(error) against log(h), h ~ 1/resolution
  std::size_t n = rep.errors.size();
  double xbar = 0.0, ybar = 0.0;
  std::vector<double> x(n), y(n);
  for (std::size_t k = 0; k < n; ++k) {
    x[k] = -std::log(static_cast<double>(resolutions[k]));
    y[k] = std::log(rep.errors[k]);
    xbar += x[k];
    ybar += y[k];
  }
  xbar /= n;
  ybar /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    sxx += (x[k] - xbar) * (x[k] - xbar);
    sxy += (x[k] - xbar) * (y[k] - ybar);
  }
  rep.order = sxy / sxx;
  return rep;
}

}  // namespace mindisk
