#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "mindisk/mse.hpp"

using namespace mindisk;

namespace {

bool boundary_bitwise_equal(const SolveResult& r, const BoundaryData& b) {
  const Grid2& g = r.graph.grid;
  for (int j = 0; j <= g.nt(); ++j) {
    if (r.graph.u[g.idx(0, j)] != b.inner[j]) return false;
    if (r.graph.u[g.idx(g.ns(), j)] != b.outer[j]) return false;
  }
  for (int i = 0; i <= g.ns(); ++i) {
    if (r.graph.u[g.idx(i, 0)] != b.theta_min[i]) return false;
    if (r.graph.u[g.idx(i, g.nt())] != b.theta_max[i]) return false;
  }
  return true;
}

double max_err_vs(const MultiGraph& g, const std::function<double(double, double)>& f) {
  double m = 0.0;
  for (int i = 0; i <= g.grid.ns(); ++i)
    for (int j = 0; j <= g.grid.nt(); ++j)
      m = std::max(m, std::abs(g.u[g.grid.idx(i, j)] - f(g.rho(i), g.theta(j))));
  return m;
}

}  // namespace

TEST_CASE("residual of exact solutions") {
  MultiGraph c = make_multigraph(1.0, 3.0, 2, 24, 48, [](double, double) { return 7.0; });
  ResidualField rc = discrete_mse_residual(c);
  for (double r : rc.r) CHECK(r == 0.0);

  // the screw family is a stationary point of the discrete energy itself, so
  // its residual is rounding noise at any resolution
  for (int n : {16, 32, 64}) {
    MultiGraph g = make_multigraph(1.5, 4.0, 1, n, n, [](double, double t) { return t; });
    CHECK(discrete_mse_residual(g).max_abs <= 1e-11);
  }

  // arccosh solves the equation but not its discretization; the nodal
  // residual is second order and falls by about 4x per doubling
  double prev = 0.0;
  for (int n : {16, 32, 64}) {
    MultiGraph g =
        make_multigraph(1.5, 4.0, 1, n, n, [](double rho, double) { return std::acosh(rho); });
    double now = discrete_mse_residual(g).max_abs;
    CHECK(now > 1e-6);
    if (prev > 0.0) CHECK(prev / now >= 3.0);
    prev = now;
  }
}

TEST_CASE("constant boundary data solves instantly") {
  AnnularDomain d{1.0, 2.0, 1, 16, 16};
  BoundaryData b = sample_boundary(d, [](double, double) { return 7.0; });
  SolveResult r = solve(d, b, SolverConfig{});
  CHECK(r.report.iterations == 0);
  CHECK(r.report.converged);
  for (double u : r.graph.u) CHECK(u == 7.0);
}

TEST_CASE("screw family is reproduced exactly") {
  AnnularDomain d{1.0, 4.0, 4, 24, 96};
  BoundaryData b = sample_boundary(d, [](double, double theta) { return theta; });
  SolveResult r = solve(d, b, SolverConfig{});
  CHECK(r.report.iterations == 0);
  for (int i = 0; i <= d.grid().ns(); ++i)
    for (int j = 0; j <= d.grid().nt(); ++j)
      CHECK(r.graph.u[r.graph.grid.idx(i, j)] == r.graph.theta(j));
}

TEST_CASE("rotation equivariance on the screw family") {
  AnnularDomain d{1.0, 4.0, 3, 16, 48};
  double theta0 = 2.0 * M_PI;  // one full turn, grid aligned
  SolveResult base =
      solve(d, sample_boundary(d, [](double, double t) { return t; }), SolverConfig{});
  SolveResult shifted = solve(
      d, sample_boundary(d, [theta0](double, double t) { return t + theta0; }), SolverConfig{});
  for (std::size_t k = 0; k < base.graph.u.size(); ++k)
    CHECK(shifted.graph.u[k] == base.graph.u[k] + theta0);
}

TEST_CASE("arccosh recovery with bit-exact boundary and monotone residuals") {
  AnnularDomain d{1.5, 4.0, 1, 64, 64};
  BoundaryData b = sample_boundary(d, [](double rho, double) { return std::acosh(rho); });
  SolveResult r = solve(d, b, SolverConfig{});
  CHECK(r.report.converged);
  CHECK(r.report.final_residual <= 1e-9);
  CHECK(boundary_bitwise_equal(r, b));
  REQUIRE(r.report.residual_history.size() >= 2);
  for (std::size_t k = 1; k < r.report.residual_history.size(); ++k)
    CHECK(r.report.residual_history[k] <= r.report.residual_history[k - 1]);
  // interior error is at truncation scale
  CHECK(max_err_vs(r.graph, [](double rho, double) { return std::acosh(rho); }) <= 1e-4);
}

TEST_CASE("discrete maximum principle on a solved graph") {
  AnnularDomain d{1.5, 4.0, 1, 48, 48};
  BoundaryData b = sample_boundary(d, [](double rho, double theta) {
    return std::acosh(rho) + 0.2 * std::sin(theta) * (rho - 1.5);
  });
  SolveResult r = solve(d, b, SolverConfig{});
  REQUIRE(r.report.converged);
  double blo = 1e300, bhi = -1e300;
  for (double v : b.inner) blo = std::min(blo, v), bhi = std::max(bhi, v);
  for (double v : b.outer) blo = std::min(blo, v), bhi = std::max(bhi, v);
  for (double v : b.theta_min) blo = std::min(blo, v), bhi = std::max(bhi, v);
  for (double v : b.theta_max) blo = std::min(blo, v), bhi = std::max(bhi, v);
  double h = d.grid().s.h();
  double tol = h * h * std::max(std::abs(blo), std::abs(bhi));
  for (double u : r.graph.u) {
    CHECK(u >= blo - tol);
    CHECK(u <= bhi + tol);
  }
}

TEST_CASE("perturbed screw data stays embedded with monotone residuals") {
  AnnularDomain d{1.0, 4.0, 4, 32, 128};
  double S = std::log(4.0);
  BoundaryData b = sample_boundary(d, [S](double rho, double theta) {
    return theta + 0.1 * (std::log(rho) / S) * std::sin(theta);
  });
  SolveResult r = solve(d, b, SolverConfig{});
  CHECK(r.report.converged);
  for (std::size_t k = 1; k < r.report.residual_history.size(); ++k)
    CHECK(r.report.residual_history[k] <= r.report.residual_history[k - 1]);
  Embeddedness e = is_embedded(r.graph);
  CHECK(e.embedded);
  CHECK(e.min_abs_w > 0.0);
  CHECK(separation(r.graph).sign == 1);
}

TEST_CASE("solution minimizes area among same-boundary graphs") {
  AnnularDomain d{1.5, 4.0, 1, 32, 32};
  auto f = [](double rho, double theta) {
    return std::acosh(rho) + 0.3 * std::sin(2.0 * theta) * std::log(rho / 1.5);
  };
  SolveResult r = solve(d, sample_boundary(d, f), SolverConfig{});
  REQUIRE(r.report.converged);
  MultiGraph competitor = make_multigraph(1.5, 4.0, 1, 32, 32, f);
  CHECK(area_functional(r.graph) <= area_functional(competitor) + 1e-10);
}

TEST_CASE("area functional oracles") {
  MultiGraph flat = make_multigraph(1.0, 2.0, 1, 128, 128, [](double, double) { return 0.0; });
  CHECK(area_functional(flat) == doctest::Approx(3.0 * M_PI).epsilon(1e-6));
  // one turn of u = theta over rho in [1,2]:
  // int int sqrt(1 + rho^-2) rho drho dtheta = pi (2 sqrt5 + asinh 2 - sqrt2 - asinh 1)
  MultiGraph screw = make_multigraph(1.0, 2.0, 1, 256, 256, [](double, double t) { return t; });
  double want = M_PI * (2.0 * std::sqrt(5.0) + std::asinh(2.0) - std::sqrt(2.0) - std::asinh(1.0));
  CHECK(area_functional(screw) == doctest::Approx(want).epsilon(1e-5));
}

TEST_CASE("convergence order study") {
  auto arccosh = [](double rho, double) { return std::acosh(rho); };
  OrderReport rep = convergence_order(1.5, 4.0, 1, arccosh, {32, 64, 128}, SolverConfig{});
  CHECK_FALSE(rep.exact);
  CHECK(rep.monotone);
  CHECK(rep.order >= 1.9);
  CHECK(rep.order <= 2.1);

  OrderReport ex = convergence_order(1.0, 2.0, 1, [](double, double) { return 1.0; },
                                     {8, 16, 32}, SolverConfig{});
  CHECK(ex.exact);
  OrderReport th = convergence_order(1.0, 2.0, 2, [](double, double t) { return t; },
                                     {8, 16, 32}, SolverConfig{});
  CHECK(th.exact);

  CHECK_THROWS_AS(convergence_order(1.5, 4.0, 1, arccosh, {16, 32}, SolverConfig{}),
                  InvalidInputError);
  CHECK_THROWS_AS(convergence_order(1.5, 4.0, 1, arccosh, {16, 32, 65}, SolverConfig{}),
                  InvalidInputError);
}

TEST_CASE("solver input validation") {
  AnnularDomain bad{0.0, 2.0, 1, 8, 8};
  CHECK_THROWS_AS(bad.validate(), InvalidInputError);
  AnnularDomain d{1.0, 2.0, 3, 8, 8};  // 8 % 3 != 0
  CHECK_THROWS_AS(d.validate(), InvalidInputError);

  AnnularDomain ok{1.0, 2.0, 1, 8, 8};
  BoundaryData b = sample_boundary(ok, [](double, double) { return 1.0; });
  b.inner[0] += 0.5;  // breaks the corner consistency
  CHECK_THROWS_AS(b.validate(ok), InvalidInputError);

  SolverConfig c;
  c.tol_residual = -1.0;
  CHECK_THROWS_AS(c.validate(), InvalidInputError);
  SolverConfig c2;
  c2.backtrack_factor = 1.5;
  CHECK_THROWS_AS(c2.validate(), InvalidInputError);
}
