#pragma once

#include <functional>
#include <vector>

#include "mindisk/multigraph.hpp"

namespace mindisk {

// Cover rectangle [log r_in, log r_out] x [-N pi, N pi] in (sigma, theta).
struct AnnularDomain {
  double r_in = 1.0, r_out = 2.0;
  int sheets = 1;
  int n_sigma = 8, n_theta = 8;

  Grid2 grid() const;
  void validate() const;
};

// Dirichlet values on the four cover-rectangle edges, indexed like the grid:
// inner/outer along theta (i = 0 / i = n_sigma), theta_min/theta_max along
// sigma (j = 0 / j = n_theta). Corner values must agree exactly where edges
// meet.
struct BoundaryData {
  std::vector<double> inner, outer;
  std::vector<double> theta_min, theta_max;

  void validate(const AnnularDomain& d) const;
};

BoundaryData sample_boundary(const AnnularDomain& d,
                             const std::function<double(double, double)>& height);

struct SolverConfig {
  double tol_residual = 1e-9;  // on the scaled nodal residual
  int max_newton_iters = 50;
  double backtrack_factor = 0.5;
  double min_step = 1.0 / (1 << 20);
  double linear_tol = 1e-10;

  void validate() const;
};

struct SolveReport {
  int iterations = 0;
  std::vector<double> residual_history;  // monotone decreasing, includes initial
  double final_residual = 0.0;
  bool converged = false;
};

struct SolveResult {
  MultiGraph graph;
  SolveReport report;
};

// Damped Newton descent on the discrete graph-area functional over the cover
// rectangle (2x2 Gauss per cell). Boundary rows of the result copy the input
// data bit-for-bit; the line search never accepts a residual increase.
SolveResult solve(const AnnularDomain& d, const BoundaryData& b, const SolverConfig& c);

// Nodal residual of the divergence-form minimal surface operator in
// (sigma, theta): the energy gradient divided by the cell area. Zero on the
// boundary rows; second-order consistent at interior nodes.
struct ResidualField {
  Grid2 grid;
  std::vector<double> r;
  double max_abs = 0.0;
};
ResidualField discrete_mse_residual(const MultiGraph& g);

// Discrete area of the graph over the cover domain; identical quadrature to
// the solver objective, so solve never increases it.
double area_functional(const MultiGraph& g);

// Solve at a ladder of doubling resolutions against a known exact height and
// fit the max-error decay order. Errors at the floating noise floor are
// reported as exact instead of an order.
struct OrderReport {
  std::vector<int> resolutions;
  std::vector<double> errors;
  double order = 0.0;
  bool exact = false;
  bool monotone = true;
};
OrderReport convergence_order(double r_in, double r_out, int sheets,
                              const std::function<double(double, double)>& exact_height,
                              const std::vector<int>& resolutions, const SolverConfig& config);

}  // namespace mindisk
