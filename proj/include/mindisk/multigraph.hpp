#pragma once

#include <functional>
#include <string>
#include <vector>

#include "mindisk/grid.hpp"
#include "mindisk/surface.hpp"

namespace mindisk {

// N-valued graph over the universal cover of the punctured plane: a scalar
// height u on [log r_in, log r_out] x [-N pi, N pi]. rho is sampled
// log-uniformly, so the s-axis carries sigma = log rho and the t-axis theta.
struct MultiGraph {
  double r_in = 1.0, r_out = 2.0;
  int sheets = 1;
  Grid2 grid;
  std::vector<double> u;

  double rho(int i) const { return std::exp(grid.s.at(i)); }
  double theta(int j) const { return grid.t.at(j); }
  int nodes_per_turn() const { return grid.nt() / sheets; }
  void validate() const;
};

// height(rho, theta) sampled on the cover rectangle.
MultiGraph make_multigraph(double r_in, double r_out, int sheets, int n_rho, int n_theta,
                           const std::function<double(double, double)>& height);

// u = theta (sheet 1) or theta + pi (sheet 2), node-exact.
MultiGraph helicoid_sheet(int which, double r_in, double r_out, int sheets, int n_rho,
                          int n_theta);
// u = arctan(theta / log rho); bounded by pi/2, so the graph accumulates at
// finite height. Needs r_in > 1.
MultiGraph nonproper_graph(double r_in, double r_out, int sheets, int n_rho, int n_theta);

// w(rho, theta) = u(rho, theta + 2 pi) - u(rho, theta), defined on the
// sub-rectangle theta in [-N pi, N pi - 2 pi].
struct SeparationProfile {
  Grid2 grid;
  std::vector<double> w;
  double min_abs_w = 0.0;
  int sign = 0;  // +1 if w > 0 everywhere, -1 if w < 0 everywhere, else 0

  double rho(int i) const { return std::exp(grid.s.at(i)); }
  double theta(int j) const { return grid.t.at(j); }
};

SeparationProfile separation(const MultiGraph& g);

struct Embeddedness {
  bool embedded = false;
  double min_abs_w = 0.0;
};
Embeddedness is_embedded(const MultiGraph& g);

enum class Handedness { Left, Right };
Handedness handedness(const MultiGraph& g);

// Separation-growth fits along the theta = 0 ray (optionally aggregated over
// theta columns by max). Sublinear: least-squares slope of log|w| against
// log rho, with a sample-wise envelope check at margin 0.05 on the exponent.
// Log decay: least-squares constant for w * log(rho/rho0), with max relative
// deviation; flagged non-logarithmic above 25% deviation.
struct FitReport {
  double rho0 = 1.0;
  double alpha_hat = 0.0;
  double c_hat = 0.0;
  double residual = 0.0;
  bool envelope_ok = false;
  bool logarithmic = false;
  std::string kind;
};

FitReport fit_sublinear_exponent(const SeparationProfile& p, double rho0,
                                 bool aggregate_max = false);
FitReport fit_log_decay(const SeparationProfile& p, double rho0, bool aggregate_max = false);

// Positions (rho cos theta, rho sin theta, u) over the (sigma, theta) grid.
ParamPatch embed_to_r3(const MultiGraph& g);

}  // namespace mindisk
