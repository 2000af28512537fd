#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <vector>

#include "mindisk/grid.hpp"

namespace mindisk {

using Vec3 = Eigen::Vector3d;

enum class DerivMode { Analytic, CentralDifference };

// Structured immersed patch X : param rectangle -> R^3.
// Analytic patches carry exact first/second derivative fields per node;
// difference-mode patches derive them from positions (second-order stencils,
// one-sided at the boundary).
struct ParamPatch {
  Grid2 grid;
  DerivMode deriv_mode = DerivMode::CentralDifference;
  std::vector<Vec3> pos;
  std::vector<Vec3> xs, xt;            // first derivatives (analytic or perturbation-exact)
  std::vector<Vec3> xss, xst, xtt;     // second derivatives (analytic only)

  bool has_first_jets() const { return xs.size() == pos.size() && xt.size() == pos.size(); }
  bool has_second_jets() const {
    return has_first_jets() && xss.size() == pos.size() && xst.size() == pos.size() &&
           xtt.size() == pos.size();
  }
  void validate() const;
};

// Pointwise fundamental forms and curvatures.
// Sign convention: n = unit(X_s x X_t) and H is chosen so that the first
// variation of area along phi*n equals the integral of phi*H; the unit sphere
// parametrized with outward normal has H = +2, and an upward-normal graph
// u = x1^2 has H(0,0) = -2.
struct GeomData {
  Grid2 grid;
  std::vector<double> E, F, G;     // first fundamental form
  std::vector<double> e, f, g;     // second fundamental form against n
  std::vector<Vec3> normal;
  std::vector<double> H, K, A2;    // mean, Gauss, |A|^2 = trace(S^2)
  std::vector<double> sqrt_g;      // area element
};

// Scalar field used for normal variations X + t*phi*n. Vanishes on (and one
// node inside) the patch boundary. Analytic partials optional.
struct VariationField {
  std::vector<double> phi;
  std::vector<double> phi_s, phi_t;  // optional analytic partials
  bool has_jets() const { return phi_s.size() == phi.size() && phi_t.size() == phi.size(); }
};

struct FirstVariation {
  double numeric_derivative = 0.0;  // central difference of area(X + t phi n) at t = 0
  double integral_phi_H = 0.0;      // quadrature of phi * H
};

// Jet of a parametric map for analytic builders: value + first and second derivatives.
struct ParamJet {
  Vec3 x, xs, xt, xss, xst, xtt;
};
using ParamMap = std::function<ParamJet(double, double)>;

ParamPatch make_parametric(const Grid2& grid, const ParamMap& map, DerivMode mode);

// Canonical surfaces.
ParamPatch make_helicoid(double s0, double s1, double t0, double t1, int ns, int nt,
                         DerivMode mode = DerivMode::Analytic);
ParamPatch make_catenoid(double s0, double s1, double t0, double t1, int ns, int nt,
                         DerivMode mode = DerivMode::Analytic);
// Ruled patch X(s,t) = beta(t) + s * delta(t) from sampled directrix/direction.
// Positions are exact; t-derivatives come from differences, s-derivatives are exact.
ParamPatch make_ruled(const std::vector<Vec3>& directrix, const std::vector<Vec3>& direction,
                      double t0, double t1, double s0, double s1, int ns);
// Graph patch (s, t, u(s,t)) from sampled heights (difference mode).
ParamPatch make_graph_patch(const Grid2& grid, const std::vector<double>& u_field);
// Graph patch from a closed-form height with analytic partials u, u_s, u_t, u_ss, u_st, u_tt.
ParamPatch make_graph_patch_analytic(const Grid2& grid,
                                     const std::function<std::array<double, 6>(double, double)>& u_jet);

// Homothety a * X: positions and jets scale linearly; H scales by 1/a, |A|^2 by 1/a^2.
ParamPatch rescale(const ParamPatch& patch, double factor);

GeomData fundamental_forms(const ParamPatch& patch);

// Trapezoid quadrature of sqrt(EG - F^2) over the parameter rectangle.
double area(const ParamPatch& patch);

// Smooth compactly supported bump phi((s-c)/w) product, zero near the boundary.
VariationField make_bump_variation(const ParamPatch& patch, double cs, double ct, double ws,
                                   double wt);

FirstVariation first_variation(const ParamPatch& patch, const VariationField& phi, double h_t);

// Ascending eigenvalues of -(Laplace-Beltrami + |A|^2) with zero boundary values.
std::vector<double> jacobi_smallest_eigenvalues(const ParamPatch& patch, int k);

}  // namespace mindisk
