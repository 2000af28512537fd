#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "mindisk/surface.hpp"

using namespace mindisk;

namespace {

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

ParamPatch sphere_patch(int ns, int nt) {
  Grid2 g{{0.4, M_PI - 0.4, ns}, {0.0, 2.0 * M_PI, nt}};
  return make_parametric(
      g,
      [](double s, double t) {
        ParamJet j;
        double cs = std::cos(s), ss = std::sin(s), ct = std::cos(t), st = std::sin(t);
        j.x = {ss * ct, ss * st, cs};
        j.xs = {cs * ct, cs * st, -ss};
        j.xt = {-ss * st, ss * ct, 0.0};
        j.xss = {-ss * ct, -ss * st, -cs};
        j.xst = {-cs * st, cs * ct, 0.0};
        j.xtt = {-ss * ct, -ss * st, 0.0};
        return j;
      },
      DerivMode::Analytic);
}

// arccosh(hypot(x,y)) with analytic jets: the catenoid seen as a graph
std::array<double, 6> catenoid_graph_jet(double x, double y) {
  double rho = std::hypot(x, y);
  double ur = 1.0 / std::sqrt(rho * rho - 1.0);
  double urr = -rho * std::pow(rho * rho - 1.0, -1.5);
  double u = std::acosh(rho);
  double ux = ur * x / rho, uy = ur * y / rho;
  double uxx = urr * x * x / (rho * rho) + ur * (1.0 / rho - x * x / (rho * rho * rho));
  double uyy = urr * y * y / (rho * rho) + ur * (1.0 / rho - y * y / (rho * rho * rho));
  double uxy = urr * x * y / (rho * rho) - ur * x * y / (rho * rho * rho);
  return {u, ux, uy, uxx, uxy, uyy};
}

ParamPatch catenoid_graph_patch(int n) {
  Grid2 g{{1.2, 2.5, n}, {-0.6, 0.6, n}};
  return make_graph_patch_analytic(g, catenoid_graph_jet);
}

}  // namespace

TEST_CASE("helicoid positions match the parametrization") {
  ParamPatch p = make_helicoid(0.0, 2.0, 0.0, M_PI, 2, 2);
  CHECK(p.pos[p.grid.idx(0, 0)] == Vec3(0.0, 0.0, 0.0));
  Vec3 mid = p.pos[p.grid.idx(1, 1)];  // (s,t) = (1, pi/2)
  CHECK(mid[0] == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(mid[1] == doctest::Approx(1.0));
  CHECK(mid[2] == doctest::Approx(M_PI / 2.0));
  Vec3 far = p.pos[p.grid.idx(2, 2)];  // (s,t) = (2, pi)
  CHECK(far[0] == doctest::Approx(-2.0));
  CHECK(std::abs(far[1]) < 1e-14);
  CHECK(far[2] == doctest::Approx(M_PI));
}

TEST_CASE("catenoid positions and neck curvature") {
  ParamPatch p = make_catenoid(-1.0, 1.0, 0.0, 2.0 * M_PI, 64, 64);
  GeomData geo = fundamental_forms(p);
  CHECK(p.pos[p.grid.idx(32, 0)] == Vec3(1.0, 0.0, 0.0));
  CHECK(p.pos[p.grid.idx(32, 32)][0] == doctest::Approx(-1.0));
  CHECK(max_abs(geo.H) <= 1e-10);
  // |A|^2 = 2/cosh^4 s and K = -1/cosh^4 s
  for (int i = 0; i <= 64; i += 8) {
    double s = p.grid.s.at(i);
    double c4 = std::pow(std::cosh(s), 4);
    for (int j = 0; j <= 64; j += 16) {
      CHECK(geo.A2[p.grid.idx(i, j)] == doctest::Approx(2.0 / c4).epsilon(1e-10));
      CHECK(geo.K[p.grid.idx(i, j)] == doctest::Approx(-1.0 / c4).epsilon(1e-10));
    }
  }
  CHECK(geo.A2[p.grid.idx(32, 0)] == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("helicoid is minimal with |A|^2 = 2/(1+s^2)^2") {
  ParamPatch p = make_helicoid(-1.5, 1.5, 0.0, 2.0 * M_PI, 48, 48);
  GeomData geo = fundamental_forms(p);
  CHECK(max_abs(geo.H) <= 1e-10);
  for (int i = 0; i <= 48; i += 6) {
    double s = p.grid.s.at(i);
    double want = 2.0 / std::pow(1.0 + s * s, 2);
    CHECK(geo.A2[p.grid.idx(i, 17)] == doctest::Approx(want).epsilon(1e-10));
  }
}

TEST_CASE("sphere with outward normal has H = +2") {
  GeomData geo = fundamental_forms(sphere_patch(32, 32));
  for (double h : geo.H) CHECK(h == doctest::Approx(2.0).epsilon(1e-9));
  for (double k : geo.K) CHECK(k == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("graph u = x1^2 has H(0,0) = -2") {
  Grid2 g{{-1.0, 1.0, 32}, {-1.0, 1.0, 32}};
  ParamPatch p = make_graph_patch_analytic(g, [](double s, double) -> std::array<double, 6> {
    return {s * s, 2.0 * s, 0.0, 2.0, 0.0, 0.0};
  });
  GeomData geo = fundamental_forms(p);
  CHECK(geo.H[g.idx(16, 16)] == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(geo.K[g.idx(16, 16)] == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("ruled patches have vanishing e and K <= 0") {
  int nt = 48;
  std::vector<Vec3> beta(nt + 1), delta(nt + 1);
  for (int j = 0; j <= nt; ++j) {
    double t = 2.0 * M_PI * j / nt;
    beta[j] = {0.1 * std::sin(t), 0.0, t};
    delta[j] = {std::cos(t), std::sin(t), 0.2 * std::cos(2.0 * t)};
  }
  ParamPatch p = make_ruled(beta, delta, 0.0, 2.0 * M_PI, 0.3, 2.0, 24);
  GeomData geo = fundamental_forms(p);
  for (std::size_t k = 0; k < geo.e.size(); ++k) {
    CHECK(geo.e[k] == 0.0);
    CHECK(geo.K[k] <= 0.0);
  }
}

TEST_CASE("ruled helicoid matches make_helicoid node-wise") {
  int ns = 12, nt = 36;
  std::vector<Vec3> beta(nt + 1), delta(nt + 1);
  for (int j = 0; j <= nt; ++j) {
    double t = 0.0 + (2.0 * M_PI) * j / nt;
    beta[j] = {0.0, 0.0, t};
    delta[j] = {std::cos(t), std::sin(t), 0.0};
  }
  ParamPatch r = make_ruled(beta, delta, 0.0, 2.0 * M_PI, 0.5, 2.0, ns);
  ParamPatch h = make_helicoid(0.5, 2.0, 0.0, 2.0 * M_PI, ns, nt);
  REQUIRE(r.pos.size() == h.pos.size());
  for (std::size_t k = 0; k < r.pos.size(); ++k) CHECK((r.pos[k] - h.pos[k]).norm() <= 1e-13);
}

TEST_CASE("ruled patch rejects a vanishing direction") {
  std::vector<Vec3> beta(5, Vec3::Zero()), delta(5, Vec3(1, 0, 0));
  delta[2] = Vec3::Zero();
  CHECK_THROWS_AS(make_ruled(beta, delta, 0.0, 1.0, 0.0, 1.0, 4), InvalidInputError);
}

TEST_CASE("curvature identity |A|^2 = -2K on minimal patches") {
  for (const ParamPatch& p : {make_helicoid(-2.0, 2.0, -3.0, 3.0, 40, 40),
                              make_catenoid(-1.2, 1.2, 0.0, 2.0 * M_PI, 40, 40),
                              catenoid_graph_patch(40)}) {
    GeomData geo = fundamental_forms(p);
    for (std::size_t k = 0; k < geo.H.size(); ++k) {
      REQUIRE(std::abs(geo.H[k]) <= 1e-8);
      CHECK(std::abs(geo.A2[k] + 2.0 * geo.K[k]) <= 1e-8 * (1.0 + std::abs(geo.K[k])));
    }
  }
}

TEST_CASE("|A|^2 = H^2 - 2K algebraically on a non-minimal patch") {
  GeomData geo = fundamental_forms(sphere_patch(24, 24));
  for (std::size_t k = 0; k < geo.H.size(); ++k) {
    double want = geo.H[k] * geo.H[k] - 2.0 * geo.K[k];
    CHECK(geo.A2[k] == doctest::Approx(want).epsilon(1e-9));
    CHECK(geo.H[k] * geo.H[k] - 4.0 * geo.K[k] >= -1e-9);
  }
}

TEST_CASE("difference mode mean curvature decays at second order") {
  std::vector<double> errs;
  for (int n : {32, 64, 128}) {
    ParamPatch p = make_helicoid(-1.0, 1.0, 0.0, 2.0 * M_PI, n, n, DerivMode::CentralDifference);
    errs.push_back(max_abs(fundamental_forms(p).H));
  }
  CHECK(std::log2(errs[0] / errs[1]) >= 1.9);
  CHECK(std::log2(errs[1] / errs[2]) >= 1.9);
}

TEST_CASE("area oracles") {
  // helicoid over s in [0,1], t in [0,2pi]: 2pi * int_0^1 sqrt(1+s^2) ds
  double want = M_PI * (std::sqrt(2.0) + std::asinh(1.0));
  ParamPatch h = make_helicoid(0.0, 1.0, 0.0, 2.0 * M_PI, 256, 256);
  CHECK(area(h) == doctest::Approx(want).epsilon(1e-5));

  Grid2 g{{0.0, 1.0, 16}, {0.0, 1.0, 16}};
  ParamPatch flat = make_graph_patch(g, std::vector<double>(g.count(), 0.0));
  CHECK(area(flat) == doctest::Approx(1.0).epsilon(1e-12));
  ParamPatch lifted = make_graph_patch(g, std::vector<double>(g.count(), 5.0));
  CHECK(area(lifted) == doctest::Approx(1.0).epsilon(1e-12));

  // flat annulus r in [1,2]
  Grid2 ag{{1.0, 2.0, 128}, {0.0, 2.0 * M_PI, 128}};
  ParamPatch annulus = make_parametric(
      ag,
      [](double s, double t) {
        ParamJet j;
        j.x = {s * std::cos(t), s * std::sin(t), 0.0};
        j.xs = {std::cos(t), std::sin(t), 0.0};
        j.xt = {-s * std::sin(t), s * std::cos(t), 0.0};
        j.xss = Vec3::Zero();
        j.xst = {-std::sin(t), std::cos(t), 0.0};
        j.xtt = {-s * std::cos(t), -s * std::sin(t), 0.0};
        return j;
      },
      DerivMode::Analytic);
  CHECK(area(annulus) == doctest::Approx(3.0 * M_PI).epsilon(1e-10));
}

TEST_CASE("rescale covariance of curvature and area") {
  ParamPatch p = make_helicoid(-1.0, 1.0, 0.0, M_PI, 24, 24);
  GeomData g1 = fundamental_forms(p);
  ParamPatch q = rescale(p, 2.0);
  GeomData g2 = fundamental_forms(q);
  for (std::size_t k = 0; k < g1.A2.size(); ++k) {
    CHECK(g2.A2[k] == doctest::Approx(g1.A2[k] / 4.0).epsilon(1e-12));
    CHECK(g2.H[k] == doctest::Approx(g1.H[k] / 2.0).epsilon(1e-10));
  }
  CHECK(area(q) == doctest::Approx(4.0 * area(p)).epsilon(1e-12));
  CHECK(area(rescale(p, 0.1)) == doctest::Approx(0.01 * area(p)).epsilon(1e-12));
  // |A|^2 at the axis: 2 for the unit helicoid, 0.5 after doubling
  CHECK(g1.A2[p.grid.idx(12, 7)] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(g2.A2[p.grid.idx(12, 7)] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK_THROWS_AS(rescale(p, 0.0), InvalidInputError);
  CHECK_THROWS_AS(rescale(p, -1.0), InvalidInputError);
}

TEST_CASE("first variation vanishes on minimal patches") {
  ParamPatch h = make_helicoid(-1.0, 1.0, -1.5, 1.5, 128, 128);
  VariationField phi = make_bump_variation(h, 0.0, 0.0, 0.6, 0.9);
  FirstVariation fv = first_variation(h, phi, 1e-4);
  CHECK(std::abs(fv.numeric_derivative) <= 1e-6);
  CHECK(std::abs(fv.integral_phi_H) <= 1e-6);

  Grid2 g{{-1.0, 1.0, 64}, {-1.0, 1.0, 64}};
  ParamPatch flat = make_graph_patch(g, std::vector<double>(g.count(), 0.0));
  VariationField phi2 = make_bump_variation(flat, 0.0, 0.0, 0.5, 0.5);
  FirstVariation fv2 = first_variation(flat, phi2, 1e-4);
  CHECK(std::abs(fv2.numeric_derivative) <= 1e-8);
  CHECK(std::abs(fv2.integral_phi_H) <= 1e-12);
}

TEST_CASE("first variation matches the phi H integral on a curved graph") {
  Grid2 g{{-1.0, 1.0, 96}, {-1.0, 1.0, 96}};
  ParamPatch p = make_graph_patch_analytic(g, [](double s, double) -> std::array<double, 6> {
    return {s * s, 2.0 * s, 0.0, 2.0, 0.0, 0.0};
  });
  double bumps[3][4] = {{0.0, 0.0, 0.5, 0.5}, {0.3, -0.2, 0.4, 0.5}, {-0.25, 0.3, 0.35, 0.45}};
  for (auto& b : bumps) {
    VariationField phi = make_bump_variation(p, b[0], b[1], b[2], b[3]);
    FirstVariation fv = first_variation(p, phi, 1e-5);
    REQUIRE(std::abs(fv.integral_phi_H) > 1e-3);
    CHECK(fv.numeric_derivative ==
          doctest::Approx(fv.integral_phi_H).epsilon(1e-3));
  }
}

TEST_CASE("Jacobi spectrum: flat square Dirichlet Laplacian") {
  Grid2 g{{0.0, 1.0, 64}, {0.0, 1.0, 64}};
  ParamPatch flat = make_graph_patch(g, std::vector<double>(g.count(), 0.0));
  std::vector<double> ev = jacobi_smallest_eigenvalues(flat, 3);
  REQUIRE(ev.size() == 3);
  CHECK(ev[0] == doctest::Approx(2.0 * M_PI * M_PI).epsilon(0.02));
  // next eigenvalue 5 pi^2, double
  CHECK(ev[1] == doctest::Approx(5.0 * M_PI * M_PI).epsilon(0.03));
  CHECK(ev[2] == doctest::Approx(5.0 * M_PI * M_PI).epsilon(0.03));
  for (double v : ev) CHECK(v > 0.0);
}

TEST_CASE("Jacobi spectrum: minimal graphs are stable") {
  std::vector<double> ev = jacobi_smallest_eigenvalues(catenoid_graph_patch(48), 1);
  CHECK(ev[0] >= -1e-4);
  ParamPatch h = make_helicoid(-0.8, 0.8, -0.8, 0.8, 48, 48);
  CHECK(jacobi_smallest_eigenvalues(h, 1)[0] >= -1e-4);
}

TEST_CASE("patch validation rejects degenerate input") {
  CHECK_THROWS_AS(make_helicoid(1.0, 1.0, 0.0, 1.0, 8, 8), InvalidInputError);
  CHECK_THROWS_AS(make_helicoid(0.0, 1.0, 0.0, 1.0, 2, 8, DerivMode::CentralDifference),
                  InvalidInputError);
  Grid2 g{{0.0, 1.0, 4}, {0.0, 1.0, 4}};
  CHECK_THROWS_AS(make_graph_patch(g, std::vector<double>(7, 0.0)), InvalidInputError);
  // pinched immersion: two parameter directions collapse onto one line
  ParamPatch bad = make_parametric(
      g,
      [](double s, double t) {
        ParamJet j;
        j.x = {s + t, 2.0 * (s + t), 0.0};
        j.xs = {1.0, 2.0, 0.0};
        j.xt = {1.0, 2.0, 0.0};
        j.xss = j.xst = j.xtt = Vec3::Zero();
        return j;
      },
      DerivMode::Analytic);
  CHECK_THROWS_AS(fundamental_forms(bad), HypothesisError);
}
