#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "mindisk/multigraph.hpp"

using namespace mindisk;

TEST_CASE("helicoid sheet heights are node-exact") {
  MultiGraph g1 = helicoid_sheet(1, 1.0, 5.0, 4, 8, 64);
  for (int i = 0; i <= g1.grid.ns(); ++i)
    for (int j = 0; j <= g1.grid.nt(); ++j)
      CHECK(g1.u[g1.grid.idx(i, j)] == g1.theta(j));
  // sheet 1 at (1, 0) -> 0; sheet 2 at (1, 0) -> pi
  int j0 = g1.grid.nt() / 2;
  CHECK(g1.theta(j0) == 0.0);
  CHECK(g1.u[g1.grid.idx(0, j0)] == 0.0);
  MultiGraph g2 = helicoid_sheet(2, 1.0, 5.0, 4, 8, 64);
  CHECK(g2.u[g2.grid.idx(0, j0)] == M_PI);
  CHECK_THROWS_AS(helicoid_sheet(3, 1.0, 5.0, 4, 8, 64), InvalidInputError);
}

TEST_CASE("separation of the helicoid sheet is 2 pi") {
  MultiGraph g = helicoid_sheet(1, 1.0, 8.0, 4, 16, 128);
  SeparationProfile p = separation(g);
  REQUIRE(p.grid.nt() == 128 - 128 / 4);
  double dev = 0.0;
  for (double w : p.w) dev = std::max(dev, std::abs(w - 2.0 * M_PI));
  CHECK(dev <= 1e-13);
  CHECK(p.sign == 1);
  CHECK(p.min_abs_w > 6.28);
  // deck transformation: u(rho, theta + 2 pi) = u(rho, theta) + 2 pi
  int per_turn = g.nodes_per_turn();
  for (int i = 0; i <= g.grid.ns(); i += 5)
    for (int j = 0; j + per_turn <= g.grid.nt(); j += 7)
      CHECK(std::abs(g.u[g.grid.idx(i, j + per_turn)] - g.u[g.grid.idx(i, j)] - 2.0 * M_PI) <=
            1e-13);
}

TEST_CASE("separation is exact and translation invariant") {
  auto height = [](double rho, double theta) { return std::sin(theta) * std::log(rho); };
  MultiGraph g = make_multigraph(1.0, 4.0, 3, 10, 48, height);
  MultiGraph shifted = make_multigraph(1.0, 4.0, 3, 10, 48, [&](double rho, double theta) {
    return height(rho, theta) + 17.25;
  });
  SeparationProfile p = separation(g);
  SeparationProfile q = separation(shifted);
  for (int i = 0; i <= p.grid.ns(); ++i)
    for (int j = 0; j <= p.grid.nt(); ++j) {
      int joff = g.nodes_per_turn();
      double want = g.u[g.grid.idx(i, j + joff)] - g.u[g.grid.idx(i, j)];
      CHECK(p.w[p.grid.idx(i, j)] == want);
      CHECK(std::abs(q.w[q.grid.idx(i, j)] - p.w[p.grid.idx(i, j)]) <= 1e-12);
    }
}

TEST_CASE("separation needs at least two sheets") {
  MultiGraph g = helicoid_sheet(1, 1.0, 2.0, 1, 8, 16);
  CHECK_THROWS_AS(separation(g), HypothesisError);
  try {
    separation(g);
  } catch (const HypothesisError& e) {
    CHECK(e.code == "no-overlap");
  }
}

TEST_CASE("embeddedness and handedness") {
  MultiGraph right = helicoid_sheet(1, 1.0, 6.0, 3, 8, 48);
  Embeddedness e = is_embedded(right);
  CHECK(e.embedded);
  CHECK(e.min_abs_w == doctest::Approx(2.0 * M_PI).epsilon(1e-14));
  CHECK(handedness(right) == Handedness::Right);

  MultiGraph left = make_multigraph(1.0, 6.0, 3, 8, 48, [](double, double t) { return -t; });
  CHECK(handedness(left) == Handedness::Left);

  MultiGraph lifted =
      make_multigraph(1.0, 6.0, 3, 8, 48, [](double, double t) { return t + 1000.0; });
  CHECK(handedness(lifted) == Handedness::Right);

  MultiGraph flat = make_multigraph(1.0, 6.0, 3, 8, 48, [](double, double) { return 0.0; });
  Embeddedness ef = is_embedded(flat);
  CHECK_FALSE(ef.embedded);
  CHECK(ef.min_abs_w == 0.0);
  CHECK_THROWS_AS(handedness(flat), HypothesisError);
}

TEST_CASE("nonproper graph stays inside the slab") {
  MultiGraph g = nonproper_graph(2.0, 100.0, 6, 24, 96);
  double m = 0.0;
  for (double u : g.u) m = std::max(m, std::abs(u));
  CHECK(m < M_PI / 2.0);
  Embeddedness e = is_embedded(g);
  CHECK(e.embedded);
  CHECK(e.min_abs_w > 0.0);
  CHECK(nonproper_graph(std::exp(1.0), 100.0, 2, 8, 16).u[8] ==
        doctest::Approx(0.0).epsilon(1e-15));
  CHECK_THROWS_AS(nonproper_graph(1.0, 10.0, 2, 8, 16), InvalidInputError);
  CHECK_THROWS_AS(nonproper_graph(0.5, 10.0, 2, 8, 16), InvalidInputError);
}

TEST_CASE("nonproper separation at rho = e^{2 pi} is pi/4") {
  // sigma grid [pi, 3 pi] with even count puts e^{2 pi} on a node
  MultiGraph g = nonproper_graph(std::exp(M_PI), std::exp(3.0 * M_PI), 2, 16, 32);
  SeparationProfile p = separation(g);
  int i_mid = 8;
  REQUIRE(p.rho(i_mid) == doctest::Approx(std::exp(2.0 * M_PI)).epsilon(1e-13));
  int j0 = -1;
  for (int j = 0; j <= p.grid.nt(); ++j)
    if (std::abs(p.theta(j)) < 1e-12) j0 = j;
  REQUIRE(j0 >= 0);
  CHECK(p.w[p.grid.idx(i_mid, j0)] == doctest::Approx(M_PI / 4.0).epsilon(1e-12));
}

TEST_CASE("sublinear fit recovers an exact power law") {
  MultiGraph g = make_multigraph(1.0, std::exp(4.0), 2, 32, 16, [](double rho, double theta) {
    return std::sqrt(rho) * theta / (2.0 * M_PI);
  });
  FitReport fit = fit_sublinear_exponent(separation(g), 1.0);
  CHECK(fit.alpha_hat == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(fit.residual <= 1e-10);
  CHECK(fit.envelope_ok);
  CHECK(fit.kind == "sublinear");
}

TEST_CASE("sublinear fit of constant separation gives exponent 0") {
  MultiGraph g = helicoid_sheet(1, 1.0, 20.0, 2, 32, 16);
  FitReport fit = fit_sublinear_exponent(separation(g), 1.0);
  CHECK(fit.alpha_hat <= 1e-12);
}

TEST_CASE("log decay fit recovers an exact 1/log profile") {
  MultiGraph g = make_multigraph(std::exp(2.0), std::exp(30.0), 2, 64, 16,
                                 [](double rho, double theta) {
                                   return 3.0 / std::log(rho) * theta / (2.0 * M_PI);
                                 });
  FitReport fit = fit_log_decay(separation(g), 1.0);
  CHECK(fit.c_hat == doctest::Approx(3.0).epsilon(1e-6));
  CHECK(fit.logarithmic);
  CHECK(fit.kind == "log");
}

TEST_CASE("log decay fit on the nonproper graph approaches 2 pi") {
  MultiGraph g = nonproper_graph(std::exp(10.0), std::exp(40.0), 2, 64, 32);
  FitReport fit = fit_log_decay(separation(g), 1.0);
  CHECK(std::abs(fit.c_hat - 2.0 * M_PI) <= 0.05 * 2.0 * M_PI);
  CHECK(fit.logarithmic);
}

TEST_CASE("log decay fit flags constant separation as non-logarithmic") {
  MultiGraph g = helicoid_sheet(1, std::exp(1.0), std::exp(20.0), 2, 32, 16);
  FitReport fit = fit_log_decay(separation(g), 1.0);
  CHECK_FALSE(fit.logarithmic);
}

TEST_CASE("fit guards") {
  MultiGraph zero = make_multigraph(1.0, 10.0, 2, 16, 16, [](double, double) { return 0.0; });
  CHECK_THROWS_AS(fit_sublinear_exponent(separation(zero), 1.0), HypothesisError);
  MultiGraph g = helicoid_sheet(1, 1.0, 2.0, 2, 4, 16);
  CHECK_THROWS_AS(fit_sublinear_exponent(separation(g), 1.0), InvalidInputError);
  CHECK_THROWS_AS(fit_log_decay(separation(g), -1.0), InvalidInputError);
}

TEST_CASE("multigraph validation") {
  CHECK_THROWS_AS(make_multigraph(0.0, 2.0, 2, 8, 16, [](double, double) { return 0.0; }),
                  InvalidInputError);
  CHECK_THROWS_AS(make_multigraph(2.0, 1.0, 2, 8, 16, [](double, double) { return 0.0; }),
                  InvalidInputError);
  CHECK_THROWS_AS(make_multigraph(1.0, 2.0, 3, 8, 16, [](double, double) { return 0.0; }),
                  InvalidInputError);  // 16 % 3 != 0
  CHECK_THROWS_AS(make_multigraph(1.0, 2.0, 65, 8, 65 * 4, [](double, double) { return 0.0; }),
                  InvalidInputError);
}

TEST_CASE("embedding to 3-space") {
  MultiGraph g1 = helicoid_sheet(1, 0.5, 3.0, 3, 12, 48);
  MultiGraph g2 = helicoid_sheet(2, 0.5, 3.0, 3, 12, 48);
  for (const MultiGraph* g : {&g1, &g2}) {
    ParamPatch p = embed_to_r3(*g);
    for (int i = 0; i <= g->grid.ns(); ++i)
      for (int j = 0; j <= g->grid.nt(); ++j) {
        double rho = g->rho(i), th = g->theta(j);
        Vec3 x = p.pos[p.grid.idx(i, j)];
        CHECK((x - Vec3(rho * std::cos(th), rho * std::sin(th),
                        g->u[g->grid.idx(i, j)])).norm() <= 1e-13);
        // both sheets lie on the standard helicoid: sheet 1 at (s,t) = (rho, theta),
        // sheet 2 at (s,t) = (-rho, theta + pi)
        double s = g->u[g->grid.idx(i, j)] == th ? rho : -rho;
        double t = g->u[g->grid.idx(i, j)];
        Vec3 on_helicoid(s * std::cos(t), s * std::sin(t), t);
        CHECK((x - on_helicoid).norm() <= 1e-12);
      }
  }
  // vertical gaps along a column are partial sums of w, all nonzero
  SeparationProfile w = separation(g1);
  int per_turn = g1.nodes_per_turn();
  for (int i = 0; i <= g1.grid.ns(); i += 4)
    for (int j = 0; j + per_turn <= g1.grid.nt(); j += 5) {
      double gap = g1.u[g1.grid.idx(i, j + per_turn)] - g1.u[g1.grid.idx(i, j)];
      CHECK(gap == doctest::Approx(w.w[w.grid.idx(i, j)]));
      CHECK(std::abs(gap) > 0.0);
    }
}
