#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "mindisk/structure.hpp"

using namespace mindisk;

namespace {

template <class Fn>
void check_hypothesis_code(Fn&& fn, const std::string& code) {
  try {
    fn();
    FAIL_CHECK("expected hypothesis error " << code);
  } catch (const HypothesisError& e) {
    CHECK(e.code == code);
  }
}

SurfaceSequence helicoid_sequence(const std::vector<double>& scales, int n_r, int n_phi) {
  SurfaceSequence seq;
  for (double a : scales) {
    seq.disks.push_back(helicoid_disk(a, 1.0, n_r, n_phi));
    seq.scales.push_back(a);
    seq.radii.push_back(1.0);
  }
  return seq;
}

std::vector<Vec3> axis_samples(double lo, double hi, int n) {
  std::vector<Vec3> s;
  for (int k = 0; k <= n; ++k) s.push_back({0.0, 0.0, lo + (hi - lo) * k / n});
  return s;
}

}  // namespace

TEST_CASE("probe lattice") {
  auto pts = probe_lattice({-0.3, -0.3, -0.5}, {0.3, 0.3, 0.5}, 0.1);
  CHECK(pts.size() == 7u * 7u * 11u);
  auto one = probe_lattice({0.0, 0.0, 0.0}, {0.0, 0.0, 0.0}, 0.1);
  CHECK(one.size() == 1);
  CHECK_THROWS_AS(probe_lattice({0, 0, 0}, {1, 1, 1}, 0.0), InvalidInputError);
}

TEST_CASE("blow-up set of a rescaled helicoid sequence") {
  // scales are powers of two, so the axis curvature 2/a^2 is exact
  SurfaceSequence seq = helicoid_sequence({0.5, 0.25, 0.125}, 60, 32);
  std::vector<Vec3> probes = {{0, 0, 0}, {0, 0, 0.2}, {0.4, 0, 0}, {0, 0.4, 0.1}};
  SingularSet s = blowup_set(seq, probes, 0.1, {1.0, 4.0, 16.0}, 0);

  // only the two axis probes survive all thresholds
  REQUIRE(s.points.size() == 2);
  CHECK(s.curvature_unbounded);
  for (const auto& q : s.points) {
    CHECK(std::hypot(q.p[0], q.p[1]) == 0.0);
    REQUIRE(q.witness.size() == 3);
    CHECK(q.witness[0] == 8.0);
    CHECK(q.witness[1] == 32.0);
    CHECK(q.witness[2] == 128.0);
  }
  CHECK(s.positions().size() == 2);

  // burn-in skips early indices: thresholds {9,31,127} reject index 0 only
  CHECK(blowup_set(seq, probes, 0.1, {9.0, 31.0, 127.0}, 0).points.empty());
  CHECK(blowup_set(seq, probes, 0.1, {9.0, 31.0, 127.0}, 1).points.size() == 2);
}

TEST_CASE("blow-up set of planes is empty") {
  SurfaceSequence seq;
  for (double a : {0.5, 0.25}) {
    seq.disks.push_back(plane_disk(1.0, 24, 16));
    seq.scales.push_back(a);
    seq.radii.push_back(1.0);
  }
  SingularSet s = blowup_set(seq, {{0, 0, 0}, {0.2, 0, 0}}, 0.1, {1.0, 4.0}, 0);
  CHECK(s.points.empty());
  CHECK_FALSE(s.curvature_unbounded);
}

TEST_CASE("blow-up set works on raw samples") {
  // no mesh validity is required of the sequence entries
  SurfaceSequence seq;
  for (double big : {10.0, 100.0}) {
    DiskSample d;
    d.pos = {Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(0, 1, 0)};
    d.a2 = {big, 0.0, 0.0};
    d.tris = {{0, 1, 2}};
    seq.disks.push_back(d);
    seq.scales.push_back(1.0 / big);
    seq.radii.push_back(1.0);
  }
  SingularSet s = blowup_set(seq, {{0, 0, 0}}, 0.1, {5.0, 50.0}, 0);
  REQUIRE(s.points.size() == 1);
  CHECK(s.points[0].witness[0] == 10.0);
  CHECK(s.points[0].witness[1] == 100.0);
}

TEST_CASE("blow-up set validation") {
  SurfaceSequence seq = helicoid_sequence({0.5, 0.25}, 8, 8);
  std::vector<Vec3> p = {{0, 0, 0}};
  CHECK_THROWS_AS(blowup_set(seq, {}, 0.1, {1.0, 2.0}, 0), InvalidInputError);
  CHECK_THROWS_AS(blowup_set(seq, p, 0.0, {1.0, 2.0}, 0), InvalidInputError);
  CHECK_THROWS_AS(blowup_set(seq, p, 0.1, {1.0}, 0), InvalidInputError);
  CHECK_THROWS_AS(blowup_set(seq, p, 0.1, {2.0, 2.0}, 0), InvalidInputError);
  CHECK_THROWS_AS(blowup_set(seq, p, 0.1, {1.0, 2.0}, 2), InvalidInputError);
  SurfaceSequence bad = seq;
  bad.radii = {1.0, 0.5};
  CHECK_THROWS_AS(bad.validate(), InvalidInputError);
  bad.radii = {1.0, 2.0};
  bad.scales = {0.5, 0.0};
  CHECK_THROWS_AS(bad.validate(), InvalidInputError);
}

TEST_CASE("cone membership") {
  CHECK(cone_membership({0, 0, 1}, {0, 0, 0}, 1.0) == 1.0);
  CHECK(cone_membership({1, 0, 1}, {0, 0, 0}, 2.0) == -3.0);
  CHECK(cone_membership({0.3, -0.4, 0.7}, {0.3, -0.4, 0.7}, 1.0) == 0.0);
  CHECK_THROWS_AS(cone_membership({0, 0, 1}, {0, 0, 0}, 0.0), InvalidInputError);
  CHECK_THROWS_AS(cone_membership({0, 0, 1}, {0, 0, 0}, -1.0), InvalidInputError);
}

TEST_CASE("cone property of an axis segment") {
  std::vector<Vec3> s = axis_samples(0.0, 1.0, 100);
  ConeReport rep = cone_property_check(s, 1.0, 0.02, 0.0);
  CHECK(rep.pass);
  CHECK(rep.cone_ok);
  CHECK(rep.accumulation_ok);
  CHECK(rep.failures.empty());
  CHECK(rep.lipschitz_estimate == 0.0);
  CHECK(rep.min_margin == doctest::Approx(1e-4).epsilon(1e-12));

  // extreme levels are exempt from two-sided accumulation, interior ones are not
  int exempt = 0;
  for (const auto& lv : rep.levels) exempt += lv.exempt ? 1 : 0;
  CHECK(exempt == 2);

  // vertical translation leaves every number in place up to rounding
  std::vector<Vec3> t = s;
  for (auto& q : t) q[2] += 5.0;
  ConeReport rt = cone_property_check(t, 1.0, 0.02, 0.0);
  CHECK(rt.pass);
  CHECK(rt.min_margin == doctest::Approx(rep.min_margin).epsilon(1e-9));

  // scaling positions by 1/2 scales the quadratic margins by 1/4
  std::vector<Vec3> h = s;
  for (auto& q : h) q *= 0.5;
  ConeReport rh = cone_property_check(h, 1.0, 0.01, 0.0);
  CHECK(rh.pass);
  CHECK(rh.min_margin == doctest::Approx(0.25 * rep.min_margin).epsilon(1e-12));
}

TEST_CASE("cone property rejects a horizontal outlier") {
  std::vector<Vec3> s = axis_samples(0.0, 1.0, 100);
  s.push_back({1.0, 0.0, 0.5});
  ConeReport rep = cone_property_check(s, 1.0, 0.02, 0.0);
  CHECK_FALSE(rep.pass);
  CHECK_FALSE(rep.cone_ok);
  CHECK_FALSE(rep.failures.empty());
  double worst = 0.0;
  for (const auto& f : rep.failures) worst = std::min(worst, f.margin);
  CHECK(worst == doctest::Approx(-1.0).epsilon(1e-12));  // dz = 0, dh = 1
  CHECK(rep.lipschitz_estimate >= 99.0);                  // ~ 1 / 0.01 against a neighbor

  CHECK_THROWS_AS(cone_property_check({}, 1.0, 0.1, 0.0), InvalidInputError);
  CHECK_THROWS_AS(cone_property_check(s, 0.0, 0.1, 0.0), InvalidInputError);
  CHECK_THROWS_AS(cone_property_check(s, 1.0, 0.0, 0.0), InvalidInputError);
  CHECK_THROWS_AS(cone_property_check(s, 1.0, 0.1, -1.0), InvalidInputError);
}

TEST_CASE("lipschitz parameterization") {
  std::vector<Vec3> axis = axis_samples(-0.5, 0.5, 50);
  LipschitzCurve c = lipschitz_parameterize(axis, 0.005, 0.1);
  CHECK(c.lipschitz == 0.0);
  CHECK(c.max_cluster_diameter == 0.0);
  CHECK(c.t.size() == 51);
  for (const auto& p : c.centers) CHECK(std::hypot(p[0], p[1]) == 0.0);
  CHECK(std::is_sorted(c.t.begin(), c.t.end()));

  // a tilted line reports its slope
  std::vector<Vec3> tilted;
  for (int k = 0; k <= 50; ++k) tilted.push_back({0.3 * 0.01 * k, 0.0, 0.01 * k});
  LipschitzCurve ct = lipschitz_parameterize(tilted, 0.005, 0.1);
  CHECK(ct.lipschitz == doctest::Approx(0.3).epsilon(1e-9));

  // two points at one level average into a cluster center
  std::vector<Vec3> pair = {{-0.01, 0.0, 0.0}, {0.01, 0.0, 0.0}, {0.0, 0.0, 0.1}};
  LipschitzCurve cp = lipschitz_parameterize(pair, 0.005, 0.1);
  CHECK(cp.t.size() == 2);
  CHECK(cp.centers[0][0] == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(cp.max_cluster_diameter == doctest::Approx(0.02).epsilon(1e-12));

  // a wide level is not a graph over the vertical axis
  std::vector<Vec3> split = {{0, 0, 0}, {1, 0, 0}, {0, 0, 0.1}, {1, 0, 0.1}};
  check_hypothesis_code([&] { lipschitz_parameterize(split, 0.01, 0.5); }, "non-graph");

  CHECK_THROWS_AS(lipschitz_parameterize({}, 0.01, 0.5), InvalidInputError);
  CHECK_THROWS_AS(lipschitz_parameterize(axis, 0.0, 0.5), InvalidInputError);
  CHECK_THROWS_AS(lipschitz_parameterize(axis, 0.01, 0.0), InvalidInputError);
}

TEST_CASE("two-graph decomposition of a helicoid") {
  DiskSample d = helicoid_disk(0.05, 1.0, 60, 64);
  std::vector<Vec3> curve = axis_samples(-0.5, 0.5, 20);
  TwoGraphCensus c = two_graph_decomposition(d, curve, 1.0, 0.1);

  // removing the cone about the axis splits the helicoid into its two wings,
  // each a multi-valued graph with sheets 2 pi a apart
  CHECK(c.components == 2);
  CHECK(c.all_multigraph);
  REQUIRE(c.comps.size() == 2);
  for (const auto& cc : c.comps) {
    CHECK(cc.size > 0);
    CHECK(cc.sheet_count >= 2);
    CHECK(cc.graph_ok);
    CHECK(cc.mean_separation == doctest::Approx(2.0 * M_PI * 0.05).epsilon(0.05));
    CHECK(cc.min_gap > 0.0);
    CHECK(cc.max_sheet_spread < cc.min_gap);
  }

  // the census is stable under refinement of the angular bins
  TwoGraphCensus c2 = two_graph_decomposition(d, curve, 1.0, 0.1, 32, 1.2);
  CHECK(c2.components == 2);
  CHECK(c2.all_multigraph);
  CHECK(c2.comps[0].mean_separation == doctest::Approx(2.0 * M_PI * 0.05).epsilon(0.05));
}

TEST_CASE("two-graph decomposition of a plane") {
  DiskSample d = plane_disk(1.0, 24, 32);
  // one curve sample lies outside the removed cone: it is reported, and the
  // apex is still the sample nearest the ball center
  std::vector<Vec3> curve = {{0.0, 0.0, 0.0}, {0.5, 0.0, 0.0}};
  TwoGraphCensus c = two_graph_decomposition(d, curve, 1.0, 0.1);
  CHECK(c.components == 1);
  CHECK(c.notes.size() == 1);
  CHECK(c.comps[0].size > 0);

  CHECK_THROWS_AS(two_graph_decomposition(d, {}, 1.0, 0.1), InvalidInputError);
  CHECK_THROWS_AS(two_graph_decomposition(d, curve, 0.0, 0.1), InvalidInputError);
  CHECK_THROWS_AS(two_graph_decomposition(d, curve, 1.0, -0.1), InvalidInputError);
  CHECK_THROWS_AS(two_graph_decomposition(d, curve, 1.0, 0.1, 3), InvalidInputError);
  CHECK_THROWS_AS(two_graph_decomposition(d, curve, 1.0, 0.1, 16, 1.0), InvalidInputError);
}

TEST_CASE("one-sided check accepts a low-curvature graph") {
  DiskSample d = capped_graph_disk(1.0, 0.3, 0.02, 48, 96);
  OneSidedReport rep = one_sided_check(d, 1.0, 0.5);
  CHECK(rep.pass);
  CHECK_FALSE(rep.topology_overridden);
  REQUIRE(rep.components.size() == 1);
  CHECK(rep.components[0].touches_inner);
  CHECK(rep.components[0].curvature_ok);
  CHECK(rep.components[0].graph_ok);
  CHECK(rep.components[0].sup_a2_r02 < 0.01);

  // the verdict and the dimensionless sup are scale invariant
  OneSidedReport r3 = one_sided_check(rescale_disk(d, 3.0), 3.0, 0.5);
  CHECK(r3.pass);
  CHECK(r3.components[0].sup_a2_r02 ==
        doctest::Approx(rep.components[0].sup_a2_r02).epsilon(1e-12));
}

TEST_CASE("one-sided check rejects the catenoid band") {
  // an annulus hugging the plane from one side concentrates curvature at the
  // neck: sup |A|^2 r0^2 ~ 2 r0^2 / a^2 >> 1
  DiskSample d = catenoid_band(0.02, 2.0, 96, 192);
  CHECK_THROWS_AS(one_sided_check(d, 1.0, 0.5), HypothesisError);  // not a disk
  OneSidedReport rep = one_sided_check(d, 1.0, 0.5, true);
  CHECK(rep.topology_overridden);
  CHECK_FALSE(rep.pass);
  REQUIRE(rep.components.size() == 1);
  CHECK(rep.components[0].touches_inner);
  CHECK_FALSE(rep.components[0].curvature_ok);
  CHECK(rep.components[0].sup_a2_r02 == doctest::Approx(2.0 / (0.02 * 0.02)).epsilon(0.01));
}

TEST_CASE("one-sided hypothesis errors") {
  check_hypothesis_code([] { one_sided_check(plane_disk(1.0, 16, 16), 0.5, 0.5); }, "half-space");
  DiskSample d = capped_graph_disk(1.0, 0.3, 0.02, 32, 64);
  DiskSample moved = d;
  moved.ball_center = Vec3(0.05, 0.0, 0.0);
  check_hypothesis_code([&] { one_sided_check(moved, 1.0, 0.5); }, "ball-not-centered");
  check_hypothesis_code([&] { one_sided_check(d, 0.9, 0.5); }, "boundary-radius");
  CHECK_THROWS_AS(one_sided_check(d, -1.0, 0.5), InvalidInputError);
  CHECK_THROWS_AS(one_sided_check(d, 1.0, 1.5), InvalidInputError);
}

TEST_CASE("foliation of a helicoid sequence flattens") {
  // mesh the angular direction finely enough that triangle normals resolve
  // the true tilt of the sheets
  SurfaceSequence seq;
  for (double a : {0.16, 0.08, 0.04}) {
    int np = static_cast<int>(std::ceil(2.0 * M_PI * (1.0 / a) / 0.12));
    np = ((np + 3) / 4) * 4;
    seq.disks.push_back(helicoid_disk(a, 1.0, 96, std::max(64, np)));
    seq.scales.push_back(a);
    seq.radii.push_back(1.0);
  }
  AnnularBox box{0.5, 1.0, 0.5, 0.3};
  FoliationReport rep = foliation_convergence(seq, box);
  REQUIRE(rep.entries.size() == 3);
  CHECK(rep.distances_decreasing);
  CHECK(rep.tilts_decreasing);
  for (const auto& e : rep.entries) {
    CHECK(e.leaf_distance > 0.0);
    CHECK(e.leaf_distance <= M_PI * e.scale);
    // sheet tilt of the helicoid at radius >= 1/2 is atan(2a) plus a small
    // mesh excess
    CHECK(e.tilt <= std::atan(2.0 * e.scale) + 0.01);
  }
  CHECK(rep.entries[2].sheet_count > rep.entries[0].sheet_count);
}

TEST_CASE("foliation of planes is exact") {
  SurfaceSequence seq;
  for (double a : {0.2, 0.1}) {
    seq.disks.push_back(plane_disk(2.0, 48, 64));
    seq.scales.push_back(a);
    seq.radii.push_back(2.0);
  }
  FoliationReport rep = foliation_convergence(seq, AnnularBox{0.5, 1.0, 0.5, 0.3});
  REQUIRE(rep.entries.size() == 2);
  for (const auto& e : rep.entries) {
    CHECK(e.leaf_distance == 0.0);
    CHECK(e.tilt == 0.0);
    CHECK(e.sheet_count == 1);
  }
  // zero does not strictly decrease
  CHECK_FALSE(rep.distances_decreasing);
  CHECK_FALSE(rep.tilts_decreasing);
}

TEST_CASE("foliation counts closed bands once") {
  // the catenoid meets the box in two closed single-valued bands; the angle
  // unwrapping splits each at a seam, which must not inflate the count
  SurfaceSequence seq;
  for (double a : {0.04, 0.02}) {
    seq.disks.push_back(catenoid_band(a, 2.0, 96, 192));
    seq.scales.push_back(a);
    seq.radii.push_back(2.0);
  }
  FoliationReport rep = foliation_convergence(seq, AnnularBox{0.5, 1.0, 0.5, 0.3});
  REQUIRE(rep.entries.size() == 2);
  CHECK(rep.entries[0].sheet_count == 2);
  CHECK(rep.entries[1].sheet_count == 2);
  CHECK(rep.entries[1].leaf_distance < rep.entries[0].leaf_distance);
}

TEST_CASE("foliation box validation") {
  SurfaceSequence seq = helicoid_sequence({0.2}, 16, 16);
  CHECK_THROWS_AS(foliation_convergence(seq, AnnularBox{0.0, 1.0, 0.5, 0.0}),
                  InvalidInputError);
  CHECK_THROWS_AS(foliation_convergence(seq, AnnularBox{1.0, 0.5, 0.5, 0.0}),
                  InvalidInputError);
  // the box may not meet the vertical tube around the singular curve
  CHECK_THROWS_AS(foliation_convergence(seq, AnnularBox{0.5, 1.0, 0.5, 0.5}),
                  InvalidInputError);
}
