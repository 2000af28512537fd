#pragma once

#include <string>
#include <vector>

#include "mindisk/disk.hpp"

namespace mindisk {

// Ordered sequence of sampled surfaces with their scales a_i and enclosing
// radii R_i (increasing).
struct SurfaceSequence {
  std::vector<DiskSample> disks;
  std::vector<double> scales;
  std::vector<double> radii;
  void validate() const;
};

// Points where the sampled curvatures outrun an increasing threshold
// schedule: p qualifies iff for every index j >= burn_in the max of |A|^2
// over the radius-r ball around p meets threshold[j].
struct SingularPoint {
  Vec3 p = Vec3::Zero();
  std::vector<double> witness;  // max |A|^2 near p, per sequence index
};

struct SingularSet {
  std::vector<SingularPoint> points;
  bool curvature_unbounded = false;
  double probe_radius = 0.0;
  int burn_in = 0;
  std::vector<Vec3> positions() const;
};

std::vector<Vec3> probe_lattice(const Vec3& lo, const Vec3& hi, double step);

SingularSet blowup_set(const SurfaceSequence& seq, const std::vector<Vec3>& probes, double r,
                       const std::vector<double>& thresholds, int burn_in);

// (p3 - x3)^2 - delta^2 |p_h - x_h|^2: nonnegative iff p lies in the
// vertical double cone of slope delta with vertex x.
double cone_membership(const Vec3& p, const Vec3& x, double delta);

struct ConePairFailure {
  int z_index, p_index;
  double margin;
};

struct ConeLevel {
  double t;
  bool above, below, exempt;
};

struct ConeReport {
  double delta = 0.0, eps = 0.0, slack = 0.0;
  double min_margin = 0.0;  // over ordered pairs
  std::vector<ConePairFailure> failures;
  std::vector<ConeLevel> levels;
  double lipschitz_estimate = 0.0;  // max horizontal / |dx3| over pairs
  bool cone_ok = false;             // (i): every pairwise margin >= -slack
  bool accumulation_ok = false;     // (ii): above and below within eps
  bool pass = false;
};

// (i): every ordered pair of points sits in each other's delta-cone up to
// slack; (ii): every height reached by the set is accumulated from above and
// below within eps (extreme levels exempt, listed).
ConeReport cone_property_check(const std::vector<Vec3>& s, double delta, double eps, double slack);

struct LipschitzCurve {
  std::vector<double> t;
  std::vector<Vec3> centers;
  double lipschitz = 0.0;  // of the horizontal component between levels
  double max_cluster_diameter = 0.0;
};

// Bucket the set by height (gap > level_tol starts a new level); a level
// whose horizontal diameter exceeds max_diameter is a non-graph error.
LipschitzCurve lipschitz_parameterize(const std::vector<Vec3>& s, double level_tol,
                                      double max_diameter);

struct ComponentCensus {
  int id = 0, size = 0;
  int sheet_count = 0;
  bool graph_ok = true;          // per-cell sheet ordering and spread
  double mean_separation = 0.0;  // mean gap between consecutive sheets, 0 if < 2 sheets
  double max_sheet_spread = 0.0;
  double min_gap = 0.0;
};

struct TwoGraphCensus {
  int components = 0;
  std::vector<ComponentCensus> comps;
  bool all_multigraph = true;
  std::vector<std::string> notes;
};

// Remove the delta0-cone whose vertex is the curve point nearest the ball
// center, together with the exclusion ball around it, and classify what is
// left: component count, and per component a multi-valued-graph census over
// (log rho, theta, sheet) cells with sheet indices from unwrapping the
// angle along mesh edges.
TwoGraphCensus two_graph_decomposition(const DiskSample& d, const std::vector<Vec3>& curve,
                                       double delta0, double r_excl, int theta_bins = 16,
                                       double rho_ratio = 1.3);

struct OneSidedComponent {
  int id = 0, size = 0;
  bool touches_inner = false;
  double sup_a2_r02 = 0.0;
  bool curvature_ok = false;
  bool graph_ok = false;
};

struct OneSidedReport {
  double r0 = 0.0, eps = 0.0;
  bool topology_overridden = false;
  std::vector<OneSidedComponent> components;
  bool pass = false;  // every component meeting the inner ball passes both checks
};

// Half-space curvature check: the surface must lie in {x3 > 0} with boundary
// on the sphere of radius 2 r0 about the origin (hypothesis errors
// otherwise). Components of the part inside B_r0 that reach B_{eps r0} must
// have sup |A|^2 r0^2 <= 1 and be graphs over the horizontal plane.
OneSidedReport one_sided_check(const DiskSample& d, double r0, double eps,
                               bool allow_non_disk = false);

// Annular test box {rho_min <= rho <= rho_max, |x3| <= z_abs}, kept clear of
// a vertical tube around the singular curve.
struct AnnularBox {
  double rho_min = 0.0, rho_max = 0.0, z_abs = 0.0;
  double tube_radius = 0.0;
};

struct FoliationEntry {
  double scale = 0.0;
  double leaf_distance = 0.0;  // sup deviation from the local leaf height,
                               // over (component, sheet, angular cell) pieces
  double tilt = 0.0;           // sup triangle-normal angle from vertical
  int sheet_count = 0;
};

struct FoliationReport {
  std::vector<FoliationEntry> entries;
  bool distances_decreasing = false;
  bool tilts_decreasing = false;
};

FoliationReport foliation_convergence(const SurfaceSequence& seq, const AnnularBox& box);

}  // namespace mindisk
