#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mindisk/disk.hpp"
#include "mindisk/multigraph.hpp"

namespace mindisk {

enum class BallMode { Extrinsic, Intrinsic };

// (y, s) with |A|(y) * s = C and the curvature of the m*s ball around y
// dominated by 4 C^2 / s^2.
struct BlowUpPair {
  int y_index = -1;
  double s = 0.0;
  double C = 0.0;
  BallMode ball_mode = BallMode::Extrinsic;
  double ball_multiple = 1.0;
};

struct PairMargins {
  double sup_bound = 0.0;      // 1 - sup|A|^2 s^2 / (4C^2) over the ball
  double half_distance = 0.0;  // (r0 - r(y)) / (2s) - 1
  double center_F = 0.0;       // F(x) / (4C^2) - 1
};

struct PairReport {
  BlowUpPair pair;
  Vec3 y_position = Vec3::Zero();
  double F_center = 0.0;
  double F_max = 0.0;
  double F_boundary_max = 0.0;
  double sup_a2_ball = 0.0;
  PairMargins margins;
  std::vector<std::string> warnings;
};

// Maximize F(z) = (r0 - r(z))^2 |A|^2(z) over the vertices (ties broken by
// lowest index) and return the pair y = argmax, s = C / |A|(y). Requires the
// center curvature |A|^2(x) >= 4 C^2 / r0^2; below that the construction has
// no content and a curvature-too-small hypothesis error reports the ratio.
std::pair<BlowUpPair, PairReport> find_blowup_pair(const DiskSample& d, double C,
                                                   BallMode mode = BallMode::Extrinsic,
                                                   double ball_multiple = 1.0);

// Re-check an existing pair: sup bound over the m*s ball (extrinsic balls use
// straight-line distance, intrinsic ones shortest paths over mesh edges,
// which overestimate geodesics, so the checked ball is a subset of the true
// one - recorded as a warning). Negative margins become warnings, not
// errors; an intrinsic ball reaching the mesh boundary is a ball-escape
// hypothesis error.
PairReport verify_pair(const DiskSample& d, const BlowUpPair& pair);

struct InitialSeparation {
  double inner_radius = 0.0;
  double min_ratio = 0.0;  // |w| / s over the inner circle
  double max_ratio = 0.0;
  bool window_ok = true;   // meaningful when a [c1, c2] window was supplied
};

// Ratio of the multi-graph's separation at its inner radius to the pair
// scale s. The graph must start at radius s (mismatch error otherwise); a
// supplied window [c1, c2] turns into the window_ok flag.
InitialSeparation initial_separation_check(const DiskSample& d, const BlowUpPair& pair,
                                           const MultiGraph& g,
                                           std::optional<std::pair<double, double>> window = {});

}  // namespace mindisk
