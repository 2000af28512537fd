#include "mindisk/blowup.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace mindisk {

namespace {

double ball_radius_of(const DiskSample& d, int v) { return (d.pos[v] - d.ball_center).norm(); }

double f_value(const DiskSample& d, int v) {
  double slack = d.r0 - ball_radius_of(d, v);
  return slack * slack * d.a2[v];
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

}  // namespace

PairReport verify_pair(const DiskSample& d, const BlowUpPair& pair) {
  check_mesh(d, false);
  if (pair.y_index < 0 || pair.y_index >= static_cast<int>(d.pos.size()))
    throw InvalidInputError("pair: y index out of range");
  if (!(pair.s > 0.0) || !(pair.C > 0.0) || !(pair.ball_multiple >= 1.0))
    throw InvalidInputError("pair: need s > 0, C > 0, multiple >= 1");

  PairReport rep;
  rep.pair = pair;
  rep.y_position = d.pos[pair.y_index];
  double four_c2 = 4.0 * pair.C * pair.C;
  double radius = pair.ball_multiple * pair.s;

  std::vector<double> dist;
  if (pair.ball_mode == BallMode::Intrinsic) {
    dist = edge_distances_from(d, pair.y_index);
    rep.warnings.push_back(
        "intrinsic distances use the edge graph, which overestimates geodesics; "
        "the checked ball is a subset of the true one");
    auto bdry = boundary_vertex_mask(d);
    for (std::size_t v = 0; v < d.pos.size(); ++v)
      if (dist[v] <= radius && bdry[v])
        throw HypothesisError("ball-escape", "intrinsic ball of radius " + fmt(radius) +
                                                 " reaches the mesh boundary");
  } else {
    dist.resize(d.pos.size());
    for (std::size_t v = 0; v < d.pos.size(); ++v)
      dist[v] = (d.pos[v] - d.pos[pair.y_index]).norm();
  }

  rep.sup_a2_ball = 0.0;
  for (std::size_t v = 0; v < d.pos.size(); ++v)
    if (dist[v] <= radius) rep.sup_a2_ball = std::max(rep.sup_a2_ball, d.a2[v]);

  double rel = std::abs(d.a2[pair.y_index] * pair.s * pair.s - pair.C * pair.C);
  if (rel > 1e-10 * pair.C * pair.C)
    rep.warnings.push_back("pair scale does not satisfy |A|(y) s = C (off by " +
                           fmt(rel / (pair.C * pair.C)) + " relative)");

  rep.F_center = f_value(d, d.center_index);
  rep.F_max = f_value(d, pair.y_index);
  rep.margins.sup_bound = 1.0 - rep.sup_a2_ball * pair.s * pair.s / four_c2;
  rep.margins.half_distance = (d.r0 - ball_radius_of(d, pair.y_index)) / (2.0 * pair.s) - 1.0;
  rep.margins.center_F = rep.F_center / four_c2 - 1.0;

  if (rep.margins.sup_bound < 0.0)
    rep.warnings.push_back("sup bound margin negative: " + fmt(rep.margins.sup_bound));
  if (pair.ball_mode == BallMode::Extrinsic && rep.margins.half_distance < 0.0)
    rep.warnings.push_back("half-distance margin negative: " + fmt(rep.margins.half_distance));
  return rep;
}

std::pair<BlowUpPair, PairReport> find_blowup_pair(const DiskSample& d, double C, BallMode mode,
                                                   double ball_multiple) {
  check_mesh(d, false);
  if (!(C > 0.0) || !std::isfinite(C)) throw InvalidInputError("blow up: C must be positive");
  if (!(ball_multiple >= 1.0)) throw InvalidInputError("blow up: ball multiple must be >= 1");

  double four_c2 = 4.0 * C * C;
  double center_ratio = d.a2[d.center_index] * d.r0 * d.r0 / four_c2;
  if (center_ratio < 1.0)
    throw HypothesisError("curvature-too-small", "|A|^2(x) r0^2 / (4 C^2) = " + fmt(center_ratio) +
                                                     " < 1; no blow up pair is forced");

  int y = 0;
  double best = -1.0;
  for (std::size_t v = 0; v < d.pos.size(); ++v) {
    double f = f_value(d, static_cast<int>(v));
    if (f > best) {
      best = f;
      y = static_cast<int>(v);
    }
  }

  BlowUpPair pair;
  pair.y_index = y;
  pair.s = C / std::sqrt(d.a2[y]);
  pair.C = C;
  pair.ball_mode = mode;
  pair.ball_multiple = ball_multiple;

  PairReport rep = verify_pair(d, pair);
  auto bdry = boundary_vertex_mask(d);
  for (std::size_t v = 0; v < d.pos.size(); ++v)
    if (bdry[v]) rep.F_boundary_max = std::max(rep.F_boundary_max, f_value(d, static_cast<int>(v)));
  if (rep.F_boundary_max > 1e-8 * std::max(rep.F_max, 1.0))
    rep.warnings.push_back("F does not vanish on the boundary (max " + fmt(rep.F_boundary_max) +
                           ")");
  if (rep.F_center < four_c2)
    rep.warnings.push_back("F at the center fell below 4C^2 (center vertex off the ball center)");
  return {pair, rep};
}

InitialSeparation initial_separation_check(const DiskSample& d, const BlowUpPair& pair,
                                           const MultiGraph& g,
                                           std::optional<std::pair<double, double>> window) {
  if (pair.y_index < 0 || pair.y_index >= static_cast<int>(d.pos.size()))
    throw InvalidInputError("pair: y index out of range");
  if (!(pair.s > 0.0)) throw InvalidInputError("pair: s must be positive");
  if (std::abs(g.r_in - pair.s) > 1e-9 * pair.s)
    throw HypothesisError("radius-mismatch", "graph starts at " + fmt(g.r_in) +
                                                 " but the pair scale is " + fmt(pair.s));

  SeparationProfile prof = separation(g);
  InitialSeparation out;
  out.inner_radius = g.r_in;
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (int j = 0; j <= prof.grid.nt(); ++j) {
    double ratio = std::abs(prof.w[prof.grid.idx(0, j)]) / pair.s;
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  out.min_ratio = lo;
  out.max_ratio = hi;
  if (window) out.window_ok = lo >= window->first && hi <= window->second;
  return out;
}

}  // namespace mindisk
