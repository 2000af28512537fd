#include "mindisk/structure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <queue>
#include <sstream>

namespace mindisk {

void SurfaceSequence::validate() const {
  if (disks.empty()) throw InvalidInputError("sequence: empty");
  if (scales.size() != disks.size() || radii.size() != disks.size())
    throw InvalidInputError("sequence: scales/radii must match the disk count");
  for (double a : scales)
    if (!(a > 0.0)) throw InvalidInputError("sequence: scales must be positive");
  for (std::size_t i = 1; i < radii.size(); ++i)
    if (!(radii[i] >= radii[i - 1])) throw InvalidInputError("sequence: radii must be increasing");
}

std::vector<Vec3> SingularSet::positions() const {
  std::vector<Vec3> out;
  out.reserve(points.size());
  for (const auto& q : points) out.push_back(q.p);
  return out;
}

std::vector<Vec3> probe_lattice(const Vec3& lo, const Vec3& hi, double step) {
  if (!(step > 0.0)) throw InvalidInputError("probe lattice: step must be positive");
  std::vector<Vec3> pts;
  auto count = [&](int k) {
    return static_cast<int>(std::floor((hi[k] - lo[k]) / step + 1e-9)) + 1;
  };
  int nx = count(0), ny = count(1), nz = count(2);
  if (nx < 1 || ny < 1 || nz < 1) throw InvalidInputError("probe lattice: empty box");
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < ny; ++j)
      for (int k = 0; k < nz; ++k)
        pts.push_back({lo[0] + i * step, lo[1] + j * step, lo[2] + k * step});
  return pts;
}

SingularSet blowup_set(const SurfaceSequence& seq, const std::vector<Vec3>& probes, double r,
                       const std::vector<double>& thresholds, int burn_in) {
  seq.validate();
  if (probes.empty()) throw InvalidInputError("blow-up set: no probe points");
  if (!(r > 0.0)) throw InvalidInputError("blow-up set: probe radius must be positive");
  if (thresholds.size() != seq.disks.size())
    throw InvalidInputError("blow-up set: one threshold per sequence entry");
  for (std::size_t j = 1; j < thresholds.size(); ++j)
    if (!(thresholds[j] > thresholds[j - 1]))
      throw InvalidInputError("blow-up set: thresholds must be strictly increasing");
  if (burn_in < 0 || burn_in >= static_cast<int>(seq.disks.size()))
    throw InvalidInputError("blow-up set: burn-in outside the sequence");

  std::size_t np = probes.size(), nd = seq.disks.size();
  std::vector<double> witness(np * nd, 0.0);
  double r2 = r * r;
  for (std::size_t j = 0; j < nd; ++j) {
    const DiskSample& d = seq.disks[j];
    for (std::size_t v = 0; v < d.pos.size(); ++v) {
      const Vec3& x = d.pos[v];
      for (std::size_t p = 0; p < np; ++p) {
        double dz = x[2] - probes[p][2];
        if (dz > r || dz < -r) continue;
        if ((x - probes[p]).squaredNorm() <= r2) {
          double& w = witness[p * nd + j];
          w = std::max(w, d.a2[v]);
        }
      }
    }
  }

  SingularSet s;
  s.probe_radius = r;
  s.burn_in = burn_in;
  for (std::size_t p = 0; p < np; ++p) {
    bool in = true;
    for (std::size_t j = burn_in; j < nd; ++j)
      if (witness[p * nd + j] < thresholds[j]) {
        in = false;
        break;
      }
    if (in) {
      SingularPoint q;
      q.p = probes[p];
      q.witness.assign(witness.begin() + p * nd, witness.begin() + (p + 1) * nd);
      s.points.push_back(std::move(q));
    }
  }
  s.curvature_unbounded = !s.points.empty();
  return s;
}

double cone_membership(const Vec3& p, const Vec3& x, double delta) {
  if (!(delta > 0.0)) throw InvalidInputError("cone: delta must be positive");
  double dz = p[2] - x[2];
  double dx = p[0] - x[0], dy = p[1] - x[1];
  return dz * dz - delta * delta * (dx * dx + dy * dy);
}

ConeReport cone_property_check(const std::vector<Vec3>& s, double delta, double eps,
                               double slack) {
  if (s.empty()) throw InvalidInputError("cone property: empty set");
  if (!(delta > 0.0) || !(eps > 0.0) || !(slack >= 0.0))
    throw InvalidInputError("cone property: need delta, eps > 0 and slack >= 0");
  ConeReport rep;
  rep.delta = delta;
  rep.eps = eps;
  rep.slack = slack;

  int n = static_cast<int>(s.size());
  double min_margin = std::numeric_limits<double>::infinity();
  for (int z = 0; z < n; ++z) {
    for (int p = 0; p < n; ++p) {
      if (p == z) continue;
      double m = cone_membership(s[p], s[z], delta);
      min_margin = std::min(min_margin, m);
      if (m < -slack) rep.failures.push_back({z, p, m});
      double dz3 = std::abs(s[p][2] - s[z][2]);
      double dh = std::hypot(s[p][0] - s[z][0], s[p][1] - s[z][1]);
      if (dz3 > 1e-14) rep.lipschitz_estimate = std::max(rep.lipschitz_estimate, dh / dz3);
    }
  }
  rep.min_margin = n < 2 ? 0.0 : min_margin;

  double tmin = s[0][2], tmax = s[0][2];
  for (const auto& q : s) {
    tmin = std::min(tmin, q[2]);
    tmax = std::max(tmax, q[2]);
  }
  double tol = 1e-9 * std::max(1.0, tmax - tmin);
  rep.accumulation_ok = true;
  for (const auto& q : s) {
    ConeLevel lv;
    lv.t = q[2];
    lv.exempt = q[2] >= tmax - tol || q[2] <= tmin + tol;
    lv.above = lv.below = false;
    for (const auto& w : s) {
      if (w[2] > q[2] && w[2] < q[2] + eps) lv.above = true;
      if (w[2] < q[2] && w[2] > q[2] - eps) lv.below = true;
    }
    if (!lv.exempt && !(lv.above && lv.below)) rep.accumulation_ok = false;
    rep.levels.push_back(lv);
  }
  rep.cone_ok = rep.failures.empty();
  rep.pass = rep.cone_ok && rep.accumulation_ok;
  return rep;
}

LipschitzCurve lipschitz_parameterize(const std::vector<Vec3>& s, double level_tol,
                                      double max_diameter) {
  if (s.empty()) throw InvalidInputError("parameterize: empty set");
  if (!(level_tol > 0.0) || !(max_diameter > 0.0))
    throw InvalidInputError("parameterize: tolerances must be positive");
  std::vector<int> order(s.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return s[a][2] != s[b][2] ? s[a][2] < s[b][2] : a < b;
  });

  LipschitzCurve out;
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && s[order[j + 1]][2] - s[order[j]][2] <= level_tol) ++j;
    Vec3 sum = Vec3::Zero();
    double diam = 0.0;
    for (std::size_t u = i; u <= j; ++u) {
      sum += s[order[u]];
      for (std::size_t v = i; v < u; ++v)
        diam = std::max(diam, std::hypot(s[order[u]][0] - s[order[v]][0],
                                         s[order[u]][1] - s[order[v]][1]));
    }
    Vec3 center = sum / static_cast<double>(j - i + 1);
    if (diam > max_diameter) {
      std::ostringstream os;
      os << "parameterize: level near t = " << center[2] << " splits into clusters of diameter "
         << diam;
      throw HypothesisError("non-graph", os.str());
    }
    out.max_cluster_diameter = std::max(out.max_cluster_diameter, diam);
    out.t.push_back(center[2]);
    out.centers.push_back(center);
    i = j + 1;
  }
  for (std::size_t k = 1; k < out.centers.size(); ++k) {
    double dh = std::hypot(out.centers[k][0] - out.centers[k - 1][0],
                           out.centers[k][1] - out.centers[k - 1][1]);
    double dt = out.t[k] - out.t[k - 1];
    if (dt > 0.0) out.lipschitz = std::max(out.lipschitz, dh / dt);
  }
  return out;
}

namespace {

// per-vertex component label, unwrapped angle about the vertical line
// through `center`, and sheet index (how many turns the unwrapped angle is
// offset from the principal value)
struct Unwrapped {
  std::vector<int> label;
  std::vector<double> theta;
  std::vector<int> sheet;
  int components = 0;
};

Unwrapped unwrap_angles(const DiskSample& d, const std::vector<bool>& keep, const Vec3& center) {
  int n = static_cast<int>(d.pos.size());
  auto edges = mesh_edges(d);
  std::vector<int> deg(n, 0);
  for (const auto& e : edges)
    if (keep[e.a] && keep[e.b]) {
      ++deg[e.a];
      ++deg[e.b];
    }
  std::vector<int> off(n + 1, 0);
  for (int v = 0; v < n; ++v) off[v + 1] = off[v] + deg[v];
  std::vector<int> nbr(off[n]);
  std::vector<int> fill = off;
  for (const auto& e : edges)
    if (keep[e.a] && keep[e.b]) {
      nbr[fill[e.a]++] = e.b;
      nbr[fill[e.b]++] = e.a;
    }

  std::vector<double> pv(n, 0.0);
  for (int v = 0; v < n; ++v)
    if (keep[v]) pv[v] = std::atan2(d.pos[v][1] - center[1], d.pos[v][0] - center[0]);

  Unwrapped u;
  u.label.assign(n, -1);
  u.theta.assign(n, 0.0);
  u.sheet.assign(n, 0);
  std::queue<int> q;
  for (int start = 0; start < n; ++start) {
    if (!keep[start] || u.label[start] >= 0) continue;
    u.label[start] = u.components;
    u.theta[start] = pv[start];
    q.push(start);
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int k = off[v]; k < off[v + 1]; ++k) {
        int w = nbr[k];
        if (u.label[w] >= 0) continue;
        u.label[w] = u.components;
        u.theta[w] = u.theta[v] + std::remainder(pv[w] - pv[v], 2.0 * M_PI);
        q.push(w);
      }
    }
    ++u.components;
  }
  for (int v = 0; v < n; ++v)
    if (u.label[v] >= 0)
      u.sheet[v] = static_cast<int>(std::lround((u.theta[v] - pv[v]) / (2.0 * M_PI)));
  return u;
}

struct CellAcc {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  double sum = 0.0;
  int cnt = 0;
  void add(double x) {
    lo = std::min(lo, x);
    hi = std::max(hi, x);
    sum += x;
    ++cnt;
  }
  double mean() const { return sum / cnt; }
};

}  // namespace

TwoGraphCensus two_graph_decomposition(const DiskSample& d, const std::vector<Vec3>& curve,
                                       double delta0, double r_excl, int theta_bins,
                                       double rho_ratio) {
  if (curve.empty()) throw InvalidInputError("decomposition: empty curve");
  if (!(delta0 > 0.0) || !(r_excl >= 0.0))
    throw InvalidInputError("decomposition: need delta0 > 0 and exclusion radius >= 0");
  if (theta_bins < 4 || !(rho_ratio > 1.0))
    throw InvalidInputError("decomposition: need >= 4 angular bins and rho ratio > 1");

  // cone vertex: the curve sample nearest the ball center (the paper removes
  // one cone from the singular point plus a small ball around it)
  Vec3 apex = curve[0];
  double best = (curve[0] - d.ball_center).norm();
  for (const auto& c : curve) {
    double t = (c - d.ball_center).norm();
    if (t < best) {
      best = t;
      apex = c;
    }
  }

  int n = static_cast<int>(d.pos.size());
  std::vector<bool> keep(n, false);
  for (int v = 0; v < n; ++v)
    keep[v] = cone_membership(d.pos[v], apex, delta0) < 0.0 &&
              (d.pos[v] - apex).norm() > r_excl;

  TwoGraphCensus census;
  int off_curve = 0;
  for (const auto& c : curve)
    if (cone_membership(c, apex, delta0) < 0.0 && (c - apex).norm() > r_excl) ++off_curve;
  if (off_curve > 0) {
    std::ostringstream os;
    os << off_curve << " curve samples fall outside the removed region";
    census.notes.push_back(os.str());
  }

  Unwrapped u = unwrap_angles(d, keep, apex);
  census.components = u.components;
  if (u.components == 0) return census;

  double rho_min = std::numeric_limits<double>::infinity();
  for (int v = 0; v < n; ++v)
    if (u.label[v] >= 0)
      rho_min = std::min(rho_min, std::hypot(d.pos[v][0] - apex[0], d.pos[v][1] - apex[1]));
  double tstep = 2.0 * M_PI / theta_bins, lr = std::log(rho_ratio);

  std::map<std::array<int, 4>, CellAcc> cells;  // (label, rho bin, theta bin, sheet)
  for (int v = 0; v < n; ++v) {
    if (u.label[v] < 0) continue;
    double rho = std::hypot(d.pos[v][0] - apex[0], d.pos[v][1] - apex[1]);
    int rb = static_cast<int>(std::floor(std::log(rho / rho_min) / lr));
    double pvv = std::remainder(u.theta[v] - 2.0 * M_PI * u.sheet[v], 2.0 * M_PI);
    int tb = std::clamp(static_cast<int>(std::floor((pvv + M_PI) / tstep)), 0, theta_bins - 1);
    cells[{u.label[v], rb, tb, u.sheet[v]}].add(d.pos[v][2]);
  }

  census.comps.assign(u.components, ComponentCensus{});
  for (int c = 0; c < u.components; ++c) {
    census.comps[c].id = c;
    census.comps[c].min_gap = std::numeric_limits<double>::infinity();
  }
  for (int v = 0; v < n; ++v)
    if (u.label[v] >= 0) ++census.comps[u.label[v]].size;

  std::map<std::pair<int, int>, bool> sheets_seen;
  std::vector<double> gap_sum(u.components, 0.0);
  std::vector<int> gap_cnt(u.components, 0);
  for (auto it = cells.begin(); it != cells.end(); ++it) {
    auto [label, rb, tb, sheet] = it->first;
    ComponentCensus& cc = census.comps[label];
    sheets_seen[{label, sheet}] = true;
    cc.max_sheet_spread = std::max(cc.max_sheet_spread, it->second.hi - it->second.lo);
    auto nx = std::next(it);
    if (nx != cells.end() && nx->first == std::array<int, 4>{label, rb, tb, sheet + 1}) {
      double gap = nx->second.mean() - it->second.mean();
      if (gap == 0.0) cc.graph_ok = false;
      double ag = std::abs(gap);
      cc.min_gap = std::min(cc.min_gap, ag);
      gap_sum[label] += ag;
      ++gap_cnt[label];
      // consecutive sheets may not interleave: both spreads must stay below
      // the gap between their means
      if (it->second.hi - it->second.lo >= ag || nx->second.hi - nx->second.lo >= ag)
        cc.graph_ok = false;
    }
  }
  for (const auto& [key, dummy] : sheets_seen) ++census.comps[key.first].sheet_count;
  for (int c = 0; c < u.components; ++c) {
    ComponentCensus& cc = census.comps[c];
    if (gap_cnt[c] > 0) cc.mean_separation = gap_sum[c] / gap_cnt[c];
    if (!std::isfinite(cc.min_gap)) cc.min_gap = 0.0;
    if (!cc.graph_ok) census.all_multigraph = false;
  }

  // sheet ordering must be consistent within each component: the same parity
  // of gap sign everywhere (checked over cell pairs above via nonzero gaps)
  return census;
}

OneSidedReport one_sided_check(const DiskSample& d, double r0, double eps, bool allow_non_disk) {
  if (!(r0 > 0.0) || !(eps > 0.0) || !(eps < 1.0))
    throw InvalidInputError("one-sided: need r0 > 0 and eps in (0,1)");
  for (std::size_t v = 0; v < d.pos.size(); ++v)
    if (!(d.pos[v][2] > 0.0))
      throw HypothesisError("half-space", "vertex " + std::to_string(v) + " has x3 <= 0");
  if (d.ball_center.norm() > 1e-12 * r0)
    throw HypothesisError("ball-not-centered", "enclosing ball is not centered at the origin");
  if (std::abs(d.r0 - 2.0 * r0) > 1e-9 * r0)
    throw HypothesisError("boundary-radius",
                          "boundary sphere radius is not twice the check radius");
  MeshChecks mc = check_mesh(d, !allow_non_disk);

  OneSidedReport rep;
  rep.r0 = r0;
  rep.eps = eps;
  rep.topology_overridden = allow_non_disk && !mc.is_disk;

  int n = static_cast<int>(d.pos.size());
  std::vector<bool> keep(n, false);
  for (int v = 0; v < n; ++v) keep[v] = d.pos[v].norm() <= r0;
  int ncomp = 0;
  std::vector<int> label = mesh_components(d, keep, &ncomp);

  double max_edge = 0.0;
  for (const auto& e : mesh_edges(d))
    if (keep[e.a] && keep[e.b]) max_edge = std::max(max_edge, (d.pos[e.a] - d.pos[e.b]).norm());
  double cell = max_edge > 0.0 ? 2.0 * max_edge : r0;

  rep.components.assign(ncomp, OneSidedComponent{});
  for (int c = 0; c < ncomp; ++c) rep.components[c].id = c;
  std::map<std::array<int, 3>, CellAcc> cols;  // (label, x bin, y bin) -> heights
  for (int v = 0; v < n; ++v) {
    if (label[v] < 0) continue;
    OneSidedComponent& oc = rep.components[label[v]];
    ++oc.size;
    if (d.pos[v].norm() <= eps * r0) oc.touches_inner = true;
    oc.sup_a2_r02 = std::max(oc.sup_a2_r02, d.a2[v] * r0 * r0);
    int ix = static_cast<int>(std::floor(d.pos[v][0] / cell));
    int iy = static_cast<int>(std::floor(d.pos[v][1] / cell));
    cols[{label[v], ix, iy}].add(d.pos[v][2]);
  }
  for (auto& oc : rep.components) {
    oc.curvature_ok = oc.sup_a2_r02 <= 1.0;
    oc.graph_ok = true;
  }
  for (const auto& [key, acc] : cols)
    if (acc.hi - acc.lo > cell) rep.components[key[0]].graph_ok = false;

  rep.pass = true;
  for (const auto& oc : rep.components)
    if (oc.touches_inner && !(oc.curvature_ok && oc.graph_ok)) rep.pass = false;
  return rep;
}

FoliationReport foliation_convergence(const SurfaceSequence& seq, const AnnularBox& box) {
  seq.validate();
  if (!(box.rho_min > 0.0) || !(box.rho_max > box.rho_min) || !(box.z_abs > 0.0))
    throw InvalidInputError("foliation: malformed test box");
  if (box.rho_min <= box.tube_radius)
    throw InvalidInputError("foliation: invalid region, the box meets the singular tube");

  FoliationReport rep;
  for (std::size_t j = 0; j < seq.disks.size(); ++j) {
    const DiskSample& d = seq.disks[j];
    int n = static_cast<int>(d.pos.size());
    std::vector<bool> keep(n, false);
    for (int v = 0; v < n; ++v) {
      double rho = std::hypot(d.pos[v][0], d.pos[v][1]);
      keep[v] = rho >= box.rho_min && rho <= box.rho_max && std::abs(d.pos[v][2]) <= box.z_abs;
    }
    Unwrapped u = unwrap_angles(d, keep, Vec3::Zero());

    FoliationEntry ent;
    ent.scale = seq.scales[j];
    // pieces are (component, sheet, angular cell); each is compared against
    // the horizontal leaf through its own mean height
    std::map<std::array<int, 3>, CellAcc> pieces;  // (component, angular cell, sheet)
    double tstep = 2.0 * M_PI / 16.0;
    for (int v = 0; v < n; ++v) {
      if (u.label[v] < 0) continue;
      double pvv = std::remainder(u.theta[v] - 2.0 * M_PI * u.sheet[v], 2.0 * M_PI);
      int tb = std::clamp(static_cast<int>(std::floor((pvv + M_PI) / tstep)), 0, 15);
      pieces[{u.label[v], tb, u.sheet[v]}].add(d.pos[v][2]);
    }
    for (const auto& [key, acc] : pieces) {
      double mid = acc.mean();
      ent.leaf_distance = std::max(ent.leaf_distance, std::max(acc.hi - mid, mid - acc.lo));
    }
    // multiplicity: how many leaves stack over one angular cell, summed over
    // components. Consecutive sheet indices whose height intervals meet are
    // the same physical leaf split by the unwrapping seam of a closed band,
    // so they count once.
    std::map<int, int> comp_mult;
    {
      std::map<std::pair<int, int>, int> cell_leaves;
      const std::array<int, 3>* prev_key = nullptr;
      double reach = 0.0;
      for (const auto& [key, acc] : pieces) {
        bool merge = prev_key && (*prev_key)[0] == key[0] && (*prev_key)[1] == key[1] &&
                     (*prev_key)[2] + 1 == key[2] && acc.lo <= reach;
        if (!merge) ++cell_leaves[{key[0], key[1]}];
        reach = merge ? std::max(reach, acc.hi) : acc.hi;
        prev_key = &key;
      }
      for (const auto& [cell, leaves] : cell_leaves)
        comp_mult[cell.first] = std::max(comp_mult[cell.first], leaves);
    }
    for (const auto& [c, m] : comp_mult) ent.sheet_count += m;

    for (const auto& t : d.tris) {
      if (!keep[t[0]] || !keep[t[1]] || !keep[t[2]]) continue;
      Vec3 e1 = d.pos[t[1]] - d.pos[t[0]], e2 = d.pos[t[2]] - d.pos[t[0]];
      Vec3 nrm = e1.cross(e2);
      double nn = nrm.norm();
      double lmax = std::max({e1.norm(), e2.norm(), (e2 - e1).norm()});
      double amax = std::max({d.a2[t[0]], d.a2[t[1]], d.a2[t[2]]});
      // slivers thinner than the curvature sag over their diameter carry no
      // usable normal; skip them
      if (nn <= 0.5 * lmax * lmax * lmax * std::sqrt(amax) || nn < 1e-300) continue;
      ent.tilt = std::max(ent.tilt, std::atan2(std::hypot(nrm[0], nrm[1]), std::abs(nrm[2])));
    }
    rep.entries.push_back(ent);
  }

  rep.distances_decreasing = rep.entries.size() > 1;
  rep.tilts_decreasing = rep.entries.size() > 1;
  for (std::size_t j = 1; j < rep.entries.size(); ++j) {
    if (!(rep.entries[j].leaf_distance < rep.entries[j - 1].leaf_distance))
      rep.distances_decreasing = false;
    if (!(rep.entries[j].tilt < rep.entries[j - 1].tilt)) rep.tilts_decreasing = false;
  }
  return rep;
}

}  // namespace mindisk
