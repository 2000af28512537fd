#include "mindisk/disk.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <string>

#include "mindisk/mse.hpp"

namespace mindisk {

namespace {

void require_valid_indices(const DiskSample& d) {
  int n = static_cast<int>(d.pos.size());
  if (n < 3) throw InvalidInputError("mesh: fewer than 3 vertices");
  if (d.a2.size() != d.pos.size()) throw InvalidInputError("mesh: |A|^2 count mismatch");
  if (d.center_index < 0 || d.center_index >= n)
    throw InvalidInputError("mesh: center index out of range");
  if (!(d.r0 > 0.0)) throw InvalidInputError("mesh: enclosing radius must be positive");
  for (const auto& t : d.tris) {
    for (int v : t)
      if (v < 0 || v >= n) throw InvalidInputError("mesh: triangle index out of range");
    if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2])
      throw InvalidInputError("mesh: degenerate triangle");
  }
}

}  // namespace

std::vector<MeshEdge> mesh_edges(const DiskSample& d) {
  long long n = static_cast<long long>(d.pos.size());
  std::vector<long long> keys;
  keys.reserve(d.tris.size() * 3);
  for (const auto& t : d.tris) {
    for (int e = 0; e < 3; ++e) {
      long long a = t[e], b = t[(e + 1) % 3];
      if (a > b) std::swap(a, b);
      keys.push_back(a * n + b);
    }
  }
  std::sort(keys.begin(), keys.end());
  std::vector<MeshEdge> edges;
  edges.reserve(keys.size());
  for (std::size_t i = 0; i < keys.size();) {
    std::size_t j = i;
    while (j < keys.size() && keys[j] == keys[i]) ++j;
    edges.push_back({static_cast<int>(keys[i] / n), static_cast<int>(keys[i] % n),
                     static_cast<int>(j - i)});
    i = j;
  }
  return edges;
}

namespace {

int graph_components(int n, const std::vector<std::vector<int>>& adj,
                     const std::vector<bool>* keep, std::vector<int>* label_out) {
  std::vector<int> label(n, -1);
  int comp = 0;
  for (int start = 0; start < n; ++start) {
    if (label[start] >= 0 || (keep && !(*keep)[start])) continue;
    std::queue<int> q;
    q.push(start);
    label[start] = comp;
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int w : adj[v]) {
        if (label[w] >= 0 || (keep && !(*keep)[w])) continue;
        label[w] = comp;
        q.push(w);
      }
    }
    ++comp;
  }
  if (label_out) *label_out = std::move(label);
  return comp;
}

std::vector<std::vector<int>> vertex_adjacency(const DiskSample& d) {
  std::vector<std::vector<int>> adj(d.pos.size());
  for (const auto& e : mesh_edges(d)) {
    adj[e.a].push_back(e.b);
    adj[e.b].push_back(e.a);
  }
  return adj;
}

}  // namespace

MeshChecks check_mesh(const DiskSample& d, bool require_disk) {
  require_valid_indices(d);
  auto edges = mesh_edges(d);
  MeshChecks c;
  c.vertices = static_cast<int>(d.pos.size());
  c.triangles = static_cast<int>(d.tris.size());
  c.edges = static_cast<int>(edges.size());
  c.euler = c.vertices - c.edges + c.triangles;

  std::vector<std::vector<int>> adj(d.pos.size());
  std::vector<std::vector<int>> badj(d.pos.size());
  std::vector<bool> on_boundary(d.pos.size(), false);
  for (const auto& e : edges) {
    if (e.count > 2) throw InvalidInputError("mesh: edge shared by more than two triangles");
    adj[e.a].push_back(e.b);
    adj[e.b].push_back(e.a);
    if (e.count == 1) {
      on_boundary[e.a] = on_boundary[e.b] = true;
      badj[e.a].push_back(e.b);
      badj[e.b].push_back(e.a);
    }
  }
  c.components = graph_components(c.vertices, adj, nullptr, nullptr);
  c.boundary_loops = graph_components(c.vertices, badj, &on_boundary, nullptr);

  for (std::size_t v = 0; v < d.pos.size(); ++v) {
    double r = (d.pos[v] - d.ball_center).norm();
    c.max_inside_excess = std::max(c.max_inside_excess, (r - d.r0) / d.r0);
    if (on_boundary[v]) c.max_radius_dev = std::max(c.max_radius_dev, std::abs(r - d.r0) / d.r0);
  }
  c.max_inside_excess = std::max(c.max_inside_excess, 0.0);
  c.is_disk = c.components == 1 && c.euler == 1 && c.boundary_loops == 1;

  if (c.max_inside_excess > 1e-7)
    throw HypothesisError("ball-containment", "vertices outside the enclosing ball");
  if (c.max_radius_dev > 1e-6)
    throw HypothesisError("boundary-off-sphere", "boundary vertices leave the sphere");
  if (require_disk && !c.is_disk)
    throw HypothesisError("not-a-disk",
                          "mesh is not a connected disk (euler " + std::to_string(c.euler) +
                              ", components " + std::to_string(c.components) + ")");
  return c;
}

namespace {

// Shared polar-mesh builder: center vertex + rings at the given radii; ring k
// vertex l has index 1 + k*n_phi + l.
struct PolarMesh {
  std::vector<double> radii;  // excluding the center
  int n_phi = 0;
};

void polar_topology(const PolarMesh& pm, DiskSample& d) {
  int nr = static_cast<int>(pm.radii.size());
  auto vid = [&pm](int k, int l) { return 1 + k * pm.n_phi + ((l % pm.n_phi + pm.n_phi) % pm.n_phi); };
  for (int l = 0; l < pm.n_phi; ++l) d.tris.push_back({0, vid(0, l), vid(0, l + 1)});
  for (int k = 0; k + 1 < nr; ++k) {
    for (int l = 0; l < pm.n_phi; ++l) {
      d.tris.push_back({vid(k, l), vid(k + 1, l), vid(k + 1, l + 1)});
      d.tris.push_back({vid(k, l), vid(k + 1, l + 1), vid(k, l + 1)});
    }
  }
}

}  // namespace

DiskSample helicoid_disk(double a, double r0, int n_r, int n_phi) {
  if (!(a > 0.0) || !(r0 > 0.0)) throw InvalidInputError("helicoid disk: scale and radius must be positive");
  if (n_r < 2 || n_phi < 8 || n_phi % 4 != 0)
    throw InvalidInputError("helicoid disk: need n_r >= 2 and n_phi a multiple of 4, >= 8");
  double R = r0 / a;
  DiskSample d;
  d.pos.push_back(Vec3::Zero());
  d.a2.push_back(2.0 / (a * a));
  PolarMesh pm;
  pm.n_phi = n_phi;
  for (int k = 1; k <= n_r; ++k) {
    double r = R * k / n_r;
    pm.radii.push_back(r);
    for (int l = 0; l < n_phi; ++l) {
      double phi = 2.0 * M_PI * l / n_phi;
      double s = r * std::cos(phi), t = r * std::sin(phi);
      d.pos.push_back(a * Vec3(s * std::cos(t), s * std::sin(t), t));
      double q = 1.0 + s * s;
      d.a2.push_back(2.0 / (a * a * q * q));
    }
  }
  polar_topology(pm, d);
  d.center_index = 0;
  d.ball_center = Vec3::Zero();
  d.r0 = r0;
  check_mesh(d, true);
  return d;
}

DiskSample plane_disk(double r0, int n_r, int n_phi) {
  if (!(r0 > 0.0)) throw InvalidInputError("plane disk: radius must be positive");
  if (n_r < 2 || n_phi < 8) throw InvalidInputError("plane disk: resolution too small");
  DiskSample d;
  d.pos.push_back(Vec3::Zero());
  d.a2.push_back(0.0);
  PolarMesh pm;
  pm.n_phi = n_phi;
  for (int k = 1; k <= n_r; ++k) {
    double r = r0 * k / n_r;
    pm.radii.push_back(r);
    for (int l = 0; l < n_phi; ++l) {
      double phi = 2.0 * M_PI * l / n_phi;
      d.pos.push_back({r * std::cos(phi), r * std::sin(phi), 0.0});
      d.a2.push_back(0.0);
    }
  }
  polar_topology(pm, d);
  d.center_index = 0;
  d.ball_center = Vec3::Zero();
  d.r0 = r0;
  check_mesh(d, true);
  return d;
}

DiskSample catenoid_band(double a, double R, int n_s, int n_t) {
  if (!(a > 0.0) || !(R > 4.0 * a))
    throw InvalidInputError("catenoid band: need 0 < a and R > 4a");
  if (n_s < 4 || n_t < 8) throw InvalidInputError("catenoid band: resolution too small");
  double s_hat = std::acosh(R / a);
  double lift = 1.05 * a * s_hat;
  auto sphere_gap = [&](double s) {
    double x3 = lift + a * s;
    return a * a * std::cosh(s) * std::cosh(s) + x3 * x3 - R * R;
  };
  auto bisect = [&](double lo, double hi) {
    // sphere_gap(lo) < 0 < sphere_gap(hi)
    for (int it = 0; it < 200; ++it) {
      double mid = 0.5 * (lo + hi);
      (sphere_gap(mid) < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  };
  double s_top = bisect(0.0, s_hat);
  double s_bot;
  {
    double lo = -s_hat, hi = 0.0;  // gap(-s_hat) > 0 (the lift pushes the band up)
    for (int it = 0; it < 200; ++it) {
      double mid = 0.5 * (lo + hi);
      (sphere_gap(mid) < 0.0 ? hi : lo) = mid;
    }
    s_bot = 0.5 * (lo + hi);
  }

  DiskSample d;
  auto vid = [n_t](int i, int l) { return i * n_t + ((l % n_t + n_t) % n_t); };
  for (int i = 0; i <= n_s; ++i) {
    double s = s_bot + (s_top - s_bot) * i / n_s;
    double ch = std::cosh(s);
    for (int l = 0; l < n_t; ++l) {
      double t = 2.0 * M_PI * l / n_t;
      d.pos.push_back({a * ch * std::cos(t), a * ch * std::sin(t), lift + a * s});
      d.a2.push_back(2.0 / (a * a * ch * ch * ch * ch));
    }
  }
  for (int i = 0; i < n_s; ++i) {
    for (int l = 0; l < n_t; ++l) {
      d.tris.push_back({vid(i, l), vid(i + 1, l), vid(i + 1, l + 1)});
      d.tris.push_back({vid(i, l), vid(i + 1, l + 1), vid(i, l + 1)});
    }
  }
  d.ball_center = Vec3::Zero();
  d.r0 = R;
  d.center_index = 0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t v = 0; v < d.pos.size(); ++v) {
    double r = d.pos[v].norm();
    if (r < best) {
      best = r;
      d.center_index = static_cast<int>(v);
    }
  }
  check_mesh(d, false);
  return d;
}

namespace {

// quintic smoothstep: C^2, 0 below lo, 1 above hi
double smoothstep(double x, double lo, double hi) {
  if (x <= lo) return 0.0;
  if (x >= hi) return 1.0;
  double t = (x - lo) / (hi - lo);
  return t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
}

// non-uniform 3-point second/first derivatives at the middle point
void nonuniform_d(double h1, double h2, double u1, double u2, double u3, double& d1, double& d2) {
  d1 = (-h2 / (h1 * (h1 + h2))) * u1 + ((h2 - h1) / (h1 * h2)) * u2 +
       (h1 / (h2 * (h1 + h2))) * u3;
  d2 = 2.0 * (u1 / (h1 * (h1 + h2)) - u2 / (h1 * h2) + u3 / (h2 * (h1 + h2)));
}

double graph_a2(double ux, double uy, double uxx, double uxy, double uyy) {
  double W2 = 1.0 + ux * ux + uy * uy;
  double W = std::sqrt(W2);
  // first and second fundamental forms of (x, y, u)
  double E = 1 + ux * ux, F = ux * uy, G = 1 + uy * uy;
  double e = uxx / W, f = uxy / W, g = uyy / W;
  double det = E * G - F * F;
  double s00 = (G * e - F * f) / det, s01 = (G * f - F * g) / det;
  double s10 = (E * f - F * e) / det, s11 = (E * g - F * f) / det;
  return s00 * s00 + 2.0 * s01 * s10 + s11 * s11;
}

}  // namespace

DiskSample capped_graph_disk(double r0, double c0, double eps, int n_sigma, int n_theta) {
  if (!(r0 > 0.0) || !(c0 > 0.0)) throw InvalidInputError("capped disk: r0 and c0 must be positive");
  if (!(c0 < r0)) throw InvalidInputError("capped disk: cap height must stay below r0");
  if (n_sigma < 16 || n_theta < 16) throw InvalidInputError("capped disk: resolution too small");

  double rin = 0.3 * r0, rout = 2.2 * r0;
  AnnularDomain dom{rin, rout, 1, n_sigma, n_theta};
  // harmonic profile rho^2 cos 2 theta adjusted to vanish on the inner circle:
  // boundary data close to the small-slope solution keeps the periodic seam
  // smooth to the nonlinear correction's size
  double denom = rout * rout - std::pow(rin, 4) / (rout * rout);
  auto guess = [&](double rho, double theta) {
    double rad = (rho * rho - std::pow(rin, 4) / (rho * rho)) / denom;
    return eps * rad * std::cos(2.0 * theta);
  };
  SolveResult sol = solve(dom, sample_boundary(dom, guess), SolverConfig{});
  const Grid2& sg = sol.graph.grid;

  double ramp_in_lo = 0.35 * r0, ramp_in_hi = 0.7 * r0;
  double ramp_out_lo = 1.4 * r0, ramp_out_hi = 1.9 * r0;
  double rho_b = std::sqrt(4.0 * r0 * r0 - c0 * c0);

  // ring radii: uniform cap, then the solver's radial nodes, then a uniform
  // run out to the sphere ring (the height is exactly c0 outside the ramps,
  // so no solution values are needed off the solver grid)
  std::vector<double> radii;
  std::vector<int> solver_row;  // matching solver i, or -1
  double first_solver_gap = std::exp(sg.s.at(1)) - std::exp(sg.s.at(0));
  int n_cap = std::max(4, static_cast<int>(std::lround(rin / first_solver_gap)));
  for (int k = 1; k < n_cap; ++k) {
    radii.push_back(rin * k / n_cap);
    solver_row.push_back(-1);
  }
  int last_used = -1;
  for (int i = 0; i <= sg.ns(); ++i) {
    double rho = std::exp(sg.s.at(i));
    if (rho >= ramp_out_hi) break;
    radii.push_back(rho);
    solver_row.push_back(i);
    last_used = i;
  }
  if (last_used < 0) throw InvalidInputError("capped disk: solver grid misses the ramp region");
  double rho_last = radii.back();
  double outer_gap = rho_last - radii[radii.size() - 2];
  int n_out = std::max(2, static_cast<int>(std::lround((rho_b - rho_last) / outer_gap)));
  for (int k = 1; k <= n_out; ++k) {
    radii.push_back(rho_last + (rho_b - rho_last) * k / n_out);
    solver_row.push_back(-1);
  }

  int nr = static_cast<int>(radii.size());
  int np = n_theta;  // mesh identifies theta = -pi with theta = +pi
  std::vector<std::vector<double>> height(nr + 1);  // [ring 0 = center]
  height[0] = {c0};
  for (int k = 0; k < nr; ++k) {
    height[k + 1].resize(np);
    double rho = radii[k];
    double chi = smoothstep(rho, ramp_in_lo, ramp_in_hi) *
                 (1.0 - smoothstep(rho, ramp_out_lo, ramp_out_hi));
    for (int l = 0; l < np; ++l) {
      double v = 0.0;
      if (chi != 0.0) {
        int i = solver_row[k];
        if (i < 0) throw InvalidInputError("capped disk: ramp ring off the solver grid");
        v = sol.graph.u[sg.idx(i, l)];
      }
      height[k + 1][l] = c0 + chi * v;
    }
  }

  DiskSample d;
  d.pos.push_back({0.0, 0.0, c0});
  d.a2.push_back(0.0);
  PolarMesh pm;
  pm.n_phi = np;
  pm.radii = radii;
  for (int k = 0; k < nr; ++k) {
    for (int l = 0; l < np; ++l) {
      double th = sg.t.at(l);
      d.pos.push_back({radii[k] * std::cos(th), radii[k] * std::sin(th), height[k + 1][l]});
      d.a2.push_back(0.0);
    }
  }
  polar_topology(pm, d);

  // per-vertex |A|^2 by differencing the heights (non-uniform radial rings,
  // periodic angular direction), then the graph shape operator
  double hth = sg.t.h();
  for (int k = 1; k + 1 <= nr; ++k) {
    double rm = (k == 1) ? 0.0 : radii[k - 2];
    double rc = radii[k - 1], rp = radii[k];
    double h1 = rc - rm, h2 = rp - rc;
    for (int l = 0; l < np; ++l) {
      auto at = [&](int ring, int col) {
        if (ring == 0) return height[0][0];
        return height[ring][((col % np) + np) % np];
      };
      double u1 = at(k - 1, l), u2 = at(k, l), u3 = at(k + 1, l);
      double ur, urr;
      nonuniform_d(h1, h2, u1, u2, u3, ur, urr);
      double ut = (at(k, l + 1) - at(k, l - 1)) / (2.0 * hth);
      double utt = (at(k, l + 1) - 2.0 * u2 + at(k, l - 1)) / (hth * hth);
      double urp, urm_d2;
      nonuniform_d(h1, h2, at(k - 1, l + 1), at(k, l + 1), at(k + 1, l + 1), urp, urm_d2);
      double urm;
      nonuniform_d(h1, h2, at(k - 1, l - 1), at(k, l - 1), at(k + 1, l - 1), urm, urm_d2);
      double urt = (urp - urm) / (2.0 * hth);
      double th = sg.t.at(l), c = std::cos(th), s = std::sin(th);
      double ux = c * ur - s / rc * ut;
      double uy = s * ur + c / rc * ut;
      double uxx = c * c * urr - 2 * s * c * (urt / rc - ut / (rc * rc)) +
                   s * s * (ur / rc + utt / (rc * rc));
      double uyy = s * s * urr + 2 * s * c * (urt / rc - ut / (rc * rc)) +
                   c * c * (ur / rc + utt / (rc * rc));
      double uxy = s * c * (urr - ur / rc - utt / (rc * rc)) +
                   (c * c - s * s) * (urt / rc - ut / (rc * rc));
      d.a2[1 + (k - 1) * np + l] = graph_a2(ux, uy, uxx, uxy, uyy);
    }
  }

  d.center_index = 0;
  d.ball_center = Vec3::Zero();
  d.r0 = 2.0 * r0;
  check_mesh(d, true);
  return d;
}

DiskSample rescale_disk(const DiskSample& d, double factor) {
  if (!(factor > 0.0) || !std::isfinite(factor))
    throw InvalidInputError("rescale: factor must be positive");
  DiskSample out = d;
  for (auto& p : out.pos) p *= factor;
  out.ball_center *= factor;
  out.r0 *= factor;
  for (auto& v : out.a2) v /= factor * factor;
  return out;
}

std::vector<double> edge_distances_from(const DiskSample& d, int source) {
  require_valid_indices(d);
  if (source < 0 || source >= static_cast<int>(d.pos.size()))
    throw InvalidInputError("distance: source out of range");
  std::vector<std::vector<std::pair<int, double>>> adj(d.pos.size());
  for (const auto& e : mesh_edges(d)) {
    double len = (d.pos[e.a] - d.pos[e.b]).norm();
    adj[e.a].push_back({e.b, len});
    adj[e.b].push_back({e.a, len});
  }
  std::vector<double> dist(d.pos.size(), std::numeric_limits<double>::infinity());
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
  dist[source] = 0.0;
  heap.push({0.0, source});
  while (!heap.empty()) {
    auto [dv, v] = heap.top();
    heap.pop();
    if (dv > dist[v]) continue;
    for (auto [w, len] : adj[v]) {
      double cand = dv + len;
      if (cand < dist[w]) {
        dist[w] = cand;
        heap.push({cand, w});
      }
    }
  }
  return dist;
}

std::vector<bool> boundary_vertex_mask(const DiskSample& d) {
  require_valid_indices(d);
  std::vector<bool> mask(d.pos.size(), false);
  for (const auto& e : mesh_edges(d))
    if (e.count == 1) mask[e.a] = mask[e.b] = true;
  return mask;
}

std::vector<int> mesh_components(const DiskSample& d, const std::vector<bool>& keep, int* count) {
  require_valid_indices(d);
  if (keep.size() != d.pos.size()) throw InvalidInputError("components: mask size mismatch");
  auto adj = vertex_adjacency(d);
  std::vector<int> label;
  int n = graph_components(static_cast<int>(d.pos.size()), adj, &keep, &label);
  if (count) *count = n;
  return label;
}

}  // namespace mindisk
