#pragma once

#include <array>
#include <vector>

#include "mindisk/surface.hpp"

namespace mindisk {

// Triangulated surface sample inside a ball, with per-vertex |A|^2. For
// blow-up fixtures the ball center is the designated center vertex; for
// half-space fixtures (one-sided checks) the ball is centered at the origin
// and the surface does not pass through it.
struct DiskSample {
  std::vector<Vec3> pos;
  std::vector<std::array<int, 3>> tris;
  std::vector<double> a2;
  int center_index = 0;
  Vec3 ball_center = Vec3::Zero();
  double r0 = 1.0;
};

struct MeshChecks {
  int vertices = 0, edges = 0, triangles = 0;
  int euler = 0;
  int components = 0;
  int boundary_loops = 0;
  double max_radius_dev = 0.0;   // of boundary vertices, relative to r0
  double max_inside_excess = 0.0;  // how far any vertex pokes outside the ball
  bool is_disk = false;
};

// Connectivity, Euler characteristic, ball containment, boundary-on-sphere.
// Throws HypothesisError when require_disk and the mesh is not a connected
// disk with boundary on the sphere.
MeshChecks check_mesh(const DiskSample& d, bool require_disk);

// Undirected edges (a < b) sorted lexicographically, with the number of
// incident triangles (1 = boundary edge).
struct MeshEdge {
  int a, b, count;
};
std::vector<MeshEdge> mesh_edges(const DiskSample& d);

// Rescaled helicoid a * (s cos t, s sin t, t) sampled over the parameter
// polar disk s^2 + t^2 <= (r0/a)^2, so the image fills B_{r0}(0) exactly and
// the center vertex is the axis point at the origin. n_phi must be a
// multiple of 4 so the axis columns t = +-pi/2 are sampled.
DiskSample helicoid_disk(double a, double r0, int n_r, int n_phi);

// Flat disk of radius r0 in {x3 = 0}.
DiskSample plane_disk(double r0, int n_r, int n_phi);

// Rescaled catenoid a * (cosh s cos t, cosh s sin t, s) lifted to x3 > 0,
// trimmed so both boundary rings lie on the sphere |X| = R about the origin.
// Topologically an annulus: built for the one-sided checker's necessity
// fixture, not for blow-up runs.
DiskSample catenoid_band(double a, double R, int n_s, int n_t);

// Low-curvature graph disk in {x3 > 0} with boundary on |X| = 2 r0: height
// c0 plus a smoothly cut-off solved minimal-graph perturbation of amplitude
// eps (cos 2 theta outer data). Mesh rings align with the solver's radial
// nodes, so no interpolation of the solution is involved.
DiskSample capped_graph_disk(double r0, double c0, double eps, int n_sigma, int n_theta);

DiskSample rescale_disk(const DiskSample& d, double factor);

// Shortest-path distances over the edge graph (an overestimate of geodesic
// distance).
std::vector<double> edge_distances_from(const DiskSample& d, int source);

std::vector<bool> boundary_vertex_mask(const DiskSample& d);

// Component id per kept vertex (-1 where keep is false), ids ordered by
// lowest contained vertex index.
std::vector<int> mesh_components(const DiskSample& d, const std::vector<bool>& keep,
                                 int* count = nullptr);

}  // namespace mindisk
