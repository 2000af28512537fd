#include "mindisk/surface.hpp"

#include <atomic>
#include <cmath>
#include <cstdint>
#include <string>

#include "mindisk/parallel.hpp"

namespace mindisk {

void ParamPatch::validate() const {
  grid.validate();
  if (pos.size() != grid.count()) throw InvalidInputError("patch: position count does not match grid");
  if (deriv_mode == DerivMode::CentralDifference && (grid.ns() < 3 || grid.nt() < 3))
    throw InvalidInputError("patch: difference mode needs at least 4 nodes per direction");
  for (const Vec3& p : pos)
    if (!p.allFinite()) throw InvalidInputError("patch: non-finite position");
}

ParamPatch make_parametric(const Grid2& grid, const ParamMap& map, DerivMode mode) {
  grid.validate();
  ParamPatch p;
  p.grid = grid;
  p.deriv_mode = mode;
  p.pos.resize(grid.count());
  if (mode == DerivMode::Analytic) {
    p.xs.resize(grid.count());
    p.xt.resize(grid.count());
    p.xss.resize(grid.count());
    p.xst.resize(grid.count());
    p.xtt.resize(grid.count());
  }
  for (int i = 0; i <= grid.ns(); ++i) {
    for (int j = 0; j <= grid.nt(); ++j) {
      ParamJet jet = map(grid.s.at(i), grid.t.at(j));
      std::size_t k = grid.idx(i, j);
      p.pos[k] = jet.x;
      if (mode == DerivMode::Analytic) {
        p.xs[k] = jet.xs;
        p.xt[k] = jet.xt;
        p.xss[k] = jet.xss;
        p.xst[k] = jet.xst;
        p.xtt[k] = jet.xtt;
      }
    }
  }
  p.validate();
  return p;
}

ParamPatch make_helicoid(double s0, double s1, double t0, double t1, int ns, int nt,
                         DerivMode mode) {
  Grid2 grid{{s0, s1, ns}, {t0, t1, nt}};
  return make_parametric(
      grid,
      [](double s, double t) {
        double c = std::cos(t), sn = std::sin(t);
        ParamJet j;
        j.x = {s * c, s * sn, t};
        j.xs = {c, sn, 0.0};
        j.xt = {-s * sn, s * c, 1.0};
        j.xss = {0.0, 0.0, 0.0};
        j.xst = {-sn, c, 0.0};
        j.xtt = {-s * c, -s * sn, 0.0};
        return j;
      },
      mode);
}

ParamPatch make_catenoid(double s0, double s1, double t0, double t1, int ns, int nt,
                         DerivMode mode) {
  Grid2 grid{{s0, s1, ns}, {t0, t1, nt}};
  return make_parametric(
      grid,
      [](double s, double t) {
        double ch = std::cosh(s), sh = std::sinh(s);
        double c = std::cos(t), sn = std::sin(t);
        ParamJet j;
        j.x = {ch * c, ch * sn, s};
        j.xs = {sh * c, sh * sn, 1.0};
        j.xt = {-ch * sn, ch * c, 0.0};
        j.xss = {ch * c, ch * sn, 0.0};
        j.xst = {-sh * sn, sh * c, 0.0};
        j.xtt = {-ch * c, -ch * sn, 0.0};
        return j;
      },
      mode);
}

ParamPatch make_ruled(const std::vector<Vec3>& directrix, const std::vector<Vec3>& direction,
                      double t0, double t1, double s0, double s1, int ns) {
  if (directrix.size() != direction.size() || directrix.size() < 4)
    throw InvalidInputError("ruled: directrix/direction need equal length >= 4");
  for (const Vec3& d : direction)
    if (d.norm() == 0.0) throw InvalidInputError("ruled: zero ruling direction");
  int nt = static_cast<int>(directrix.size()) - 1;
  Grid2 grid{{s0, s1, ns}, {t0, t1, nt}};
  grid.validate();
  ParamPatch p;
  p.grid = grid;
  p.deriv_mode = DerivMode::CentralDifference;
  p.pos.resize(grid.count());
  p.xs.resize(grid.count());
  p.xt.resize(grid.count());
  p.xss.resize(grid.count());
  p.xst.resize(grid.count());
  p.xtt.resize(grid.count());
  // t-derivatives of the sampled curves by stencil; the s-direction is exactly
  // affine, so xs = delta and xss = 0 bitwise (hence e = 0 and K <= 0)
  double ht = grid.t.h();
  std::vector<Vec3> db(nt + 1), d2b(nt + 1), dd(nt + 1), d2d(nt + 1);
  for (int j = 0; j <= nt; ++j) {
    Stencil f = d1_stencil(j, nt), g2 = d2_stencil(j, nt);
    db[j] = dd[j] = d2b[j] = d2d[j] = Vec3::Zero();
    for (int k = 0; k < f.len; ++k) {
      db[j] += f.w[k] * directrix[j + f.first + k];
      dd[j] += f.w[k] * direction[j + f.first + k];
    }
    for (int k = 0; k < g2.len; ++k) {
      d2b[j] += g2.w[k] * directrix[j + g2.first + k];
      d2d[j] += g2.w[k] * direction[j + g2.first + k];
    }
    db[j] /= ht;
    dd[j] /= ht;
    d2b[j] /= ht * ht;
    d2d[j] /= ht * ht;
  }
  for (int i = 0; i <= ns; ++i) {
    double s = grid.s.at(i);
    for (int j = 0; j <= nt; ++j) {
      std::size_t k = grid.idx(i, j);
      p.pos[k] = directrix[j] + s * direction[j];
      p.xs[k] = direction[j];
      p.xss[k] = Vec3::Zero();
      p.xt[k] = db[j] + s * dd[j];
      p.xst[k] = dd[j];
      p.xtt[k] = d2b[j] + s * d2d[j];
    }
  }
  p.validate();
  return p;
}

ParamPatch make_graph_patch(const Grid2& grid, const std::vector<double>& u_field) {
  grid.validate();
  if (u_field.size() != grid.count()) throw InvalidInputError("graph patch: height count mismatch");
  ParamPatch p;
  p.grid = grid;
  p.deriv_mode = DerivMode::CentralDifference;
  p.pos.resize(grid.count());
  for (int i = 0; i <= grid.ns(); ++i)
    for (int j = 0; j <= grid.nt(); ++j)
      p.pos[grid.idx(i, j)] = {grid.s.at(i), grid.t.at(j), u_field[grid.idx(i, j)]};
  p.validate();
  return p;
}

ParamPatch make_graph_patch_analytic(const Grid2& grid,
                                     const std::function<std::array<double, 6>(double, double)>& u_jet) {
  return make_parametric(
      grid,
      [&u_jet](double s, double t) {
        auto [u, us, ut, uss, ust, utt] = u_jet(s, t);
        ParamJet j;
        j.x = {s, t, u};
        j.xs = {1.0, 0.0, us};
        j.xt = {0.0, 1.0, ut};
        j.xss = {0.0, 0.0, uss};
        j.xst = {0.0, 0.0, ust};
        j.xtt = {0.0, 0.0, utt};
        return j;
      },
      DerivMode::Analytic);
}

ParamPatch rescale(const ParamPatch& patch, double factor) {
  if (!(factor > 0.0) || !std::isfinite(factor)) throw InvalidInputError("rescale: factor must be positive");
  ParamPatch p = patch;
  auto scale = [factor](std::vector<Vec3>& v) {
    for (Vec3& x : v) x *= factor;
  };
  scale(p.pos);
  scale(p.xs);
  scale(p.xt);
  scale(p.xss);
  scale(p.xst);
  scale(p.xtt);
  return p;
}

namespace {

// Difference-mode derivative fields from positions.
template <typename T>
T apply_stencil_s(const std::vector<T>& v, const Grid2& g, int i, int j, const Stencil& st, double hp) {
  T acc = st.w[0] * v[g.idx(i + st.first, j)];
  for (int k = 1; k < st.len; ++k) acc += st.w[k] * v[g.idx(i + st.first + k, j)];
  return acc / hp;
}

template <typename T>
T apply_stencil_t(const std::vector<T>& v, const Grid2& g, int i, int j, const Stencil& st, double hp) {
  T acc = st.w[0] * v[g.idx(i, j + st.first)];
  for (int k = 1; k < st.len; ++k) acc += st.w[k] * v[g.idx(i, j + st.first + k)];
  return acc / hp;
}

struct NodeJet {
  Vec3 xs, xt, xss, xst, xtt;
};

NodeJet node_jet(const ParamPatch& p, int i, int j) {
  NodeJet out;
  const Grid2& g = p.grid;
  if (p.has_second_jets()) {
    std::size_t k = g.idx(i, j);
    out = {p.xs[k], p.xt[k], p.xss[k], p.xst[k], p.xtt[k]};
    return out;
  }
  double hs = g.s.h(), ht = g.t.h();
  out.xs = apply_stencil_s(p.pos, g, i, j, d1_stencil(i, g.ns()), hs);
  out.xt = apply_stencil_t(p.pos, g, i, j, d1_stencil(j, g.nt()), ht);
  out.xss = apply_stencil_s(p.pos, g, i, j, d2_stencil(i, g.ns()), hs * hs);
  out.xtt = apply_stencil_t(p.pos, g, i, j, d2_stencil(j, g.nt()), ht * ht);
  // mixed: compose the two first-derivative stencils
  Stencil sti = d1_stencil(i, g.ns());
  Stencil stj = d1_stencil(j, g.nt());
  Vec3 acc = Vec3::Zero();
  for (int a = 0; a < sti.len; ++a)
    for (int b = 0; b < stj.len; ++b)
      acc += sti.w[a] * stj.w[b] * p.pos[g.idx(i + sti.first + a, j + stj.first + b)];
  out.xst = acc / (hs * ht);
  return out;
}

}  // namespace

GeomData fundamental_forms(const ParamPatch& patch) {
  patch.validate();
  const Grid2& g = patch.grid;
  if (patch.deriv_mode == DerivMode::Analytic && !patch.has_second_jets())
    throw InvalidInputError("fundamental_forms: analytic mode without derivative jets");
  GeomData d;
  d.grid = g;
  std::size_t n = g.count();
  d.E.resize(n); d.F.resize(n); d.G.resize(n);
  d.e.resize(n); d.f.resize(n); d.g.resize(n);
  d.normal.resize(n);
  d.H.resize(n); d.K.resize(n); d.A2.resize(n);
  d.sqrt_g.resize(n);

  // geometric scale for the degeneracy test
  double scale2 = 0.0;
  for (const Vec3& p : patch.pos) scale2 = std::max(scale2, p.squaredNorm());
  double len_scale = std::sqrt(std::max(scale2, 1.0));

  std::atomic<std::size_t> degenerate{SIZE_MAX};  // lowest offending node
  parallel_for(n, [&](std::size_t k) {
    int i = static_cast<int>(k) / g.cols();
    int j = static_cast<int>(k) % g.cols();
    NodeJet jet = node_jet(patch, i, j);
    double E = jet.xs.dot(jet.xs), F = jet.xs.dot(jet.xt), G = jet.xt.dot(jet.xt);
    Vec3 m = jet.xs.cross(jet.xt);
    double mn = m.norm();
    if (!(mn > 1e-14 * len_scale)) {
      std::size_t cur = degenerate.load();
      while (k < cur && !degenerate.compare_exchange_weak(cur, k)) {}
      return;
    }
    Vec3 nrm = m / mn;
    double ee = nrm.dot(jet.xss), ff = nrm.dot(jet.xst), gg = nrm.dot(jet.xtt);
    double det = E * G - F * F;
    // shape operator S = I^{-1} II; H flips sign so that dArea/dt = integral(phi H)
    double s00 = (G * ee - F * ff) / det, s01 = (G * ff - F * gg) / det;
    double s10 = (E * ff - F * ee) / det, s11 = (E * gg - F * ff) / det;
    d.E[k] = E; d.F[k] = F; d.G[k] = G;
    d.e[k] = ee; d.f[k] = ff; d.g[k] = gg;
    d.normal[k] = nrm;
    d.H[k] = -(s00 + s11);
    d.K[k] = (ee * gg - ff * ff) / det;
    d.A2[k] = s00 * s00 + 2.0 * s01 * s10 + s11 * s11;
    d.sqrt_g[k] = std::sqrt(det);
  });
  if (degenerate.load() != SIZE_MAX) {
    std::size_t k = degenerate.load();
    throw HypothesisError("immersion-failure",
                          "degenerate tangents at node (" + std::to_string(k / g.cols()) + "," +
                              std::to_string(k % g.cols()) + ")");
  }
  return d;
}

namespace {

double trapezoid_weight(int i, int n) { return (i == 0 || i == n) ? 0.5 : 1.0; }

// Area element from first derivatives only (jets if present, else differences).
double area_element(const ParamPatch& p, int i, int j, std::string* degenerate) {
  Vec3 xs, xt;
  if (p.has_first_jets()) {
    std::size_t k = p.grid.idx(i, j);
    xs = p.xs[k];
    xt = p.xt[k];
  } else {
    xs = apply_stencil_s(p.pos, p.grid, i, j, d1_stencil(i, p.grid.ns()), p.grid.s.h());
    xt = apply_stencil_t(p.pos, p.grid, i, j, d1_stencil(j, p.grid.nt()), p.grid.t.h());
  }
  double det = xs.dot(xs) * xt.dot(xt) - xs.dot(xt) * xs.dot(xt);
  if (!(det > 0.0) && degenerate && degenerate->empty())
    *degenerate = "degenerate tangents at node (" + std::to_string(i) + "," + std::to_string(j) + ")";
  return std::sqrt(std::max(det, 0.0));
}

}  // namespace

double area(const ParamPatch& patch) {
  patch.validate();
  const Grid2& g = patch.grid;
  if (!patch.has_first_jets() && (g.ns() < 2 || g.nt() < 2))
    throw InvalidInputError("area: difference mode needs at least 3 nodes per direction");
  std::string degenerate;
  double acc = 0.0;
  for (int i = 0; i <= g.ns(); ++i) {
    double wi = trapezoid_weight(i, g.ns());
    double row = 0.0;
    for (int j = 0; j <= g.nt(); ++j)
      row += trapezoid_weight(j, g.nt()) * area_element(patch, i, j, &degenerate);
    acc += wi * row;
  }
  if (!degenerate.empty()) throw HypothesisError("immersion-failure", degenerate);
  return acc * g.s.h() * g.t.h();
}

VariationField make_bump_variation(const ParamPatch& patch, double cs, double ct, double ws,
                                   double wt) {
  const Grid2& g = patch.grid;
  // C^infty bump b(x) = exp(1 - 1/(1-x^2)) on |x|<1
  auto bump = [](double x, double& db) {
    if (std::abs(x) >= 1.0) {
      db = 0.0;
      return 0.0;
    }
    double q = 1.0 - x * x;
    double v = std::exp(1.0 - 1.0 / q);
    db = v * (-2.0 * x / (q * q));
    return v;
  };
  VariationField f;
  f.phi.assign(g.count(), 0.0);
  f.phi_s.assign(g.count(), 0.0);
  f.phi_t.assign(g.count(), 0.0);
  for (int i = 0; i <= g.ns(); ++i) {
    for (int j = 0; j <= g.nt(); ++j) {
      // keep a two-node zero band along the boundary
      if (i < 2 || j < 2 || i > g.ns() - 2 || j > g.nt() - 2) continue;
      double dbs, dbt;
      double bs = bump((g.s.at(i) - cs) / ws, dbs);
      double bt = bump((g.t.at(j) - ct) / wt, dbt);
      std::size_t k = g.idx(i, j);
      f.phi[k] = bs * bt;
      f.phi_s[k] = dbs / ws * bt;
      f.phi_t[k] = bs * dbt / wt;
    }
  }
  return f;
}

FirstVariation first_variation(const ParamPatch& patch, const VariationField& phi, double h_t) {
  patch.validate();
  const Grid2& g = patch.grid;
  if (phi.phi.size() != g.count()) throw InvalidInputError("first_variation: field size mismatch");
  if (!(h_t > 0.0)) throw InvalidInputError("first_variation: step must be positive");
  for (int i = 0; i <= g.ns(); ++i)
    for (int j = 0; j <= g.nt(); ++j)
      if (g.on_boundary(i, j) && phi.phi[g.idx(i, j)] != 0.0)
        throw InvalidInputError("first_variation: phi must vanish on the boundary");

  GeomData geom = fundamental_forms(patch);

  bool exact = patch.has_second_jets() && phi.has_jets();
  auto perturbed = [&](double t) {
    ParamPatch q;
    q.grid = g;
    q.deriv_mode = exact ? DerivMode::Analytic : DerivMode::CentralDifference;
    q.pos.resize(g.count());
    for (std::size_t k = 0; k < g.count(); ++k) q.pos[k] = patch.pos[k] + t * phi.phi[k] * geom.normal[k];
    if (exact) {
      q.xs.resize(g.count());
      q.xt.resize(g.count());
      for (int i = 0; i <= g.ns(); ++i) {
        for (int j = 0; j <= g.nt(); ++j) {
          std::size_t k = g.idx(i, j);
          // d/ds of unit normal via m = xs x xt
          Vec3 m = patch.xs[k].cross(patch.xt[k]);
          double mn = m.norm();
          Vec3 ms = patch.xss[k].cross(patch.xt[k]) + patch.xs[k].cross(patch.xst[k]);
          Vec3 mt = patch.xst[k].cross(patch.xt[k]) + patch.xs[k].cross(patch.xtt[k]);
          Vec3 n = geom.normal[k];
          Vec3 ns = (ms - n * n.dot(ms)) / mn;
          Vec3 nt = (mt - n * n.dot(mt)) / mn;
          q.xs[k] = patch.xs[k] + t * (phi.phi_s[k] * n + phi.phi[k] * ns);
          q.xt[k] = patch.xt[k] + t * (phi.phi_t[k] * n + phi.phi[k] * nt);
        }
      }
    }
    return q;
  };

  double ap, am;
  try {
    ap = area(perturbed(h_t));
    am = area(perturbed(-h_t));
  } catch (const HypothesisError&) {
    throw HypothesisError("step-too-large", "perturbed patch fails the immersion check; reduce h_t");
  }

  FirstVariation out;
  out.numeric_derivative = (ap - am) / (2.0 * h_t);
  double acc = 0.0;
  for (int i = 0; i <= g.ns(); ++i) {
    double wi = trapezoid_weight(i, g.ns());
    for (int j = 0; j <= g.nt(); ++j) {
      std::size_t k = g.idx(i, j);
      acc += wi * trapezoid_weight(j, g.nt()) * phi.phi[k] * geom.H[k] * geom.sqrt_g[k];
    }
  }
  out.integral_phi_H = acc * g.s.h() * g.t.h();
  return out;
}

}  // namespace mindisk
