#include "mindisk/multigraph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mindisk {

namespace {
constexpr double kEnvelopeMargin = 0.05;
constexpr double kLogDeviationMax = 0.25;
}  // namespace

void MultiGraph::validate() const {
  grid.validate();
  if (!(r_in > 0.0)) throw InvalidInputError("multigraph: r_in must be positive");
  if (!(r_out > r_in)) throw InvalidInputError("multigraph: r_out must exceed r_in");
  if (sheets < 1 || sheets > 64) throw InvalidInputError("multigraph: sheet count outside [1, 64]");
  if (grid.nt() % sheets != 0)
    throw InvalidInputError("multigraph: theta spacing must divide 2 pi (n_theta % sheets != 0)");
  if (u.size() != grid.count()) throw InvalidInputError("multigraph: height count mismatch");
  for (double v : u)
    if (!std::isfinite(v)) throw InvalidInputError("multigraph: non-finite height");
}

MultiGraph make_multigraph(double r_in, double r_out, int sheets, int n_rho, int n_theta,
                           const std::function<double(double, double)>& height) {
  if (!(r_in > 0.0)) throw InvalidInputError("multigraph: r_in must be positive");
  MultiGraph g;
  g.r_in = r_in;
  g.r_out = r_out;
  g.sheets = sheets;
  g.grid.s = {std::log(r_in), std::log(r_out), n_rho};
  g.grid.t = {-sheets * M_PI, sheets * M_PI, n_theta};
  g.u.resize(g.grid.count());
  for (int i = 0; i <= n_rho; ++i)
    for (int j = 0; j <= n_theta; ++j) g.u[g.grid.idx(i, j)] = height(g.rho(i), g.theta(j));
  g.validate();
  return g;
}

MultiGraph helicoid_sheet(int which, double r_in, double r_out, int sheets, int n_rho,
                          int n_theta) {
  if (which != 1 && which != 2) throw InvalidInputError("helicoid sheet: which must be 1 or 2");
  double off = (which == 2) ? M_PI : 0.0;
  return make_multigraph(r_in, r_out, sheets, n_rho, n_theta,
                         [off](double, double theta) { return theta + off; });
}

MultiGraph nonproper_graph(double r_in, double r_out, int sheets, int n_rho, int n_theta) {
  if (!(r_in > 1.0))
    throw InvalidInputError("nonproper graph: r_in must exceed 1 (log singularity)");
  return make_multigraph(r_in, r_out, sheets, n_rho, n_theta, [](double rho, double theta) {
    return std::atan(theta / std::log(rho));
  });
}

SeparationProfile separation(const MultiGraph& g) {
  g.validate();
  if (g.sheets < 2)
    throw HypothesisError("no-overlap", "separation needs at least two sheets");
  int joff = g.nodes_per_turn();
  int nt = g.grid.nt() - joff;
  SeparationProfile p;
  p.grid.s = g.grid.s;
  p.grid.t = {g.grid.t.lo, g.grid.t.lo + nt * g.grid.t.h(), nt};
  p.w.resize(p.grid.count());
  double mn = std::numeric_limits<double>::infinity();
  bool all_pos = true, all_neg = true;
  for (int i = 0; i <= g.grid.ns(); ++i) {
    for (int j = 0; j <= nt; ++j) {
      double w = g.u[g.grid.idx(i, j + joff)] - g.u[g.grid.idx(i, j)];
      p.w[p.grid.idx(i, j)] = w;
      mn = std::min(mn, std::abs(w));
      all_pos = all_pos && w > 0.0;
      all_neg = all_neg && w < 0.0;
    }
  }
  p.min_abs_w = mn;
  p.sign = all_pos ? 1 : (all_neg ? -1 : 0);
  return p;
}

Embeddedness is_embedded(const MultiGraph& g) {
  SeparationProfile p = separation(g);
  return {p.min_abs_w > 0.0, p.min_abs_w};
}

Handedness handedness(const MultiGraph& g) {
  SeparationProfile p = separation(g);
  if (p.min_abs_w <= 0.0 || p.sign == 0)
    throw HypothesisError("undefined-handedness", "separation vanishes or changes sign");
  return p.sign > 0 ? Handedness::Right : Handedness::Left;
}

namespace {

// Samples |w| (or signed w) along theta = 0, or the max over theta columns.
struct FitSamples {
  std::vector<double> sigma;  // log rho
  std::vector<double> w;
};

FitSamples collect_samples(const SeparationProfile& p, double rho0, bool aggregate_max,
                           bool strictly_beyond) {
  int j0 = -1;
  double h = p.grid.t.h();
  int cand = static_cast<int>(std::llround(-p.grid.t.lo / h));
  if (cand >= 0 && cand <= p.grid.nt() && std::abs(p.grid.t.at(cand)) <= 1e-9) j0 = cand;
  if (j0 < 0 && !aggregate_max)
    throw InvalidInputError("fit: theta = 0 ray is not on the profile grid");
  double sigma0 = std::log(rho0);
  FitSamples out;
  for (int i = 0; i <= p.grid.ns(); ++i) {
    double sigma = p.grid.s.at(i);
    if (strictly_beyond ? (sigma <= sigma0 + 1e-12) : (sigma < sigma0 - 1e-12)) continue;
    double w;
    if (aggregate_max) {
      w = 0.0;
      for (int j = 0; j <= p.grid.nt(); ++j) {
        double v = p.w[p.grid.idx(i, j)];
        if (std::abs(v) > std::abs(w)) w = v;
      }
    } else {
      w = p.w[p.grid.idx(i, j0)];
    }
    out.sigma.push_back(sigma);
    out.w.push_back(w);
  }
  if (out.sigma.size() < 8)
    throw InvalidInputError("fit: need at least 8 radial samples beyond rho0");
  for (double w : out.w)
    if (w == 0.0) throw HypothesisError("fit-undefined", "vanishing separation sample");
  return out;
}

}  // namespace

FitReport fit_sublinear_exponent(const SeparationProfile& p, double rho0, bool aggregate_max) {
  if (!(rho0 > 0.0)) throw InvalidInputError("fit: rho0 must be positive");
  FitSamples s = collect_samples(p, rho0, aggregate_max, false);
  std::size_t n = s.sigma.size();
  double xbar = 0.0, zbar = 0.0;
  std::vector<double> z(n);
  for (std::size_t i = 0; i < n; ++i) {
    z[i] = std::log(std::abs(s.w[i]));
    xbar += s.sigma[i];
    zbar += z[i];
  }
  xbar /= n;
  zbar /= n;
  double sxx = 0.0, sxz = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (s.sigma[i] - xbar) * (s.sigma[i] - xbar);
    sxz += (s.sigma[i] - xbar) * (z[i] - zbar);
  }
  double slope = sxz / sxx;
  double rss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double r = z[i] - (zbar + slope * (s.sigma[i] - xbar));
    rss += r * r;
  }
  FitReport rep;
  rep.rho0 = rho0;
  rep.kind = "sublinear";
  rep.alpha_hat = std::abs(slope);
  rep.residual = std::sqrt(rss / n);
  double wref = std::abs(s.w[0]);
  double sref = s.sigma[0];
  rep.envelope_ok = true;
  for (std::size_t i = 0; i < n; ++i) {
    double bound = wref * std::exp((rep.alpha_hat + kEnvelopeMargin) * (s.sigma[i] - sref));
    if (std::abs(s.w[i]) > bound * (1.0 + 1e-12)) rep.envelope_ok = false;
  }
  return rep;
}

FitReport fit_log_decay(const SeparationProfile& p, double rho0, bool aggregate_max) {
  if (!(rho0 > 0.0)) throw InvalidInputError("fit: rho0 must be positive");
  FitSamples s = collect_samples(p, rho0, aggregate_max, true);
  std::size_t n = s.sigma.size();
  double sigma0 = std::log(rho0);
  double mean = 0.0;
  std::vector<double> c(n);
  for (std::size_t i = 0; i < n; ++i) {
    c[i] = s.w[i] * (s.sigma[i] - sigma0);
    mean += c[i];
  }
  mean /= n;
  FitReport rep;
  rep.rho0 = rho0;
  rep.kind = "log";
  rep.c_hat = mean;
  double dev = 0.0;
  for (std::size_t i = 0; i < n; ++i) dev = std::max(dev, std::abs(c[i] - mean));
  rep.residual = (mean == 0.0) ? std::numeric_limits<double>::infinity() : dev / std::abs(mean);
  rep.logarithmic = rep.residual <= kLogDeviationMax;
  return rep;
}

ParamPatch embed_to_r3(const MultiGraph& g) {
  g.validate();
  ParamPatch p;
  p.grid = g.grid;
  p.deriv_mode = DerivMode::CentralDifference;
  p.pos.resize(g.grid.count());
  for (int i = 0; i <= g.grid.ns(); ++i) {
    double rho = g.rho(i);
    for (int j = 0; j <= g.grid.nt(); ++j) {
      double th = g.theta(j);
      p.pos[g.grid.idx(i, j)] = {rho * std::cos(th), rho * std::sin(th),
                                 g.u[g.grid.idx(i, j)]};
    }
  }
  p.validate();
  return p;
}

}  // namespace mindisk
