#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "mindisk/surface.hpp"

namespace mindisk {

namespace {

// Bilinear (Q1) stiffness of the coefficient sqrt(g) g^{ab} with 2x2 Gauss
// cells; one-point quadrature would admit checkerboard null modes. The metric
// is interpolated bilinearly from the nodes.
Eigen::SparseMatrix<double> assemble_shifted(const Grid2& g, const GeomData& geo,
                                             const std::vector<int>& imap, int nin,
                                             const Eigen::VectorXd& diag_extra) {
  double hs = g.s.h(), ht = g.t.h();
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(static_cast<std::size_t>(g.ns()) * g.nt() * 16 + nin);
  const double gp = 1.0 / std::sqrt(3.0);
  const double gauss[2] = {-gp, gp};
  for (int i = 0; i < g.ns(); ++i) {
    for (int j = 0; j < g.nt(); ++j) {
      std::size_t nd[4] = {g.idx(i, j), g.idx(i + 1, j), g.idx(i, j + 1), g.idx(i + 1, j + 1)};
      double loc[4][4] = {};
      for (double xi : gauss) {
        for (double eta : gauss) {
          double sh[4] = {(1 - xi) * (1 - eta) / 4, (1 + xi) * (1 - eta) / 4,
                          (1 - xi) * (1 + eta) / 4, (1 + xi) * (1 + eta) / 4};
          double dxi[4] = {-(1 - eta) / 4, (1 - eta) / 4, -(1 + eta) / 4, (1 + eta) / 4};
          double deta[4] = {-(1 - xi) / 4, -(1 + xi) / 4, (1 - xi) / 4, (1 + xi) / 4};
          double E = 0, F = 0, G = 0;
          for (int a = 0; a < 4; ++a) {
            E += sh[a] * geo.E[nd[a]];
            F += sh[a] * geo.F[nd[a]];
            G += sh[a] * geo.G[nd[a]];
          }
          double rt = std::sqrt(E * G - F * F);
          double c11 = G / rt, c12 = -F / rt, c22 = E / rt;
          for (int a = 0; a < 4; ++a) {
            double as = dxi[a] * 2 / hs, at = deta[a] * 2 / ht;
            for (int b = 0; b < 4; ++b) {
              double bs = dxi[b] * 2 / hs, bt = deta[b] * 2 / ht;
              loc[a][b] += (hs * ht / 4) * (as * (c11 * bs + c12 * bt) + at * (c12 * bs + c22 * bt));
            }
          }
        }
      }
      for (int a = 0; a < 4; ++a) {
        int ra = imap[nd[a]];
        if (ra < 0) continue;
        for (int b = 0; b < 4; ++b) {
          int rb = imap[nd[b]];
          if (rb >= 0) trips.emplace_back(ra, rb, loc[a][b]);
        }
      }
    }
  }
  for (int r = 0; r < nin; ++r) trips.emplace_back(r, r, diag_extra[r]);
  Eigen::SparseMatrix<double> A(nin, nin);
  A.setFromTriplets(trips.begin(), trips.end());
  return A;
}

}  // namespace

std::vector<double> jacobi_smallest_eigenvalues(const ParamPatch& patch, int k) {
  if (k < 1) throw InvalidInputError("eigenvalues: k must be >= 1");
  GeomData geo = fundamental_forms(patch);
  const Grid2& g = patch.grid;
  double hs = g.s.h(), ht = g.t.h();

  std::vector<int> imap(g.count(), -1);
  int nin = 0;
  for (int i = 1; i < g.ns(); ++i)
    for (int j = 1; j < g.nt(); ++j) imap[g.idx(i, j)] = nin++;
  if (k > nin) throw InvalidInputError("eigenvalues: fewer interior nodes than requested count");

  // lumped mass M and potential P on interior nodes
  Eigen::VectorXd M(nin), P(nin);
  for (int i = 1; i < g.ns(); ++i) {
    for (int j = 1; j < g.nt(); ++j) {
      std::size_t kk = g.idx(i, j);
      int r = imap[kk];
      double w = hs * ht * geo.sqrt_g[kk];
      M[r] = w;
      P[r] = w * geo.A2[kk];
    }
  }

  // pencil (K - P) x = lambda M x; shift sigma below the bottom of the
  // spectrum makes A = K - P - sigma M positive definite
  double maxratio = 0.0;
  for (int r = 0; r < nin; ++r) maxratio = std::max(maxratio, P[r] / M[r]);
  double sigma = -maxratio - 1.0;
  Eigen::VectorXd diag_extra = -P - sigma * M;
  Eigen::SparseMatrix<double> A = assemble_shifted(g, geo, imap, nin, diag_extra);

  Eigen::SimplicialLLT<Eigen::SparseMatrix<double>> llt(A);
  if (llt.info() != Eigen::Success)
    throw NumericError("eigenvalues: factorization of the shifted operator failed");

  auto mdot = [&M](const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    return a.dot(M.cwiseProduct(b));
  };

  // Shift-invert Lanczos on T = A^{-1} M in the M inner product, full
  // reorthogonalization, with locking passes so that repeated eigenvalues are
  // still found (a single Krylov sequence sees one copy per eigenspace).
  std::vector<Eigen::VectorXd> locked;
  std::vector<double> theta_locked;
  int total_iters = 0;
  int m = std::min(nin, std::max(12 * k, 120));

  for (int pass = 0; pass < 3 && static_cast<int>(theta_locked.size()) < k; ++pass) {
    std::mt19937 rng(12345u + 777u * pass);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    Eigen::VectorXd v(nin);
    if (pass == 0)
      v.setOnes();
    else
      for (int r = 0; r < nin; ++r) v[r] = unif(rng);
    for (const auto& q : locked) v -= mdot(q, v) * q;
    double nv = std::sqrt(mdot(v, v));
    if (!(nv > 0)) continue;
    v /= nv;

    std::vector<Eigen::VectorXd> V{v};
    std::vector<double> alpha, beta;
    bool exhausted = false;
    for (int it = 0; it < m; ++it) {
      Eigen::VectorXd w = llt.solve(M.cwiseProduct(V[it]));
      double a = mdot(w, V[it]);
      alpha.push_back(a);
      w -= a * V[it];
      if (it > 0) w -= beta[it - 1] * V[it - 1];
      for (int rep = 0; rep < 2; ++rep) {
        for (const auto& q : locked) w -= mdot(q, w) * q;
        for (const auto& q : V) w -= mdot(q, w) * q;
      }
      double b = std::sqrt(std::max(mdot(w, w), 0.0));
      ++total_iters;
      if (b < 1e-13) {
        exhausted = true;
        break;
      }
      beta.push_back(b);
      V.push_back(w / b);
    }
    int steps = static_cast<int>(alpha.size());
    Eigen::VectorXd dv = Eigen::Map<Eigen::VectorXd>(alpha.data(), steps);
    Eigen::VectorXd sv(steps > 1 ? steps - 1 : 0);
    for (int r = 0; r + 1 < steps; ++r) sv[r] = beta[r];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(dv, sv, Eigen::ComputeEigenvectors);
    if (es.info() != Eigen::Success)
      throw NumericError("eigenvalues: tridiagonal solve failed", {}, total_iters);

    double bt = exhausted ? 0.0 : beta[steps - 1];
    double theta_max = es.eigenvalues().maxCoeff();
    for (int r = steps - 1; r >= 0; --r) {  // descending theta = ascending lambda
      double theta = es.eigenvalues()[r];
      if (!(theta > 0)) break;
      double res = std::abs(bt * es.eigenvectors()(steps - 1, r));
      if (res > 1e-9 * theta_max) continue;
      Eigen::VectorXd y = Eigen::VectorXd::Zero(nin);
      for (int c = 0; c < steps; ++c) y += es.eigenvectors()(c, r) * V[c];
      y /= std::sqrt(mdot(y, y));
      locked.push_back(y);
      theta_locked.push_back(theta);
    }
  }

  if (static_cast<int>(theta_locked.size()) < k)
    throw NumericError("eigenvalues: Lanczos did not converge to the requested count",
                       theta_locked, total_iters);

  std::vector<double> lam;
  lam.reserve(theta_locked.size());
  for (double th : theta_locked) lam.push_back(sigma + 1.0 / th);
  std::sort(lam.begin(), lam.end());
  lam.resize(k);
  return lam;
}

}  // namespace mindisk
