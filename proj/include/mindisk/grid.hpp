#pragma once

#include <array>
#include <cmath>
#include <cstddef>

#include "mindisk/errors.hpp"

namespace mindisk {

// Closed uniform 1-D grid: n intervals, n+1 nodes.
struct GridAxis {
  double lo = 0.0;
  double hi = 1.0;
  int n = 1;

  double h() const { return (hi - lo) / n; }
  double at(int i) const { return lo + i * h(); }
};

// Tensor grid over a parameter rectangle, row-major in (i, j): i along s, j along t.
struct Grid2 {
  GridAxis s, t;

  int ns() const { return s.n; }
  int nt() const { return t.n; }
  int rows() const { return s.n + 1; }
  int cols() const { return t.n + 1; }
  std::size_t count() const { return static_cast<std::size_t>(rows()) * cols(); }
  std::size_t idx(int i, int j) const { return static_cast<std::size_t>(i) * cols() + j; }
  bool on_boundary(int i, int j) const { return i == 0 || j == 0 || i == s.n || j == t.n; }

  void validate() const {
    if (!(s.hi > s.lo) || !(t.hi > t.lo)) throw InvalidInputError("grid: empty parameter rectangle");
    if (s.n < 1 || t.n < 1) throw InvalidInputError("grid: need at least one cell per direction");
    if (!std::isfinite(s.lo) || !std::isfinite(s.hi) || !std::isfinite(t.lo) || !std::isfinite(t.hi))
      throw InvalidInputError("grid: non-finite bounds");
  }
};

// Second-order finite-difference stencils on a uniform axis, one-sided at the ends.
// Returns {offset of first tap relative to i, taps}; weights exclude the 1/h^p factor.
struct Stencil {
  int first = 0;
  std::array<double, 4> w{};
  int len = 0;
};

inline Stencil d1_stencil(int i, int n) {
  if (i == 0) return {0, {-1.5, 2.0, -0.5, 0.0}, 3};
  if (i == n) return {-2, {0.5, -2.0, 1.5, 0.0}, 3};
  return {-1, {-0.5, 0.0, 0.5, 0.0}, 3};
}

inline Stencil d2_stencil(int i, int n) {
  if (i == 0) return {0, {2.0, -5.0, 4.0, -1.0}, 4};
  if (i == n) return {-3, {-1.0, 4.0, -5.0, 2.0}, 4};
  return {-1, {1.0, -2.0, 1.0, 0.0}, 3};
}

}  // namespace mindisk
