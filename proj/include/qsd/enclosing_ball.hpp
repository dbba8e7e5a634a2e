#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qsd/bloch.hpp"

namespace qsd {

struct BallResult {
  Vec3 center;
  double radius = 0.0;
  /// Input indices at distance radius from the center (1e-9 relative).
  std::vector<std::size_t> support;
  std::uint64_t seed = 0;
};

/// Smallest ball containing every point. Welzl recursion with move-to-front
/// over a seeded shuffle; points closer than 1e-12 are merged first.
BallResult min_enclosing_ball(std::span<const Vec3> points, std::uint64_t seed = 0);

struct ShiftedBallResult {
  Vec3 center;
  /// min_k max_x (shift_x + |k - point_x|)
  double value = 0.0;
  /// Indices attaining the max within 1e-9.
  std::vector<std::size_t> active;
  int iterations = 0;
};

/// Minimizes the max of shifted distances: equivalently the smallest ball
/// enclosing the balls B(point_x, shift_x). Shifts must be positive and sum
/// to 1 within 1e-10.
ShiftedBallResult shifted_ball_dual(std::span<const Vec3> points, std::span<const double> shifts);

/// Nonnegative weights summing to 1 with sum w_i support_i = center (within
/// 1e-9). Subsets of size 1..4 are tried in lexicographic order and the
/// first nonnegative solution wins; unused points get weight 0.
/// Throws InfeasibleError when center is outside the hull.
std::vector<double> convex_weights_for_center(std::span<const Vec3> support, const Vec3& center);

namespace detail {

struct TouchingBall {
  double t;
  Vec3 k;
};

/// Balls B(k, t) internally tangent to every B(c_i, s_i) of a subset of at
/// most 4, with k in the affine hull of the centers. Affinely dependent
/// centers yield no candidates.
std::vector<TouchingBall> touching_balls(std::span<const Vec3> centers, std::span<const double> offsets);

}  // namespace detail

}  // namespace qsd
