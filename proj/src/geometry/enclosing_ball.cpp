#include "qsd/enclosing_ball.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <list>
#include <numeric>
#include <random>

#include "qsd/error.hpp"
#include "qsd/real_linalg.hpp"

namespace qsd {

namespace detail {

std::vector<TouchingBall> touching_balls(std::span<const Vec3> centers, std::span<const double> offsets) {
  const std::size_t m = centers.size();
  if (m == 0 || m > 4 || offsets.size() != m) throw InvalidArgument("touching_balls: need 1..4 balls");
  const double s1 = offsets[0];
  if (m == 1) return {{s1, centers[0]}};

  const std::size_t n = m - 1;
  std::vector<Vec3> d(n);
  for (std::size_t j = 0; j < n; ++j) d[j] = centers[j + 1] - centers[0];
  linalg::RMatrix gram(n, n);
  std::vector<double> g0(n), g1(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) gram(i, j) = dot(d[i], d[j]);
    const double sj = offsets[i + 1];
    g0[i] = 0.5 * (dot(d[i], d[i]) - sj * sj + s1 * s1);
    g1[i] = sj - s1;
  }
  auto b0 = linalg::solve(gram, g0);
  auto b1 = linalg::solve(gram, g1);
  if (!b0 || !b1) return {};
  Vec3 w0, w1;
  for (std::size_t j = 0; j < n; ++j) {
    w0 += (*b0)[j] * d[j];
    w1 += (*b1)[j] * d[j];
  }

  // |w0 + t w1|^2 = (t - s1)^2
  const double qa = dot(w1, w1) - 1.0;
  const double qb = 2.0 * (dot(w0, w1) + s1);
  const double qc = dot(w0, w0) - s1 * s1;
  std::vector<double> roots;
  if (std::abs(qa) < 1e-14) {
    if (std::abs(qb) > 1e-300) roots.push_back(-qc / qb);
  } else {
    double disc = qb * qb - 4.0 * qa * qc;
    if (disc < 0.0) {
      if (disc < -1e-12 * std::max(1.0, qb * qb)) return {};
      disc = 0.0;
    }
    const double sq = std::sqrt(disc);
    // Numerically stable pair of roots.
    const double q = -0.5 * (qb + (qb >= 0.0 ? sq : -sq));
    if (q != 0.0) {
      roots.push_back(q / qa);
      roots.push_back(qc / q);
    } else {
      roots.push_back(0.0);
    }
  }

  double smax = 0.0;
  for (double s : offsets) smax = std::max(smax, s);
  std::vector<TouchingBall> out;
  for (double t : roots) {
    if (!std::isfinite(t) || t < smax - 1e-12) continue;
    out.push_back({t, centers[0] + w0 + t * w1});
  }
  return out;
}

}  // namespace detail

namespace {

struct Ball {
  Vec3 c;
  double r = -1.0;
};

bool contains(const Ball& b, const Vec3& p) {
  if (b.r < 0.0) return false;
  return norm(p - b.c) <= b.r + 1e-13 * std::max(1.0, b.r);
}

Ball basis_ball(const std::vector<Vec3>& pts, const std::vector<std::size_t>& support) {
  if (support.empty()) return {};
  std::vector<Vec3> c;
  for (auto i : support) c.push_back(pts[i]);
  const std::vector<double> zero(c.size(), 0.0);
  auto balls = detail::touching_balls(c, zero);
  if (balls.empty()) return {};
  return {balls.front().k, balls.front().t};
}

void move_to_front(const std::vector<Vec3>& pts, std::list<std::size_t>& order,
                   std::list<std::size_t>::iterator end, std::vector<std::size_t>& support, Ball& ball) {
  Ball b = basis_ball(pts, support);
  if (b.r >= 0.0 || support.empty()) ball = b;
  if (support.size() == 4) return;
  for (auto it = order.begin(); it != end;) {
    auto cur = it++;
    if (!contains(ball, pts[*cur])) {
      support.push_back(*cur);
      move_to_front(pts, order, cur, support, ball);
      support.pop_back();
      order.splice(order.begin(), order, cur);
    }
  }
}

double max_distance(std::span<const Vec3> pts, const Vec3& c) {
  double r = 0.0;
  for (const auto& p : pts) r = std::max(r, norm(p - c));
  return r;
}

// Exhaustive fallback for the rare case the recursion ends with a ball that
// misses a point because of a degenerate basis.
Ball brute_force_ball(const std::vector<Vec3>& pts) {
  Ball best;
  best.r = std::numeric_limits<double>::infinity();
  const std::size_t n = pts.size();
  std::vector<std::size_t> subset;
  auto consider = [&]() {
    Ball b = basis_ball(pts, subset);
    if (b.r < 0.0 || b.r >= best.r) return;
    if (max_distance(pts, b.c) <= b.r * (1.0 + 1e-12) + 1e-15) best = b;
  };
  for (std::size_t a = 0; a < n; ++a) {
    subset = {a};
    consider();
    for (std::size_t b = a + 1; b < n; ++b) {
      subset = {a, b};
      consider();
      for (std::size_t c = b + 1; c < n; ++c) {
        subset = {a, b, c};
        consider();
        for (std::size_t d = c + 1; d < n; ++d) {
          subset = {a, b, c, d};
          consider();
        }
      }
    }
  }
  return best;
}

}  // namespace

BallResult min_enclosing_ball(std::span<const Vec3> points, std::uint64_t seed) {
  if (points.empty()) throw InvalidArgument("min_enclosing_ball: empty point set");
  for (const auto& p : points)
    if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z))
      throw InvalidArgument("min_enclosing_ball: non-finite point");

  std::vector<Vec3> unique;
  for (const auto& p : points) {
    bool dup = false;
    for (const auto& u : unique)
      if (norm(p - u) <= 1e-12) {
        dup = true;
        break;
      }
    if (!dup) unique.push_back(p);
  }

  std::vector<std::size_t> perm(unique.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::list<std::size_t> order(perm.begin(), perm.end());

  Ball ball;
  std::vector<std::size_t> support;
  move_to_front(unique, order, order.end(), support, ball);
  if (ball.r < 0.0 || max_distance(unique, ball.c) > ball.r + 1e-12 * std::max(1.0, ball.r))
    ball = brute_force_ball(unique);
  if (!std::isfinite(ball.r)) throw InternalError("min_enclosing_ball: no enclosing ball found");

  BallResult out;
  out.center = ball.c;
  out.radius = std::max(ball.r, max_distance(points, ball.c));
  out.seed = seed;
  const double cut = out.radius * (1.0 - 1e-9);
  for (std::size_t i = 0; i < points.size(); ++i)
    if (norm(points[i] - out.center) >= cut) out.support.push_back(i);
  return out;
}

namespace {

double shifted_value(std::span<const Vec3> pts, std::span<const double> s, const Vec3& k) {
  double v = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pts.size(); ++i) v = std::max(v, s[i] + norm(k - pts[i]));
  return v;
}

// Origin in the convex hull of the active unit directions, or an active ball
// whose center coincides with k (its subdifferential is the whole unit ball).
bool shifted_optimal(std::span<const Vec3> pts, std::span<const double> s, const Vec3& k, double t,
                     std::vector<std::size_t>& active) {
  active.clear();
  std::vector<Vec3> dirs;
  bool at_center = false;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double dist = norm(k - pts[i]);
    if (s[i] + dist >= t - 1e-9) {
      active.push_back(i);
      if (dist <= 1e-12) at_center = true;
      else dirs.push_back((k - pts[i]) / dist);
    }
  }
  if (at_center) return true;
  if (dirs.empty()) return false;
  try {
    convex_weights_for_center(dirs, Vec3{});
    return true;
  } catch (const InfeasibleError&) {
    return false;
  }
}

bool best_touching(std::span<const Vec3> pts, std::span<const double> s, const std::vector<std::size_t>& cand,
                   detail::TouchingBall& best) {
  bool found = false;
  best.t = std::numeric_limits<double>::infinity();
  const std::size_t n = cand.size();
  std::vector<Vec3> c;
  std::vector<double> o;
  auto consider = [&](std::initializer_list<std::size_t> idx) {
    c.clear();
    o.clear();
    for (auto i : idx) {
      c.push_back(pts[cand[i]]);
      o.push_back(s[cand[i]]);
    }
    for (const auto& tb : detail::touching_balls(c, o)) {
      if (tb.t >= best.t) continue;
      if (shifted_value(pts, s, tb.k) <= tb.t + 1e-10 * std::max(1.0, tb.t)) {
        best = tb;
        found = true;
      }
    }
  };
  for (std::size_t a = 0; a < n; ++a) {
    consider({a});
    for (std::size_t b = a + 1; b < n; ++b) {
      consider({a, b});
      for (std::size_t cc = b + 1; cc < n; ++cc) {
        consider({a, b, cc});
        for (std::size_t d = cc + 1; d < n; ++d) consider({a, b, cc, d});
      }
    }
  }
  if (found) best.t = shifted_value(pts, s, best.k);
  return found;
}

}  // namespace

ShiftedBallResult shifted_ball_dual(std::span<const Vec3> points, std::span<const double> shifts) {
  const std::size_t n = points.size();
  if (n == 0) throw InvalidArgument("shifted_ball_dual: empty point set");
  if (shifts.size() != n) throw InvalidArgument("shifted_ball_dual: points and shifts differ in length");
  double total = 0.0;
  for (double s : shifts) {
    if (!(s > 0.0)) throw InvalidArgument("shifted_ball_dual: shifts must be positive");
    total += s;
  }
  if (std::abs(total - 1.0) > 1e-10) throw InvalidArgument("shifted_ball_dual: shifts must sum to 1");

  // Subgradient warm start; only used to rank which constraints are likely
  // active before the exact solve.
  Vec3 k;
  for (std::size_t i = 0; i < n; ++i) k += shifts[i] * points[i];
  double spread = 0.0;
  for (const auto& p : points) spread = std::max(spread, norm(p - k));
  Vec3 best_k = k;
  double best_f = shifted_value(points, shifts, k);
  int iterations = 0;
  constexpr int kMaxIterations = 100000;
  constexpr int kStagnation = 2000;
  int since_improvement = 0;
  if (spread > 0.0) {
    for (iterations = 1; iterations <= kMaxIterations; ++iterations) {
      std::size_t arg = 0;
      double f = -std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < n; ++i) {
        const double v = shifts[i] + norm(k - points[i]);
        if (v > f) {
          f = v;
          arg = i;
        }
      }
      if (f < best_f - 1e-15) {
        best_f = f;
        best_k = k;
        since_improvement = 0;
      } else if (++since_improvement > kStagnation) {
        break;
      }
      const Vec3 g = k - points[arg];
      const double gn = norm(g);
      if (gn == 0.0) break;
      k -= (spread / std::sqrt(static_cast<double>(iterations))) * (g / gn);
    }
  }

  std::vector<std::size_t> ranked(n);
  std::iota(ranked.begin(), ranked.end(), 0);
  std::stable_sort(ranked.begin(), ranked.end(), [&](std::size_t a, std::size_t b) {
    return shifts[a] + norm(best_k - points[a]) > shifts[b] + norm(best_k - points[b]);
  });

  constexpr std::size_t kCandidates = 10;
  std::vector<std::size_t> cand(ranked.begin(), ranked.begin() + std::min(n, kCandidates));
  ShiftedBallResult out;
  out.iterations = iterations;
  for (int attempt = 0; attempt < 2; ++attempt) {
    detail::TouchingBall tb{};
    if (best_touching(points, shifts, cand, tb) && shifted_optimal(points, shifts, tb.k, tb.t, out.active)) {
      out.center = tb.k;
      out.value = tb.t;
      return out;
    }
    if (cand.size() == n) break;
    cand = ranked;
  }
  throw ConvergenceError("shifted_ball_dual: no optimal active set found");
}

std::vector<double> convex_weights_for_center(std::span<const Vec3> support, const Vec3& center) {
  const std::size_t n = support.size();
  if (n == 0) throw InvalidArgument("convex_weights_for_center: empty support");

  auto try_subset = [&](const std::vector<std::size_t>& idx, std::vector<double>& weights) {
    const std::size_t m = idx.size();
    const Vec3 p1 = support[idx[0]];
    const Vec3 rhs = center - p1;
    std::vector<double> mu;
    if (m > 1) {
      linalg::RMatrix e(3, m - 1);
      for (std::size_t j = 1; j < m; ++j) {
        const Vec3 d = support[idx[j]] - p1;
        e(0, j - 1) = d.x;
        e(1, j - 1) = d.y;
        e(2, j - 1) = d.z;
      }
      auto sol = linalg::least_squares(e, {rhs.x, rhs.y, rhs.z});
      if (!sol) return false;
      mu = *sol;
    }
    Vec3 fit;
    double first = 1.0;
    for (std::size_t j = 1; j < m; ++j) {
      fit += mu[j - 1] * (support[idx[j]] - p1);
      first -= mu[j - 1];
    }
    if (norm(fit - rhs) > 1e-9) return false;
    if (first < -1e-12) return false;
    for (double v : mu)
      if (v < -1e-12) return false;
    weights.assign(n, 0.0);
    weights[idx[0]] = std::max(0.0, first);
    for (std::size_t j = 1; j < m; ++j) weights[idx[j]] = std::max(0.0, mu[j - 1]);
    const double s = std::accumulate(weights.begin(), weights.end(), 0.0);
    for (auto& w : weights) w /= s;
    return true;
  };

  std::vector<double> weights;
  std::vector<std::size_t> idx;
  for (std::size_t size = 1; size <= std::min<std::size_t>(4, n); ++size) {
    // Lexicographic enumeration of size-element subsets.
    idx.resize(size);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
      if (try_subset(idx, weights)) return weights;
      std::size_t i = size;
      while (i > 0 && idx[i - 1] == n - size + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < size; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  throw InfeasibleError("convex_weights_for_center: center is not in the convex hull of the support");
}

}  // namespace qsd
