#include "qsd/parallel.hpp"

#include <limits>

#include "qsd/error.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qsd {

Vec3 GridSpec::point(std::size_t index) const {
  const std::size_t l = index % n[2];
  const std::size_t j = (index / n[2]) % n[1];
  const std::size_t i = index / (n[1] * n[2]);
  return {lo.x + step * static_cast<double>(i), lo.y + step * static_cast<double>(j),
          lo.z + step * static_cast<double>(l)};
}

namespace {

inline double cone_max(const Vec3& k, std::span<const Vec3> c, std::span<const double> s) {
  double v = -std::numeric_limits<double>::infinity();
  for (std::size_t x = 0; x < c.size(); ++x) {
    const double dx = k.x - c[x].x, dy = k.y - c[x].y, dz = k.z - c[x].z;
    const double f = s[x] + std::sqrt(dx * dx + dy * dy + dz * dz);
    if (f > v) v = f;
  }
  return v;
}

inline bool better(double v, std::size_t i, double bv, std::size_t bi) { return v < bv || (v == bv && i < bi); }

void check(const GridSpec& g, std::span<const Vec3> c, std::span<const double> s) {
  if (c.empty() || c.size() != s.size()) throw InvalidArgument("grid_min: centers and shifts must match");
  if (g.size() == 0) throw InvalidArgument("grid_min: empty grid");
}

}  // namespace

GridMin grid_min_serial(const GridSpec& g, std::span<const Vec3> centers, std::span<const double> shifts) {
  check(g, centers, shifts);
  double best = std::numeric_limits<double>::infinity();
  std::size_t arg = 0;
  const std::size_t total = g.size();
  for (std::size_t i = 0; i < total; ++i) {
    const double v = cone_max(g.point(i), centers, shifts);
    if (better(v, i, best, arg)) {
      best = v;
      arg = i;
    }
  }
  return {best, arg, g.point(arg)};
}

GridMin grid_min_omp(const GridSpec& g, std::span<const Vec3> centers, std::span<const double> shifts) {
  check(g, centers, shifts);
  double best = std::numeric_limits<double>::infinity();
  std::size_t arg = 0;
  const long long total = static_cast<long long>(g.size());
#pragma omp parallel
  {
    double lbest = std::numeric_limits<double>::infinity();
    std::size_t larg = 0;
#pragma omp for schedule(static) nowait
    for (long long i = 0; i < total; ++i) {
      const auto idx = static_cast<std::size_t>(i);
      const double v = cone_max(g.point(idx), centers, shifts);
      if (better(v, idx, lbest, larg)) {
        lbest = v;
        larg = idx;
      }
    }
#pragma omp critical(qsd_grid_min)
    if (better(lbest, larg, best, arg)) {
      best = lbest;
      arg = larg;
    }
  }
  return {best, arg, g.point(arg)};
}

namespace {

BatchResult solve_one(const WeightedEnsemble& e) {
  BatchResult r;
  try {
    r.solution = solve(e);
  } catch (...) {
    r.error = std::current_exception();
  }
  return r;
}

}  // namespace

std::vector<BatchResult> solve_batch_serial(const std::vector<WeightedEnsemble>& batch) {
  std::vector<BatchResult> out(batch.size());
  for (std::size_t i = 0; i < batch.size(); ++i) out[i] = solve_one(batch[i]);
  return out;
}

std::vector<BatchResult> solve_batch_omp(const std::vector<WeightedEnsemble>& batch) {
  std::vector<BatchResult> out(batch.size());
  const long long n = static_cast<long long>(batch.size());
#pragma omp parallel for schedule(dynamic)
  for (long long i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = solve_one(batch[static_cast<std::size_t>(i)]);
  return out;
}

}  // namespace qsd
