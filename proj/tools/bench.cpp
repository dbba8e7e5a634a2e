// Serial vs OpenMP timings for the grid oracle kernel and batch solves.
#include <chrono>
#include <cstdio>
#include <vector>

#include "qsd/bloch.hpp"
#include "qsd/oracle.hpp"
#include "qsd/parallel.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

template <class F>
double seconds(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main() {
  int threads = 1;
#ifdef _OPENMP
  threads = omp_get_max_threads();
#endif
  std::printf("threads: %d\n", threads);

  const auto e = qsd::random_ensemble(2, 6, false, 7);
  std::vector<qsd::Vec3> c;
  for (std::size_t x = 0; x < e.size(); ++x) c.push_back(e.prior(x) * qsd::to_bloch(e.state(x)));
  qsd::GridSpec g;
  g.lo = {-1, -1, -1};
  g.step = 0.01;
  g.n = {201, 201, 201};

  qsd::GridMin a, b;
  const double ts = seconds([&] { a = qsd::grid_min_serial(g, c, e.priors()); });
  const double tp = seconds([&] { b = qsd::grid_min_omp(g, c, e.priors()); });
  std::printf("grid_min   %zu points  serial %.3fs  omp %.3fs  same=%d\n", g.size(), ts, tp,
              a.index == b.index && a.value == b.value);

  std::vector<qsd::WeightedEnsemble> batch;
  for (std::uint64_t s = 0; s < 2000; ++s) batch.push_back(qsd::random_ensemble(2, 2 + s % 5, s % 2 == 0, s));
  std::vector<qsd::BatchResult> rs, rp;
  const double bs = seconds([&] { rs = qsd::solve_batch_serial(batch); });
  const double bp = seconds([&] { rp = qsd::solve_batch_omp(batch); });
  std::printf("solve_batch %zu ensembles  serial %.3fs  omp %.3fs\n", batch.size(), bs, bp);
  return 0;
}
