#include "qsd/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "qsd/bloch.hpp"
#include "qsd/error.hpp"
#include "qsd/parallel.hpp"

namespace qsd {

namespace {

// Lattice of the given step covering [c - half, c + half] clipped to the cube.
GridSpec box(const Vec3& c, double half, double step) {
  GridSpec g;
  g.step = step;
  Vec3 lo;
  for (int axis = 0; axis < 3; ++axis) {
    const double a = std::max(-1.0, c[axis] - half);
    const double b = std::min(1.0, c[axis] + half);
    const auto count = static_cast<std::size_t>(std::floor((b - a) / step + 1e-9)) + 1;
    (axis == 0 ? lo.x : axis == 1 ? lo.y : lo.z) = a;
    g.n[axis] = count;
  }
  g.lo = lo;
  return g;
}

}  // namespace

double dual_grid_oracle(const WeightedEnsemble& e, double resolution) {
  if (!(resolution > 0.0)) throw InvalidArgument("dual_grid_oracle: resolution must be positive");
  if (e.dim() != 2) throw DimensionError("dual_grid_oracle: states are not qubits");
  std::vector<Vec3> c;
  for (std::size_t x = 0; x < e.size(); ++x) c.push_back(e.prior(x) * to_bloch(e.state(x)));
  const auto& s = e.priors();

  GridMin best = grid_min_omp(box({}, 1.0, std::max(resolution, 0.05)), c, s);
  if (resolution < 0.05) best = grid_min_omp(box(best.point, 0.1, std::max(resolution, 0.005)), c, s);
  if (resolution < 0.005) best = grid_min_omp(box(best.point, 0.01, resolution), c, s);
  return best.value;
}

WeightedEnsemble random_ensemble(std::size_t dim, std::size_t n, bool pure, std::uint64_t seed) {
  if (dim < 2) throw InvalidArgument("random_ensemble: dim must be >= 2");
  if (n < 1) throw InvalidArgument("random_ensemble: need at least one state");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  std::vector<DensityOperator> states;
  for (std::size_t x = 0; x < n; ++x) {
    if (pure) {
      ComplexVector v(dim);
      for (auto& z : v) z = Complex(gauss(rng), gauss(rng));
      const double nv = norm(v);
      for (auto& z : v) z /= nv;
      states.push_back(DensityOperator::from_approximate(HermitianOperator::projector(v), 1e-9));
    } else {
      CMatrix g(dim);
      for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
      HermitianOperator w = hermitian_part(g * g.adjoint());
      w *= 1.0 / w.trace();
      states.push_back(DensityOperator::from_approximate(w, 1e-9));
    }
  }

  std::vector<double> q(n, 1.0);
  if (n > 1) {
    while (true) {
      std::vector<double> cuts(n - 1);
      for (auto& u : cuts) u = unif(rng);
      std::sort(cuts.begin(), cuts.end());
      double prev = 0.0;
      for (std::size_t i = 0; i < n - 1; ++i) {
        q[i] = cuts[i] - prev;
        prev = cuts[i];
      }
      q[n - 1] = 1.0 - prev;
      if (*std::min_element(q.begin(), q.end()) >= 1e-6) break;
    }
    const double s = std::accumulate(q.begin(), q.end(), 0.0);
    for (auto& v : q) v /= s;
  }
  return WeightedEnsemble(std::move(q), std::move(states), seed);
}

double distance_from_uniform(const std::vector<double>& p) {
  if (p.empty()) throw InvalidArgument("distance_from_uniform: empty distribution");
  double total = 0.0;
  for (double v : p) {
    if (v < -1e-12) throw InvalidArgument("distance_from_uniform: negative probability");
    total += v;
  }
  if (std::abs(total - 1.0) > 1e-10) throw InvalidArgument("distance_from_uniform: probabilities must sum to 1");
  const double u = 1.0 / static_cast<double>(p.size());
  double d = 0.0;
  for (double v : p) d += std::abs(v - u);
  return 0.5 * d;
}

ConditionalTable::ConditionalTable(std::vector<std::vector<double>> rows) : p_(std::move(rows)) {
  const std::size_t n = p_.size();
  if (n == 0) throw InvalidArgument("ConditionalTable: empty table");
  for (const auto& r : p_) {
    if (r.size() != n) throw DimensionError("ConditionalTable: table must be square");
    for (double v : r)
      if (!(v >= 0.0 && v <= 1.0)) throw InvalidArgument("ConditionalTable: entries must lie in [0, 1]");
  }
  for (std::size_t y = 0; y < n; ++y) {
    double s = 0.0;
    for (std::size_t x = 0; x < n; ++x) s += p_[x][y];
    if (std::abs(s - 1.0) > 1e-10) throw InvalidArgument("ConditionalTable: columns must sum to 1");
  }
}

ConditionalTable ConditionalTable::from_born(const WeightedEnsemble& e, const std::vector<HermitianOperator>& povm) {
  const std::size_t n = e.size();
  if (povm.size() != n) throw DimensionError("ConditionalTable::from_born: POVM length differs from ensemble");
  std::vector<std::vector<double>> rows(n, std::vector<double>(n));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      rows[x][y] = std::clamp(trace_product(povm[x], e.state(y).op()), 0.0, 1.0);
  return ConditionalTable(std::move(rows));
}

std::vector<double> ConditionalTable::column(std::size_t y) const {
  std::vector<double> c;
  for (const auto& r : p_) c.push_back(r[y]);
  return c;
}

TableGuess guessing_from_table(const std::vector<double>& priors, const ConditionalTable& table) {
  const std::size_t n = table.size();
  if (priors.size() != n) throw DimensionError("guessing_from_table: priors and table differ in size");
  const double u = 1.0 / static_cast<double>(n);
  TableGuess g;
  g.premise_holds = true;
  g.p_from_distance = u;
  for (std::size_t y = 0; y < n; ++y) {
    g.p_guess_diag += priors[y] * table(y, y);
    // Columns can drift from unit sum by ~1e-16; d is the distance from uniform
    // on the column as given.
    double d = 0.0;
    for (std::size_t x = 0; x < n; ++x) {
      d += std::abs(table(x, y) - u);
      if (x == y ? table(x, y) < u - 1e-12 : table(x, y) > u + 1e-12) g.premise_holds = false;
    }
    g.p_from_distance += priors[y] * 0.5 * d;
  }
  return g;
}

}  // namespace qsd
