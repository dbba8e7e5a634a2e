#pragma once

#include <array>
#include <cstddef>
#include <exception>
#include <optional>
#include <span>
#include <vector>

#include "qsd/bloch.hpp"
#include "qsd/ensemble.hpp"
#include "qsd/solver.hpp"

namespace qsd {

/// Axis-aligned lattice lo + step*(i, j, l), 0 <= i < n[0] etc.
struct GridSpec {
  Vec3 lo;
  double step = 0.0;
  std::array<std::size_t, 3> n{};

  std::size_t size() const { return n[0] * n[1] * n[2]; }
  Vec3 point(std::size_t index) const;
};

struct GridMin {
  double value = 0.0;
  std::size_t index = 0;
  Vec3 point;
};

/// min over the lattice of max_x (shift_x + |k - center_x|). Ties go to the
/// lowest index, so both variants return identical results.
GridMin grid_min_serial(const GridSpec& g, std::span<const Vec3> centers, std::span<const double> shifts);
GridMin grid_min_omp(const GridSpec& g, std::span<const Vec3> centers, std::span<const double> shifts);

struct BatchResult {
  std::optional<DiscriminationSolution> solution;
  std::exception_ptr error;
};

/// solve() on every ensemble; failures are captured per index.
std::vector<BatchResult> solve_batch_serial(const std::vector<WeightedEnsemble>& batch);
std::vector<BatchResult> solve_batch_omp(const std::vector<WeightedEnsemble>& batch);

}  // namespace qsd
