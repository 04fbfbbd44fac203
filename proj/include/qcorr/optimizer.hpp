#pragma once

// Optimization of a real objective over rank-1 projective measurements.
//
// Qubits use the two-angle Bloch chart with a coarse grid followed by
// Nelder-Mead refinement. Larger dimensions use a product of complex Givens
// rotations (one angle and one phase per plane, column phases dropped).
// Reported maxima are lower bounds of the true maximum and reported minima
// upper bounds of the true minimum.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "qcorr/measurement.hpp"

namespace qcorr {

enum class Direction { Minimize, Maximize };

struct OptimizerConfig {
  Direction direction = Direction::Minimize;
  std::size_t restarts = 32;
  std::size_t max_iterations = 400;  // per restart
  double objective_tolerance = 1e-9;
  double simplex_scale = 0.3;  // radians
  std::uint64_t seed = 0;
  std::size_t qubit_grid = 64;  // points per angle

  // Throws BadSpec when restarts is zero or a tolerance is not positive.
  void check() const;

  OptimizerConfig with_direction(Direction d) const {
    OptimizerConfig copy = *this;
    copy.direction = d;
    return copy;
  }
};

struct OptResult {
  double value = 0.0;
  ProjectiveMeasurement argmeasurement = ProjectiveMeasurement::computational(1);
  std::size_t evaluations = 0;
  bool converged = false;
  std::vector<double> restart_values;
};

using Objective = std::function<double(const ProjectiveMeasurement&)>;

// Number of real chart parameters for dimension n: 2 for qubits, n(n-1)
// otherwise (0 for n = 1).
std::size_t angle_count(std::size_t n);

// n = 2: angles (x, y) give the Bloch vector n1 = cos(x/2) sin(y/2),
// n2 = cos(x/2) cos(y/2), n3 = sin(x/2). n > 2: angles are (theta, phi)
// pairs for the planes (0,1), (0,2), ..., (n-2,n-1) in that order, and the
// basis is the columns of G_1 G_2 ... G_K.
ProjectiveMeasurement parameterize_measurement(std::span<const double> angles, std::size_t n);

OptResult optimize_over_measurements(const Objective& objective, std::size_t n, const OptimizerConfig& cfg);

// Optimizes over the measurements that leave `marginal` undisturbed: bases
// built from orthonormal bases of its eigenspaces. Eigenvalues closer than
// 1e-8 are treated as one degenerate eigenspace. The returned measurement is
// checked with is_nondisturbing at 1e-8.
OptResult optimize_constrained(const Objective& objective, const DensityMatrix& marginal, const OptimizerConfig& cfg);

inline constexpr double kDegeneracyGap = 1e-8;
inline constexpr double kNondisturbanceTol = 1e-8;

}  // namespace qcorr
