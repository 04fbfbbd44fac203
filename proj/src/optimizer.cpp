#include "qcorr/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>

#include "qcorr/rng.hpp"

namespace qcorr {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::size_t kGridStarts = 4;

using Point = std::vector<double>;

// A parameterization of (part of) the measurement manifold.
struct Chart {
  std::size_t params = 0;
  std::function<ProjectiveMeasurement(std::span<const double>)> map;
  std::function<Point(Rng&)> random_start;
};

// Applies the Givens product for an m-dimensional block to columns
// [offset, offset + m) of `u`, consuming m(m-1) angles.
void apply_givens_block(ComplexMatrix& u, std::size_t offset, std::size_t m, std::span<const double> angles) {
  std::size_t k = 0;
  for (std::size_t p = 0; p + 1 < m; ++p) {
    for (std::size_t q = p + 1; q < m; ++q) {
      const double theta = angles[k++];
      const double phi = angles[k++];
      const double c = std::cos(theta);
      const Complex s_plus = std::sin(theta) * std::polar(1.0, phi);
      const Complex s_minus = std::sin(theta) * std::polar(1.0, -phi);
      const auto cp = static_cast<Eigen::Index>(offset + p);
      const auto cq = static_cast<Eigen::Index>(offset + q);
      const ComplexVector up = u.col(cp);
      const ComplexVector uq = u.col(cq);
      u.col(cp) = c * up + s_plus * uq;
      u.col(cq) = -s_minus * up + c * uq;
    }
  }
}

// Orthonormalizes columns in place (modified Gram-Schmidt) so that rounding
// in long rotation products never trips the 1e-10 orthonormality check.
void reorthonormalize(ComplexMatrix& u) {
  for (Eigen::Index c = 0; c < u.cols(); ++c) {
    for (Eigen::Index p = 0; p < c; ++p) {
      u.col(c) -= u.col(p).dot(u.col(c)) * u.col(p);
    }
    u.col(c).normalize();
  }
}

Point random_angles(Rng& rng, std::size_t count) {
  Point x(count);
  for (auto& v : x) v = rng.uniform(-kPi, kPi);
  return x;
}

Chart qubit_chart() {
  Chart chart;
  chart.params = 2;
  chart.map = [](std::span<const double> a) { return measurement_from_bloch(BlochVector::from_angles(a[0], a[1])); };
  chart.random_start = [](Rng& rng) { return Point{rng.uniform(-kPi, kPi), rng.uniform(0.0, 4.0 * kPi)}; };
  return chart;
}

Chart givens_chart(std::size_t n) {
  Chart chart;
  chart.params = n * (n - 1);
  chart.map = [n](std::span<const double> a) {
    ComplexMatrix u = identity(n);
    apply_givens_block(u, 0, n, a);
    reorthonormalize(u);
    return ProjectiveMeasurement::from_basis(u);
  };
  const std::size_t count = chart.params;
  chart.random_start = [count](Rng& rng) { return random_angles(rng, count); };
  return chart;
}

struct LocalResult {
  Point x;
  double f = 0.0;
  bool converged = false;
};

// Nelder-Mead with standard coefficients (reflection 1, expansion 2,
// contraction 1/2, shrink 1/2). Stops when the spread of simplex values is
// within `tol`.
template <typename F>
LocalResult nelder_mead(F&& f, const Point& x0, double scale, std::size_t max_iterations, double tol) {
  const std::size_t dim = x0.size();
  std::vector<Point> simplex(dim + 1, x0);
  std::vector<double> values(dim + 1);
  for (std::size_t i = 0; i < dim; ++i) simplex[i + 1][i] += scale;
  for (std::size_t i = 0; i <= dim; ++i) values[i] = f(simplex[i]);

  std::vector<std::size_t> order(dim + 1);
  Point centroid(dim), trial(dim), trial2(dim);
  auto along = [&](Point& out, double t) {
    // out = centroid + t (centroid - worst)
    const Point& worst = simplex[order[dim]];
    for (std::size_t k = 0; k < dim; ++k) out[k] = centroid[k] + t * (centroid[k] - worst[k]);
  };

  bool converged = false;
  for (std::size_t iter = 0; iter < max_iterations; ++iter) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    const std::size_t best = order[0];
    const std::size_t worst = order[dim];
    if (values[worst] - values[best] <= tol) {
      converged = true;
      break;
    }
    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t k = 0; k < dim; ++k) centroid[k] += simplex[order[i]][k];
    }
    for (auto& c : centroid) c /= static_cast<double>(dim);

    along(trial, 1.0);
    const double fr = f(trial);
    if (fr < values[best]) {
      along(trial2, 2.0);
      const double fe = f(trial2);
      if (fe < fr) {
        simplex[worst] = trial2;
        values[worst] = fe;
      } else {
        simplex[worst] = trial;
        values[worst] = fr;
      }
      continue;
    }
    if (fr < values[order[dim - 1]]) {
      simplex[worst] = trial;
      values[worst] = fr;
      continue;
    }
    if (fr < values[worst]) {
      along(trial2, 0.5);
      const double fc = f(trial2);
      if (fc <= fr) {
        simplex[worst] = trial2;
        values[worst] = fc;
        continue;
      }
    } else {
      along(trial2, -0.5);
      const double fc = f(trial2);
      if (fc < values[worst]) {
        simplex[worst] = trial2;
        values[worst] = fc;
        continue;
      }
    }
    for (std::size_t i = 1; i <= dim; ++i) {
      Point& x = simplex[order[i]];
      for (std::size_t k = 0; k < dim; ++k) x[k] = simplex[best][k] + 0.5 * (x[k] - simplex[best][k]);
      values[order[i]] = f(x);
    }
  }
  const auto best_it = std::min_element(values.begin(), values.end());
  const auto best = static_cast<std::size_t>(best_it - values.begin());
  return {simplex[best], values[best], converged};
}

OptResult run_chart(const Objective& objective, const Chart& chart, const OptimizerConfig& cfg, bool use_grid) {
  cfg.check();
  const double sign = cfg.direction == Direction::Minimize ? 1.0 : -1.0;
  OptResult result;

  // Minimization form of the objective over chart parameters.
  auto eval = [&](std::span<const double> x) {
    const double v = objective(chart.map(x));
    ++result.evaluations;
    if (!std::isfinite(v)) {
      std::ostringstream os;
      os << "objective returned " << v;
      throw Error(ErrorCode::ObjectiveNaN, os.str());
    }
    return sign * v;
  };

  if (chart.params == 0) {
    const Point empty;
    const double f = eval(empty);
    result.value = sign * f;
    result.argmeasurement = chart.map(empty);
    result.converged = true;
    result.restart_values = {result.value};
    return result;
  }

  std::vector<Point> grid_starts;
  if (use_grid && cfg.qubit_grid > 0) {
    const std::size_t g = cfg.qubit_grid;
    std::vector<std::pair<double, std::size_t>> scored;
    scored.reserve(g * g);
    for (std::size_t i = 0; i < g; ++i) {
      const double x = -kPi + (static_cast<double>(i) + 0.5) * 2.0 * kPi / static_cast<double>(g);
      for (std::size_t j = 0; j < g; ++j) {
        const double y = (static_cast<double>(j) + 0.5) * 4.0 * kPi / static_cast<double>(g);
        const double pt[2] = {x, y};
        scored.emplace_back(eval(pt), i * g + j);
      }
    }
    const std::size_t keep = std::min({kGridStarts, cfg.restarts, scored.size()});
    std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(keep), scored.end());
    for (std::size_t k = 0; k < keep; ++k) {
      const std::size_t i = scored[k].second / g;
      const std::size_t j = scored[k].second % g;
      grid_starts.push_back({-kPi + (static_cast<double>(i) + 0.5) * 2.0 * kPi / static_cast<double>(g),
                             (static_cast<double>(j) + 0.5) * 4.0 * kPi / static_cast<double>(g)});
    }
  }

  auto local_eval = [&](const Point& x) { return eval(std::span<const double>(x)); };
  Point best_x;
  double best_f = std::numeric_limits<double>::infinity();
  bool best_converged = false;
  result.restart_values.reserve(cfg.restarts);
  for (std::size_t r = 0; r < cfg.restarts; ++r) {
    Point start;
    if (r < grid_starts.size()) {
      start = grid_starts[r];
    } else {
      Rng rng(derive_seed(cfg.seed, r));
      start = chart.random_start(rng);
    }
    const LocalResult local = nelder_mead(local_eval, start, cfg.simplex_scale, cfg.max_iterations, cfg.objective_tolerance);
    result.restart_values.push_back(sign * local.f);
    if (local.f < best_f) {
      best_f = local.f;
      best_x = local.x;
      best_converged = local.converged;
    }
  }
  result.value = sign * best_f;
  result.argmeasurement = chart.map(best_x);
  result.converged = best_converged;
  return result;
}

struct Block {
  std::size_t offset;
  std::size_t size;
};

}  // namespace

void OptimizerConfig::check() const {
  if (restarts == 0) throw Error(ErrorCode::BadSpec, "restarts must be at least 1");
  if (!(objective_tolerance > 0.0)) throw Error(ErrorCode::BadSpec, "objective_tolerance must be positive");
  if (!(simplex_scale > 0.0)) throw Error(ErrorCode::BadSpec, "simplex_scale must be positive");
  if (max_iterations == 0) throw Error(ErrorCode::BadSpec, "max_iterations must be at least 1");
}

std::size_t angle_count(std::size_t n) { return n == 2 ? 2 : n * (n - 1); }

ProjectiveMeasurement parameterize_measurement(std::span<const double> angles, std::size_t n) {
  if (n == 0) throw Error(ErrorCode::BadDims, "dimension must be positive");
  if (angles.size() != angle_count(n)) {
    std::ostringstream os;
    os << "dimension " << n << " needs " << angle_count(n) << " angles, got " << angles.size();
    throw Error(ErrorCode::BadAngleCount, os.str());
  }
  if (n == 2) return qubit_chart().map(angles);
  return givens_chart(n).map(angles);
}

OptResult optimize_over_measurements(const Objective& objective, std::size_t n, const OptimizerConfig& cfg) {
  if (n == 0) throw Error(ErrorCode::BadDims, "dimension must be positive");
  if (n == 2) return run_chart(objective, qubit_chart(), cfg, true);
  return run_chart(objective, givens_chart(n), cfg, false);
}

OptResult optimize_constrained(const Objective& objective, const DensityMatrix& marginal, const OptimizerConfig& cfg) {
  const std::size_t n = marginal.side();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(marginal.matrix());
  const RealVector& l = es.eigenvalues();

  std::vector<Block> blocks;
  std::size_t start = 0;
  for (std::size_t k = 1; k <= n; ++k) {
    if (k == n || l(static_cast<Eigen::Index>(k)) - l(static_cast<Eigen::Index>(k - 1)) >= kDegeneracyGap) {
      blocks.push_back({start, k - start});
      start = k;
    }
  }

  OptResult result;
  if (blocks.size() == 1) {
    // Every measurement commutes with a multiple of the identity.
    result = optimize_over_measurements(objective, n, cfg);
  } else {
    ComplexMatrix frame = es.eigenvectors();
    std::size_t params = 0;
    for (const auto& b : blocks) params += b.size * (b.size - 1);
    Chart chart;
    chart.params = params;
    chart.map = [frame, blocks](std::span<const double> a) {
      ComplexMatrix u = frame;
      std::size_t used = 0;
      for (const auto& b : blocks) {
        const std::size_t count = b.size * (b.size - 1);
        apply_givens_block(u, b.offset, b.size, a.subspan(used, count));
        used += count;
      }
      reorthonormalize(u);
      return ProjectiveMeasurement::from_basis(u);
    };
    chart.random_start = [params](Rng& rng) { return random_angles(rng, params); };
    result = run_chart(objective, chart, cfg, false);
  }

  if (!is_nondisturbing(marginal, result.argmeasurement, kNondisturbanceTol)) {
    throw Error(ErrorCode::Infeasible, "optimal measurement disturbs the designated marginal");
  }
  return result;
}

}  // namespace qcorr
