#include "qcorr/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace qcorr {

namespace {

void check_dims(const Dims& dims, std::size_t side) {
  if (dims.empty()) throw Error(ErrorCode::BadDims, "dimension sequence is empty");
  for (auto d : dims) {
    if (d == 0) throw Error(ErrorCode::BadDims, "subsystem dimension 0");
  }
  if (product(dims) != side) {
    std::ostringstream os;
    os << "product of dims is " << product(dims) << " but matrix side is " << side;
    throw Error(ErrorCode::BadDims, os.str());
  }
}

ComplexMatrix hermitian_part(const ComplexMatrix& m) { return (m + m.adjoint()) * 0.5; }

struct IndexSplit {
  std::vector<std::size_t> kept;
  std::vector<std::size_t> traced;
};

// For each flat index, its flat index within the kept and the traced factors.
IndexSplit split_indices(const Dims& dims, std::span<const std::size_t> keep) {
  std::vector<bool> is_kept(dims.size(), false);
  for (auto k : keep) {
    if (k >= dims.size()) throw Error(ErrorCode::BadDims, "partial trace index out of range");
    is_kept[k] = true;
  }
  const std::size_t total = product(dims);
  IndexSplit split{std::vector<std::size_t>(total), std::vector<std::size_t>(total)};
  std::vector<std::size_t> digits(dims.size());
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rem = flat;
    for (std::size_t s = dims.size(); s-- > 0;) {
      digits[s] = rem % dims[s];
      rem /= dims[s];
    }
    std::size_t kept = 0;
    std::size_t traced = 0;
    for (std::size_t s = 0; s < dims.size(); ++s) {
      if (is_kept[s]) {
        kept = kept * dims[s] + digits[s];
      } else {
        traced = traced * dims[s] + digits[s];
      }
    }
    split.kept[flat] = kept;
    split.traced[flat] = traced;
  }
  return split;
}

Dims kept_dims(const Dims& dims, std::span<const std::size_t> keep) {
  std::vector<std::size_t> sorted(keep.begin(), keep.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw Error(ErrorCode::BadDims, "duplicate subsystem in keep list");
  }
  Dims out;
  for (auto k : sorted) {
    if (k >= dims.size()) throw Error(ErrorCode::BadDims, "subsystem index out of range");
    out.push_back(dims[k]);
  }
  return out;
}

}  // namespace

std::size_t product(std::span<const std::size_t> dims) {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
}

ComplexMatrix identity(std::size_t n) {
  return ComplexMatrix::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::DimMismatch, "matrix shapes differ");
  }
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

DensityMatrix DensityMatrix::rebuild_clamped(const ComplexMatrix& h, Dims dims) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
  RealVector l = es.eigenvalues().cwiseMax(0.0);
  l /= l.sum();
  ComplexMatrix rebuilt = es.eigenvectors() * l.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
  return DensityMatrix(std::move(dims), hermitian_part(rebuilt), std::move(l));
}

DensityMatrix DensityMatrix::validate(const ComplexMatrix& m, Dims dims) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::BadDims, "matrix is not square");
  check_dims(dims, static_cast<std::size_t>(m.rows()));

  const double herm = max_abs_diff(m, m.adjoint());
  if (herm > kHermitianTol) {
    std::ostringstream os;
    os << "max |rho - rho^dagger| = " << herm;
    throw Error(ErrorCode::NotHermitian, os.str(), herm);
  }
  const double trace_err = std::abs(m.trace().real() - 1.0);
  if (trace_err > kTraceTol) {
    std::ostringstream os;
    os << "|Tr rho - 1| = " << trace_err;
    throw Error(ErrorCode::NotUnitTrace, os.str(), trace_err);
  }

  ComplexMatrix h = hermitian_part(m);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h, Eigen::EigenvaluesOnly);
  RealVector l = es.eigenvalues();
  const double min_eig = l.minCoeff();
  if (min_eig < -kPositivityTol) {
    std::ostringstream os;
    os << "minimum eigenvalue " << min_eig;
    throw Error(ErrorCode::NotPositive, os.str(), -min_eig);
  }
  if (min_eig < 0.0) return rebuild_clamped(h, std::move(dims));
  return DensityMatrix(std::move(dims), std::move(h), std::move(l));
}

DensityMatrix DensityMatrix::from_trusted(const ComplexMatrix& m, Dims dims) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::BadDims, "matrix is not square");
  check_dims(dims, static_cast<std::size_t>(m.rows()));
  ComplexMatrix h = hermitian_part(m);
  const double tr = h.trace().real();
  if (!(tr > 0.0)) throw Error(ErrorCode::NotUnitTrace, "non-positive trace", std::abs(tr - 1.0));
  h /= tr;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h, Eigen::EigenvaluesOnly);
  RealVector l = es.eigenvalues();
  if (l.minCoeff() < 0.0) return rebuild_clamped(h, std::move(dims));
  return DensityMatrix(std::move(dims), std::move(h), std::move(l));
}

PureStateVector PureStateVector::validate(const ComplexVector& amplitudes, Dims dims) {
  check_dims(dims, static_cast<std::size_t>(amplitudes.size()));
  const double norm_err = std::abs(amplitudes.squaredNorm() - 1.0);
  if (norm_err > kNormTol) {
    std::ostringstream os;
    os << "|<psi|psi> - 1| = " << norm_err;
    throw Error(ErrorCode::NotUnit, os.str(), norm_err);
  }
  return PureStateVector(std::move(dims), amplitudes);
}

PureStateVector PureStateVector::normalized(const ComplexVector& amplitudes, Dims dims) {
  check_dims(dims, static_cast<std::size_t>(amplitudes.size()));
  const double norm = amplitudes.norm();
  if (!(norm > 0.0)) throw Error(ErrorCode::NotUnit, "zero vector");
  return PureStateVector(std::move(dims), amplitudes / norm);
}

DensityMatrix PureStateVector::to_density() const {
  return DensityMatrix::from_trusted(amplitudes_ * amplitudes_.adjoint(), dims_);
}

double shannon_entropy(std::span<const double> probabilities) {
  double s = 0.0;
  for (double p : probabilities) {
    if (p > 0.0) s -= p * std::log2(p);
  }
  return s;
}

double shannon_entropy(const RealVector& probabilities) {
  return shannon_entropy(std::span<const double>(probabilities.data(), static_cast<std::size_t>(probabilities.size())));
}

double von_neumann_entropy(const DensityMatrix& rho) { return shannon_entropy(rho.eigenvalues()); }

double hermitian_entropy(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m, Eigen::EigenvaluesOnly);
  return shannon_entropy(RealVector(es.eigenvalues().cwiseMax(0.0)));
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::size_t> keep) {
  const Dims& dims = rho.dims();
  Dims out_dims = kept_dims(dims, keep);
  const IndexSplit split = split_indices(dims, keep);
  const auto out_side = static_cast<Eigen::Index>(product(out_dims));
  ComplexMatrix out = ComplexMatrix::Zero(out_side, out_side);
  const ComplexMatrix& m = rho.matrix();
  const auto n = static_cast<std::size_t>(m.rows());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (split.traced[i] != split.traced[j]) continue;
      out(static_cast<Eigen::Index>(split.kept[i]), static_cast<Eigen::Index>(split.kept[j])) +=
          m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
  }
  return DensityMatrix::from_trusted(out, std::move(out_dims));
}

DensityMatrix partial_trace(const DensityMatrix& rho, Party keep) {
  if (rho.dims().size() != 2) throw Error(ErrorCode::BadDims, "state is not bipartite");
  const std::size_t index = keep == Party::A ? 0 : 1;
  return partial_trace(rho, std::span<const std::size_t>(&index, 1));
}

DensityMatrix reduced_state(const PureStateVector& psi, std::span<const std::size_t> keep) {
  const Dims& dims = psi.dims();
  Dims out_dims = kept_dims(dims, keep);
  const IndexSplit split = split_indices(dims, keep);
  const auto kept_side = static_cast<Eigen::Index>(product(out_dims));
  const auto traced_side = static_cast<Eigen::Index>(product(dims)) / kept_side;
  ComplexMatrix reshaped = ComplexMatrix::Zero(kept_side, traced_side);
  const ComplexVector& amp = psi.amplitudes();
  for (std::size_t flat = 0; flat < split.kept.size(); ++flat) {
    reshaped(static_cast<Eigen::Index>(split.kept[flat]), static_cast<Eigen::Index>(split.traced[flat])) =
        amp(static_cast<Eigen::Index>(flat));
  }
  return DensityMatrix::from_trusted(reshaped * reshaped.adjoint(), std::move(out_dims));
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b) {
  Dims dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  return DensityMatrix::from_trusted(kron(a.matrix(), b.matrix()), std::move(dims));
}

void fix_phase(Eigen::Ref<ComplexVector> v, double threshold) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double mod = std::abs(v(i));
    if (mod > threshold) {
      v *= std::conj(v(i)) / mod;
      v(i) = Complex(mod, 0.0);
      return;
    }
  }
}

PureStateVector purify(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho.matrix());
  const RealVector& l = es.eigenvalues();
  const Eigen::Index side = l.size();
  std::vector<Eigen::Index> order;
  for (Eigen::Index k = side; k-- > 0;) {
    if (l(k) > 1e-12) order.push_back(k);
  }
  if (order.empty()) order.push_back(side - 1);
  const auto rank = static_cast<Eigen::Index>(order.size());

  ComplexVector psi = ComplexVector::Zero(side * rank);
  for (Eigen::Index k = 0; k < rank; ++k) {
    ComplexVector e = es.eigenvectors().col(order[static_cast<std::size_t>(k)]);
    fix_phase(e);
    const double w = std::sqrt(std::max(l(order[static_cast<std::size_t>(k)]), 0.0));
    for (Eigen::Index i = 0; i < side; ++i) psi(i * rank + k) = w * e(i);
  }
  Dims dims = rho.dims();
  dims.push_back(static_cast<std::size_t>(rank));
  return PureStateVector::normalized(psi, std::move(dims));
}

}  // namespace qcorr
