#include "qcorr/measurement.hpp"

#include <cmath>
#include <sstream>

namespace qcorr {

namespace {

std::size_t measured_index(Party measured) { return measured == Party::A ? 0 : 1; }

void require_bipartite(const DensityMatrix& rho) {
  if (rho.dims().size() != 2) throw Error(ErrorCode::BadDims, "state is not bipartite");
}

void require_dim(std::size_t expected, const ProjectiveMeasurement& m) {
  if (m.dim() != expected) {
    std::ostringstream os;
    os << "measurement acts on dimension " << m.dim() << ", subsystem has dimension " << expected;
    throw Error(ErrorCode::DimMismatch, os.str());
  }
}

// Embeds an operator on the measured party into the bipartite space.
ComplexMatrix embed(const ComplexMatrix& op, const Dims& dims, Party measured) {
  return measured == Party::B ? kron(identity(dims[0]), op) : kron(op, identity(dims[1]));
}

}  // namespace

ProjectiveMeasurement ProjectiveMeasurement::from_basis(const ComplexMatrix& basis) {
  if (basis.rows() != basis.cols() || basis.rows() == 0) {
    throw Error(ErrorCode::DimMismatch, "basis matrix must be square and non-empty");
  }
  const ComplexMatrix id = identity(static_cast<std::size_t>(basis.rows()));
  const double ortho = max_abs_diff(basis.adjoint() * basis, id);
  if (ortho > kOrthonormalTol) {
    std::ostringstream os;
    os << "max |<b_i|b_j> - delta_ij| = " << ortho;
    throw Error(ErrorCode::NotOrthonormal, os.str(), ortho);
  }
  const double complete = max_abs_diff(basis * basis.adjoint(), id);
  if (complete > kOrthonormalTol) {
    std::ostringstream os;
    os << "projectors sum to identity only within " << complete;
    throw Error(ErrorCode::NotOrthonormal, os.str(), complete);
  }
  ComplexMatrix fixed = basis;
  for (Eigen::Index c = 0; c < fixed.cols(); ++c) fix_phase(fixed.col(c));
  return ProjectiveMeasurement(std::move(fixed));
}

ProjectiveMeasurement ProjectiveMeasurement::computational(std::size_t dim) {
  return ProjectiveMeasurement(identity(dim));
}

ComplexMatrix ProjectiveMeasurement::projector(std::size_t i) const {
  const auto col = basis_.col(static_cast<Eigen::Index>(i));
  return col * col.adjoint();
}

BlochVector BlochVector::from_angles(double x, double y) {
  return {std::cos(x / 2) * std::sin(y / 2), std::cos(x / 2) * std::cos(y / 2), std::sin(x / 2)};
}

ProjectiveMeasurement measurement_from_bloch(const BlochVector& n) {
  const double norm_err = std::abs(n.n1 * n.n1 + n.n2 * n.n2 + n.n3 * n.n3 - 1.0);
  if (norm_err > kNormTol) {
    std::ostringstream os;
    os << "Bloch vector norm^2 differs from 1 by " << norm_err;
    throw Error(ErrorCode::NotUnit, os.str(), norm_err);
  }
  // +1 eigenvector of n.sigma. Both forms are proportional; pick the one
  // away from its singular pole.
  ComplexVector up(2);
  if (n.n3 >= 0.0) {
    up << Complex(1.0 + n.n3, 0.0), Complex(n.n1, n.n2);
  } else {
    up << Complex(n.n1, -n.n2), Complex(1.0 - n.n3, 0.0);
  }
  up.normalize();
  ComplexVector down(2);
  down << -std::conj(up(1)), std::conj(up(0));
  ComplexMatrix basis(2, 2);
  basis.col(0) = up;
  basis.col(1) = down;
  return ProjectiveMeasurement::from_basis(basis);
}

double OutcomeEnsemble::average_conditional_entropy() const {
  double total = 0.0;
  for (std::size_t i = 0; i < probabilities.size(); ++i) {
    if (!negligible[i]) total += probabilities[i] * von_neumann_entropy(conditional_states[i]);
  }
  return total;
}

DensityMatrix dephase(const DensityMatrix& rho, const ProjectiveMeasurement& m, Party measured) {
  require_bipartite(rho);
  require_dim(rho.dims()[measured_index(measured)], m);
  ComplexMatrix out = ComplexMatrix::Zero(rho.matrix().rows(), rho.matrix().cols());
  for (std::size_t i = 0; i < m.outcomes(); ++i) {
    const ComplexMatrix p = embed(m.projector(i), rho.dims(), measured);
    out.noalias() += p * rho.matrix() * p;
  }
  return DensityMatrix::from_trusted(out, rho.dims());
}

DensityMatrix dephase_local(const DensityMatrix& rho, const ProjectiveMeasurement& m) {
  require_dim(rho.side(), m);
  ComplexMatrix out = ComplexMatrix::Zero(rho.matrix().rows(), rho.matrix().cols());
  for (std::size_t i = 0; i < m.outcomes(); ++i) {
    const ComplexMatrix p = m.projector(i);
    out.noalias() += p * rho.matrix() * p;
  }
  return DensityMatrix::from_trusted(out, rho.dims());
}

OutcomeEnsemble outcome_ensemble(const DensityMatrix& rho, const ProjectiveMeasurement& m, Party measured) {
  require_bipartite(rho);
  const Dims& dims = rho.dims();
  require_dim(dims[measured_index(measured)], m);
  const std::size_t other = dims[1 - measured_index(measured)];

  OutcomeEnsemble ens;
  ens.probabilities.reserve(m.outcomes());
  ens.conditional_states.reserve(m.outcomes());
  ens.negligible.reserve(m.outcomes());
  for (std::size_t i = 0; i < m.outcomes(); ++i) {
    // (I (x) <b_i|) rho (I (x) |b_i>) = Tr_B[(I (x) Pi_i) rho]
    const ComplexMatrix w = embed(m.basis().col(static_cast<Eigen::Index>(i)), dims, measured);
    const ComplexMatrix unnormalized = w.adjoint() * rho.matrix() * w;
    const double p = std::max(unnormalized.trace().real(), 0.0);
    ens.probabilities.push_back(p);
    if (p <= kNegligibleProbability) {
      ens.negligible.push_back(true);
      ens.conditional_states.push_back(
          DensityMatrix::from_trusted(identity(other) / static_cast<double>(other), Dims{other}));
    } else {
      ens.negligible.push_back(false);
      ens.conditional_states.push_back(DensityMatrix::from_trusted(unnormalized / p, Dims{other}));
    }
  }
  return ens;
}

bool is_nondisturbing(const DensityMatrix& rho, const ProjectiveMeasurement& m, double tol) {
  require_dim(rho.side(), m);
  ComplexMatrix out = ComplexMatrix::Zero(rho.matrix().rows(), rho.matrix().cols());
  for (std::size_t i = 0; i < m.outcomes(); ++i) {
    const ComplexMatrix p = m.projector(i);
    out.noalias() += p * rho.matrix() * p;
  }
  return max_abs_diff(out, rho.matrix()) <= tol;
}

ProjectiveMeasurement eigenbasis_measurement(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho.matrix());
  return ProjectiveMeasurement::from_basis(es.eigenvectors());
}

}  // namespace qcorr
