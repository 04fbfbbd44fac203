#include "qcorr/states.hpp"

#include <cmath>
#include <sstream>

namespace qcorr {

namespace {

void require_bipartite(const DensityMatrix& rho) {
  if (rho.dims().size() != 2) throw Error(ErrorCode::BadDims, "state is not bipartite");
}

void require_channel_dim(const DensityMatrix& rho, const ChannelOnB& channel) {
  if (rho.dims()[1] != channel.dim()) {
    std::ostringstream os;
    os << "channel acts on dimension " << channel.dim() << ", B has dimension " << rho.dims()[1];
    throw Error(ErrorCode::DimMismatch, os.str());
  }
}

DensityMatrix ginibre_state(std::size_t side, std::size_t rank, Dims dims, Rng& rng) {
  const ComplexMatrix g = ginibre_matrix(side, rank, rng);
  ComplexMatrix m = g * g.adjoint();
  m /= m.trace().real();
  return DensityMatrix::from_trusted(m, std::move(dims));
}

}  // namespace

std::string_view to_string(StateKind kind) {
  switch (kind) {
    case StateKind::GinibreMixed: return "ginibre-mixed";
    case StateKind::HaarPure: return "haar-pure";
    case StateKind::ClassicalQuantum: return "classical-quantum";
    case StateKind::BellDiagonalUniform: return "bell-diagonal-uniform";
    case StateKind::ChannelOnB: return "channel-on-B";
  }
  return "unknown";
}

void RandomSpec::check() const {
  if (dims.empty()) throw Error(ErrorCode::BadSpec, "dims is empty");
  for (std::size_t i = 0; i < dims.size(); ++i) {
    const bool trivial_a_allowed = i == 0 && dims.size() > 1;
    if (dims[i] < 2 && !(trivial_a_allowed && dims[i] == 1)) {
      std::ostringstream os;
      os << "dimension " << dims[i] << " at position " << i << " is not allowed";
      throw Error(ErrorCode::BadSpec, os.str());
    }
  }
  if (rank && *rank == 0) throw Error(ErrorCode::BadSpec, "rank must be at least 1");
  if (rank && *rank > product(dims)) throw Error(ErrorCode::BadSpec, "rank exceeds the total dimension");
  if (kind == StateKind::ClassicalQuantum && dims.size() != 2) {
    throw Error(ErrorCode::BadSpec, "classical-quantum states are bipartite");
  }
  if (kind == StateKind::BellDiagonalUniform && dims != Dims{2, 2}) {
    throw Error(ErrorCode::BadSpec, "Bell-diagonal states live on dims [2, 2]");
  }
  if (kind == StateKind::ChannelOnB) {
    throw Error(ErrorCode::BadSpec, "channel-on-B is generated by random_channel_on_B, not random_state");
  }
}

const ComplexMatrix& pauli(int index) {
  static const ComplexMatrix s1 = (ComplexMatrix(2, 2) << 0, 1, 1, 0).finished();
  static const ComplexMatrix s2 = (ComplexMatrix(2, 2) << 0, Complex(0, -1), Complex(0, 1), 0).finished();
  static const ComplexMatrix s3 = (ComplexMatrix(2, 2) << 1, 0, 0, -1).finished();
  switch (index) {
    case 1: return s1;
    case 2: return s2;
    case 3: return s3;
    default: throw Error(ErrorCode::BadSpec, "Pauli index must be 1, 2 or 3");
  }
}

DensityMatrix bell_diagonal(const BellDiagonalParams& c) {
  c.check();
  ComplexMatrix m = identity(4);
  m += c.c1 * kron(pauli(1), pauli(1));
  m += c.c2 * kron(pauli(2), pauli(2));
  m += c.c3 * kron(pauli(3), pauli(3));
  return DensityMatrix::validate(m / 4.0, Dims{2, 2});
}

DensityMatrix bell_state_phi_plus() {
  ComplexMatrix m = ComplexMatrix::Zero(4, 4);
  m(0, 0) = m(0, 3) = m(3, 0) = m(3, 3) = 0.5;
  return DensityMatrix::validate(m, Dims{2, 2});
}

BellDiagonalParams random_bell_params(Rng& rng) {
  for (;;) {
    BellDiagonalParams c{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    if (c.is_valid(0.0)) return c;
  }
}

ComplexMatrix ginibre_matrix(std::size_t rows, std::size_t cols, Rng& rng) {
  ComplexMatrix g(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  // Row-major fill keeps the sample order independent of storage layout.
  for (Eigen::Index i = 0; i < g.rows(); ++i) {
    for (Eigen::Index j = 0; j < g.cols(); ++j) g(i, j) = rng.complex_normal();
  }
  return g;
}

ComplexMatrix haar_unitary(std::size_t n, Rng& rng) {
  const ComplexMatrix g = ginibre_matrix(n, n, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix& r = qr.matrixQR();
  for (Eigen::Index k = 0; k < q.cols(); ++k) {
    const Complex d = r(k, k);
    const double mod = std::abs(d);
    if (mod > 0.0) q.col(k) *= d / mod;
  }
  return q;
}

AnyState random_state(const RandomSpec& spec) {
  spec.check();
  Rng rng(spec.seed);
  const std::size_t side = product(spec.dims);
  switch (spec.kind) {
    case StateKind::GinibreMixed:
      return ginibre_state(side, spec.rank.value_or(side), spec.dims, rng);
    case StateKind::HaarPure: {
      ComplexVector v(static_cast<Eigen::Index>(side));
      for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = rng.complex_normal();
      return PureStateVector::normalized(v, spec.dims);
    }
    case StateKind::ClassicalQuantum: {
      const std::size_t m = spec.dims[0];
      const std::size_t n = spec.dims[1];
      std::vector<double> p(n);
      double total = 0.0;
      for (auto& v : p) total += (v = rng.exponential());
      ComplexMatrix rho = ComplexMatrix::Zero(static_cast<Eigen::Index>(m * n), static_cast<Eigen::Index>(m * n));
      for (std::size_t i = 0; i < n; ++i) {
        const DensityMatrix rho_a = ginibre_state(m, m, Dims{m}, rng);
        ComplexMatrix proj = ComplexMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
        proj(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = 1.0;
        rho += (p[i] / total) * kron(rho_a.matrix(), proj);
      }
      return DensityMatrix::from_trusted(rho, spec.dims);
    }
    case StateKind::BellDiagonalUniform:
      return bell_diagonal(random_bell_params(rng));
    case StateKind::ChannelOnB:
      break;
  }
  throw Error(ErrorCode::BadSpec, "unsupported state kind");
}

DensityMatrix random_density(const RandomSpec& spec) {
  AnyState s = random_state(spec);
  if (auto* pure = std::get_if<PureStateVector>(&s)) return pure->to_density();
  return std::get<DensityMatrix>(std::move(s));
}

DensityMatrix rotate_B(const DensityMatrix& rho, const ComplexMatrix& u) {
  require_bipartite(rho);
  const ComplexMatrix full = kron(identity(rho.dims()[0]), u);
  return DensityMatrix::from_trusted(full * rho.matrix() * full.adjoint(), rho.dims());
}

ChannelOnB ChannelOnB::validate(std::vector<ComplexMatrix> kraus) {
  if (kraus.empty()) throw Error(ErrorCode::InvariantError, "channel has no Kraus operators");
  const Eigen::Index n = kraus.front().cols();
  ComplexMatrix sum = ComplexMatrix::Zero(n, n);
  for (const auto& v : kraus) {
    if (v.rows() != n || v.cols() != n) throw Error(ErrorCode::DimMismatch, "Kraus operators must be square and equal-sized");
    sum += v.adjoint() * v;
  }
  const double err = max_abs_diff(sum, identity(static_cast<std::size_t>(n)));
  if (err > 1e-10) {
    std::ostringstream os;
    os << "sum V_i^dagger V_i differs from I by " << err;
    throw Error(ErrorCode::InvariantError, os.str(), err);
  }
  return ChannelOnB(std::move(kraus));
}

ChannelOnB random_channel_on_B(std::size_t n, std::size_t kraus_count, std::uint64_t seed) {
  if (n == 0 || kraus_count == 0) throw Error(ErrorCode::BadSpec, "channel needs n >= 1 and kraus_count >= 1");
  Rng rng(seed);
  const ComplexMatrix u = haar_unitary(n * kraus_count, rng);
  const auto side = static_cast<Eigen::Index>(n);
  std::vector<ComplexMatrix> kraus;
  kraus.reserve(kraus_count);
  for (std::size_t i = 0; i < kraus_count; ++i) {
    kraus.push_back(u.block(static_cast<Eigen::Index>(i) * side, 0, side, side));
  }
  return ChannelOnB::validate(std::move(kraus));
}

DensityMatrix apply_channel_on_B(const DensityMatrix& rho, const ChannelOnB& channel) {
  require_bipartite(rho);
  require_channel_dim(rho, channel);
  const ComplexMatrix id_a = identity(rho.dims()[0]);
  ComplexMatrix out = ComplexMatrix::Zero(rho.matrix().rows(), rho.matrix().cols());
  for (const auto& v : channel.kraus()) {
    const ComplexMatrix full = kron(id_a, v);
    out.noalias() += full * rho.matrix() * full.adjoint();
  }
  return DensityMatrix::validate(out, rho.dims());
}

std::vector<SloccBranch> slocc_branches(const DensityMatrix& rho, const ChannelOnB& channel) {
  require_bipartite(rho);
  require_channel_dim(rho, channel);
  const ComplexMatrix id_a = identity(rho.dims()[0]);
  const std::size_t side = rho.side();
  std::vector<SloccBranch> branches;
  branches.reserve(channel.kraus().size());
  for (const auto& v : channel.kraus()) {
    const ComplexMatrix full = kron(id_a, v);
    const ComplexMatrix out = full * rho.matrix() * full.adjoint();
    const double q = std::max(out.trace().real(), 0.0);
    if (q <= kNegligibleProbability) {
      branches.push_back({q, DensityMatrix::from_trusted(identity(side) / static_cast<double>(side), rho.dims()), true});
    } else {
      branches.push_back({q, DensityMatrix::from_trusted(out / q, rho.dims()), false});
    }
  }
  return branches;
}

}  // namespace qcorr
