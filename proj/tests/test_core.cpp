#include <doctest.h>

#include "oracle.hpp"
#include "qcorr/core.hpp"
#include "qcorr/error.hpp"
#include "qcorr/rng.hpp"
#include "qcorr/states.hpp"

using namespace qcorr;

namespace {

DensityMatrix diag_state(std::initializer_list<double> values) {
  RealVector v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v(i++) = x;
  return DensityMatrix::validate(v.cast<Complex>().asDiagonal(), {static_cast<std::size_t>(v.size())});
}

DensityMatrix ginibre(Dims dims, std::uint64_t seed) {
  return random_density({seed, std::move(dims), StateKind::GinibreMixed, std::nullopt});
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::BadSpec;
}

}  // namespace

TEST_SUITE("core") {
  TEST_CASE("validation accepts maximally mixed and pure qubit states") {
    const auto mixed = DensityMatrix::validate(identity(2) / 2.0, {2});
    CHECK(mixed.side() == 2);
    ComplexMatrix plus(2, 2);
    plus << 0.5, 0.5, 0.5, 0.5;
    const auto pure = DensityMatrix::validate(plus, {2});
    CHECK(pure.eigenvalues()(1) == doctest::Approx(1.0).epsilon(1e-12));
  }

  TEST_CASE("validation errors name the failed invariant") {
    ComplexMatrix m(2, 2);
    m << 1.0, 0.0, 0.0, 0.1;
    CHECK(code_of([&] { DensityMatrix::validate(m, {2}); }) == ErrorCode::NotUnitTrace);

    ComplexMatrix h(2, 2);
    h << 0.5, 0.2, 0.1, 0.5;
    CHECK(code_of([&] { DensityMatrix::validate(h, {2}); }) == ErrorCode::NotHermitian);

    ComplexMatrix neg(2, 2);
    neg << 1.2, 0.0, 0.0, -0.2;
    CHECK(code_of([&] { DensityMatrix::validate(neg, {2}); }) == ErrorCode::NotPositive);

    CHECK(code_of([&] { DensityMatrix::validate(identity(4) / 4.0, {2, 3}); }) == ErrorCode::BadDims);
  }

  TEST_CASE("error magnitude reports how far the invariant is off") {
    ComplexMatrix m(2, 2);
    m << 1.0, 0.0, 0.0, 0.1;
    try {
      DensityMatrix::validate(m, {2});
      FAIL("no error");
    } catch (const Error& e) {
      CHECK(e.magnitude() == doctest::Approx(0.1));
    }
  }

  TEST_CASE("eigenvalues inside the clamp window are zeroed and renormalized") {
    ComplexMatrix m(2, 2);
    m << 1.0 + 5e-11, 0.0, 0.0, -5e-11;
    const auto rho = DensityMatrix::validate(m, {2});
    CHECK(rho.eigenvalues().minCoeff() >= 0.0);
    CHECK(rho.eigenvalues().sum() == doctest::Approx(1.0).epsilon(1e-14));
  }

  TEST_CASE("von Neumann entropy values") {
    CHECK(von_neumann_entropy(DensityMatrix::validate(identity(2) / 2.0, {2})) == doctest::Approx(1.0));
    CHECK(von_neumann_entropy(bell_state_phi_plus()) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(von_neumann_entropy(diag_state({0.75, 0.25})) == doctest::Approx(0.811278).epsilon(1e-6));
  }

  TEST_CASE("shannon entropy ignores zero probabilities") {
    const std::vector<double> p = {0.5, 0.0, 0.5};
    CHECK(shannon_entropy(p) == doctest::Approx(1.0));
  }

  TEST_CASE("partial trace examples") {
    const auto rho_b = partial_trace(bell_state_phi_plus(), Party::B);
    CHECK(max_abs_diff(rho_b.matrix(), identity(2) / 2.0) <= 1e-12);

    const auto a = ginibre({2}, 3);
    const auto b = ginibre({3}, 4);
    const auto ab = tensor_product(a, b);
    CHECK(max_abs_diff(partial_trace(ab, Party::A).matrix(), a.matrix()) <= 1e-12);
    CHECK(max_abs_diff(partial_trace(ab, Party::B).matrix(), b.matrix()) <= 1e-12);
  }

  TEST_CASE("partial trace matches index contraction") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const auto rho = ginibre({2, 3}, seed);
      const auto rb = partial_trace(rho, Party::B);
      CHECK(oracle::max_abs(rb.matrix() - oracle::partial_trace(rho.matrix(), {2, 3}, {false, true})) <= 1e-12);
      CHECK(std::abs(rb.matrix().trace() - 1.0) <= 1e-12);
      CHECK(rb.eigenvalues().minCoeff() >= 0.0);
    }
    const auto abc = ginibre({2, 3, 2}, 99);
    const std::size_t keep[] = {0, 2};
    CHECK(oracle::max_abs(partial_trace(abc, keep).matrix() -
                          oracle::partial_trace(abc.matrix(), {2, 3, 2}, {true, false, true})) <= 1e-12);
  }

  TEST_CASE("partial trace by party requires a bipartite state") {
    const auto rho = ginibre({2, 2, 2}, 1);
    CHECK(code_of([&] { partial_trace(rho, Party::A); }) == ErrorCode::BadDims);
  }

  TEST_CASE("tensor product follows the Kronecker convention") {
    const auto half = DensityMatrix::validate(identity(2) / 2.0, {2});
    const auto both = tensor_product(half, half);
    CHECK(both.dims() == Dims{2, 2});
    CHECK(max_abs_diff(both.matrix(), identity(4) / 4.0) <= 1e-15);

    const auto zero = diag_state({1.0, 0.0});
    const auto one = diag_state({0.0, 1.0});
    const auto p = tensor_product(zero, one);
    CHECK(std::abs(p.matrix()(1, 1) - 1.0) <= 1e-15);
    CHECK(p.matrix().cwiseAbs().sum() == doctest::Approx(1.0));

    const auto a = ginibre({2}, 5);
    const auto b = ginibre({3}, 6);
    CHECK(oracle::max_abs(tensor_product(a, b).matrix() - oracle::kron(a.matrix(), b.matrix())) <= 1e-15);
  }

  TEST_CASE("entropy is additive on products") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const auto a = ginibre({2}, 2 * seed);
      const auto b = ginibre({3}, 2 * seed + 1);
      CHECK(std::abs(von_neumann_entropy(tensor_product(a, b)) - von_neumann_entropy(a) - von_neumann_entropy(b)) <=
            1e-10);
    }
  }

  TEST_CASE("purification examples") {
    const auto psi = purify(DensityMatrix::validate(identity(2) / 2.0, {2}));
    CHECK(psi.dims() == Dims{2, 2});
    const std::size_t keep_b[] = {1};
    CHECK(max_abs_diff(reduced_state(psi, keep_b).matrix(), identity(2) / 2.0) <= 1e-12);

    const auto pure = purify(bell_state_phi_plus());
    CHECK(pure.dims() == Dims{2, 2, 1});

    const auto rho = ginibre({2, 2}, 17);
    const auto lift = purify(rho);
    CHECK(lift.dims() == Dims{2, 2, 4});
    const std::size_t keep_ab[] = {0, 1};
    CHECK(max_abs_diff(reduced_state(lift, keep_ab).matrix(), rho.matrix()) <= 1e-10);
  }

  TEST_CASE("purification is reproducible") {
    const auto rho = ginibre({2, 3}, 8);
    CHECK(purify(rho).amplitudes() == purify(rho).amplitudes());
  }

  TEST_CASE("pure state validation") {
    ComplexVector v(2);
    v << 1.0, 1.0;
    CHECK(code_of([&] { PureStateVector::validate(v, {2}); }) == ErrorCode::NotUnit);
    CHECK(code_of([&] { PureStateVector::validate(v / std::sqrt(2.0), {3}); }) == ErrorCode::BadDims);
    const auto psi = PureStateVector::normalized(v, {2});
    CHECK(psi.amplitudes().norm() == doctest::Approx(1.0));
    CHECK(von_neumann_entropy(psi.to_density()) == doctest::Approx(0.0).epsilon(1e-12));
  }

  TEST_CASE("fix_phase makes the first significant component real positive") {
    ComplexVector v(3);
    v << 1e-14, Complex(0.0, -2.0), 1.0;
    fix_phase(v);
    CHECK(v(1).real() == doctest::Approx(2.0));
    CHECK(std::abs(v(1).imag()) <= 1e-15);
  }
}

TEST_SUITE("core-properties") {
  TEST_CASE("spectra of generated states lie in [0, 1] and sum to one") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const Dims dims = seed % 2 ? Dims{2, 3} : Dims{3, 3};
      const auto rho = ginibre(dims, seed);
      CHECK(rho.eigenvalues().minCoeff() >= 0.0);
      CHECK(rho.eigenvalues().maxCoeff() <= 1.0);
      CHECK(std::abs(rho.eigenvalues().sum() - 1.0) <= 1e-10);
      const double s = von_neumann_entropy(rho);
      CHECK(s >= 0.0);
      CHECK(s <= std::log2(static_cast<double>(rho.side())) + 1e-12);
      CHECK(std::abs(s - oracle::entropy(rho.matrix())) <= 1e-9);
    }
  }

  TEST_CASE("entropy is unitarily invariant") {
    Rng rng(42);
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
      const auto rho = ginibre({2, 2}, seed);
      const ComplexMatrix u = haar_unitary(4, rng);
      const auto rotated = DensityMatrix::from_trusted(u * rho.matrix() * u.adjoint(), {2, 2});
      CHECK(std::abs(von_neumann_entropy(rotated) - von_neumann_entropy(rho)) <= 1e-9);
    }
  }

  TEST_CASE("purification round trip on random states") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
      RandomSpec spec{seed, {2, 2}, StateKind::GinibreMixed, 1 + seed % 4};
      const auto rho = random_density(spec);
      const auto psi = purify(rho);
      CHECK(psi.dims().back() == 1 + seed % 4);
      const std::size_t keep[] = {0, 1};
      CHECK(max_abs_diff(reduced_state(psi, keep).matrix(), rho.matrix()) <= 1e-10);
    }
  }
}
