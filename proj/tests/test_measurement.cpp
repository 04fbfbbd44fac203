#include <doctest.h>

#include <numbers>

#include "oracle.hpp"
#include "qcorr/error.hpp"
#include "qcorr/measurement.hpp"
#include "qcorr/optimizer.hpp"
#include "qcorr/rng.hpp"
#include "qcorr/states.hpp"

using namespace qcorr;

namespace {

DensityMatrix ginibre(Dims dims, std::uint64_t seed) {
  return random_density({seed, std::move(dims), StateKind::GinibreMixed, std::nullopt});
}

DensityMatrix diag2(double a, double b) {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return DensityMatrix::validate(m, {2});
}

ProjectiveMeasurement random_measurement(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  return ProjectiveMeasurement::from_basis(haar_unitary(n, rng));
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

TEST_SUITE("measurement") {
  TEST_CASE("Bloch measurements along the axes") {
    const auto z = measurement_from_bloch({0, 0, 1});
    CHECK(max_abs_diff(z.projector(0), ProjectiveMeasurement::computational(2).projector(0)) <= 1e-15);
    CHECK(max_abs_diff(z.projector(1), ProjectiveMeasurement::computational(2).projector(1)) <= 1e-15);

    const auto x = measurement_from_bloch({1, 0, 0});
    ComplexMatrix plus(2, 2);
    plus << 0.5, 0.5, 0.5, 0.5;
    CHECK(max_abs_diff(x.projector(0), plus) <= 1e-15);

    const auto minus_z = measurement_from_bloch({0, 0, -1});
    CHECK(max_abs_diff(minus_z.projector(0), ProjectiveMeasurement::computational(2).projector(1)) <= 1e-15);
    CHECK(max_abs_diff(minus_z.projector(1), ProjectiveMeasurement::computational(2).projector(0)) <= 1e-15);
  }

  TEST_CASE("Bloch projector equals (I + n.sigma)/2") {
    for (double x = -3.0; x < 3.0; x += 0.7) {
      for (double y = 0.0; y < 12.0; y += 1.3) {
        const auto n = BlochVector::from_angles(x, y);
        const auto m = measurement_from_bloch(n);
        const oracle::Matrix expect = (oracle::Matrix::Identity(2, 2) + n.n1 * oracle::pauli(1) +
                                       n.n2 * oracle::pauli(2) + n.n3 * oracle::pauli(3)) /
                                      2.0;
        CHECK(oracle::max_abs(m.projector(0) - expect) <= 1e-14);
        CHECK(m.vector(0)(0).imag() == 0.0);
      }
    }
  }

  TEST_CASE("non-unit Bloch vector is rejected") {
    CHECK(code_of([] { measurement_from_bloch({0.5, 0, 0}); }) == ErrorCode::NotUnit);
  }

  TEST_CASE("non-orthonormal basis is rejected") {
    ComplexMatrix b(2, 2);
    b << 1.0, 1.0, 0.0, 1.0;
    CHECK(code_of([&] { ProjectiveMeasurement::from_basis(b); }) == ErrorCode::NotOrthonormal);
    CHECK(code_of([&] { ProjectiveMeasurement::from_basis(ComplexMatrix::Identity(3, 2)); }) ==
          ErrorCode::DimMismatch);
  }

  TEST_CASE("dephasing examples") {
    const auto rho = tensor_product(ginibre({2}, 1), DensityMatrix::validate(identity(2) / 2.0, {2}));
    CHECK(max_abs_diff(dephase(rho, random_measurement(2, 4)).matrix(), rho.matrix()) <= 1e-14);

    const auto bell = dephase(bell_state_phi_plus(), ProjectiveMeasurement::computational(2));
    ComplexMatrix expect = ComplexMatrix::Zero(4, 4);
    expect(0, 0) = 0.5;
    expect(3, 3) = 0.5;
    CHECK(max_abs_diff(bell.matrix(), expect) <= 1e-15);
  }

  TEST_CASE("dimension mismatch") {
    const auto rho = ginibre({2, 3}, 1);
    CHECK(code_of([&] { dephase(rho, ProjectiveMeasurement::computational(2)); }) == ErrorCode::DimMismatch);
    CHECK(code_of([&] { outcome_ensemble(rho, ProjectiveMeasurement::computational(2)); }) == ErrorCode::DimMismatch);
    CHECK(code_of([&] { is_nondisturbing(diag2(0.5, 0.5), ProjectiveMeasurement::computational(3), 1e-8); }) ==
          ErrorCode::DimMismatch);
  }

  TEST_CASE("outcome ensemble examples") {
    const auto e = outcome_ensemble(bell_state_phi_plus(), ProjectiveMeasurement::computational(2));
    CHECK(e.probabilities[0] == doctest::Approx(0.5));
    CHECK(e.probabilities[1] == doctest::Approx(0.5));
    CHECK(std::abs(e.conditional_states[0].matrix()(0, 0) - 1.0) <= 1e-12);
    CHECK(std::abs(e.conditional_states[1].matrix()(1, 1) - 1.0) <= 1e-12);

    const auto rho_a = ginibre({2}, 9);
    const auto product = tensor_product(rho_a, diag2(0.75, 0.25));
    const auto p = outcome_ensemble(product, ProjectiveMeasurement::computational(2));
    CHECK(p.probabilities[0] == doctest::Approx(0.75));
    CHECK(p.probabilities[1] == doctest::Approx(0.25));
    CHECK(max_abs_diff(p.conditional_states[0].matrix(), rho_a.matrix()) <= 1e-12);
    CHECK(max_abs_diff(p.conditional_states[1].matrix(), rho_a.matrix()) <= 1e-12);
  }

  TEST_CASE("negligible outcomes are flagged and skipped") {
    const auto rho = tensor_product(ginibre({2}, 3), diag2(1.0, 0.0));
    const auto e = outcome_ensemble(rho, ProjectiveMeasurement::computational(2));
    CHECK_FALSE(e.negligible[0]);
    CHECK(e.negligible[1]);
    CHECK(e.average_conditional_entropy() == doctest::Approx(von_neumann_entropy(partial_trace(rho, Party::A))));
  }

  TEST_CASE("measuring A gives conditional states of B") {
    const auto rho = ginibre({2, 3}, 12);
    const auto m = random_measurement(2, 13);
    const auto e = outcome_ensemble(rho, m, Party::A);
    ComplexMatrix sum = ComplexMatrix::Zero(3, 3);
    for (std::size_t i = 0; i < 2; ++i) sum += e.probabilities[i] * e.conditional_states[i].matrix();
    CHECK(max_abs_diff(sum, partial_trace(rho, Party::B).matrix()) <= 1e-10);
  }

  TEST_CASE("non-disturbance predicate") {
    CHECK(is_nondisturbing(diag2(0.5, 0.5), random_measurement(2, 1), 1e-10));
    CHECK(is_nondisturbing(diag2(0.75, 0.25), ProjectiveMeasurement::computational(2), 1e-10));
    CHECK_FALSE(is_nondisturbing(diag2(0.75, 0.25), measurement_from_bloch({1, 0, 0}), 1e-10));
  }
}

TEST_SUITE("measurement-properties") {
  TEST_CASE("dephasing matches the entrywise oracle, never lowers entropy and is idempotent") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const auto rho = ginibre({2, 2}, seed);
      const auto m = random_measurement(2, 1000 + seed);
      const auto once = dephase(rho, m);
      CHECK(oracle::max_abs(once.matrix() - oracle::dephase_B(rho.matrix(), 2, m.basis())) <= 1e-14);
      CHECK(von_neumann_entropy(once) >= von_neumann_entropy(rho) - 1e-9);
      CHECK(max_abs_diff(dephase(once, m).matrix(), once.matrix()) <= 1e-12);
    }
  }

  TEST_CASE("no signalling: the measured ensemble averages to rho_A") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const auto rho = ginibre({2, 3}, seed);
      const auto m = random_measurement(3, 500 + seed);
      const auto e = outcome_ensemble(rho, m);
      double total = 0.0;
      ComplexMatrix avg = ComplexMatrix::Zero(2, 2);
      for (std::size_t i = 0; i < 3; ++i) {
        total += e.probabilities[i];
        avg += e.probabilities[i] * e.conditional_states[i].matrix();
        const oracle::Matrix x = oracle::conditional_A(rho.matrix(), 2, m.vector(i));
        CHECK(std::abs(x.trace().real() - e.probabilities[i]) <= 1e-12);
        CHECK(oracle::max_abs(x / e.probabilities[i] - e.conditional_states[i].matrix()) <= 1e-10);
      }
      CHECK(std::abs(total - 1.0) <= 1e-10);
      CHECK(max_abs_diff(avg, partial_trace(rho, Party::A).matrix()) <= 1e-10);
    }
  }

  TEST_CASE("eigenbasis measurement never disturbs its state") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
      const auto rho_b = ginibre({2 + seed % 3}, seed);
      CHECK(is_nondisturbing(rho_b, eigenbasis_measurement(rho_b), 1e-10));
    }
  }

  TEST_CASE("local dephasing agrees with dephasing of a trivial A") {
    const auto rho_b = ginibre({3}, 4);
    const auto m = random_measurement(3, 5);
    const auto one = DensityMatrix::validate(identity(1), {1});
    const auto embedded = tensor_product(one, rho_b);
    CHECK(max_abs_diff(dephase(embedded, m).matrix(), dephase_local(rho_b, m).matrix()) <= 1e-15);
  }
}
