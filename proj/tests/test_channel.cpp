#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qaegate/channel.hpp"
#include "testutil.hpp"

#include <numbers>

using namespace qaegate;

namespace {

KrausChannel depolarizing_qubit() {
  KrausChannel ch;
  ch.in_dim = ch.out_dim = 2;
  ch.kraus = {0.5 * identity_matrix(2), 0.5 * sigma_x(), 0.5 * sigma_y(),
              0.5 * sigma_z()};
  return ch;
}

ComplexMatrix bell_projector() {
  ComplexVector phi(4);
  phi << 1 / std::numbers::sqrt2, 0, 0, 1 / std::numbers::sqrt2;
  return phi * phi.adjoint();
}

}  // namespace

TEST_CASE("apply_channel basics") {
  auto rng = test::seeded_rng(20);
  const ComplexMatrix rho = test::random_density(2, rng);

  const KrausChannel id = KrausChannel::from_unitary(identity_matrix(2));
  CHECK(max_abs(apply_channel(id, rho) - rho) <= 1e-15);

  // reset channel {|0><0|, |0><1|} maps everything to |0><0|
  KrausChannel reset;
  reset.in_dim = reset.out_dim = 2;
  ComplexMatrix k0 = ComplexMatrix::Zero(2, 2), k1 = ComplexMatrix::Zero(2, 2);
  k0(0, 0) = 1;
  k1(0, 1) = 1;
  reset.kraus = {k0, k1};
  reset.validate();
  ComplexMatrix zero_state = ComplexMatrix::Zero(2, 2);
  zero_state(0, 0) = 1;
  CHECK(max_abs(apply_channel(reset, rho) - zero_state) <= 1e-15);

  const ComplexMatrix u = haar_random_unitary(2, rng);
  CHECK(max_abs(apply_channel(KrausChannel::from_unitary(u), rho) - u * rho * u.adjoint()) <=
        1e-14);
}

TEST_CASE("channel application preserves trace and hermiticity") {
  auto rng = test::seeded_rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    const KrausChannel ch = random_cptp_channel(4, 2, rng);
    CHECK(ch.completeness_defect() <= 1e-10);
    const ComplexMatrix rho = test::random_density(4, rng);
    const ComplexMatrix out = apply_channel(ch, rho);
    CHECK(std::abs(out.trace() - Complex(1, 0)) <= 1e-10);
    CHECK(is_hermitian(out, 1e-10));
  }
}

TEST_CASE("choi of the identity channel is the Bell projector") {
  const ChoiOperator c = choi_of_unitary(identity_matrix(2));
  CHECK(max_abs(c.matrix - bell_projector()) <= 1e-15);
  CHECK(std::abs(c.matrix.trace() - Complex(1, 0)) <= 1e-12);
}

TEST_CASE("choi of the depolarizing channel is maximally mixed") {
  const ChoiOperator c = choi_of_channel(depolarizing_qubit());
  CHECK(max_abs(c.matrix - identity_matrix(4) / 4.0) <= 1e-15);
}

TEST_CASE("choi of a pauli-x channel is the shifted Bell state") {
  const ChoiOperator c = choi_of_unitary(sigma_x());
  const ComplexMatrix expected =
      kron(sigma_x(), identity_matrix(2)) * bell_projector() *
      kron(sigma_x(), identity_matrix(2)).adjoint();
  CHECK(max_abs(c.matrix - expected) <= 1e-15);
}

TEST_CASE("unitary channels have pure choi states") {
  auto rng = test::seeded_rng(22);
  const ChoiOperator c = choi_of_unitary(haar_random_unitary(4, rng));
  const double purity = c.matrix.cwiseAbs2().sum();  // Tr(C^2) for Hermitian C
  CHECK(purity == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("choi overlap reference values") {
  const ChoiOperator ci = choi_of_unitary(identity_matrix(2));
  const ChoiOperator cx = choi_of_unitary(sigma_x());
  const ChoiOperator cd = choi_of_channel(depolarizing_qubit());

  CHECK(choi_overlap(ci, ci) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(choi_overlap(ci, cx) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(choi_overlap(ci, cd) == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("swap test probability satisfies f = 2p - 1") {
  const ChoiOperator ci = choi_of_unitary(identity_matrix(2));
  const ChoiOperator cx = choi_of_unitary(sigma_x());
  const ChoiOperator cd = choi_of_channel(depolarizing_qubit());

  CHECK(swap_test_probability(ci, ci) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(swap_test_probability(ci, cx) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(swap_test_probability(ci, cd) == doctest::Approx(0.625).epsilon(1e-12));

  auto rng = test::seeded_rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexMatrix u = haar_random_unitary(4, rng);
    const KrausChannel ch = random_cptp_channel(4, 2, rng);
    const double f = entanglement_fidelity(u, ch);
    const double p = swap_test_probability(choi_of_unitary(u), choi_of_channel(ch));
    CHECK(std::abs(f - (2 * p - 1)) <= 1e-12);
  }
}

TEST_CASE("matrix trace and Kraus fast path agree") {
  auto rng = test::seeded_rng(24);
  for (int dim : {2, 4, 8, 16}) {
    for (int trial = 0; trial < 5; ++trial) {
      const ComplexMatrix u = haar_random_unitary(dim, rng);
      const KrausChannel ch = random_cptp_channel(dim, 1, rng);
      const double slow = choi_overlap(choi_of_unitary(u), choi_of_channel(ch));
      const double fast = entanglement_fidelity(u, ch);
      CHECK(std::abs(slow - fast) <= 1e-12);
      CHECK(fast >= 0.0);
      CHECK(fast <= 1.0 + 1e-12);
    }
  }
}

TEST_CASE("choi covariance under post-composed unitaries") {
  auto rng = test::seeded_rng(25);
  for (int trial = 0; trial < 5; ++trial) {
    KrausChannel ch = random_cptp_channel(2, 1, rng);
    const ComplexMatrix v = haar_random_unitary(2, rng);
    KrausChannel rotated = ch;
    for (ComplexMatrix& k : rotated.kraus) k = v * k;
    const ComplexMatrix vi = kron(v, identity_matrix(2));
    const ComplexMatrix expected = vi * choi_of_channel(ch).matrix * vi.adjoint();
    CHECK(max_abs(choi_of_channel(rotated).matrix - expected) <= 1e-12);
  }
}

TEST_CASE("choi overlap rejects mismatched dimensions") {
  const ChoiOperator c2 = choi_of_unitary(identity_matrix(2));
  const ChoiOperator c4 = choi_of_unitary(identity_matrix(4));
  CHECK_THROWS(choi_overlap(c2, c4));
}

TEST_CASE("channel validation catches broken Kraus sets") {
  KrausChannel bad;
  bad.in_dim = bad.out_dim = 2;
  bad.kraus = {sigma_x() * 0.5};
  CHECK_THROWS(bad.validate());
}
