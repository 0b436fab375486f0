#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qaegate/gates.hpp"
#include "testutil.hpp"

#include <numbers>
#include <vector>

using namespace qaegate;

namespace {

constexpr double kPi = std::numbers::pi;

const GateKind kAllKinds[] = {GateKind::RX, GateKind::RY, GateKind::RZ,
                              GateKind::XX, GateKind::YY, GateKind::ZZ};

std::vector<double> random_params(int count, std::mt19937_64& rng, double range = kPi) {
  std::vector<double> theta(count);
  for (double& x : theta) x = uniform_in(rng, -range, range);
  return theta;
}

}  // namespace

TEST_CASE("primitive gates at zero are the identity") {
  for (GateKind kind : kAllKinds) {
    const ComplexMatrix m = primitive_matrix(kind, 0.0);
    CHECK(max_abs(m - identity_matrix(static_cast<int>(m.rows()))) == 0.0);
  }
}

TEST_CASE("XX at pi/2 is the anti-diagonal of -i") {
  const ComplexMatrix m = primitive_matrix(GateKind::XX, kPi / 2);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) {
      if (c == 3 - r)
        CHECK(std::abs(m(r, c) - Complex(0, -1)) <= 1e-15);
      else
        CHECK(std::abs(m(r, c)) <= 1e-15);
    }
}

TEST_CASE("negating the angle inverts the gate") {
  auto rng = test::seeded_rng(10);
  for (GateKind kind : kAllKinds) {
    const double theta = uniform_in(rng, -kPi, kPi);
    const ComplexMatrix prod =
        primitive_matrix(kind, theta) * primitive_matrix(kind, -theta);
    CHECK(max_abs(prod - identity_matrix(static_cast<int>(prod.rows()))) <= 1e-14);
  }
}

TEST_CASE("every primitive is cos I - i sin H for its involutory generator") {
  auto rng = test::seeded_rng(11);
  for (GateKind kind : kAllKinds) {
    const ComplexMatrix& h = gate_generator(kind);
    const int dim = static_cast<int>(h.rows());
    CHECK(max_abs(h * h - identity_matrix(dim)) == 0.0);  // H^2 = I
    // H_max = 1: involutory Hermitian operators have unit norm
    CHECK(is_hermitian(h));

    const double theta = uniform_in(rng, -kPi, kPi);
    const ComplexMatrix expected = std::cos(theta) * identity_matrix(dim) -
                                   Complex(0, std::sin(theta)) * h;
    CHECK(max_abs(primitive_matrix(kind, theta) - expected) <= 1e-15);
  }
}

TEST_CASE("two-qubit template has the 15-parameter KAK layout") {
  const GateTemplate t = two_qubit_template();
  CHECK(t.num_qubits == 2);
  CHECK(t.num_params == 15);
  CHECK(t.gates.size() == 15);

  std::vector<double> zeros(15, 0.0);
  CHECK(max_abs(realize(t, zeros) - identity_matrix(4)) == 0.0);

  // each parameter appears exactly once
  std::vector<int> used(t.num_params, 0);
  for (const PrimitiveGate& g : t.gates) ++used[g.param_index];
  for (int u : used) CHECK(u == 1);
}

TEST_CASE("n-qubit template enumerates qubit pairs lexicographically") {
  const GateTemplate t4 = n_qubit_template(4);
  CHECK(t4.num_params == 90);  // 6 two-qubit blocks
  CHECK(t4.gates.size() == 90);

  const GateTemplate t3 = n_qubit_template(3);
  CHECK(t3.num_params == 45);
  std::vector<std::pair<int, int>> pairs;
  for (const PrimitiveGate& g : t3.gates)
    if (gate_arity(g.kind) == 2) {
      const std::pair<int, int> p{g.targets[0], g.targets[1]};
      if (pairs.empty() || pairs.back() != p) pairs.push_back(p);
    }
  CHECK(pairs == std::vector<std::pair<int, int>>{{0, 1}, {0, 2}, {1, 2}});

  const GateTemplate t2 = n_qubit_template(2);
  CHECK(t2.num_params == two_qubit_template().num_params);

  const GateTemplate t1 = n_qubit_template(1);
  CHECK(t1.num_params == 3);
  CHECK_THROWS(n_qubit_template(0));
}

TEST_CASE("realize matches an embedded-product oracle") {
  auto rng = test::seeded_rng(12);
  const GateTemplate t = n_qubit_template(3);
  const std::vector<double> theta = random_params(t.num_params, rng);

  ComplexMatrix expected = identity_matrix(8);
  for (const PrimitiveGate& g : t.gates) {
    std::vector<int> targets{g.targets[0]};
    if (gate_arity(g.kind) == 2) targets.push_back(g.targets[1]);
    expected = embed(primitive_matrix(g.kind, theta[g.param_index]), targets, 3) * expected;
  }
  const ComplexMatrix u = realize(t, theta);
  CHECK(max_abs(u - expected) <= 1e-12);
  CHECK(is_unitary(u));
}

TEST_CASE("realize of a single-gate template is the embedded primitive") {
  GateTemplate t;
  t.num_qubits = 2;
  t.num_params = 1;
  t.gates.push_back({GateKind::RX, {0, -1}, 0});
  const double theta = 0.37;
  const std::vector<double> params{theta};
  CHECK(max_abs(realize(t, params) -
                kron(primitive_matrix(GateKind::RX, theta), identity_matrix(2))) <= 1e-15);
}

TEST_CASE("shifting one parameter by pi flips the global sign only") {
  auto rng = test::seeded_rng(13);
  const GateTemplate t = two_qubit_template();
  std::vector<double> theta = random_params(t.num_params, rng);
  const ComplexMatrix base = realize(t, theta);
  for (int k : {0, 7, 14}) {
    theta[k] += kPi;
    CHECK(max_abs(realize(t, theta) + base) <= 1e-12);
    theta[k] -= kPi;
  }
}

TEST_CASE("realize rejects parameter-length mismatch") {
  const GateTemplate t = two_qubit_template();
  const std::vector<double> wrong(14, 0.0);
  CHECK_THROWS(realize(t, wrong));
}

namespace {

// |Tr(V^dag W(theta))|^2 / d^2, the figure of merit for fitting a target
double fit_objective(const GateTemplate& t, const std::vector<double>& theta,
                     const ComplexMatrix& target) {
  const Complex tr = (target.adjoint() * realize(t, theta)).trace();
  return std::norm(tr) / 16.0;
}

// plain gradient ascent with exact parameter-shift derivatives
double fit_template(const GateTemplate& t, const ComplexMatrix& target,
                    std::mt19937_64& rng, int iters, double lr) {
  std::vector<double> theta = random_params(t.num_params, rng);
  for (int it = 0; it < iters; ++it) {
    std::vector<double> grad(t.num_params);
    for (int k = 0; k < t.num_params; ++k) {
      theta[k] += kPi / 4;
      const double fp = fit_objective(t, theta, target);
      theta[k] -= kPi / 2;
      const double fm = fit_objective(t, theta, target);
      theta[k] += kPi / 4;
      grad[k] = fp - fm;
    }
    for (int k = 0; k < t.num_params; ++k) theta[k] += lr * grad[k];
  }
  return fit_objective(t, theta, target);
}

}  // namespace

TEST_CASE("the 15-parameter block reaches Haar-random two-qubit targets") {
  auto rng = test::seeded_rng(14);
  const GateTemplate t = two_qubit_template();
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexMatrix target = haar_random_unitary(4, rng);
    double best = 0;
    for (int restart = 0; restart < 8 && best < 0.999; ++restart)
      best = std::max(best, fit_template(t, target, rng, 400, 0.25));
    CHECK(best >= 0.999);
  }
}
