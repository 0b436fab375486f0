#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qaegate/engine.hpp"
#include "qaegate/heisenberg.hpp"
#include "testutil.hpp"

#include <cstdio>
#include <numbers>

using namespace qaegate;

namespace {

std::vector<double> random_theta(const ScenarioModel& m, std::mt19937_64& rng,
                                 double range = std::numbers::pi) {
  std::vector<double> theta(m.num_params());
  for (double& x : theta) x = uniform_in(rng, -range, range);
  return theta;
}

ComplexMatrix heisenberg(int n, double t) {
  return heisenberg_gate({isotropic_family(n), t});
}

double explicit_overlap(const ScenarioModel& m, std::span<const double> theta,
                        const std::vector<ComplexMatrix>& gates) {
  return choi_overlap(target_choi(m, gates), choi_of_channel(decoded_channel(m, theta, gates)));
}

}  // namespace

TEST_CASE("block bookkeeping matches the protocol layouts") {
  const ScenarioModel basic = ScenarioModel::basic(3, 1);
  CHECK(basic.num_blocks() == 4);
  CHECK(basic.num_params() == 4 * 45);
  CHECK(basic.block_names() == std::vector<std::string>{"le", "re", "ld", "rd"});

  const ScenarioModel mr = ScenarioModel::multi_round(2, 1, 2);
  CHECK(mr.num_encoder_blocks() == 4);
  CHECK(mr.num_decoder_blocks() == 3);
  CHECK(mr.block_names() ==
        std::vector<std::string>{"le1", "re1", "le2", "re2", "d0", "d1", "d2"});

  const ScenarioModel seq = ScenarioModel::sequence(2, 1);
  CHECK(seq.num_blocks() == 7);
  CHECK(seq.block_names() ==
        std::vector<std::string>{"le1", "re1", "le2", "re2", "ld", "md", "rd"});

  CHECK_THROWS(ScenarioModel::basic(2, 3));
  CHECK_THROWS(ScenarioModel::multi_round(2, 1, 1));
}

TEST_CASE("encoded channel with nothing discarded is the bare unitary") {
  auto rng = test::seeded_rng(40);
  const ScenarioModel m = ScenarioModel::basic(2, 2);
  const ComplexMatrix u = heisenberg(2, 1.7);

  const std::vector<double> zeros(m.num_params(), 0.0);
  KrausChannel ch = encoded_channel(m, zeros, u);
  REQUIRE(ch.kraus.size() == 1);
  CHECK(max_abs(ch.kraus[0] - u) <= 1e-12);

  // general theta: single Kraus U_re U_x U_le
  const std::vector<double> theta = random_theta(m, rng);
  ch = encoded_channel(m, theta, u);
  const std::vector<ComplexMatrix> enc = encoder_unitaries(m, theta);
  REQUIRE(ch.kraus.size() == 1);
  CHECK(max_abs(ch.kraus[0] - enc[1] * u * enc[0]) <= 1e-12);
}

TEST_CASE("encoded channel at theta = 0 keeps the identity intact") {
  const ScenarioModel m = ScenarioModel::basic(2, 1);
  const std::vector<double> zeros(m.num_params(), 0.0);
  const KrausChannel ch = encoded_channel(m, zeros, identity_matrix(4));
  REQUIRE(ch.kraus.size() == 2);
  CHECK(max_abs(ch.kraus[0] - identity_matrix(2)) <= 1e-15);
  CHECK(max_abs(ch.kraus[1]) <= 1e-15);
}

TEST_CASE("encoder construction cannot see the gate") {
  auto rng = test::seeded_rng(41);
  const ScenarioModel m = ScenarioModel::basic(2, 1);
  const std::vector<double> theta = random_theta(m, rng);

  // encoder_unitaries takes (model, theta) only; two different gates must be
  // wrapped by byte-identical encoder unitaries
  const std::vector<ComplexMatrix> enc = encoder_unitaries(m, theta);
  for (const ComplexMatrix& u : {heisenberg(2, 0.9), heisenberg(2, 4.2)}) {
    const KrausChannel ch = encoded_channel(m, theta, u);
    const ComplexMatrix e = enc[1] * u * enc[0];
    for (int i = 0; i < 2; ++i)
      for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c)
          CHECK(ch.kraus[i](r, c) == e(r * 2 + i, c * 2));
  }
}

TEST_CASE("decoded channel reduces to the gate at a = n, theta = 0") {
  for (int n : {1, 2, 3}) {
    const ScenarioModel m = ScenarioModel::basic(n, n);
    const std::vector<double> zeros(m.num_params(), 0.0);
    const ComplexMatrix u = heisenberg(n, 2.3);
    const KrausChannel ch = decoded_channel(m, zeros, {u});
    REQUIRE(ch.kraus.size() == 1);
    CHECK(max_abs(ch.kraus[0] - u) <= 1e-12);
    CHECK(loss(m, zeros, {u}) <= 1e-10);
  }
}

TEST_CASE("two full-width rounds compose the gate with itself") {
  const ScenarioModel m = ScenarioModel::multi_round(2, 2, 2);
  const std::vector<double> zeros(m.num_params(), 0.0);
  const ComplexMatrix u = heisenberg(2, 1.1);
  const KrausChannel ch = decoded_channel(m, zeros, {u});
  REQUIRE(ch.kraus.size() == 1);
  CHECK(max_abs(ch.kraus[0] - u * u) <= 1e-12);

  // and the engine counts exactly two uses of the input gate
  CHECK(CompiledScenario(m, {u}).gate_use_count(0) == 2);
  CHECK(CompiledScenario(ScenarioModel::basic(2, 1), {u}).gate_use_count(0) == 1);
}

TEST_CASE("sequence at a = n, theta = 0 composes the two gates") {
  const ScenarioModel m = ScenarioModel::sequence(2, 2);
  const std::vector<double> zeros(m.num_params(), 0.0);
  const ComplexMatrix ux = heisenberg(2, 0.8);
  const ComplexMatrix uy = heisenberg_gate({anisotropic_family(2), 1.9});
  const KrausChannel ch = decoded_channel(m, zeros, {ux, uy});
  REQUIRE(ch.kraus.size() == 1);
  CHECK(max_abs(ch.kraus[0] - uy * ux) <= 1e-12);
}

TEST_CASE("decoded channels are trace preserving for random parameters") {
  auto rng = test::seeded_rng(42);
  const ComplexMatrix u2 = heisenberg(2, 3.1);
  const ComplexMatrix u3 = heisenberg(3, 1.4);
  const ComplexMatrix y2 = heisenberg_gate({anisotropic_family(2), 2.2});

  struct Case {
    ScenarioModel model;
    std::vector<ComplexMatrix> gates;
  };
  const Case cases[] = {
      {ScenarioModel::basic(2, 1), {u2}},
      {ScenarioModel::basic(3, 2), {u3}},
      {ScenarioModel::multi_round(2, 1, 2), {u2}},
      {ScenarioModel::multi_round(3, 1, 2), {u3}},
      {ScenarioModel::sequence(2, 1), {u2, y2}},
  };
  for (const Case& c : cases) {
    for (int trial = 0; trial < 10; ++trial) {
      const std::vector<double> theta = random_theta(c.model, rng);
      const KrausChannel ch = decoded_channel(c.model, theta, c.gates);
      CHECK(ch.completeness_defect() <= 1e-10);
    }
  }
}

TEST_CASE("target choi values") {
  const ScenarioModel m = ScenarioModel::sequence(2, 1);

  const ComplexMatrix sx = kron(sigma_x(), identity_matrix(2));
  const ComplexMatrix sz = kron(sigma_z(), identity_matrix(2));
  const ChoiOperator c = target_choi(m, {sx, sz});
  const ChoiOperator expected = choi_of_unitary(sz * sx);
  CHECK(max_abs(c.matrix - expected.matrix) <= 1e-14);

  const ScenarioModel mr = ScenarioModel::multi_round(2, 1, 2);
  const ComplexMatrix u = heisenberg(2, 0.5);
  CHECK(max_abs(target_choi(mr, {u}).matrix - choi_of_unitary(u).matrix) <= 1e-14);
  CHECK(max_abs(target_choi(mr, {u}, 2).matrix - choi_of_unitary(u * u).matrix) <= 1e-14);
}

TEST_CASE("loss stays in the unit interval") {
  auto rng = test::seeded_rng(43);
  const ScenarioModel m = ScenarioModel::basic(2, 1);
  const ComplexMatrix u = heisenberg(2, 5.0);
  for (int trial = 0; trial < 20; ++trial) {
    const std::vector<double> theta = random_theta(m, rng);
    const double value = loss(m, theta, {u});
    CHECK(value >= -1e-12);
    CHECK(value <= 1.0 + 1e-12);
  }
}

TEST_CASE("engine fidelity equals the explicit choi-overlap route") {
  auto rng = test::seeded_rng(44);
  const ComplexMatrix u2 = heisenberg(2, 2.6);
  const ComplexMatrix u3 = heisenberg(3, 0.9);
  const ComplexMatrix u4 = heisenberg(4, 1.3);
  const ComplexMatrix y2 = heisenberg_gate({anisotropic_family(2), 3.3});

  struct Case {
    ScenarioModel model;
    std::vector<ComplexMatrix> gates;
  };
  const Case cases[] = {
      {ScenarioModel::basic(2, 1), {u2}},
      {ScenarioModel::basic(3, 1), {u3}},
      {ScenarioModel::basic(3, 3), {u3}},
      {ScenarioModel::basic(4, 2), {u4}},
      {ScenarioModel::multi_round(2, 1, 2), {u2}},
      {ScenarioModel::multi_round(3, 2, 3), {u3}},
      {ScenarioModel::sequence(2, 1), {u2, y2}},
      {ScenarioModel::sequence(2, 2), {u2, y2}},
  };
  for (const Case& c : cases) {
    const CompiledScenario program(c.model, c.gates);
    for (int trial = 0; trial < 3; ++trial) {
      const std::vector<double> theta = random_theta(c.model, rng);
      const double fast = program.fidelity(theta);
      const double slow = explicit_overlap(c.model, theta, c.gates);
      CHECK(std::abs(fast - slow) <= 1e-12);
    }
  }
}

TEST_CASE("multiround keeps the server memory between rounds") {
  // with a = n the structure is insensitive to the memory wire, so probe
  // a < n: a multiround model must differ from independently-reset rounds
  auto rng = test::seeded_rng(45);
  const ScenarioModel mr = ScenarioModel::multi_round(2, 1, 2);
  const ComplexMatrix u = heisenberg(2, 2.0);
  const std::vector<double> theta = random_theta(mr, rng);
  const KrausChannel ch = decoded_channel(mr, theta, {u});
  CHECK(ch.kraus.size() == 2);  // indexed by the final server state only
}

TEST_CASE("model files round trip and reject malformed content") {
  auto rng = test::seeded_rng(46);
  const ScenarioModel m = ScenarioModel::multi_round(2, 1, 2);
  Eigen::VectorXd theta(m.num_params());
  for (int i = 0; i < theta.size(); ++i) theta(i) = uniform_in(rng, -1, 1);

  const std::string path = "/tmp/qaegate_test_model.json";
  save_model(m, theta, path, 11, "train --demo");
  const auto [loaded, loaded_theta] = load_model(path);
  CHECK(loaded.kind == m.kind);
  CHECK(loaded.n == m.n);
  CHECK(loaded.a == m.a);
  CHECK(loaded.rounds == m.rounds);
  REQUIRE(loaded_theta.size() == theta.size());
  for (int i = 0; i < theta.size(); ++i) CHECK(loaded_theta(i) == theta(i));
  std::remove(path.c_str());

  {
    std::ofstream out(path);
    out << R"({"version":"1","kind":"basic","n":2,"a":1,"blocks":{},"extra":1})";
  }
  CHECK_THROWS_WITH_AS(load_model(path), doctest::Contains("extra"), std::runtime_error);
  std::remove(path.c_str());
}
