#include "qaegate/scenario.hpp"

#include "qaegate/engine.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <stdexcept>

namespace qaegate {

using nlohmann::json;

const char* scenario_kind_name(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::Basic: return "basic";
    case ScenarioKind::MultiRound: return "multiround";
    case ScenarioKind::Sequence: return "sequence";
  }
  return "?";
}

namespace {

void check_dims(int n, int a) {
  if (n < 1 || n > 4) throw std::invalid_argument("scenario: n must be in [1, 4]");
  if (a < 1 || a > n) throw std::invalid_argument("scenario: a must be in [1, n]");
}

}  // namespace

ScenarioModel ScenarioModel::basic(int n, int a) {
  check_dims(n, a);
  ScenarioModel m;
  m.kind = ScenarioKind::Basic;
  m.n = n;
  m.a = a;
  m.block = n_qubit_template(n);
  return m;
}

ScenarioModel ScenarioModel::multi_round(int n, int a, int rounds) {
  check_dims(n, a);
  if (rounds < 2) throw std::invalid_argument("multi_round: rounds must be >= 2");
  ScenarioModel m;
  m.kind = ScenarioKind::MultiRound;
  m.n = n;
  m.a = a;
  m.rounds = rounds;
  m.block = n_qubit_template(n);
  return m;
}

ScenarioModel ScenarioModel::sequence(int n, int a, int length) {
  check_dims(n, a);
  if (length != 2) throw std::invalid_argument("sequence: only length 2 is supported");
  ScenarioModel m;
  m.kind = ScenarioKind::Sequence;
  m.n = n;
  m.a = a;
  m.length = length;
  m.block = n_qubit_template(n);
  return m;
}

int ScenarioModel::num_encoder_blocks() const {
  switch (kind) {
    case ScenarioKind::Basic: return 2;
    case ScenarioKind::MultiRound: return 2 * rounds;
    case ScenarioKind::Sequence: return 2 * length;
  }
  return 0;
}

int ScenarioModel::num_decoder_blocks() const {
  switch (kind) {
    case ScenarioKind::Basic: return 2;
    case ScenarioKind::MultiRound: return rounds + 1;
    case ScenarioKind::Sequence: return length + 1;
  }
  return 0;
}

std::vector<std::string> ScenarioModel::block_names() const {
  std::vector<std::string> names;
  switch (kind) {
    case ScenarioKind::Basic:
      names = {"le", "re", "ld", "rd"};
      break;
    case ScenarioKind::MultiRound:
      for (int k = 1; k <= rounds; ++k) {
        names.push_back("le" + std::to_string(k));
        names.push_back("re" + std::to_string(k));
      }
      for (int k = 0; k <= rounds; ++k) names.push_back("d" + std::to_string(k));
      break;
    case ScenarioKind::Sequence:
      for (int k = 1; k <= length; ++k) {
        names.push_back("le" + std::to_string(k));
        names.push_back("re" + std::to_string(k));
      }
      names.push_back("ld");
      if (length == 2) names.push_back("md");
      names.push_back("rd");
      break;
  }
  return names;
}

std::span<const double> ScenarioModel::block_params(std::span<const double> theta,
                                                    int index) const {
  if (static_cast<int>(theta.size()) != num_params())
    throw std::invalid_argument("theta has wrong length");
  if (index < 0 || index >= num_blocks())
    throw std::invalid_argument("block index out of range");
  const int per = params_per_block();
  return theta.subspan(static_cast<std::size_t>(index) * per, per);
}

std::vector<ComplexMatrix> encoder_unitaries(const ScenarioModel& m,
                                             std::span<const double> theta) {
  std::vector<ComplexMatrix> out;
  for (int b = 0; b < m.num_encoder_blocks(); ++b)
    out.push_back(realize(m.block, m.block_params(theta, b)));
  return out;
}

std::vector<ComplexMatrix> decoder_unitaries(const ScenarioModel& m,
                                             std::span<const double> theta) {
  std::vector<ComplexMatrix> out;
  const int enc = m.num_encoder_blocks();
  for (int b = 0; b < m.num_decoder_blocks(); ++b)
    out.push_back(realize(m.block, m.block_params(theta, enc + b)));
  return out;
}

namespace {

void check_gate(const ComplexMatrix& u, int n) {
  if (u.rows() != (Eigen::Index{1} << n) || u.cols() != u.rows())
    throw std::invalid_argument("gate does not act on n qubits");
  if (!is_unitary(u)) throw std::invalid_argument("gate is not unitary");
}

// K_i = (I_a (x) <i|) E (I_a (x) |0>) with the ancilla on the last n-a qubits
std::vector<ComplexMatrix> slice_kraus(const ComplexMatrix& e, int n, int a) {
  const Eigen::Index da = Eigen::Index{1} << a;
  const Eigen::Index dm = Eigen::Index{1} << (n - a);
  std::vector<ComplexMatrix> kraus;
  kraus.reserve(dm);
  for (Eigen::Index i = 0; i < dm; ++i) {
    ComplexMatrix k(da, da);
    for (Eigen::Index r = 0; r < da; ++r)
      for (Eigen::Index c = 0; c < da; ++c) k(r, c) = e(r * dm + i, c * dm);
    kraus.push_back(std::move(k));
  }
  return kraus;
}

KrausChannel round_channel(const ComplexMatrix& left, const ComplexMatrix& right,
                           const ComplexMatrix& u_x, int n, int a) {
  const ComplexMatrix e = right * u_x * left;
  KrausChannel ch;
  ch.in_dim = ch.out_dim = 1 << a;
  ch.kraus = slice_kraus(e, n, a);
  return ch;
}

}  // namespace

KrausChannel encoded_channel(const ScenarioModel& m, std::span<const double> theta,
                             const ComplexMatrix& u_x) {
  if (m.kind != ScenarioKind::Basic)
    throw std::invalid_argument("encoded_channel: basic scenario only");
  check_gate(u_x, m.n);
  const std::vector<ComplexMatrix> enc = encoder_unitaries(m, theta);
  return round_channel(enc[0], enc[1], u_x, m.n, m.a);
}

KrausChannel decoded_channel(const ScenarioModel& m, std::span<const double> theta,
                             const std::vector<ComplexMatrix>& gates) {
  if (static_cast<int>(gates.size()) != m.num_gate_families())
    throw std::invalid_argument("decoded_channel: wrong number of gates");
  for (const ComplexMatrix& g : gates) check_gate(g, m.n);

  const int n = m.n, a = m.a;
  const Eigen::Index d = Eigen::Index{1} << n;
  const Eigen::Index dm = Eigen::Index{1} << (n - a);
  const ComplexMatrix id_mem = identity_matrix(static_cast<int>(dm));
  const std::vector<ComplexMatrix> dec = decoder_unitaries(m, theta);

  KrausChannel ch;
  ch.in_dim = ch.out_dim = static_cast<int>(d);

  switch (m.kind) {
    case ScenarioKind::Basic: {
      const KrausChannel enc = encoded_channel(m, theta, gates[0]);
      for (const ComplexMatrix& k : enc.kraus)
        ch.kraus.push_back(dec[1] * kron(k, id_mem) * dec[0]);
      break;
    }
    case ScenarioKind::MultiRound: {
      // client (T,C) = wires [0, n), server memory S = wires [n, 2n-a)
      const int w = 2 * n - a;
      std::vector<int> tc(n), ts(n);
      for (int q = 0; q < n; ++q) tc[q] = q;
      for (int q = 0; q < n; ++q) ts[q] = q < a ? q : n + (q - a);
      const std::vector<ComplexMatrix> enc = encoder_unitaries(m, theta);
      ComplexMatrix g = embed(dec[0], tc, w);
      for (int k = 0; k < m.rounds; ++k) {
        g = embed(enc[2 * k + 1] * gates[0] * enc[2 * k], ts, w) * g;
        g = embed(dec[k + 1], tc, w) * g;
      }
      // M_j = (I_TC (x) <j|_S) G (I_TC (x) |0>_S)
      for (Eigen::Index j = 0; j < dm; ++j) {
        ComplexMatrix kmat(d, d);
        for (Eigen::Index r = 0; r < d; ++r)
          for (Eigen::Index c = 0; c < d; ++c) kmat(r, c) = g(r * dm + j, c * dm);
        ch.kraus.push_back(std::move(kmat));
      }
      break;
    }
    case ScenarioKind::Sequence: {
      const std::vector<ComplexMatrix> enc = encoder_unitaries(m, theta);
      const KrausChannel k1 = round_channel(enc[0], enc[1], gates[0], n, a);
      const KrausChannel k2 = round_channel(enc[2], enc[3], gates[1], n, a);
      for (const ComplexMatrix& ki : k1.kraus)
        for (const ComplexMatrix& kj : k2.kraus)
          ch.kraus.push_back(dec[2] * kron(kj, id_mem) * dec[1] * kron(ki, id_mem) *
                             dec[0]);
      break;
    }
  }
  return ch;
}

ChoiOperator target_choi(const ScenarioModel& m, const std::vector<ComplexMatrix>& gates,
                         int multiround_uses) {
  if (static_cast<int>(gates.size()) != m.num_gate_families())
    throw std::invalid_argument("target_choi: wrong number of gates");
  for (const ComplexMatrix& g : gates) check_gate(g, m.n);
  switch (m.kind) {
    case ScenarioKind::Basic:
      return choi_of_unitary(gates[0]);
    case ScenarioKind::MultiRound: {
      if (multiround_uses < 1)
        throw std::invalid_argument("target_choi: multiround_uses must be >= 1");
      ComplexMatrix u = gates[0];
      for (int k = 1; k < multiround_uses; ++k) u = gates[0] * u;
      return choi_of_unitary(u);
    }
    case ScenarioKind::Sequence:
      return choi_of_unitary(gates[1] * gates[0]);
  }
  throw std::logic_error("unreachable");
}

double loss(const ScenarioModel& m, std::span<const double> theta,
            const std::vector<ComplexMatrix>& gates) {
  return 1.0 - CompiledScenario(m, gates).fidelity(theta);
}

namespace {

void reject_unknown_keys(const json& obj, std::initializer_list<const char*> known,
                         const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* k : known)
      if (it.key() == k) ok = true;
    if (!ok) throw std::runtime_error("model: unknown field \"" + it.key() + "\" in " + where);
  }
}

}  // namespace

void save_model(const ScenarioModel& m, const Eigen::VectorXd& theta,
                const std::string& path, std::uint64_t seed,
                const std::string& command_line) {
  if (theta.size() != m.num_params())
    throw std::invalid_argument("save_model: theta has wrong length");
  json j;
  j["version"] = "1";
  j["kind"] = scenario_kind_name(m.kind);
  j["n"] = m.n;
  j["a"] = m.a;
  if (m.kind == ScenarioKind::MultiRound) j["rounds"] = m.rounds;
  if (m.kind == ScenarioKind::Sequence) j["length"] = m.length;
  json blocks = json::object();
  const std::vector<std::string> names = m.block_names();
  const int per = m.params_per_block();
  for (int b = 0; b < m.num_blocks(); ++b) {
    json arr = json::array();
    for (int i = 0; i < per; ++i) arr.push_back(theta(b * per + i));
    blocks[names[b]] = std::move(arr);
  }
  j["blocks"] = std::move(blocks);
  j["seed"] = seed;
  if (!command_line.empty()) j["command_line"] = command_line;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << "\n";
}

std::pair<ScenarioModel, Eigen::VectorXd> load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw std::runtime_error("model: parse error in " + path + ": " + e.what());
  }
  if (!j.is_object()) throw std::runtime_error("model: top level must be an object");
  reject_unknown_keys(
      j, {"version", "kind", "n", "a", "rounds", "length", "blocks", "seed", "command_line"},
      "top level");
  if (!j.contains("version") || j["version"] != "1")
    throw std::runtime_error("model: unsupported version (expected \"1\")");
  for (const char* k : {"kind", "n", "a", "blocks"})
    if (!j.contains(k)) throw std::runtime_error(std::string("model: missing \"") + k + "\"");

  const std::string kind = j["kind"].get<std::string>();
  const int n = j["n"].get<int>();
  const int a = j["a"].get<int>();
  ScenarioModel m;
  if (kind == "basic") {
    m = ScenarioModel::basic(n, a);
    if (j.contains("rounds") || j.contains("length"))
      throw std::runtime_error("model: rounds/length not valid for basic");
  } else if (kind == "multiround") {
    if (!j.contains("rounds")) throw std::runtime_error("model: multiround needs rounds");
    m = ScenarioModel::multi_round(n, a, j["rounds"].get<int>());
  } else if (kind == "sequence") {
    if (!j.contains("length")) throw std::runtime_error("model: sequence needs length");
    m = ScenarioModel::sequence(n, a, j["length"].get<int>());
  } else {
    throw std::runtime_error("model: unknown kind \"" + kind + "\"");
  }

  const json& blocks = j["blocks"];
  if (!blocks.is_object()) throw std::runtime_error("model: blocks must be an object");
  const std::vector<std::string> names = m.block_names();
  if (blocks.size() != names.size())
    throw std::runtime_error("model: expected " + std::to_string(names.size()) + " blocks");
  const int per = m.params_per_block();
  Eigen::VectorXd theta(m.num_params());
  for (int b = 0; b < m.num_blocks(); ++b) {
    if (!blocks.contains(names[b]))
      throw std::runtime_error("model: missing block \"" + names[b] + "\"");
    const json& arr = blocks[names[b]];
    if (!arr.is_array() || static_cast<int>(arr.size()) != per)
      throw std::runtime_error("model: block \"" + names[b] + "\" must hold " +
                               std::to_string(per) + " values");
    for (int i = 0; i < per; ++i) theta(b * per + i) = arr[i].get<double>();
  }
  return {m, theta};
}

}  // namespace qaegate
