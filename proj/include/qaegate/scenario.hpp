#pragma once

#include "qaegate/channel.hpp"
#include "qaegate/gates.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace qaegate {

enum class ScenarioKind { Basic, MultiRound, Sequence };

const char* scenario_kind_name(ScenarioKind kind);

// Structure of a protocol instance: an n-qubit gate family compressed through
// an a-qubit link.  Every encoder/decoder block is one n-qubit template; the
// flat parameter vector concatenates the blocks in canonical order (all
// encoder blocks first, then all decoder blocks).
//
// Wire conventions, fixed everywhere: the transmitted line is the first a
// qubits of the client's register, the server ancilla/discard line is the
// last n-a qubits of the server's register.
struct ScenarioModel {
  ScenarioKind kind = ScenarioKind::Basic;
  int n = 2;
  int a = 1;
  int rounds = 1;  // MultiRound only (>= 2)
  int length = 1;  // Sequence only (== 2)
  GateTemplate block;

  static ScenarioModel basic(int n, int a);
  static ScenarioModel multi_round(int n, int a, int rounds);
  static ScenarioModel sequence(int n, int a, int length = 2);

  int num_encoder_blocks() const;
  int num_decoder_blocks() const;
  int num_blocks() const { return num_encoder_blocks() + num_decoder_blocks(); }
  int params_per_block() const { return block.num_params; }
  int num_params() const { return num_blocks() * params_per_block(); }
  int num_gate_families() const { return kind == ScenarioKind::Sequence ? length : 1; }
  std::vector<std::string> block_names() const;

  std::span<const double> block_params(std::span<const double> theta, int index) const;
};

// Server-side construction; takes only (model, theta) so the encoder cannot
// depend on the gate parameter x.
std::vector<ComplexMatrix> encoder_unitaries(const ScenarioModel& m,
                                             std::span<const double> theta);
std::vector<ComplexMatrix> decoder_unitaries(const ScenarioModel& m,
                                             std::span<const double> theta);

// Basic scenario: the a-qubit channel the server implements,
// K_i = (I_a (x) <i|) U_re U_x U_le (I_a (x) |0>).
KrausChannel encoded_channel(const ScenarioModel& m, std::span<const double> theta,
                             const ComplexMatrix& u_x);

// The n-qubit channel seen by the client after decoding.  gates holds one
// unitary for Basic/MultiRound and `length` unitaries for Sequence.
KrausChannel decoded_channel(const ScenarioModel& m, std::span<const double> theta,
                             const std::vector<ComplexMatrix>& gates);

// Pure Choi state of the gate the client wants.  MultiRound targets a single
// application of U_x by default; multiround_uses raises it to U_x^uses.
ChoiOperator target_choi(const ScenarioModel& m, const std::vector<ComplexMatrix>& gates,
                         int multiround_uses = 1);

// 1 - Tr(C C') between the target Choi state and the decoded channel's.
double loss(const ScenarioModel& m, std::span<const double> theta,
            const std::vector<ComplexMatrix>& gates);

void save_model(const ScenarioModel& m, const Eigen::VectorXd& theta,
                const std::string& path, std::uint64_t seed,
                const std::string& command_line = "");
std::pair<ScenarioModel, Eigen::VectorXd> load_model(const std::string& path);

}  // namespace qaegate
