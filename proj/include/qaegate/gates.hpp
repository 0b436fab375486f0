#pragma once

#include "qaegate/tensor.hpp"

#include <span>
#include <vector>

namespace qaegate {

// The six primitive parameterized gates.  Each one is exp(-i*theta*H) for a
// generator H that squares to the identity (a Pauli or a two-fold Pauli
// tensor), so every matrix entry is a trigonometric polynomial of frequency
// one in 2*theta and the pi/4 parameter-shift rule is exact.
enum class GateKind { RX, RY, RZ, XX, YY, ZZ };

int gate_arity(GateKind kind);          // 1 or 2 qubits
const char* gate_name(GateKind kind);
const ComplexMatrix& gate_generator(GateKind kind);  // H with H^2 = I, ||H|| = 1

ComplexMatrix primitive_matrix(GateKind kind, double theta);

struct PrimitiveGate {
  GateKind kind;
  int targets[2];   // targets[1] unused for single-qubit gates
  int param_index;  // index into the flat parameter vector
};

// A symbolic circuit of primitive gates; every param_index in
// [0, num_params) appears exactly once (one parameter per variable gate).
struct GateTemplate {
  int num_qubits = 0;
  int num_params = 0;
  std::vector<PrimitiveGate> gates;
};

// 15-parameter two-qubit block: a per-qubit (RX, RY, RZ) triple on each
// qubit, the XX/YY/ZZ couplings, then a second per-qubit triple.  Universal
// for two-qubit unitaries up to global phase (KAK form).
GateTemplate two_qubit_template();

// n = 1: one (RX, RY, RZ) triple.  n >= 2: one two-qubit block per qubit
// pair (i, j), i < j, in lexicographic order -- n(n-1)/2 blocks.
GateTemplate n_qubit_template(int n);

// Ordered product of the embedded primitive matrices; the first gate in the
// list is applied first to states (rightmost in the matrix product).
ComplexMatrix realize(const GateTemplate& tmpl, std::span<const double> theta);

// In-place A <- embed(primitive_matrix(kind, theta)) * A in the client-major
// layout of kernels.hpp, exploiting that every primitive mixes basis states
// in independent pairs (or is diagonal).
void apply_primitive_gate(ComplexMatrix& state, GateKind kind, double theta,
                          const int* wires, int total_wires);

}  // namespace qaegate
