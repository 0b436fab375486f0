#pragma once

#include "qaegate/scenario.hpp"

#include <span>
#include <vector>

namespace qaegate {

// Direct evaluator for the Choi-overlap fidelity f(theta) = Tr(C C') and its
// exact parameter-shift derivatives, without materializing Kraus operators
// or Choi matrices.
//
// The decoded channel's Kraus generator is tracked as an operator
// A = G (I (x) |0>_S) on the client (x) server space, stored transposed
// ("client-major", see kernels.hpp): state(c2, (c1, s)) = <c1, s| G |c2, 0>.
// The Kraus operators are the server-outcome slices M_j(c1, c2) =
// state(c2, (c1, j)), and
//   f = (1/d^2) sum_j |Tr(U_target^dag M_j)|^2 .
// Each trace is a linear functional of the state, so gradients come from one
// forward sweep plus one backward sweep per server outcome.
class CompiledScenario {
 public:
  CompiledScenario(const ScenarioModel& m, const std::vector<ComplexMatrix>& gates,
                   int multiround_uses = 1);

  int num_params() const { return num_params_; }
  int num_outcomes() const;
  const ComplexMatrix& target() const { return target_; }
  // how many times input gate g appears in the compiled program
  int gate_use_count(int gate_index) const;

  double fidelity(std::span<const double> theta) const;

  // Exact parameter shift: grad_f[k] = f(theta + pi/4 e_k) - f(theta - pi/4 e_k).
  // Deterministic for any thread count (per-outcome partials are reduced in a
  // fixed order).
  double fidelity_and_gradient(std::span<const double> theta, Eigen::VectorXd& grad_f,
                               int threads = 1) const;

 private:
  struct Slot {
    enum class Kind { Variable, Fixed, ServerReset };
    Kind kind = Kind::ServerReset;
    GateKind gate = GateKind::RX;  // Variable
    int param_index = -1;          // Variable
    ComplexMatrix fixed;           // Fixed
    ComplexMatrix fixed_adjoint;   // Fixed
    int gate_index = -1;           // Fixed: which input gate
    std::vector<int> wires;
  };

  ComplexMatrix initial_state() const;
  void spawn_reset_branches(const ComplexMatrix& state,
                            std::vector<ComplexMatrix>& out) const;
  Complex trace_against_target(const ComplexMatrix& state, int outcome) const;
  void apply_slot(const Slot& s, std::span<const double> theta, ComplexMatrix& state,
                  bool adjoint) const;
  void backward_sweep(int first_outcome, std::span<const double> theta,
                      const std::vector<std::vector<ComplexMatrix>>& plus_states,
                      const std::vector<std::vector<ComplexMatrix>>& minus_states,
                      double* plus_acc, double* minus_acc) const;

  int n_ = 0, a_ = 0, wires_ = 0, ancilla_bits_ = 0;
  int num_params_ = 0;
  std::vector<Slot> slots_;
  ComplexMatrix target_;
};

}  // namespace qaegate
