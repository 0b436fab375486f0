#include "qaegate/engine.hpp"

#include "qaegate/kernels.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace qaegate {

namespace {

constexpr double kShift = std::numbers::pi / 4;

Complex frobenius(const ComplexMatrix& functional, const ComplexMatrix& state) {
  const Eigen::Index size = functional.size();
  return Eigen::Map<const ComplexVector>(functional.data(), size)
      .dot(Eigen::Map<const ComplexVector>(state.data(), size));
}

}  // namespace

CompiledScenario::CompiledScenario(const ScenarioModel& m,
                                   const std::vector<ComplexMatrix>& gates,
                                   int multiround_uses) {
  if (m.n > 4) throw std::invalid_argument("scenario engine supports n <= 4");
  if (static_cast<int>(gates.size()) != m.num_gate_families())
    throw std::invalid_argument("expected " + std::to_string(m.num_gate_families()) +
                                " input gate(s), got " + std::to_string(gates.size()));
  const Eigen::Index d = Eigen::Index{1} << m.n;
  for (const ComplexMatrix& g : gates) {
    if (g.rows() != d || g.cols() != d)
      throw std::invalid_argument("input gate does not act on n qubits");
    if (!is_unitary(g)) throw std::invalid_argument("input gate is not unitary");
  }
  if (multiround_uses < 1 ||
      (multiround_uses != 1 && m.kind != ScenarioKind::MultiRound))
    throw std::invalid_argument("multiround_uses is only meaningful for MultiRound");

  n_ = m.n;
  a_ = m.a;
  ancilla_bits_ = m.n - m.a;
  wires_ = m.n + ancilla_bits_;
  num_params_ = m.num_params();

  // client register = wires [0, n); server ancilla line = wires [n, 2n-a)
  std::vector<int> client_wires(n_);
  for (int q = 0; q < n_; ++q) client_wires[q] = q;
  std::vector<int> server_wires(n_);
  for (int q = 0; q < n_; ++q) server_wires[q] = q < a_ ? q : n_ + (q - a_);

  const int per_block = m.params_per_block();
  auto append_block = [&](int block_index, const std::vector<int>& wire_map) {
    const int offset = block_index * per_block;
    for (const PrimitiveGate& g : m.block.gates) {
      Slot s;
      s.kind = Slot::Kind::Variable;
      s.gate = g.kind;
      s.param_index = offset + g.param_index;
      s.wires.push_back(wire_map[g.targets[0]]);
      if (gate_arity(g.kind) == 2) s.wires.push_back(wire_map[g.targets[1]]);
      slots_.push_back(std::move(s));
    }
  };
  auto append_fixed = [&](int gate_index) {
    Slot s;
    s.kind = Slot::Kind::Fixed;
    s.fixed = gates[gate_index];
    s.fixed_adjoint = gates[gate_index].adjoint();
    s.gate_index = gate_index;
    s.wires = server_wires;
    slots_.push_back(std::move(s));
  };

  switch (m.kind) {
    case ScenarioKind::Basic:
      // canonical block order: le, re, ld, rd
      append_block(2, client_wires);
      append_block(0, server_wires);
      append_fixed(0);
      append_block(1, server_wires);
      append_block(3, client_wires);
      break;
    case ScenarioKind::MultiRound: {
      const int r = m.rounds;
      append_block(2 * r + 0, client_wires);  // d0
      for (int k = 0; k < r; ++k) {
        append_block(2 * k, server_wires);          // le_{k+1}
        append_fixed(0);
        append_block(2 * k + 1, server_wires);      // re_{k+1}
        append_block(2 * r + k + 1, client_wires);  // d_{k+1}
      }
      break;
    }
    case ScenarioKind::Sequence:
      // blocks: le1 re1 le2 re2 | ld md rd; fresh server ancilla per round
      append_block(4, client_wires);  // ld
      append_block(0, server_wires);
      append_fixed(0);
      append_block(1, server_wires);
      {
        Slot reset;
        reset.kind = Slot::Kind::ServerReset;
        slots_.push_back(std::move(reset));
      }
      append_block(5, client_wires);  // md
      append_block(2, server_wires);
      append_fixed(1);
      append_block(3, server_wires);
      append_block(6, client_wires);  // rd
      break;
  }

  switch (m.kind) {
    case ScenarioKind::Basic:
      target_ = gates[0];
      break;
    case ScenarioKind::MultiRound:
      target_ = gates[0];
      for (int u = 1; u < multiround_uses; ++u) target_ = gates[0] * target_;
      break;
    case ScenarioKind::Sequence:
      target_ = gates[1] * gates[0];
      break;
  }
}

int CompiledScenario::num_outcomes() const {
  int resets = 0;
  for (const Slot& s : slots_)
    if (s.kind == Slot::Kind::ServerReset) ++resets;
  return 1 << (ancilla_bits_ * (resets + 1));
}

int CompiledScenario::gate_use_count(int gate_index) const {
  int count = 0;
  for (const Slot& s : slots_)
    if (s.kind == Slot::Kind::Fixed && s.gate_index == gate_index) ++count;
  return count;
}

ComplexMatrix CompiledScenario::initial_state() const {
  const Eigen::Index d = Eigen::Index{1} << n_;
  ComplexMatrix state = ComplexMatrix::Zero(d, Eigen::Index{1} << wires_);
  for (Eigen::Index c = 0; c < d; ++c) state(c, c << ancilla_bits_) = 1;
  return state;
}

void CompiledScenario::spawn_reset_branches(const ComplexMatrix& state,
                                            std::vector<ComplexMatrix>& out) const {
  const Eigen::Index d = Eigen::Index{1} << n_;
  const Eigen::Index anc = Eigen::Index{1} << ancilla_bits_;
  for (Eigen::Index i = 0; i < anc; ++i) {
    ComplexMatrix branch = ComplexMatrix::Zero(state.rows(), state.cols());
    for (Eigen::Index c = 0; c < d; ++c)
      branch.col(c << ancilla_bits_) = state.col((c << ancilla_bits_) | i);
    out.push_back(std::move(branch));
  }
}

Complex CompiledScenario::trace_against_target(const ComplexMatrix& state,
                                               int outcome) const {
  const Eigen::Index d = Eigen::Index{1} << n_;
  Complex tr = 0;
  for (Eigen::Index c1 = 0; c1 < d; ++c1) {
    const auto col = state.col((c1 << ancilla_bits_) | outcome);
    for (Eigen::Index c2 = 0; c2 < d; ++c2) tr += std::conj(target_(c1, c2)) * col(c2);
  }
  return tr;
}

void CompiledScenario::apply_slot(const Slot& s, std::span<const double> theta,
                                  ComplexMatrix& state, bool adjoint) const {
  if (s.kind == Slot::Kind::Variable) {
    const double angle = theta[s.param_index];
    apply_primitive_gate(state, s.gate, adjoint ? -angle : angle, s.wires.data(), wires_);
  } else {
    apply_gate(state, adjoint ? s.fixed_adjoint : s.fixed, s.wires.data(),
               static_cast<int>(s.wires.size()), wires_);
  }
}

double CompiledScenario::fidelity(std::span<const double> theta) const {
  if (static_cast<int>(theta.size()) != num_params_)
    throw std::invalid_argument("fidelity: parameter vector has wrong length");
  std::vector<ComplexMatrix> branches;
  branches.push_back(initial_state());
  for (const Slot& s : slots_) {
    if (s.kind == Slot::Kind::ServerReset) {
      std::vector<ComplexMatrix> next;
      next.reserve(branches.size() << ancilla_bits_);
      for (const ComplexMatrix& b : branches) spawn_reset_branches(b, next);
      branches = std::move(next);
    } else {
      for (ComplexMatrix& b : branches) apply_slot(s, theta, b, false);
    }
  }
  const Eigen::Index anc = Eigen::Index{1} << ancilla_bits_;
  const double d = static_cast<double>(Eigen::Index{1} << n_);
  double sum = 0;
  for (const ComplexMatrix& b : branches)
    for (Eigen::Index j = 0; j < anc; ++j) sum += std::norm(trace_against_target(b, j));
  return sum / (d * d);
}

// Backward sweep for one final server outcome: walks the program in reverse
// carrying the trace functional(s) for that outcome, and accumulates the
// shifted-fidelity contributions against the cached theta +- pi/4 states.
void CompiledScenario::backward_sweep(
    int first_outcome, std::span<const double> theta,
    const std::vector<std::vector<ComplexMatrix>>& plus_states,
    const std::vector<std::vector<ComplexMatrix>>& minus_states, double* plus_acc,
    double* minus_acc) const {
  const Eigen::Index d = Eigen::Index{1} << n_;
  const Eigen::Index anc = Eigen::Index{1} << ancilla_bits_;

  std::vector<ComplexMatrix> funcs;
  {
    ComplexMatrix f = ComplexMatrix::Zero(d, Eigen::Index{1} << wires_);
    for (Eigen::Index c1 = 0; c1 < d; ++c1)
      for (Eigen::Index c2 = 0; c2 < d; ++c2)
        f(c2, (c1 << ancilla_bits_) | first_outcome) = target_(c1, c2);
    funcs.push_back(std::move(f));
  }

  for (int t = static_cast<int>(slots_.size()) - 1; t >= 0; --t) {
    const Slot& s = slots_[t];
    if (s.kind == Slot::Kind::ServerReset) {
      std::vector<ComplexMatrix> next;
      next.reserve(funcs.size() << ancilla_bits_);
      for (const ComplexMatrix& f : funcs) {
        for (Eigen::Index i = 0; i < anc; ++i) {
          ComplexMatrix g = ComplexMatrix::Zero(f.rows(), f.cols());
          for (Eigen::Index c = 0; c < d; ++c)
            g.col((c << ancilla_bits_) | i) = f.col(c << ancilla_bits_);
          next.push_back(std::move(g));
        }
      }
      funcs = std::move(next);
      continue;
    }
    if (s.kind == Slot::Kind::Variable) {
      const int k = s.param_index;
      double plus = 0, minus = 0;
      for (const ComplexMatrix& f : funcs) {
        for (const ComplexMatrix& v : plus_states[t]) plus += std::norm(frobenius(f, v));
        for (const ComplexMatrix& v : minus_states[t]) minus += std::norm(frobenius(f, v));
      }
      plus_acc[k] += plus;
      minus_acc[k] += minus;
    }
    for (ComplexMatrix& f : funcs) apply_slot(s, theta, f, true);
  }
}

double CompiledScenario::fidelity_and_gradient(std::span<const double> theta,
                                               Eigen::VectorXd& grad_f,
                                               int threads) const {
  if (static_cast<int>(theta.size()) != num_params_)
    throw std::invalid_argument("gradient: parameter vector has wrong length");

  // forward pass; at each variable slot stash the theta_k +- pi/4 states so
  // every backward sweep can reuse them
  std::vector<std::vector<ComplexMatrix>> plus_states(slots_.size());
  std::vector<std::vector<ComplexMatrix>> minus_states(slots_.size());
  std::vector<ComplexMatrix> branches;
  branches.push_back(initial_state());
  for (std::size_t t = 0; t < slots_.size(); ++t) {
    const Slot& s = slots_[t];
    if (s.kind == Slot::Kind::ServerReset) {
      std::vector<ComplexMatrix> next;
      next.reserve(branches.size() << ancilla_bits_);
      for (const ComplexMatrix& b : branches) spawn_reset_branches(b, next);
      branches = std::move(next);
      continue;
    }
    if (s.kind == Slot::Kind::Variable) {
      const double angle = theta[s.param_index];
      plus_states[t].reserve(branches.size());
      minus_states[t].reserve(branches.size());
      for (const ComplexMatrix& b : branches) {
        ComplexMatrix vp = b;
        apply_primitive_gate(vp, s.gate, angle + kShift, s.wires.data(), wires_);
        plus_states[t].push_back(std::move(vp));
        ComplexMatrix vm = b;
        apply_primitive_gate(vm, s.gate, angle - kShift, s.wires.data(), wires_);
        minus_states[t].push_back(std::move(vm));
      }
    }
    for (ComplexMatrix& b : branches) apply_slot(s, theta, b, false);
  }

  const Eigen::Index anc = Eigen::Index{1} << ancilla_bits_;
  const double d = static_cast<double>(Eigen::Index{1} << n_);
  double sum = 0;
  for (const ComplexMatrix& b : branches)
    for (Eigen::Index j = 0; j < anc; ++j) sum += std::norm(trace_against_target(b, j));
  const double f_value = sum / (d * d);

  // one backward sweep per final outcome; per-outcome partial sums reduced in
  // outcome order so results do not depend on the thread count
  const int outcomes = static_cast<int>(anc);
  std::vector<Eigen::VectorXd> plus(outcomes, Eigen::VectorXd::Zero(num_params_));
  std::vector<Eigen::VectorXd> minus(outcomes, Eigen::VectorXd::Zero(num_params_));

  const int workers = std::max(1, std::min(threads, outcomes));
  if (workers == 1) {
    for (int j = 0; j < outcomes; ++j)
      backward_sweep(j, theta, plus_states, minus_states, plus[j].data(),
                     minus[j].data());
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (int j = w; j < outcomes; j += workers)
          backward_sweep(j, theta, plus_states, minus_states, plus[j].data(),
                         minus[j].data());
      });
    }
    for (std::thread& th : pool) th.join();
  }

  grad_f.resize(num_params_);
  grad_f.setZero();
  for (int j = 0; j < outcomes; ++j) grad_f += plus[j] - minus[j];
  grad_f /= d * d;
  return f_value;
}

}  // namespace qaegate
