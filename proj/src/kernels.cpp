#include "qaegate/kernels.hpp"

#include <stdexcept>

namespace qaegate {

void apply_gate(ComplexMatrix& state, const ComplexMatrix& gate, const int* wires,
                int num_wires, int total_wires) {
  const Eigen::Index dim = Eigen::Index{1} << total_wires;
  if (state.cols() != dim)
    throw std::invalid_argument("apply_gate: state does not match wire count");
  const int m = 1 << num_wires;
  if (gate.rows() != m || gate.cols() != m)
    throw std::invalid_argument("apply_gate: gate does not match its wire list");

  Eigen::Index pos[8];
  Eigen::Index mask = 0;
  for (int g = 0; g < num_wires; ++g) {
    if (wires[g] < 0 || wires[g] >= total_wires)
      throw std::invalid_argument("apply_gate: wire out of range");
    pos[g] = qubit_bit(wires[g], total_wires);
    mask |= Eigen::Index{1} << pos[g];
  }

  const Eigen::Index rows = state.rows();
  thread_local ComplexMatrix buf;
  buf.resize(rows, m);

  Eigen::Index idx[16];
  Eigen::Index base = 0;
  while (true) {
    for (Eigen::Index t = 0; t < m; ++t) {
      Eigen::Index c = base;
      for (int g = 0; g < num_wires; ++g)
        c |= ((t >> (num_wires - 1 - g)) & 1) << pos[g];
      idx[t] = c;
    }
    for (Eigen::Index t = 0; t < m; ++t) buf.col(t) = state.col(idx[t]);
    for (Eigen::Index t = 0; t < m; ++t) {
      auto out = state.col(idx[t]);
      out = gate(t, 0) * buf.col(0);
      for (Eigen::Index s = 1; s < m; ++s) out += gate(t, s) * buf.col(s);
    }
    // next index with all gate-wire bits clear
    base = (base | mask) + 1;
    if (base >= dim) break;
    base &= ~mask;
  }
}

}  // namespace qaegate
