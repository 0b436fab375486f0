#pragma once

#include "qaegate/tensor.hpp"

namespace qaegate {

// Circuit states are stored transposed ("client-major"): state(r, b) where b
// runs over the 2^total_wires circuit basis and r over whatever auxiliary
// index the caller carries (matrix columns of a Kraus generator, reference
// wires, ...).  apply_gate performs A <- embed(gate) * A on the untransposed
// operator A = state^T, i.e. it mixes contiguous columns of `state`.
//
// wires[0] is the most significant bit of the gate's own index; wire w of the
// circuit owns bit (total_wires-1-w) of b.
void apply_gate(ComplexMatrix& state, const ComplexMatrix& gate, const int* wires,
                int num_wires, int total_wires);

}  // namespace qaegate
