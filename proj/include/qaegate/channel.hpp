#pragma once

#include "qaegate/tensor.hpp"

#include <vector>

namespace qaegate {

// Completely positive trace-preserving map as a finite Kraus list.
struct KrausChannel {
  int in_dim = 0;
  int out_dim = 0;
  std::vector<ComplexMatrix> kraus;

  static KrausChannel from_unitary(const ComplexMatrix& u);

  // max-norm of sum K^dag K - I (the trace-preservation defect)
  double completeness_defect() const;
  void validate(double tol = kUnitaryTol) const;
};

// Unit-trace ("Choi state") convention: for a channel on dimension d the
// Choi operator is (ch (x) id)(|Phi><Phi|) with |Phi> = sum_k |k>|k> / sqrt d,
// the channel acting on the first (most significant) factor.  Equivalently
// (1/d) sum_i vec(K_i) vec(K_i)^dag with row-major vec.
struct ChoiOperator {
  int in_dim = 0;
  int out_dim = 0;
  ComplexMatrix matrix;

  int dim() const { return in_dim * out_dim; }
};

ComplexMatrix apply_channel(const KrausChannel& ch, const ComplexMatrix& rho);

ChoiOperator choi_of_channel(const KrausChannel& ch);
ChoiOperator choi_of_unitary(const ComplexMatrix& u);

// Tr(C C'); equals the entanglement fidelity when one operator is the pure
// Choi state of a unitary.
double choi_overlap(const ChoiOperator& c, const ChoiOperator& cp);

// Fast path for the overlap against a unitary target:
// sum_i |Tr(U^dag K_i)|^2 / d^2.
double entanglement_fidelity(const ComplexMatrix& u, const KrausChannel& ch);

// Probability of outcome |+> in the SWAP test between the two Choi states;
// the overlap satisfies f = 2 p - 1 exactly.
double swap_test_probability(const ChoiOperator& c, const ChoiOperator& cp);

}  // namespace qaegate
