#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <vector>

namespace qaegate {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

// Tolerance ladder: ~100x double-precision accumulation noise at dim <= 128.
inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kUnitaryTol = 1e-10;
inline constexpr double kExpUnitaryTol = 1e-9;

// Endianness contract, used everywhere: qubit 0 is the most significant bit
// of a basis index.  For a W-qubit space, qubit q owns bit (W-1-q) of the
// index counted from the least significant end.
inline int qubit_bit(int qubit, int total_qubits) { return total_qubits - 1 - qubit; }

const ComplexMatrix& sigma_x();
const ComplexMatrix& sigma_y();
const ComplexMatrix& sigma_z();

ComplexMatrix identity_matrix(int dim);

// Number of qubits for a square dim x dim matrix; throws if dim is not a
// power of two or the matrix is not square.
int qubit_count(const ComplexMatrix& m);

double max_abs(const ComplexMatrix& m);
bool is_hermitian(const ComplexMatrix& m, double tol = kHermitianTol);
bool is_unitary(const ComplexMatrix& m, double tol = kUnitaryTol);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// Lift `op` (dim 2^|targets|) to `total_qubits`, acting as `op` on the listed
// qubits (first target = most significant bit of op's own index) and as the
// identity elsewhere.
ComplexMatrix embed(const ComplexMatrix& op, const std::vector<int>& targets,
                    int total_qubits);

// Trace out every qubit not listed in `keep`; output wires are ordered as in
// `keep`.
ComplexMatrix partial_trace(const ComplexMatrix& m, const std::vector<int>& keep,
                            int total_qubits);

// exp(scale * h) for Hermitian h via eigendecomposition.  Purely imaginary
// scale gives a unitary result up to rounding.
ComplexMatrix expm_hermitian(const ComplexMatrix& h, Complex scale);

}  // namespace qaegate
