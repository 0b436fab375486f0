#include "qaegate/tensor.hpp"

#include <Eigen/Eigenvalues>

#include <stdexcept>
#include <string>

namespace qaegate {

namespace {

ComplexMatrix make_sigma_x() {
  ComplexMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

ComplexMatrix make_sigma_y() {
  ComplexMatrix m(2, 2);
  m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
  return m;
}

ComplexMatrix make_sigma_z() {
  ComplexMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

}  // namespace

const ComplexMatrix& sigma_x() {
  static const ComplexMatrix m = make_sigma_x();
  return m;
}

const ComplexMatrix& sigma_y() {
  static const ComplexMatrix m = make_sigma_y();
  return m;
}

const ComplexMatrix& sigma_z() {
  static const ComplexMatrix m = make_sigma_z();
  return m;
}

ComplexMatrix identity_matrix(int dim) { return ComplexMatrix::Identity(dim, dim); }

int qubit_count(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("matrix is not square");
  const auto dim = m.rows();
  if (dim < 1 || (dim & (dim - 1)) != 0)
    throw std::invalid_argument("matrix dimension " + std::to_string(dim) +
                                " is not a power of two");
  int n = 0;
  while ((Eigen::Index{1} << n) < dim) ++n;
  return n;
}

double max_abs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
  return m.rows() == m.cols() && max_abs(m - m.adjoint().eval()) <= tol;
}

bool is_unitary(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  const ComplexMatrix gram = m.adjoint() * m;
  return max_abs(gram - identity_matrix(static_cast<int>(m.rows()))) <= tol;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols())
    throw std::invalid_argument("kron expects square matrices");
  const Eigen::Index da = a.rows(), db = b.rows();
  ComplexMatrix out(da * db, da * db);
  for (Eigen::Index i = 0; i < da; ++i)
    for (Eigen::Index j = 0; j < da; ++j)
      out.block(i * db, j * db, db, db) = a(i, j) * b;
  return out;
}

ComplexMatrix embed(const ComplexMatrix& op, const std::vector<int>& targets,
                    int total_qubits) {
  const int k = static_cast<int>(targets.size());
  if (qubit_count(op) != k)
    throw std::invalid_argument("embed: operator dimension does not match target count");
  std::uint64_t seen = 0;
  for (int t : targets) {
    if (t < 0 || t >= total_qubits)
      throw std::invalid_argument("embed: target qubit out of range");
    if (seen & (std::uint64_t{1} << t))
      throw std::invalid_argument("embed: duplicate target qubit");
    seen |= std::uint64_t{1} << t;
  }

  const Eigen::Index dim = Eigen::Index{1} << total_qubits;
  const Eigen::Index sub = Eigen::Index{1} << k;
  ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
  for (Eigen::Index row = 0; row < dim; ++row) {
    Eigen::Index sub_row = 0;
    for (int g = 0; g < k; ++g)
      sub_row |= ((row >> qubit_bit(targets[g], total_qubits)) & 1) << (k - 1 - g);
    for (Eigen::Index sub_col = 0; sub_col < sub; ++sub_col) {
      Eigen::Index col = row;
      for (int g = 0; g < k; ++g) {
        const int bit = qubit_bit(targets[g], total_qubits);
        col &= ~(Eigen::Index{1} << bit);
        col |= ((sub_col >> (k - 1 - g)) & 1) << bit;
      }
      out(row, col) = op(sub_row, sub_col);
    }
  }
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, const std::vector<int>& keep,
                            int total_qubits) {
  if (qubit_count(m) != total_qubits)
    throw std::invalid_argument("partial_trace: matrix does not match qubit count");
  std::uint64_t seen = 0;
  for (int q : keep) {
    if (q < 0 || q >= total_qubits)
      throw std::invalid_argument("partial_trace: kept qubit out of range");
    if (seen & (std::uint64_t{1} << q))
      throw std::invalid_argument("partial_trace: duplicate kept qubit");
    seen |= std::uint64_t{1} << q;
  }

  std::vector<int> traced;
  for (int q = 0; q < total_qubits; ++q)
    if (!(seen & (std::uint64_t{1} << q))) traced.push_back(q);

  const int nk = static_cast<int>(keep.size());
  const int nt = static_cast<int>(traced.size());
  const Eigen::Index dk = Eigen::Index{1} << nk;
  const Eigen::Index dt = Eigen::Index{1} << nt;

  auto full_index = [&](Eigen::Index kept_bits, Eigen::Index env_bits) {
    Eigen::Index idx = 0;
    for (int g = 0; g < nk; ++g)
      idx |= ((kept_bits >> (nk - 1 - g)) & 1) << qubit_bit(keep[g], total_qubits);
    for (int g = 0; g < nt; ++g)
      idx |= ((env_bits >> (nt - 1 - g)) & 1) << qubit_bit(traced[g], total_qubits);
    return idx;
  };

  ComplexMatrix out = ComplexMatrix::Zero(dk, dk);
  for (Eigen::Index r = 0; r < dk; ++r)
    for (Eigen::Index c = 0; c < dk; ++c) {
      Complex sum = 0;
      for (Eigen::Index e = 0; e < dt; ++e) sum += m(full_index(r, e), full_index(c, e));
      out(r, c) = sum;
    }
  return out;
}

ComplexMatrix expm_hermitian(const ComplexMatrix& h, Complex scale) {
  if (!is_hermitian(h, 1e-10))
    throw std::invalid_argument("expm_hermitian: input is not Hermitian");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("expm_hermitian: eigendecomposition failed");
  const Eigen::Index dim = h.rows();
  ComplexVector phases(dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    phases(i) = std::exp(scale * solver.eigenvalues()(i));
  return solver.eigenvectors() * phases.asDiagonal() * solver.eigenvectors().adjoint();
}

}  // namespace qaegate
