#include "qaegate/channel.hpp"

#include <stdexcept>

namespace qaegate {

KrausChannel KrausChannel::from_unitary(const ComplexMatrix& u) {
  if (u.rows() != u.cols())
    throw std::invalid_argument("from_unitary: matrix is not square");
  KrausChannel ch;
  ch.in_dim = ch.out_dim = static_cast<int>(u.rows());
  ch.kraus.push_back(u);
  return ch;
}

double KrausChannel::completeness_defect() const {
  ComplexMatrix sum = ComplexMatrix::Zero(in_dim, in_dim);
  for (const ComplexMatrix& k : kraus) sum += k.adjoint() * k;
  return max_abs(sum - identity_matrix(in_dim));
}

void KrausChannel::validate(double tol) const {
  if (kraus.empty()) throw std::invalid_argument("channel has no Kraus operators");
  for (const ComplexMatrix& k : kraus)
    if (k.rows() != out_dim || k.cols() != in_dim)
      throw std::invalid_argument("Kraus operator has wrong shape");
  const double defect = completeness_defect();
  if (defect > tol)
    throw std::invalid_argument("channel is not trace preserving (defect " +
                                std::to_string(defect) + ")");
}

ComplexMatrix apply_channel(const KrausChannel& ch, const ComplexMatrix& rho) {
  if (rho.rows() != ch.in_dim || rho.cols() != ch.in_dim)
    throw std::invalid_argument("apply_channel: state dimension mismatch");
  ComplexMatrix out = ComplexMatrix::Zero(ch.out_dim, ch.out_dim);
  for (const ComplexMatrix& k : ch.kraus) out += k * rho * k.adjoint();
  return out;
}

namespace {

// row-major vec: entry (i, j) of K lands at composite index i*cols + j
ComplexVector vec_rows(const ComplexMatrix& k) {
  const Eigen::Index rows = k.rows(), cols = k.cols();
  ComplexVector v(rows * cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) v(i * cols + j) = k(i, j);
  return v;
}

}  // namespace

ChoiOperator choi_of_channel(const KrausChannel& ch) {
  ChoiOperator c;
  c.in_dim = ch.in_dim;
  c.out_dim = ch.out_dim;
  c.matrix = ComplexMatrix::Zero(c.dim(), c.dim());
  for (const ComplexMatrix& k : ch.kraus) {
    const ComplexVector v = vec_rows(k);
    c.matrix.noalias() += v * v.adjoint();
  }
  c.matrix /= static_cast<double>(ch.in_dim);
  return c;
}

ChoiOperator choi_of_unitary(const ComplexMatrix& u) {
  return choi_of_channel(KrausChannel::from_unitary(u));
}

double choi_overlap(const ChoiOperator& c, const ChoiOperator& cp) {
  if (c.dim() != cp.dim())
    throw std::invalid_argument("choi_overlap: dimension mismatch");
  // Tr(C C') for Hermitian C, C' without forming the product
  const Complex t = c.matrix.cwiseProduct(cp.matrix.transpose()).sum();
  return t.real();
}

double entanglement_fidelity(const ComplexMatrix& u, const KrausChannel& ch) {
  if (u.rows() != ch.in_dim || ch.in_dim != ch.out_dim)
    throw std::invalid_argument("entanglement_fidelity: dimension mismatch");
  const double d = static_cast<double>(ch.in_dim);
  double sum = 0;
  for (const ComplexMatrix& k : ch.kraus) {
    const Complex tr = u.cwiseProduct(k.conjugate()).sum();  // Tr(U^dag K)^*
    sum += std::norm(tr);
  }
  return sum / (d * d);
}

double swap_test_probability(const ChoiOperator& c, const ChoiOperator& cp) {
  return (1.0 + choi_overlap(c, cp)) / 2.0;
}

}  // namespace qaegate
