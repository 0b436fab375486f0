#include "qaegate/sampling.hpp"

#include <Eigen/QR>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qaegate {

namespace {

double gaussian(std::mt19937_64& rng) {
  // Box-Muller on the portable uniform draws
  const double u1 = 1.0 - uniform_unit(rng);
  const double u2 = uniform_unit(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace

ComplexMatrix haar_random_unitary(int dim, std::mt19937_64& rng) {
  if (dim < 1) throw std::invalid_argument("haar_random_unitary: dim must be >= 1");
  ComplexMatrix g(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) g(i, j) = Complex(gaussian(rng), gaussian(rng));
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < dim; ++j) {
    const Complex d = r(j, j);
    q.col(j) *= std::abs(d) > 0 ? d / std::abs(d) : Complex(1, 0);
  }
  return q;
}

KrausChannel random_cptp_channel(int dim, int env_qubits, std::mt19937_64& rng) {
  if (env_qubits < 0) throw std::invalid_argument("random_cptp_channel: env_qubits < 0");
  const int env = 1 << env_qubits;
  const ComplexMatrix v = haar_random_unitary(dim * env, rng);
  KrausChannel ch;
  ch.in_dim = ch.out_dim = dim;
  for (int i = 0; i < env; ++i) {
    // K_i = (I (x) <i|) V (I (x) |0>), environment on the least significant line
    ComplexMatrix k(dim, dim);
    for (int r = 0; r < dim; ++r)
      for (int c = 0; c < dim; ++c) k(r, c) = v(r * env + i, c * env);
    ch.kraus.push_back(std::move(k));
  }
  return ch;
}

}  // namespace qaegate
