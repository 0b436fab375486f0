#include "qaegate/gates.hpp"

#include "qaegate/kernels.hpp"

#include <stdexcept>
#include <string>

namespace qaegate {

int gate_arity(GateKind kind) {
  switch (kind) {
    case GateKind::RX:
    case GateKind::RY:
    case GateKind::RZ:
      return 1;
    default:
      return 2;
  }
}

const char* gate_name(GateKind kind) {
  switch (kind) {
    case GateKind::RX: return "RX";
    case GateKind::RY: return "RY";
    case GateKind::RZ: return "RZ";
    case GateKind::XX: return "XX";
    case GateKind::YY: return "YY";
    case GateKind::ZZ: return "ZZ";
  }
  return "?";
}

const ComplexMatrix& gate_generator(GateKind kind) {
  static const ComplexMatrix gx = sigma_x();
  static const ComplexMatrix gy = sigma_y();
  static const ComplexMatrix gz = sigma_z();
  static const ComplexMatrix gxx = kron(sigma_x(), sigma_x());
  static const ComplexMatrix gyy = kron(sigma_y(), sigma_y());
  static const ComplexMatrix gzz = kron(sigma_z(), sigma_z());
  switch (kind) {
    case GateKind::RX: return gx;
    case GateKind::RY: return gy;
    case GateKind::RZ: return gz;
    case GateKind::XX: return gxx;
    case GateKind::YY: return gyy;
    case GateKind::ZZ: return gzz;
  }
  return gx;
}

ComplexMatrix primitive_matrix(GateKind kind, double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const Complex mis(0, -s);  // -i sin(theta)
  switch (kind) {
    case GateKind::RX: {
      ComplexMatrix m(2, 2);
      m << c, mis, mis, c;
      return m;
    }
    case GateKind::RY: {
      ComplexMatrix m(2, 2);
      m << c, -s, s, c;
      return m;
    }
    case GateKind::RZ: {
      ComplexMatrix m = ComplexMatrix::Zero(2, 2);
      m(0, 0) = Complex(c, -s);
      m(1, 1) = Complex(c, s);
      return m;
    }
    case GateKind::XX: {
      ComplexMatrix m = ComplexMatrix::Zero(4, 4);
      for (int i = 0; i < 4; ++i) {
        m(i, i) = c;
        m(i, 3 - i) = mis;
      }
      return m;
    }
    case GateKind::YY: {
      ComplexMatrix m = ComplexMatrix::Zero(4, 4);
      for (int i = 0; i < 4; ++i) {
        m(i, i) = c;
        m(i, 3 - i) = (i == 0 || i == 3) ? -mis : mis;
      }
      return m;
    }
    case GateKind::ZZ: {
      ComplexMatrix m = ComplexMatrix::Zero(4, 4);
      for (int i = 0; i < 4; ++i)
        m(i, i) = (i == 0 || i == 3) ? Complex(c, -s) : Complex(c, s);
      return m;
    }
  }
  throw std::invalid_argument("unknown gate kind");
}

namespace {

void append_single(GateTemplate& t, GateKind kind, int qubit) {
  t.gates.push_back({kind, {qubit, -1}, t.num_params++});
}

void append_pair(GateTemplate& t, GateKind kind, int q0, int q1) {
  t.gates.push_back({kind, {q0, q1}, t.num_params++});
}

void append_euler_triple(GateTemplate& t, int qubit) {
  append_single(t, GateKind::RX, qubit);
  append_single(t, GateKind::RY, qubit);
  append_single(t, GateKind::RZ, qubit);
}

void append_two_qubit_block(GateTemplate& t, int q0, int q1) {
  append_euler_triple(t, q0);
  append_euler_triple(t, q1);
  append_pair(t, GateKind::XX, q0, q1);
  append_pair(t, GateKind::YY, q0, q1);
  append_pair(t, GateKind::ZZ, q0, q1);
  append_euler_triple(t, q0);
  append_euler_triple(t, q1);
}

}  // namespace

GateTemplate two_qubit_template() {
  GateTemplate t;
  t.num_qubits = 2;
  append_two_qubit_block(t, 0, 1);
  return t;
}

GateTemplate n_qubit_template(int n) {
  if (n < 1) throw std::invalid_argument("n_qubit_template: n must be >= 1");
  GateTemplate t;
  t.num_qubits = n;
  if (n == 1) {
    append_euler_triple(t, 0);
    return t;
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) append_two_qubit_block(t, i, j);
  return t;
}

ComplexMatrix realize(const GateTemplate& tmpl, std::span<const double> theta) {
  if (static_cast<int>(theta.size()) != tmpl.num_params)
    throw std::invalid_argument("realize: expected " + std::to_string(tmpl.num_params) +
                                " parameters, got " + std::to_string(theta.size()));
  const Eigen::Index dim = Eigen::Index{1} << tmpl.num_qubits;
  ComplexMatrix state = ComplexMatrix::Identity(dim, dim);
  for (const PrimitiveGate& g : tmpl.gates)
    apply_primitive_gate(state, g.kind, theta[g.param_index], g.targets,
                         tmpl.num_qubits);
  return state.transpose();
}

namespace {

// two-level mix: (x, y) <- (c x + u y, u x + c y) for u = -i sin or +i sin
inline void mix_pair(Complex* x, Complex* y, Eigen::Index rows, double c, double s_signed) {
  for (Eigen::Index r = 0; r < rows; ++r) {
    const double xr = x[r].real(), xi = x[r].imag();
    const double yr = y[r].real(), yi = y[r].imag();
    // u = -i * s_signed
    x[r] = Complex(c * xr + s_signed * yi, c * xi - s_signed * yr);
    y[r] = Complex(s_signed * xi + c * yr, -s_signed * xr + c * yi);
  }
}

// real rotation: (x, y) <- (c x - s y, s x + c y)
inline void rotate_pair(Complex* x, Complex* y, Eigen::Index rows, double c, double s) {
  for (Eigen::Index r = 0; r < rows; ++r) {
    const Complex xv = x[r], yv = y[r];
    x[r] = c * xv - s * yv;
    y[r] = s * xv + c * yv;
  }
}

inline void scale_col(Complex* x, Eigen::Index rows, double c, double s) {
  // multiply by c + i s
  for (Eigen::Index r = 0; r < rows; ++r) {
    const double xr = x[r].real(), xi = x[r].imag();
    x[r] = Complex(c * xr - s * xi, c * xi + s * xr);
  }
}

}  // namespace

void apply_primitive_gate(ComplexMatrix& state, GateKind kind, double theta,
                          const int* wires, int total_wires) {
  const Eigen::Index dim = Eigen::Index{1} << total_wires;
  if (state.cols() != dim)
    throw std::invalid_argument("apply_primitive_gate: state/wire mismatch");
  const Eigen::Index rows = state.rows();
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  Complex* data = state.data();  // column-major: column k starts at k * rows

  if (gate_arity(kind) == 1) {
    const Eigen::Index mask = Eigen::Index{1} << qubit_bit(wires[0], total_wires);
    for (Eigen::Index base = 0; base < dim; base = ((base | mask) + 1) & ~mask) {
      Complex* x = data + base * rows;
      Complex* y = data + (base | mask) * rows;
      switch (kind) {
        case GateKind::RX: mix_pair(x, y, rows, c, s); break;
        case GateKind::RY: rotate_pair(x, y, rows, c, s); break;
        case GateKind::RZ:
          scale_col(x, rows, c, -s);
          scale_col(y, rows, c, s);
          break;
        default: throw std::invalid_argument("single-qubit wire list for a 2-qubit gate");
      }
    }
    return;
  }

  const Eigen::Index m1 = Eigen::Index{1} << qubit_bit(wires[0], total_wires);
  const Eigen::Index m2 = Eigen::Index{1} << qubit_bit(wires[1], total_wires);
  const Eigen::Index mask = m1 | m2;
  for (Eigen::Index base = 0; base < dim; base = ((base | mask) + 1) & ~mask) {
    Complex* c0 = data + base * rows;
    Complex* c1 = data + (base | m2) * rows;
    Complex* c2 = data + (base | m1) * rows;
    Complex* c3 = data + (base | m1 | m2) * rows;
    switch (kind) {
      case GateKind::XX:
        mix_pair(c0, c3, rows, c, s);
        mix_pair(c1, c2, rows, c, s);
        break;
      case GateKind::YY:
        mix_pair(c0, c3, rows, c, -s);  // +i sin coupling on the outer pair
        mix_pair(c1, c2, rows, c, s);
        break;
      case GateKind::ZZ:
        scale_col(c0, rows, c, -s);
        scale_col(c1, rows, c, s);
        scale_col(c2, rows, c, s);
        scale_col(c3, rows, c, -s);
        break;
      default: throw std::invalid_argument("two-qubit wire list for a 1-qubit gate");
    }
  }
}

}  // namespace qaegate
