#pragma once

#include "qaegate/tensor.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace qaegate {

// Open-boundary spin-1/2 chain:
//   H = -1/2 sum_{j<n-1} (Jx X_j X_{j+1} + Jy Y_j Y_{j+1} + Jz Z_j Z_{j+1})
//       -1/2 sum_j h Z_j
struct HeisenbergFamily {
  int n = 1;
  double jx = 0, jy = 0, jz = 0, h = 0;
};

// The two gate families used in the experiments.
HeisenbergFamily isotropic_family(int n);    // Jx = Jy = Jz = 0.1, h = 0.5
HeisenbergFamily anisotropic_family(int n);  // Jx = Jy = 0.1, Jz = h = 0.5

struct GateSample {
  HeisenbergFamily family;
  double t = 0;  // evolution time, the gate parameter x
};

struct Dataset {
  HeisenbergFamily family;
  std::uint64_t seed = 0;
  std::vector<GateSample> train;
  std::vector<GateSample> test;
};

ComplexMatrix hamiltonian(const HeisenbergFamily& f);

// U(t) = exp(-i H t)
ComplexMatrix heisenberg_gate(const GateSample& s);

// Evolution times drawn i.i.d. uniform from [t_lo, t_hi); train drawn before
// test; byte-identical output for a fixed seed.
Dataset sample_dataset(const HeisenbergFamily& f, int n_train, int n_test, double t_lo,
                       double t_hi, std::uint64_t seed);

void save_dataset(const Dataset& d, const std::string& path,
                  const std::string& command_line = "");
Dataset load_dataset(const std::string& path);

}  // namespace qaegate
