#pragma once

#include "qaegate/channel.hpp"
#include "qaegate/random.hpp"

namespace qaegate {

// Haar-distributed unitary via QR of a Ginibre matrix with the phase fix.
ComplexMatrix haar_random_unitary(int dim, std::mt19937_64& rng);

// Random CPTP channel from a Stinespring dilation: a Haar unitary on the
// system plus env_qubits ancillas, sliced on the ancilla line.  Completeness
// holds by construction.
KrausChannel random_cptp_channel(int dim, int env_qubits, std::mt19937_64& rng);

}  // namespace qaegate
