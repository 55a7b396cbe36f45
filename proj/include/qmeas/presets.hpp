#pragma once

#include "qmeas/states.hpp"

namespace qmeas {
namespace presets {

Matrix pauli_x();
Matrix pauli_y();
Matrix pauli_z();

// |n> in a dim-dimensional space.
StateVector ket(Index n, Index dim);

// (|0> + |1>)/sqrt(2)
StateVector plus();

// (|00> + |11>)/sqrt(2)
StateVector bell_phi_plus();

// Truncated number operator diag(0, 1, ..., dim-1).
Matrix number_operator(Index dim);

}  // namespace presets
}  // namespace qmeas
