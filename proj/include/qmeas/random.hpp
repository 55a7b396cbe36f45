#pragma once

#include <cstdint>
#include <random>

#include "qmeas/local_theorem.hpp"

namespace qmeas {

// Deterministic random source. Gaussian variates use an explicit
// Box-Muller transform rather than std::normal_distribution so that
// streams are reproducible across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform();                      // [0, 1)
  double uniform(double lo, double hi);  // [lo, hi)
  int uniform_int(int lo, int hi);       // {lo, ..., hi}
  double normal();
  Cx complex_normal();

 private:
  std::mt19937_64 engine_;
};

Matrix random_hermitian(Rng& rng, Index dim, double scale = 1.0);
Matrix random_unitary(Rng& rng, Index dim);
StateVector random_state_vector(Rng& rng, Index dim);
DensityOperator random_density(Rng& rng, Index dim);

// Hermitian observable with a simple spectrum (unit-order gaps), so every
// spectral projector has rank 1.
Observable random_nondegenerate_observable(Rng& rng, Index dim);

// Random transducer for `measured`: random prepared state and orthonormal
// pointer family on an apparatus_dim apparatus; post states random unless
// von_neumann, in which case post_n = phi_n.
TransducerSpec random_transducer_spec(Rng& rng, const Observable& measured,
                                      Index apparatus_dim,
                                      bool von_neumann = false);

// Randomized local-measurement arrangement: dims within the given bounds,
// random Hamiltonians, a random transducer measuring a random A on S1,
// random times 0 <= t1 <= t1+dt <= t2 <= max_time, random entangled rho0.
LocalSetup random_local_setup(Rng& rng, Index max_dim1 = 3, Index max_dim2 = 3,
                              Index max_apparatus = 4, double max_time = 5.0);

}  // namespace qmeas
