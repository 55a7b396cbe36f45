#include "qmeas/random.hpp"

#include <cmath>
#include <numbers>

namespace qmeas {

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) {
  return lo + (hi - lo) * uniform();
}

int Rng::uniform_int(int lo, int hi) {
  return lo + static_cast<int>(engine_() % static_cast<std::uint64_t>(hi - lo + 1));
}

double Rng::normal() {
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

Cx Rng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return Cx(re, im) / std::sqrt(2.0);
}

namespace {

Matrix ginibre(Rng& rng, Index dim) {
  Matrix g(dim, dim);
  for (Index i = 0; i < dim; ++i) {
    for (Index j = 0; j < dim; ++j) g(i, j) = rng.complex_normal();
  }
  return g;
}

}  // namespace

Matrix random_hermitian(Rng& rng, Index dim, double scale) {
  const Matrix g = ginibre(rng, dim);
  return scale * 0.5 * (g + g.adjoint());
}

Matrix random_unitary(Rng& rng, Index dim) {
  const Matrix g = ginibre(rng, dim);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix column phases so the distribution is Haar.
  for (Index j = 0; j < dim; ++j) {
    const Cx d = r(j, j);
    q.col(j) *= std::abs(d) > 0.0 ? d / std::abs(d) : Cx(1.0);
  }
  return q;
}

StateVector random_state_vector(Rng& rng, Index dim) {
  Vector psi(dim);
  for (Index i = 0; i < dim; ++i) psi(i) = rng.complex_normal();
  return StateVector(psi / psi.norm());
}

DensityOperator random_density(Rng& rng, Index dim) {
  const Matrix g = ginibre(rng, dim);
  const Matrix gg = g * g.adjoint();
  return DensityOperator(gg / gg.trace().real());
}

Observable random_nondegenerate_observable(Rng& rng, Index dim) {
  Vector eigenvalues(dim);
  for (Index i = 0; i < dim; ++i) {
    eigenvalues(i) = static_cast<double>(i) + rng.uniform(-0.3, 0.3);
  }
  const Matrix u = random_unitary(rng, dim);
  const Matrix m = u * eigenvalues.asDiagonal() * u.adjoint();
  return Observable(0.5 * (m + m.adjoint()));
}

TransducerSpec random_transducer_spec(Rng& rng, const Observable& measured,
                                      Index apparatus_dim, bool von_neumann) {
  const Index object_dim = measured.dim();
  const Matrix pointer_frame = random_unitary(rng, apparatus_dim);
  std::vector<StateVector> pointers;
  for (Index n = 0; n < object_dim; ++n) {
    pointers.emplace_back(Vector(pointer_frame.col(n)));
  }
  std::vector<StateVector> posts;
  for (Index n = 0; n < object_dim; ++n) {
    if (von_neumann) {
      posts.emplace_back(
          Vector(projector_ray(measured.spectrum()[n].projector)));
    } else {
      posts.push_back(random_state_vector(rng, object_dim));
    }
  }
  return TransducerSpec{measured, random_state_vector(rng, apparatus_dim),
                        std::move(pointers), std::move(posts)};
}

LocalSetup random_local_setup(Rng& rng, Index max_dim1, Index max_dim2,
                              Index max_apparatus, double max_time) {
  const Index d1 = rng.uniform_int(2, static_cast<int>(max_dim1));
  const Index d2 = rng.uniform_int(2, static_cast<int>(max_dim2));
  const Index da =
      rng.uniform_int(static_cast<int>(d1), static_cast<int>(max_apparatus));

  Observable a_obs = random_nondegenerate_observable(rng, d1);
  Observable b_obs = random_nondegenerate_observable(rng, d2);
  MeasurementModel model =
      build_transducer(random_transducer_spec(rng, a_obs, da));
  Hamiltonian h1(random_hermitian(rng, d1));
  Hamiltonian h2(random_hermitian(rng, d2));

  const double t1 = rng.uniform(0.0, max_time / 2.0);
  const double dt = rng.uniform(0.0, max_time / 4.0);
  const double t2 = t1 + dt + rng.uniform(0.0, max_time - t1 - dt);

  return LocalSetup(std::move(h1), std::move(h2), std::move(model),
                    std::move(a_obs), std::move(b_obs), t1, dt, t2,
                    random_density(rng, d1 * d2));
}

}  // namespace qmeas
