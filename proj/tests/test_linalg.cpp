#include <numbers>

#include "test_helpers.hpp"

using namespace qmeas;
using namespace qmeas::test;

TEST_CASE("tensor_product identity and diagonal arithmetic") {
  CHECK(max_abs_diff(tensor_product(identity(2), identity(2)), identity(4)) ==
        0.0);

  const Matrix got = tensor_product(diag2(1, 2), diag2(3, 4));
  Matrix expected = Matrix::Zero(4, 4);
  expected(0, 0) = 3;
  expected(1, 1) = 4;
  expected(2, 2) = 6;
  expected(3, 3) = 8;
  CHECK(max_abs_diff(got, expected) == 0.0);
}

TEST_CASE("tensor_product trace factorizes (trace oracle)") {
  Rng rng(11);
  for (int i = 0; i < 10; ++i) {
    const Matrix a = random_hermitian(rng, 3);
    const Matrix b = random_hermitian(rng, 2);
    const Cx lhs = naive_trace(tensor_product(a, b));
    const Cx rhs = naive_trace(a) * naive_trace(b);
    CHECK(std::abs(lhs - rhs) < 1e-12);
  }
}

TEST_CASE("tensor_product associativity is exact on integer matrices") {
  Matrix a(2, 2), b(2, 2), c(2, 2);
  a << 1, 2, 3, 4;
  b << 5, -6, 7, 8;
  c << -1, 0, 2, 9;
  CHECK(max_abs_diff(tensor_product(tensor_product(a, b), c),
                     tensor_product(a, tensor_product(b, c))) == 0.0);
}

TEST_CASE("partial_trace factorizes product states") {
  Rng rng(5);
  const DensityOperator sigma = random_density(rng, 3);
  const DensityOperator rho = random_density(rng, 2);
  const Matrix composite = tensor_product(sigma.matrix(), rho.matrix());
  CHECK(max_abs_diff(partial_trace(composite, 3, 2, Factor::first),
                     rho.matrix()) < 1e-12);
  CHECK(max_abs_diff(partial_trace(composite, 3, 2, Factor::second),
                     sigma.matrix()) < 1e-12);
}

TEST_CASE("partial_trace of a Bell state is maximally mixed") {
  const Matrix bell = pure_state(presets::bell_phi_plus()).matrix();
  CHECK(max_abs_diff(partial_trace(bell, 2, 2, Factor::first),
                     0.5 * identity(2)) < 1e-15);
  CHECK(max_abs_diff(partial_trace(bell, 2, 2, Factor::second),
                     0.5 * identity(2)) < 1e-15);
}

TEST_CASE("partial_trace preserves the full trace") {
  Rng rng(7);
  Matrix m(6, 6);
  for (Index i = 0; i < 6; ++i) {
    for (Index j = 0; j < 6; ++j) m(i, j) = rng.complex_normal();
  }
  CHECK(std::abs(naive_trace(partial_trace(m, 2, 3, Factor::first)) -
                 naive_trace(m)) < 1e-12);
  CHECK(std::abs(naive_trace(partial_trace(m, 2, 3, Factor::second)) -
                 naive_trace(m)) < 1e-12);
}

TEST_CASE("partial_trace rejects dimension mismatch") {
  CHECK_THROWS_AS(partial_trace(identity(6), 4, 2, Factor::first),
                  DimensionError);
}

TEST_CASE("hermitian_spectral of pauli_z") {
  const auto lines = hermitian_spectral(presets::pauli_z());
  REQUIRE(lines.size() == 2);
  CHECK(lines[0].value == doctest::Approx(-1.0));
  CHECK(lines[1].value == doctest::Approx(1.0));
  CHECK(max_abs_diff(lines[0].projector, diag2(0, 1)) < 1e-14);
  CHECK(max_abs_diff(lines[1].projector, diag2(1, 0)) < 1e-14);
}

TEST_CASE("hermitian_spectral groups a degenerate spectrum") {
  const auto lines = hermitian_spectral(identity(3));
  REQUIRE(lines.size() == 1);
  CHECK(lines[0].value == doctest::Approx(1.0));
  CHECK(max_abs_diff(lines[0].projector, identity(3)) < 1e-12);
}

TEST_CASE("hermitian_spectral reconstruction oracle") {
  Rng rng(3);
  const Matrix m = random_hermitian(rng, 4);
  const auto lines = hermitian_spectral(m);
  Matrix rebuilt = Matrix::Zero(4, 4);
  Matrix completeness = Matrix::Zero(4, 4);
  for (const auto& line : lines) {
    rebuilt += line.value * line.projector;
    completeness += line.projector;
  }
  CHECK(max_abs_diff(rebuilt, m) < 1e-9);
  CHECK(max_abs_diff(completeness, identity(4)) < 1e-9);
}

TEST_CASE("hermitian_spectral projectors are orthogonal idempotents") {
  Rng rng(29);
  const Matrix m = random_hermitian(rng, 5);
  const auto lines = hermitian_spectral(m);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    CHECK(is_projector(lines[i].projector, 1e-9));
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      CHECK(max_abs(lines[i].projector * lines[j].projector) < 1e-9);
    }
  }
}

TEST_CASE("hermitian_spectral rejects non-Hermitian input") {
  Matrix m(2, 2);
  m << 0, 1, 0, 0;
  CHECK_THROWS_AS(hermitian_spectral(m), HermiticityError);
}

TEST_CASE("propagator at t = 0 is the exact identity") {
  Rng rng(13);
  const Matrix h = random_hermitian(rng, 3);
  CHECK(max_abs_diff(propagator(h, 0.0), identity(3)) == 0.0);
}

TEST_CASE("propagator of pauli_z at pi/2") {
  const Matrix u = propagator(presets::pauli_z(), std::numbers::pi / 2.0);
  Matrix expected = Matrix::Zero(2, 2);
  expected(0, 0) = Cx(0, -1);
  expected(1, 1) = Cx(0, 1);
  CHECK(max_abs_diff(u, expected) < 1e-14);
}

TEST_CASE("propagator group law and unitarity") {
  Rng rng(17);
  const Matrix h = random_hermitian(rng, 4);
  const double s = rng.uniform(0.0, 3.0);
  const double t = rng.uniform(0.0, 3.0);
  CHECK(max_abs_diff(propagator(h, s) * propagator(h, t), propagator(h, s + t)) <
        1e-12);
  CHECK(is_unitary(propagator(h, t), 1e-10));
  CHECK(max_abs_diff(propagator(h, -t), adjoint(propagator(h, t))) < 1e-10);
}

TEST_CASE("numerical predicates") {
  CHECK(is_unitary(identity(3), 1e-12));
  CHECK_FALSE(is_psd(diag2(1, -0.5), 1e-9));
  CHECK(is_psd(diag2(1, 0), 1e-12));
  Rng rng(23);
  const Matrix m = random_hermitian(rng, 3);
  CHECK(max_abs_diff(m, m) == 0.0);
  CHECK_THROWS_AS(max_abs_diff(identity(2), identity(3)), DimensionError);
  CHECK(std::abs(trace_product(m, m) - naive_trace(m * m)) < 1e-12);
}

TEST_CASE("tolerance fields must lie in (0, 1e-3)") {
  Tolerance tol;
  tol.eig_group = 0.0;
  CHECK_THROWS_AS(tol.validate(), ParameterError);
  tol = Tolerance{};
  tol.prob = 1e-2;
  CHECK_THROWS_AS(tol.validate(), ParameterError);
}

TEST_CASE("projector_ray recovers a deterministic unit vector") {
  Rng rng(31);
  const StateVector psi = random_state_vector(rng, 4);
  const Matrix proj = psi.amplitudes() * psi.amplitudes().adjoint();
  const Vector ray = projector_ray(proj);
  CHECK(max_abs_diff(ray * ray.adjoint(), proj) < 1e-12);
}
