#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "qmeas/errors.hpp"

namespace qmeas {

using Cx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Index = Eigen::Index;

// Numerical tolerances shared across the library.
struct Tolerance {
  double hermitian = 1e-9;  // max-abs deviation from m = m†
  double prob = 1e-12;      // probabilities below this count as zero
  double eig_group = 1e-9;  // eigenvalues closer than this form one spectral group

  void validate() const;
};

// Which factor of a bipartite operator to trace out.
enum class Factor { first, second };

// One spectral group of a Hermitian operator: eigenvalue (group mean for
// near-degenerate clusters) and the orthogonal projector onto its eigenspace.
struct SpectralLine {
  double value;
  Matrix projector;
};

void require_square(const Matrix& m, const char* who);
void require_finite(const Matrix& m, const char* who);
void require_same_dim(const Matrix& a, const Matrix& b, const char* who);

Matrix identity(Index dim);

// Kronecker product, left factor varies slowest.
Matrix tensor_product(const Matrix& a, const Matrix& b);

// Trace out one factor of an operator on a dim_first * dim_second space.
Matrix partial_trace(const Matrix& m, Index dim_first, Index dim_second,
                     Factor traced);

// Spectral decomposition of a Hermitian matrix. Eigenvalues ascending,
// clustered into groups whose members differ by at most tol.eig_group;
// one projector per group. Sum of projectors is the identity and
// sum of value * projector reconstructs m (up to eigensolver noise).
std::vector<SpectralLine> hermitian_spectral(const Matrix& m,
                                             const Tolerance& tol = {});

// Raw eigensystem of a Hermitian matrix: ascending (eigenvalue, eigenvector)
// pairs without degeneracy grouping.
std::vector<std::pair<double, Vector>> hermitian_eigensystem(
    const Matrix& m, const Tolerance& tol = {});

// exp(-i h t) for Hermitian h, computed through the spectral decomposition
// (hbar = 1). Exact identity at t = 0.
Matrix propagator(const Matrix& h, double t, const Tolerance& tol = {});

Matrix adjoint(const Matrix& m);
Cx trace(const Matrix& m);

// Tr[a b] without forming the product.
Cx trace_product(const Matrix& a, const Matrix& b);

double max_abs(const Matrix& m);
double max_abs_diff(const Matrix& a, const Matrix& b);

bool is_hermitian(const Matrix& m, double tol);
bool is_unitary(const Matrix& m, double tol);
// Positive semidefinite: min eigenvalue >= -tol. Requires Hermitian input.
bool is_psd(const Matrix& m, double tol);
bool is_projector(const Matrix& m, double tol);

// u m u†
Matrix conjugate_by(const Matrix& u, const Matrix& m);

// Unit vector spanning a rank-1 projector, with the largest-magnitude entry
// made real positive (deterministic phase convention).
Vector projector_ray(const Matrix& e);

// Orthonormal columns spanning the range of a projector (eigenvectors with
// eigenvalue > 1/2).
Matrix projector_basis(const Matrix& e);

}  // namespace qmeas
