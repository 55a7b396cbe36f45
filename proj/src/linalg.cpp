#include "qmeas/linalg.hpp"

#include <cmath>
#include <string>
#include <unsupported/Eigen/KroneckerProduct>

namespace qmeas {

void Tolerance::validate() const {
  for (double v : {hermitian, prob, eig_group}) {
    if (!(v > 0.0) || !(v < 1e-3)) {
      throw ParameterError("Tolerance values must lie in (0, 1e-3)");
    }
  }
}

void require_square(const Matrix& m, const char* who) {
  if (m.rows() < 1 || m.rows() != m.cols()) {
    throw DimensionError(std::string(who) + ": expected a square matrix, got " +
                         std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()));
  }
}

void require_finite(const Matrix& m, const char* who) {
  if (!m.allFinite()) {
    throw ParameterError(std::string(who) + ": matrix has NaN/Inf entries");
  }
}

void require_same_dim(const Matrix& a, const Matrix& b, const char* who) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError(std::string(who) + ": dimension mismatch " +
                         std::to_string(a.rows()) + " vs " +
                         std::to_string(b.rows()));
  }
}

Matrix identity(Index dim) {
  if (dim < 1) throw DimensionError("identity: dim must be >= 1");
  return Matrix::Identity(dim, dim);
}

Matrix tensor_product(const Matrix& a, const Matrix& b) {
  require_square(a, "tensor_product");
  require_square(b, "tensor_product");
  return Eigen::kroneckerProduct(a, b);
}

Matrix partial_trace(const Matrix& m, Index dim_first, Index dim_second,
                     Factor traced) {
  require_square(m, "partial_trace");
  if (dim_first < 1 || dim_second < 1 || dim_first * dim_second != m.rows()) {
    throw DimensionError("partial_trace: dims (" + std::to_string(dim_first) +
                         "," + std::to_string(dim_second) +
                         ") do not factor a " + std::to_string(m.rows()) +
                         "-dim matrix");
  }
  if (traced == Factor::first) {
    Matrix out = Matrix::Zero(dim_second, dim_second);
    for (Index k = 0; k < dim_first; ++k) {
      out += m.block(k * dim_second, k * dim_second, dim_second, dim_second);
    }
    return out;
  }
  Matrix out = Matrix::Zero(dim_first, dim_first);
  for (Index i = 0; i < dim_first; ++i) {
    for (Index j = 0; j < dim_first; ++j) {
      out(i, j) =
          m.block(i * dim_second, j * dim_second, dim_second, dim_second)
              .trace();
    }
  }
  return out;
}

std::vector<std::pair<double, Vector>> hermitian_eigensystem(
    const Matrix& m, const Tolerance& tol) {
  tol.validate();
  require_square(m, "hermitian_eigensystem");
  require_finite(m, "hermitian_eigensystem");
  if (!is_hermitian(m, tol.hermitian)) {
    throw HermiticityError("hermitian_eigensystem: input is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (m + m.adjoint()));
  if (solver.info() != Eigen::Success) {
    throw ParameterError("hermitian_eigensystem: eigensolver failed");
  }
  std::vector<std::pair<double, Vector>> out;
  out.reserve(static_cast<std::size_t>(m.rows()));
  for (Index i = 0; i < m.rows(); ++i) {
    out.emplace_back(solver.eigenvalues()(i), solver.eigenvectors().col(i));
  }
  return out;
}

std::vector<SpectralLine> hermitian_spectral(const Matrix& m,
                                             const Tolerance& tol) {
  const auto eigs = hermitian_eigensystem(m, tol);
  const Index dim = m.rows();

  std::vector<SpectralLine> lines;
  Index start = 0;
  while (start < dim) {
    Index stop = start + 1;
    while (stop < dim && eigs[stop].first - eigs[stop - 1].first <= tol.eig_group) {
      ++stop;
    }
    double value = 0.0;
    Matrix projector = Matrix::Zero(dim, dim);
    for (Index k = start; k < stop; ++k) {
      value += eigs[k].first;
      projector += eigs[k].second * eigs[k].second.adjoint();
    }
    lines.push_back({value / static_cast<double>(stop - start), projector});
    start = stop;
  }
  return lines;
}

Matrix propagator(const Matrix& h, double t, const Tolerance& tol) {
  if (t == 0.0) {
    require_square(h, "propagator");
    return identity(h.rows());
  }
  const auto lines = hermitian_spectral(h, tol);
  Matrix u = Matrix::Zero(h.rows(), h.cols());
  for (const auto& line : lines) {
    u += std::exp(Cx(0.0, -line.value * t)) * line.projector;
  }
  return u;
}

Matrix adjoint(const Matrix& m) { return m.adjoint(); }

Cx trace(const Matrix& m) {
  require_square(m, "trace");
  return m.trace();
}

Cx trace_product(const Matrix& a, const Matrix& b) {
  require_square(a, "trace_product");
  require_same_dim(a, b, "trace_product");
  return a.cwiseProduct(b.transpose()).sum();
}

double max_abs(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().maxCoeff();
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  require_same_dim(a, b, "max_abs_diff");
  return max_abs(a - b);
}

bool is_hermitian(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return max_abs(m - m.adjoint()) <= tol;
}

bool is_unitary(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return max_abs(m.adjoint() * m - identity(m.rows())) <= tol;
}

bool is_psd(const Matrix& m, double tol) {
  require_square(m, "is_psd");
  if (!is_hermitian(m, tol)) return false;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (m + m.adjoint()));
  return solver.eigenvalues().minCoeff() >= -tol;
}

bool is_projector(const Matrix& m, double tol) {
  if (!is_hermitian(m, tol)) return false;
  return max_abs(m * m - m) <= tol;
}

Matrix conjugate_by(const Matrix& u, const Matrix& m) {
  return u * m * u.adjoint();
}

Vector projector_ray(const Matrix& e) {
  require_square(e, "projector_ray");
  if (std::abs(e.trace().real() - 1.0) > 1e-6) {
    throw ParameterError("projector_ray: projector is not rank 1");
  }
  Index best = 0;
  e.diagonal().real().maxCoeff(&best);
  Vector ray = e.col(best) / std::sqrt(e(best, best).real());
  // Fix the global phase: largest entry real positive.
  Index top = 0;
  ray.cwiseAbs().maxCoeff(&top);
  ray *= std::conj(ray(top)) / std::abs(ray(top));
  return ray;
}

Matrix projector_basis(const Matrix& e) {
  const auto eigs = hermitian_eigensystem(e);
  std::vector<Index> keep;
  for (Index i = 0; i < e.rows(); ++i) {
    if (eigs[static_cast<std::size_t>(i)].first > 0.5) keep.push_back(i);
  }
  if (keep.empty()) {
    throw ParameterError("projector_basis: projector has empty range");
  }
  Matrix basis(e.rows(), static_cast<Index>(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c) {
    basis.col(static_cast<Index>(c)) =
        eigs[static_cast<std::size_t>(keep[c])].second;
  }
  return basis;
}

}  // namespace qmeas
