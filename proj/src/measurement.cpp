#include "qmeas/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qmeas {

MeasurementModel::MeasurementModel(Index apparatus_dim, Index object_dim,
                                   DensityOperator sigma, Matrix u,
                                   Observable probe, const Tolerance& tol)
    : apparatus_dim_(apparatus_dim),
      object_dim_(object_dim),
      sigma_(std::move(sigma)),
      u_(std::move(u)),
      probe_(std::move(probe)) {
  tol.validate();
  if (apparatus_dim_ < 1 || object_dim_ < 1) {
    throw DimensionError("MeasurementModel: dims must be >= 1");
  }
  if (sigma_.dim() != apparatus_dim_) {
    throw DimensionError("MeasurementModel: sigma is not on the apparatus");
  }
  if (probe_.dim() != apparatus_dim_) {
    throw DimensionError("MeasurementModel: probe is not on the apparatus");
  }
  require_square(u_, "MeasurementModel");
  require_finite(u_, "MeasurementModel");
  if (u_.rows() != apparatus_dim_ * object_dim_) {
    throw DimensionError("MeasurementModel: unitary dim != apparatus * object");
  }
  if (!is_unitary(u_, tol.hermitian)) {
    throw UnitarityError("MeasurementModel: interaction operator is not unitary");
  }
}

Matrix MeasurementModel::coupled_state(const DensityOperator& rho) const {
  if (rho.dim() != object_dim_) {
    throw DimensionError("MeasurementModel: state is not on the object");
  }
  return conjugate_by(u_, tensor_product(sigma_.matrix(), rho.matrix()));
}

namespace {

// Extends `vectors` (orthonormal) to an orthonormal basis of the full space
// by Gram-Schmidt over the canonical basis, visited in an order rotated by
// `seed`. Reorthogonalized once.
std::vector<Vector> complete_basis(std::vector<Vector> vectors, Index dim,
                                   unsigned seed) {
  for (Index step = 0; step < dim && vectors.size() < static_cast<std::size_t>(dim);
       ++step) {
    const Index candidate_index = (step + seed) % dim;
    Vector v = Vector::Zero(dim);
    v(candidate_index) = 1.0;
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& b : vectors) v -= b * (b.dot(v));
    }
    if (v.norm() > 1e-6) vectors.push_back(v / v.norm());
  }
  if (vectors.size() != static_cast<std::size_t>(dim)) {
    throw UnitarityError("complete_basis: could not extend to a full basis");
  }
  return vectors;
}

Vector kron_vec(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (Index i = 0; i < a.size(); ++i) {
    out.segment(i * b.size(), b.size()) = a(i) * b;
  }
  return out;
}

}  // namespace

MeasurementModel build_transducer(const TransducerSpec& spec,
                                  const Tolerance& tol) {
  const Index object_dim = spec.measured.dim();
  const std::size_t n_outcomes = spec.measured.outcome_count();
  if (n_outcomes != static_cast<std::size_t>(object_dim)) {
    throw UnsupportedError(
        "build_transducer: measured observable is degenerate");
  }
  if (spec.pointer_states.size() != n_outcomes ||
      spec.post_states.size() != n_outcomes) {
    throw DimensionError(
        "build_transducer: need one pointer and one post state per outcome");
  }
  const Index apparatus_dim = spec.xi.dim();
  if (apparatus_dim < static_cast<Index>(n_outcomes)) {
    throw DimensionError(
        "build_transducer: apparatus smaller than the outcome count");
  }
  for (const auto& xi_n : spec.pointer_states) {
    if (xi_n.dim() != apparatus_dim) {
      throw DimensionError("build_transducer: pointer state dim mismatch");
    }
  }
  for (const auto& phi_n : spec.post_states) {
    if (phi_n.dim() != object_dim) {
      throw DimensionError("build_transducer: post state dim mismatch");
    }
  }
  for (std::size_t i = 0; i < n_outcomes; ++i) {
    for (std::size_t j = 0; j < n_outcomes; ++j) {
      const Cx overlap = spec.pointer_states[i].amplitudes().dot(
          spec.pointer_states[j].amplitudes());
      if (std::abs(overlap - (i == j ? Cx(1.0) : Cx(0.0))) > 1e-10) {
        throw UnitarityError(
            "build_transducer: pointer states are not orthonormal; the map "
            "does not extend to a unitary");
      }
    }
  }

  // Isometry on span{xi ⊗ phi_n}: xi ⊗ phi_n -> pointer_n ⊗ post_n.
  const Index total = apparatus_dim * object_dim;
  std::vector<Vector> domain;
  std::vector<Vector> range;
  for (std::size_t n = 0; n < n_outcomes; ++n) {
    const Vector phi_n = projector_ray(spec.measured.spectrum()[n].projector);
    domain.push_back(kron_vec(spec.xi.amplitudes(), phi_n));
    range.push_back(kron_vec(spec.pointer_states[n].amplitudes(),
                             spec.post_states[n].amplitudes()));
  }
  domain = complete_basis(std::move(domain), total, spec.completion_seed);
  range = complete_basis(std::move(range), total, spec.completion_seed);

  Matrix u = Matrix::Zero(total, total);
  for (Index i = 0; i < total; ++i) {
    u += range[static_cast<std::size_t>(i)] *
         domain[static_cast<std::size_t>(i)].adjoint();
  }

  // Probe observable: pointer_n carries the measured eigenvalue; the
  // complement of the pointer span (never populated from sigma = |xi><xi|)
  // gets a label below the physical spectrum.
  Matrix probe = Matrix::Zero(apparatus_dim, apparatus_dim);
  Matrix pointer_span = Matrix::Zero(apparatus_dim, apparatus_dim);
  const auto outcomes = spec.measured.outcomes();
  for (std::size_t n = 0; n < n_outcomes; ++n) {
    const Matrix pointer_proj =
        spec.pointer_states[n].amplitudes() *
        spec.pointer_states[n].amplitudes().adjoint();
    probe += outcomes[n] * pointer_proj;
    pointer_span += pointer_proj;
  }
  if (apparatus_dim > static_cast<Index>(n_outcomes)) {
    const double rest_label =
        *std::min_element(outcomes.begin(), outcomes.end()) - 1.0;
    probe += rest_label * (identity(apparatus_dim) - pointer_span);
  }

  return MeasurementModel(apparatus_dim, object_dim,
                          pure_state(spec.xi), std::move(u),
                          Observable(std::move(probe), tol), tol);
}

OutcomeDistribution outcome_distribution(const MeasurementModel& m,
                                         const DensityOperator& rho) {
  const Matrix apparatus_state = partial_trace(
      m.coupled_state(rho), m.apparatus_dim(), m.object_dim(), Factor::second);
  std::vector<Outcome> entries;
  for (const auto& line : m.probe().spectrum()) {
    entries.push_back(
        {line.value, trace_product(line.projector, apparatus_state).real()});
  }
  return OutcomeDistribution(std::move(entries));
}

DensityOperator prior_state(const MeasurementModel& m,
                            const DensityOperator& rho) {
  return DensityOperator(partial_trace(m.coupled_state(rho), m.apparatus_dim(),
                                       m.object_dim(), Factor::first));
}

DensityOperator posterior_state(const MeasurementModel& m,
                                const DensityOperator& rho, double outcome) {
  const Matrix coupled = m.coupled_state(rho);
  const Matrix selected =
      tensor_product(m.probe().projector(outcome), identity(m.object_dim())) *
      coupled;
  const Matrix reduced =
      partial_trace(selected, m.apparatus_dim(), m.object_dim(), Factor::first);
  const double p = reduced.trace().real();
  if (p <= 1e-12) {
    throw ConditioningError("posterior_state: outcome probability " +
                            std::to_string(p) + " is numerically zero");
  }
  return DensityOperator(reduced / p);
}

namespace {

// (<u| ⊗ 1): apparatus ⊗ object -> object.
Matrix bra_tensor_identity(const Vector& u, Index object_dim) {
  Matrix out = Matrix::Zero(object_dim, u.size() * object_dim);
  for (Index p = 0; p < u.size(); ++p) {
    for (Index j = 0; j < object_dim; ++j) {
      out(j, p * object_dim + j) = std::conj(u(p));
    }
  }
  return out;
}

// (|chi> ⊗ 1): object -> apparatus ⊗ object.
Matrix ket_tensor_identity(const Vector& chi, Index object_dim) {
  Matrix out = Matrix::Zero(chi.size() * object_dim, object_dim);
  for (Index p = 0; p < chi.size(); ++p) {
    for (Index j = 0; j < object_dim; ++j) {
      out(p * object_dim + j, j) = chi(p);
    }
  }
  return out;
}

}  // namespace

Instrument induced_instrument(const MeasurementModel& m, const Tolerance& tol) {
  // sigma = sum_k s_k |chi_k><chi_k|, zero-weight directions dropped.
  const auto sigma_eigs = hermitian_eigensystem(m.sigma().matrix(), tol);
  std::vector<std::pair<double, Vector>> sigma_rays;
  for (const auto& [s, chi] : sigma_eigs) {
    if (s > tol.prob) sigma_rays.emplace_back(s, chi);
  }

  std::vector<InstrumentBranch> branches;
  for (const auto& line : m.probe().spectrum()) {
    const Matrix range_basis = projector_basis(line.projector);
    InstrumentBranch branch{line.value, {}};
    for (Index col = 0; col < range_basis.cols(); ++col) {
      const Matrix readout =
          bra_tensor_identity(range_basis.col(col), m.object_dim());
      for (const auto& [s, chi] : sigma_rays) {
        branch.kraus.push_back(
            std::sqrt(s) * readout * m.unitary() *
            ket_tensor_identity(chi, m.object_dim()));
      }
    }
    branches.push_back(std::move(branch));
  }
  return Instrument(std::move(branches), tol);
}

JointTable probe_object_joint(const MeasurementModel& m,
                              const DensityOperator& rho,
                              const Observable& b_obs) {
  if (b_obs.dim() != m.object_dim()) {
    throw DimensionError("probe_object_joint: B is not an object observable");
  }
  const Matrix coupled = m.coupled_state(rho);
  std::vector<std::vector<double>> probs(
      b_obs.outcome_count(),
      std::vector<double>(m.probe().outcome_count(), 0.0));
  for (std::size_t bi = 0; bi < b_obs.outcome_count(); ++bi) {
    for (std::size_t ai = 0; ai < m.probe().outcome_count(); ++ai) {
      probs[bi][ai] =
          trace_product(tensor_product(m.probe().spectrum()[ai].projector,
                                       b_obs.spectrum()[bi].projector),
                        coupled)
              .real();
    }
  }
  return JointTable(b_obs.outcomes(), m.probe().outcomes(), std::move(probs));
}

}  // namespace qmeas
