#include "qmeas/local_theorem.hpp"

#include <cmath>
#include <string>

namespace qmeas {

LocalSetup::LocalSetup(Hamiltonian h1, Hamiltonian h2, MeasurementModel model,
                       Observable a_obs, Observable b_obs, double t1,
                       double dt, double t2, DensityOperator rho0,
                       std::optional<Hamiltonian> h_app)
    : h1_(std::move(h1)),
      h2_(std::move(h2)),
      model_(std::move(model)),
      a_obs_(std::move(a_obs)),
      b_obs_(std::move(b_obs)),
      t1_(t1),
      dt_(dt),
      t2_(t2),
      rho0_(std::move(rho0)),
      h_app_(std::move(h_app)) {
  if (!(t1_ >= 0.0) || !(dt_ >= 0.0)) {
    throw ParameterError("LocalSetup: t1 and dt must be >= 0");
  }
  if (t2_ < t1_ + dt_ - 1e-12) {
    throw ParameterError("LocalSetup: need t2 >= t1 + dt");
  }
  if (h1_.dim() != a_obs_.dim()) {
    throw DimensionError("LocalSetup: H1 and A differ in dim");
  }
  if (h2_.dim() != b_obs_.dim()) {
    throw DimensionError("LocalSetup: H2 and B differ in dim");
  }
  if (model_.object_dim() != a_obs_.dim()) {
    throw DimensionError("LocalSetup: apparatus does not act on S1");
  }
  if (rho0_.dim() != a_obs_.dim() * b_obs_.dim()) {
    throw DimensionError("LocalSetup: rho0 is not on S1 ⊗ S2");
  }
  if (h_app_ && h_app_->dim() != model_.apparatus_dim()) {
    throw DimensionError("LocalSetup: H_A is not on the apparatus");
  }
}

LocalSetup LocalSetup::with_rho0(DensityOperator rho) const {
  return LocalSetup(h1_, h2_, model_, a_obs_, b_obs_, t1_, dt_, t2_,
                    std::move(rho), h_app_);
}

JointTable joint_formula(const LocalSetup& s) {
  std::vector<Matrix> a_proj;
  for (const auto& line : s.a_obs().spectrum()) {
    a_proj.push_back(heisenberg_projector(line.projector, s.h1(), s.t1()));
  }
  std::vector<Matrix> b_proj;
  for (const auto& line : s.b_obs().spectrum()) {
    b_proj.push_back(heisenberg_projector(line.projector, s.h2(), s.t2()));
  }
  std::vector<std::vector<double>> probs(
      a_proj.size(), std::vector<double>(b_proj.size(), 0.0));
  for (std::size_t i = 0; i < a_proj.size(); ++i) {
    for (std::size_t j = 0; j < b_proj.size(); ++j) {
      probs[i][j] = trace_product(tensor_product(a_proj[i], b_proj[j]),
                                  s.rho0().matrix())
                        .real();
    }
  }
  return JointTable(s.a_obs().outcomes(), s.b_obs().outcomes(),
                    std::move(probs));
}

namespace {

// Final composite state on apparatus ⊗ S1 ⊗ S2 at time t2, and the probe
// projectors expressed at that time (readout fixed at t1 + dt, carried
// through any apparatus free evolution in Heisenberg form).
struct SimulatedFinal {
  Matrix state;
  std::vector<SpectralLine> probe_lines;
};

SimulatedFinal simulate(const LocalSetup& s) {
  const Index da = s.model().apparatus_dim();

  // (i) free evolution of S1 ⊗ S2 up to t1
  Matrix rho_t1 = conjugate_by(
      tensor_product(propagator(s.h1().matrix(), s.t1()),
                     propagator(s.h2().matrix(), s.t1())),
      s.rho0().matrix());

  // (ii) adjoin the apparatus; interaction on apparatus ⊗ S1 while S2
  // evolves freely for dt
  Matrix state = conjugate_by(
      tensor_product(s.model().unitary(), propagator(s.h2().matrix(), s.dt())),
      tensor_product(s.model().sigma().matrix(), rho_t1));

  // (iii) remaining free evolution tau = t2 - t1 - dt
  const double tau = s.t2() - s.t1() - s.dt();
  const Matrix u_app = s.h_app()
                           ? propagator(s.h_app()->matrix(), tau)
                           : identity(da);
  state = conjugate_by(
      tensor_product(u_app,
                     tensor_product(propagator(s.h1().matrix(), tau),
                                    propagator(s.h2().matrix(), tau))),
      state);

  // Probe projectors at readout time t1 + dt, expressed at t2: the readout
  // precedes t2, so the Heisenberg transport runs backward by tau.
  std::vector<SpectralLine> probe_lines = s.model().probe().spectrum();
  if (s.h_app() && tau != 0.0) {
    for (auto& line : probe_lines) {
      line.projector =
          heisenberg_projector(line.projector, *s.h_app(), -tau);
    }
  }
  return {std::move(state), std::move(probe_lines)};
}

}  // namespace

JointTable joint_simulated(const LocalSetup& s) {
  const auto fin = simulate(s);
  const Index d1 = s.dim1();
  const auto& b_spectrum = s.b_obs().spectrum();

  // (iv) probe and B are commuting projectors on disjoint factors.
  std::vector<std::vector<double>> probs(
      fin.probe_lines.size(), std::vector<double>(b_spectrum.size(), 0.0));
  for (std::size_t i = 0; i < fin.probe_lines.size(); ++i) {
    const Matrix left =
        tensor_product(fin.probe_lines[i].projector, identity(d1));
    for (std::size_t j = 0; j < b_spectrum.size(); ++j) {
      probs[i][j] =
          trace_product(tensor_product(left, b_spectrum[j].projector),
                        fin.state)
              .real();
    }
  }
  std::vector<double> probe_labels;
  for (const auto& line : fin.probe_lines) probe_labels.push_back(line.value);
  return JointTable(std::move(probe_labels), s.b_obs().outcomes(),
                    std::move(probs));
}

Matrix JointOperatorMeasure::sum_over_b(double a, double label_tol) const {
  Matrix sum;
  bool found = false;
  for (const auto& e : entries) {
    if (std::abs(e.a - a) <= label_tol) {
      if (!found) {
        sum = e.f;
        found = true;
      } else {
        sum += e.f;
      }
    }
  }
  if (!found) throw ParameterError("JointOperatorMeasure: no such a label");
  return sum;
}

Matrix JointOperatorMeasure::sum_over_a(double b, double label_tol) const {
  Matrix sum;
  bool found = false;
  for (const auto& e : entries) {
    if (std::abs(e.b - b) <= label_tol) {
      if (!found) {
        sum = e.f;
        found = true;
      } else {
        sum += e.f;
      }
    }
  }
  if (!found) throw ParameterError("JointOperatorMeasure: no such b label");
  return sum;
}

Matrix JointOperatorMeasure::total() const {
  if (entries.empty()) throw ParameterError("JointOperatorMeasure: empty");
  Matrix sum = entries.front().f;
  for (std::size_t i = 1; i < entries.size(); ++i) sum += entries[i].f;
  return sum;
}

double MarginalReport::worst() const {
  return std::max({a_marginal_violation, b_marginal_violation,
                   product_violation, psd_violation, completeness_violation});
}

MarginalReport marginal_checks(const LocalSetup& s) {
  const Index dim = s.dim1() * s.dim2();

  // Pr{a,b | rho} for the matrix-unit-derived tomography family:
  //   rho_ii  = |i><i|
  //   rho_x   = (|i>+|j>)(<i|+<j|)/2
  //   rho_y   = (|i>+i|j>)(<i|-i<j|)/2
  // which determine F entrywise:
  //   F_ii    = P(rho_ii)
  //   Re F_ij = P(rho_x) - (F_ii + F_jj)/2
  //   Im F_ij = (F_ii + F_jj)/2 - P(rho_y)
  auto run = [&s](const Vector& psi) {
    return joint_simulated(s.with_rho0(pure_state(StateVector(psi))));
  };

  std::vector<JointTable> diagonal;
  diagonal.reserve(static_cast<std::size_t>(dim));
  for (Index i = 0; i < dim; ++i) {
    Vector psi = Vector::Zero(dim);
    psi(i) = 1.0;
    diagonal.push_back(run(psi));
  }

  const auto& probe_labels = diagonal.front().x_labels();
  const auto& b_labels = diagonal.front().y_labels();

  JointOperatorMeasure measure;
  for (std::size_t ai = 0; ai < probe_labels.size(); ++ai) {
    for (std::size_t bi = 0; bi < b_labels.size(); ++bi) {
      measure.entries.push_back(
          {probe_labels[ai], b_labels[bi], Matrix::Zero(dim, dim)});
    }
  }
  auto fill = [&](std::size_t ai, std::size_t bi) -> Matrix& {
    return measure.entries[ai * b_labels.size() + bi].f;
  };
  for (std::size_t ai = 0; ai < probe_labels.size(); ++ai) {
    for (std::size_t bi = 0; bi < b_labels.size(); ++bi) {
      Matrix& f = fill(ai, bi);
      for (Index i = 0; i < dim; ++i) f(i, i) = diagonal[i].prob(ai, bi);
    }
  }
  for (Index i = 0; i < dim; ++i) {
    for (Index j = i + 1; j < dim; ++j) {
      Vector x = Vector::Zero(dim);
      x(i) = 1.0 / std::sqrt(2.0);
      x(j) = 1.0 / std::sqrt(2.0);
      Vector y = Vector::Zero(dim);
      y(i) = 1.0 / std::sqrt(2.0);
      y(j) = Cx(0.0, 1.0 / std::sqrt(2.0));
      const JointTable table_x = run(x);
      const JointTable table_y = run(y);
      for (std::size_t ai = 0; ai < probe_labels.size(); ++ai) {
        for (std::size_t bi = 0; bi < b_labels.size(); ++bi) {
          Matrix& f = fill(ai, bi);
          const double mean = 0.5 * (f(i, i).real() + f(j, j).real());
          const double re = table_x.prob(ai, bi) - mean;
          const double im = mean - table_y.prob(ai, bi);
          f(i, j) = Cx(re, im);
          f(j, i) = Cx(re, -im);
        }
      }
    }
  }
  for (const auto& e : measure.entries) {
    if (!e.f.allFinite()) {
      throw ReconstructionError(
          "marginal_checks: tomography produced non-finite operators");
    }
  }

  MarginalReport report{std::move(measure), 0.0, 0.0, 0.0, 0.0, 0.0};

  // Eq. of the A marginal: sum_b F(a,b) = E^A(a, t1) ⊗ 1, with E^A(a) = 0
  // for probe labels outside the spectrum of A.
  for (double a : probe_labels) {
    Matrix expected = Matrix::Zero(dim, dim);
    for (const auto& line : s.a_obs().spectrum()) {
      if (std::abs(line.value - a) <= 1e-9) {
        expected = tensor_product(
            heisenberg_projector(line.projector, s.h1(), s.t1()),
            identity(s.dim2()));
        break;
      }
    }
    report.a_marginal_violation =
        std::max(report.a_marginal_violation,
                 max_abs_diff(report.f.sum_over_b(a), expected));
  }

  // Eq. of the B marginal: sum_a F(a,b) = 1 ⊗ E^B(b, t2).
  for (const auto& line : s.b_obs().spectrum()) {
    const Matrix expected = tensor_product(
        identity(s.dim1()),
        heisenberg_projector(line.projector, s.h2(), s.t2()));
    report.b_marginal_violation =
        std::max(report.b_marginal_violation,
                 max_abs_diff(report.f.sum_over_a(line.value), expected));
  }

  // Davies step: a POVM on a product space with projection valued marginals
  // is the product of its marginals.
  for (const auto& e : report.f.entries) {
    report.product_violation = std::max(
        report.product_violation,
        max_abs_diff(e.f, report.f.sum_over_b(e.a) * report.f.sum_over_a(e.b)));
    Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (e.f + e.f.adjoint()));
    report.psd_violation =
        std::max(report.psd_violation, -solver.eigenvalues().minCoeff());
  }
  report.psd_violation = std::max(report.psd_violation, 0.0);
  report.completeness_violation =
      max_abs_diff(report.f.total(), identity(dim));
  return report;
}

AffinityReport affinity_check(const LocalSetup& s, const DensityOperator& rho1,
                              const DensityOperator& rho2, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw ParameterError("affinity_check: alpha must lie in (0, 1)");
  }
  const JointTable mixed = joint_simulated(s.with_rho0(mix(rho1, rho2, alpha)));
  const JointTable j1 = joint_simulated(s.with_rho0(rho1));
  const JointTable j2 = joint_simulated(s.with_rho0(rho2));
  double worst = 0.0;
  for (std::size_t i = 0; i < mixed.x_labels().size(); ++i) {
    for (std::size_t j = 0; j < mixed.y_labels().size(); ++j) {
      worst = std::max(worst,
                       std::abs(mixed.prob(i, j) - alpha * j1.prob(i, j) -
                                (1.0 - alpha) * j2.prob(i, j)));
    }
  }
  return {worst};
}

OutcomeDistribution simulated_b_marginal(const LocalSetup& s) {
  const JointTable joint = joint_simulated(s);
  return bayes_prior(joint.transposed());
}

OutcomeDistribution closed_form_b_marginal(const LocalSetup& s) {
  std::vector<Outcome> entries;
  for (const auto& line : s.b_obs().spectrum()) {
    const Matrix f = tensor_product(
        identity(s.dim1()),
        heisenberg_projector(line.projector, s.h2(), s.t2()));
    entries.push_back(
        {line.value, trace_product(f, s.rho0().matrix()).real()});
  }
  return OutcomeDistribution(std::move(entries));
}

OutcomeDistribution simulated_a_marginal(const LocalSetup& s) {
  return bayes_prior(joint_simulated(s));
}

OutcomeDistribution closed_form_a_marginal(const LocalSetup& s) {
  std::vector<Outcome> entries;
  for (const auto& line : s.a_obs().spectrum()) {
    const Matrix f = tensor_product(
        heisenberg_projector(line.projector, s.h1(), s.t1()),
        identity(s.dim2()));
    entries.push_back(
        {line.value, trace_product(f, s.rho0().matrix()).real()});
  }
  return OutcomeDistribution(std::move(entries));
}

}  // namespace qmeas
