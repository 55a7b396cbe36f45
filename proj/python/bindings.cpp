#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qmeas/presets.hpp"
#include "qmeas/scenario.hpp"

namespace py = pybind11;
using namespace qmeas;

namespace {

std::vector<double> distribution_labels(const OutcomeDistribution& d) {
  std::vector<double> out;
  for (const auto& e : d.entries()) out.push_back(e.label);
  return out;
}

std::vector<double> distribution_probs(const OutcomeDistribution& d) {
  std::vector<double> out;
  for (const auto& e : d.entries()) out.push_back(e.prob);
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Quantum measurement models, state reduction via Bayes updating and "
      "the local measurement theorem, with brute-force verification oracles";

  py::register_exception<Error>(m, "QmeasError");

  py::enum_<Factor>(m, "Factor")
      .value("first", Factor::first)
      .value("second", Factor::second);

  m.def("tensor_product", &tensor_product, py::arg("a"), py::arg("b"));
  m.def("partial_trace", &partial_trace, py::arg("m"), py::arg("dim_first"),
        py::arg("dim_second"), py::arg("traced"));
  m.def(
      "hermitian_spectral",
      [](const Matrix& mat) {
        std::vector<std::pair<double, Matrix>> out;
        for (const auto& line : hermitian_spectral(mat)) {
          out.emplace_back(line.value, line.projector);
        }
        return out;
      },
      py::arg("m"), "Ascending (eigenvalue, projector) groups");
  m.def("propagator",
        [](const Matrix& h, double t) { return propagator(h, t); },
        py::arg("h"), py::arg("t"));
  m.def("is_unitary", &is_unitary, py::arg("m"), py::arg("tol") = 1e-9);
  m.def("is_psd", &is_psd, py::arg("m"), py::arg("tol") = 1e-9);
  m.def("max_abs_diff", &max_abs_diff, py::arg("a"), py::arg("b"));

  py::class_<StateVector>(m, "StateVector")
      .def(py::init<Vector>(), py::arg("amplitudes"))
      .def_property_readonly("dim", &StateVector::dim)
      .def_property_readonly("amplitudes", &StateVector::amplitudes);

  py::class_<DensityOperator>(m, "DensityOperator")
      .def(py::init<Matrix>(), py::arg("matrix"))
      .def_property_readonly("dim", &DensityOperator::dim)
      .def_property_readonly("matrix", &DensityOperator::matrix);

  py::class_<Observable>(m, "Observable")
      .def(py::init<Matrix>(), py::arg("matrix"))
      .def_property_readonly("dim", &Observable::dim)
      .def_property_readonly("matrix", &Observable::matrix)
      .def_property_readonly("outcomes", &Observable::outcomes)
      .def("projector", &Observable::projector, py::arg("outcome"),
           py::arg("tol") = 1e-9);

  py::class_<InstrumentBranch>(m, "InstrumentBranch")
      .def(py::init<double, std::vector<Matrix>>(), py::arg("label"),
           py::arg("kraus"))
      .def_readonly("label", &InstrumentBranch::label)
      .def_readonly("kraus", &InstrumentBranch::kraus);

  py::class_<Instrument>(m, "Instrument")
      .def(py::init<std::vector<InstrumentBranch>>(), py::arg("branches"))
      .def_property_readonly("dim", &Instrument::dim)
      .def_property_readonly("branches", &Instrument::branches);

  py::class_<BranchOutcome>(m, "BranchOutcome")
      .def_readonly("label", &BranchOutcome::label)
      .def_readonly("probability", &BranchOutcome::probability)
      .def_property_readonly("post_state", [](const BranchOutcome& b) {
        return b.post_state ? std::optional<Matrix>(b.post_state->matrix())
                            : std::nullopt;
      });

  m.def("pure_state", &pure_state, py::arg("psi"));
  m.def("mix", &mix, py::arg("rho1"), py::arg("rho2"), py::arg("alpha"));
  m.def("apply_instrument", &apply_instrument, py::arg("instrument"),
        py::arg("rho"));
  m.def("choi_matrix", &choi_matrix, py::arg("kraus_ops"));
  m.def("commutes", &commutes, py::arg("a"), py::arg("b"),
        py::arg("tol") = 1e-9);

  py::class_<Hamiltonian>(m, "Hamiltonian")
      .def(py::init<Matrix>(), py::arg("matrix"))
      .def_property_readonly("dim", &Hamiltonian::dim)
      .def_property_readonly("matrix", &Hamiltonian::matrix);

  m.def("evolve_state", &evolve_state, py::arg("rho"), py::arg("h"),
        py::arg("t"));
  m.def("heisenberg_projector", &heisenberg_projector, py::arg("e"),
        py::arg("h"), py::arg("t"));

  py::class_<OutcomeDistribution>(m, "OutcomeDistribution")
      .def_property_readonly("labels", &distribution_labels)
      .def_property_readonly("probs", &distribution_probs)
      .def("prob_of", &OutcomeDistribution::prob_of, py::arg("label"),
           py::arg("tol") = 1e-9);

  py::class_<JointTable>(m, "JointTable")
      .def(py::init<std::vector<double>, std::vector<double>,
                    std::vector<std::vector<double>>>(),
           py::arg("x_labels"), py::arg("y_labels"), py::arg("probs"))
      .def_property_readonly("x_labels", &JointTable::x_labels)
      .def_property_readonly("y_labels", &JointTable::y_labels)
      .def_property_readonly("probs", &JointTable::probs)
      .def("transposed", &JointTable::transposed);

  py::class_<TupleDistribution>(m, "TupleDistribution")
      .def_property_readonly("axis_labels", &TupleDistribution::axis_labels)
      .def_property_readonly("probs", &TupleDistribution::probs)
      .def("prob", &TupleDistribution::prob, py::arg("indices"))
      .def("marginal", &TupleDistribution::marginal, py::arg("axis"));

  m.def("bayes_prior", &bayes_prior, py::arg("joint"));
  m.def("bayes_posterior", &bayes_posterior, py::arg("joint"), py::arg("y"));
  m.def("born_distribution", &born_distribution, py::arg("a"), py::arg("rho"));
  m.def("projection_postulate_update", &projection_postulate_update,
        py::arg("a"), py::arg("outcome"), py::arg("rho"));
  m.def("successive_joint", &successive_joint, py::arg("observables"),
        py::arg("times"), py::arg("h"), py::arg("rho"));
  m.def("commuting_joint", &commuting_joint, py::arg("observables"),
        py::arg("rho"), py::arg("tol") = 1e-9);
  m.def("joint_max_abs_diff", &joint_max_abs_diff, py::arg("a"), py::arg("b"),
        py::arg("label_tol") = 1e-9);

  py::class_<MeasurementModel>(m, "MeasurementModel")
      .def(py::init<Index, Index, DensityOperator, Matrix, Observable>(),
           py::arg("apparatus_dim"), py::arg("object_dim"), py::arg("sigma"),
           py::arg("unitary"), py::arg("probe"))
      .def_property_readonly("apparatus_dim", &MeasurementModel::apparatus_dim)
      .def_property_readonly("object_dim", &MeasurementModel::object_dim)
      .def_property_readonly("sigma", &MeasurementModel::sigma)
      .def_property_readonly("unitary", &MeasurementModel::unitary)
      .def_property_readonly("probe", &MeasurementModel::probe);

  py::class_<TransducerSpec>(m, "TransducerSpec")
      .def(py::init<Observable, StateVector, std::vector<StateVector>,
                    std::vector<StateVector>, unsigned>(),
           py::arg("measured"), py::arg("xi"), py::arg("pointer_states"),
           py::arg("post_states"), py::arg("completion_seed") = 0)
      .def_readonly("measured", &TransducerSpec::measured)
      .def_readonly("xi", &TransducerSpec::xi)
      .def_readonly("pointer_states", &TransducerSpec::pointer_states)
      .def_readonly("post_states", &TransducerSpec::post_states)
      .def_readwrite("completion_seed", &TransducerSpec::completion_seed);

  m.def("build_transducer",
        [](const TransducerSpec& spec) { return build_transducer(spec); },
        py::arg("spec"));
  m.def("outcome_distribution", &outcome_distribution, py::arg("model"),
        py::arg("rho"));
  m.def("prior_state", &prior_state, py::arg("model"), py::arg("rho"));
  m.def("posterior_state", &posterior_state, py::arg("model"), py::arg("rho"),
        py::arg("outcome"));
  m.def("induced_instrument",
        [](const MeasurementModel& model) { return induced_instrument(model); },
        py::arg("model"));
  m.def("probe_object_joint", &probe_object_joint, py::arg("model"),
        py::arg("rho"), py::arg("b_obs"));

  py::class_<LocalSetup>(m, "LocalSetup")
      .def(py::init<Hamiltonian, Hamiltonian, MeasurementModel, Observable,
                    Observable, double, double, double, DensityOperator,
                    std::optional<Hamiltonian>>(),
           py::arg("h1"), py::arg("h2"), py::arg("model"), py::arg("a_obs"),
           py::arg("b_obs"), py::arg("t1"), py::arg("dt"), py::arg("t2"),
           py::arg("rho0"), py::arg("h_app") = std::nullopt)
      .def_property_readonly("t1", &LocalSetup::t1)
      .def_property_readonly("dt", &LocalSetup::dt)
      .def_property_readonly("t2", &LocalSetup::t2)
      .def_property_readonly("a_obs", &LocalSetup::a_obs)
      .def_property_readonly("b_obs", &LocalSetup::b_obs)
      .def_property_readonly("model", &LocalSetup::model)
      .def_property_readonly("rho0", &LocalSetup::rho0)
      .def("with_rho0", &LocalSetup::with_rho0, py::arg("rho"));

  py::class_<MarginalReport>(m, "MarginalReport")
      .def_readonly("a_marginal_violation", &MarginalReport::a_marginal_violation)
      .def_readonly("b_marginal_violation", &MarginalReport::b_marginal_violation)
      .def_readonly("product_violation", &MarginalReport::product_violation)
      .def_readonly("psd_violation", &MarginalReport::psd_violation)
      .def_readonly("completeness_violation",
                    &MarginalReport::completeness_violation)
      .def("worst", &MarginalReport::worst)
      .def_property_readonly("operators", [](const MarginalReport& r) {
        std::vector<std::tuple<double, double, Matrix>> out;
        for (const auto& e : r.f.entries) out.emplace_back(e.a, e.b, e.f);
        return out;
      });

  m.def("joint_formula", &joint_formula, py::arg("setup"));
  m.def("joint_simulated", &joint_simulated, py::arg("setup"));
  m.def("marginal_checks", &marginal_checks, py::arg("setup"));
  m.def(
      "affinity_check",
      [](const LocalSetup& s, const DensityOperator& r1,
         const DensityOperator& r2, double alpha) {
        return affinity_check(s, r1, r2, alpha).max_violation;
      },
      py::arg("setup"), py::arg("rho1"), py::arg("rho2"), py::arg("alpha"));
  m.def("simulated_b_marginal", &simulated_b_marginal, py::arg("setup"));
  m.def("closed_form_b_marginal", &closed_form_b_marginal, py::arg("setup"));

  py::class_<Rng>(m, "Rng")
      .def(py::init<std::uint64_t>(), py::arg("seed"))
      .def("uniform", py::overload_cast<>(&Rng::uniform))
      .def("normal", &Rng::normal);

  m.def("random_hermitian", &random_hermitian, py::arg("rng"), py::arg("dim"),
        py::arg("scale") = 1.0);
  m.def("random_unitary", &random_unitary, py::arg("rng"), py::arg("dim"));
  m.def("random_state_vector", &random_state_vector, py::arg("rng"),
        py::arg("dim"));
  m.def("random_density", &random_density, py::arg("rng"), py::arg("dim"));
  m.def("random_nondegenerate_observable", &random_nondegenerate_observable,
        py::arg("rng"), py::arg("dim"));
  m.def("random_transducer_spec", &random_transducer_spec, py::arg("rng"),
        py::arg("measured"), py::arg("apparatus_dim"),
        py::arg("von_neumann") = false);
  m.def("random_local_setup", &random_local_setup, py::arg("rng"),
        py::arg("max_dim1") = 3, py::arg("max_dim2") = 3,
        py::arg("max_apparatus") = 4, py::arg("max_time") = 5.0);

  py::class_<CheckResult>(m, "CheckResult")
      .def_readonly("name", &CheckResult::name)
      .def_readonly("trials", &CheckResult::trials)
      .def_readonly("violation", &CheckResult::violation)
      .def_readonly("tolerance", &CheckResult::tolerance)
      .def_readonly("pass_", &CheckResult::pass);

  m.def(
      "run_verification",
      [](std::uint64_t seed, int trials, std::optional<double> tol) {
        return run_verification(VerifyOptions{seed, trials, tol});
      },
      py::arg("seed") = 42, py::arg("trials") = 25,
      py::arg("tol") = std::nullopt);

  m.def("builtin_scenario_names",
        []() { return builtin_scenario_names(); });
  m.def(
      "run_scenario",
      [](const std::string& text) {
        return run_scenario(parse_scenario(Json::parse(text))).dump(2);
      },
      py::arg("scenario_json"),
      "Run a scenario given as a JSON string; returns the result JSON");
  m.def(
      "run_builtin_scenario",
      [](const std::string& name) {
        return run_scenario(builtin_scenario(name)).dump(2);
      },
      py::arg("name"));

  // presets
  m.def("pauli_x", &presets::pauli_x);
  m.def("pauli_y", &presets::pauli_y);
  m.def("pauli_z", &presets::pauli_z);
  m.def("ket", &presets::ket, py::arg("n"), py::arg("dim"));
  m.def("plus_state", &presets::plus);
  m.def("bell_phi_plus", &presets::bell_phi_plus);
  m.def("number_operator", &presets::number_operator, py::arg("dim"));
}
