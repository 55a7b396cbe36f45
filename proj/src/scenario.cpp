#include "qmeas/scenario.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "qmeas/presets.hpp"

namespace qmeas {

namespace {

[[noreturn]] void schema_fail(const std::string& what) {
  throw SchemaError("scenario: " + what);
}

const Json& require_field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    schema_fail(std::string("missing field '") + key + "'");
  }
  return j.at(key);
}

double require_number(const Json& j, const char* what) {
  if (!j.is_number()) schema_fail(std::string(what) + " must be a number");
  return j.get<double>();
}

// Preset strings: "name" or "name:arg[:arg]".
std::vector<std::string> split_preset(const std::string& s) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t colon = s.find(':', start);
    parts.push_back(s.substr(start, colon - start));
    if (colon == std::string::npos) break;
    start = colon + 1;
  }
  return parts;
}

Index preset_index(const std::string& s) {
  try {
    return static_cast<Index>(std::stol(s));
  } catch (const std::exception&) {
    schema_fail("bad preset argument '" + s + "'");
  }
}

Matrix matrix_preset(const std::string& name) {
  const auto parts = split_preset(name);
  if (parts[0] == "pauli_x") return presets::pauli_x();
  if (parts[0] == "pauli_y") return presets::pauli_y();
  if (parts[0] == "pauli_z") return presets::pauli_z();
  if (parts[0] == "identity" && parts.size() == 2) {
    return identity(preset_index(parts[1]));
  }
  if (parts[0] == "zero" && parts.size() == 2) {
    const Index d = preset_index(parts[1]);
    if (d < 1) schema_fail("zero: dim must be >= 1");
    return Matrix::Zero(d, d);
  }
  if (parts[0] == "number" && parts.size() == 2) {
    return presets::number_operator(preset_index(parts[1]));
  }
  schema_fail("unknown matrix preset '" + name + "'");
}

Vector vector_preset(const std::string& name) {
  const auto parts = split_preset(name);
  if (parts[0] == "ket" && parts.size() == 3) {
    return presets::ket(preset_index(parts[1]), preset_index(parts[2]))
        .amplitudes();
  }
  if (parts[0] == "plus") return presets::plus().amplitudes();
  if (parts[0] == "bell_phi_plus") return presets::bell_phi_plus().amplitudes();
  schema_fail("unknown ket preset '" + name + "'");
}

}  // namespace

Json complex_to_json(Cx z) { return Json::array({z.real(), z.imag()}); }

Cx complex_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() ||
      !j[1].is_number()) {
    schema_fail("complex numbers are [re, im] arrays");
  }
  return Cx(j[0].get<double>(), j[1].get<double>());
}

Json vector_to_json(const Vector& v) {
  Json out = Json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
  return out;
}

Vector vector_from_json(const Json& j) {
  if (j.is_string()) return vector_preset(j.get<std::string>());
  if (!j.is_array() || j.empty()) schema_fail("ket must be a non-empty array");
  Vector v(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    v(static_cast<Index>(i)) = complex_from_json(j[i]);
  }
  return v;
}

Json matrix_to_json(const Matrix& m) {
  Json out = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
    out.push_back(std::move(row));
  }
  return out;
}

Matrix matrix_from_json(const Json& j) {
  if (j.is_string()) return matrix_preset(j.get<std::string>());
  if (!j.is_array() || j.empty()) {
    schema_fail("matrix must be a non-empty array of rows");
  }
  const std::size_t rows = j.size();
  Matrix m(static_cast<Index>(rows), static_cast<Index>(rows));
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != rows) {
      schema_fail("matrix must be square with one array per row");
    }
    for (std::size_t c = 0; c < rows; ++c) {
      m(static_cast<Index>(r), static_cast<Index>(c)) =
          complex_from_json(j[r][c]);
    }
  }
  return m;
}

namespace {

// A state payload: ket (array of complex / preset string) or density matrix
// (array of rows) or {"random": {"seed": S, "dim": D}}.
DensityOperator state_from_json(const Json& j) {
  if (j.is_object() && j.contains("random")) {
    const Json& r = j.at("random");
    Rng rng(static_cast<std::uint64_t>(
        require_number(require_field(r, "seed"), "seed")));
    return random_density(
        rng, static_cast<Index>(require_number(require_field(r, "dim"), "dim")));
  }
  if (j.is_string()) return pure_state(StateVector(vector_preset(j)));
  if (j.is_array() && !j.empty() && j[0].is_array() && !j[0].empty() &&
      j[0][0].is_array()) {
    return DensityOperator(matrix_from_json(j));
  }
  return pure_state(StateVector(vector_from_json(j)));
}

TransducerSpec transducer_from_json(const Json& j) {
  const Observable measured(matrix_from_json(require_field(j, "measured")));
  const StateVector xi{vector_from_json(require_field(j, "xi"))};

  std::vector<StateVector> pointers;
  const Json& pj = require_field(j, "pointer_states");
  if (pj.is_string() && pj.get<std::string>() == "computational") {
    for (std::size_t n = 0; n < measured.outcome_count(); ++n) {
      pointers.push_back(presets::ket(static_cast<Index>(n), xi.dim()));
    }
  } else if (pj.is_array()) {
    for (const auto& p : pj) pointers.emplace_back(vector_from_json(p));
  } else {
    schema_fail("pointer_states must be an array or \"computational\"");
  }

  std::vector<StateVector> posts;
  const Json& qj = require_field(j, "post_states");
  if (qj.is_string()) {
    const auto parts = split_preset(qj.get<std::string>());
    if (parts[0] == "measured") {
      for (const auto& line : measured.spectrum()) {
        posts.emplace_back(Vector(projector_ray(line.projector)));
      }
    } else if (parts[0] == "reset" && parts.size() == 2) {
      for (std::size_t n = 0; n < measured.outcome_count(); ++n) {
        posts.push_back(
            presets::ket(preset_index(parts[1]), measured.dim()));
      }
    } else {
      schema_fail("post_states must be an array, \"measured\" or \"reset:N\"");
    }
  } else if (qj.is_array()) {
    for (const auto& p : qj) posts.emplace_back(vector_from_json(p));
  } else {
    schema_fail("post_states must be an array, \"measured\" or \"reset:N\"");
  }

  TransducerSpec spec{measured, xi, std::move(pointers), std::move(posts)};
  if (j.contains("completion_seed")) {
    spec.completion_seed = static_cast<unsigned>(
        require_number(j.at("completion_seed"), "completion_seed"));
  }
  return spec;
}

struct ModelAndSource {
  MeasurementModel model;
  // The measured observable, when the model came from a transducer spec.
  std::optional<Observable> measured;
};

ModelAndSource model_from_json(const Json& j) {
  if (!j.is_object()) schema_fail("model must be an object");
  if (j.contains("transducer")) {
    const TransducerSpec spec = transducer_from_json(j.at("transducer"));
    return {build_transducer(spec), spec.measured};
  }
  if (j.contains("random")) {
    const Json& r = j.at("random");
    Rng rng(static_cast<std::uint64_t>(
        require_number(require_field(r, "seed"), "seed")));
    const Index object_dim = static_cast<Index>(
        require_number(require_field(r, "object_dim"), "object_dim"));
    const Index apparatus_dim = static_cast<Index>(
        require_number(require_field(r, "apparatus_dim"), "apparatus_dim"));
    const bool von_neumann =
        r.contains("von_neumann") && r.at("von_neumann").get<bool>();
    const Observable measured = random_nondegenerate_observable(rng, object_dim);
    return {build_transducer(random_transducer_spec(rng, measured,
                                                    apparatus_dim, von_neumann)),
            measured};
  }
  if (j.contains("direct")) {
    const Json& d = j.at("direct");
    const Index apparatus_dim = static_cast<Index>(
        require_number(require_field(d, "apparatus_dim"), "apparatus_dim"));
    const Index object_dim = static_cast<Index>(
        require_number(require_field(d, "object_dim"), "object_dim"));
    return {MeasurementModel(
                apparatus_dim, object_dim,
                DensityOperator(matrix_from_json(require_field(d, "sigma"))),
                matrix_from_json(require_field(d, "unitary")),
                Observable(matrix_from_json(require_field(d, "probe")))),
            std::nullopt};
  }
  schema_fail("model needs one of 'transducer', 'random', 'direct'");
}

Observable observable_from_json(const Json& j) {
  if (j.is_object() && j.contains("random")) {
    const Json& r = j.at("random");
    Rng rng(static_cast<std::uint64_t>(
        require_number(require_field(r, "seed"), "seed")));
    return random_nondegenerate_observable(
        rng, static_cast<Index>(require_number(require_field(r, "dim"), "dim")));
  }
  return Observable(matrix_from_json(j));
}

// Von Neumann apparatus for a given observable: computational pointers,
// posts equal to the measured eigenstates, apparatus prepared in |0>.
MeasurementModel von_neumann_model(const Observable& a_obs) {
  std::vector<StateVector> pointers;
  std::vector<StateVector> posts;
  for (std::size_t n = 0; n < a_obs.outcome_count(); ++n) {
    pointers.push_back(presets::ket(static_cast<Index>(n), a_obs.dim()));
    posts.emplace_back(Vector(projector_ray(a_obs.spectrum()[n].projector)));
  }
  return build_transducer(TransducerSpec{
      a_obs, presets::ket(0, a_obs.dim()), std::move(pointers),
      std::move(posts)});
}

Json distribution_to_json(const std::string& name,
                          const OutcomeDistribution& dist) {
  Json labels = Json::array();
  Json probs = Json::array();
  for (const auto& e : dist.entries()) {
    labels.push_back(e.label);
    probs.push_back(e.prob);
  }
  return Json{{"name", name}, {"labels", labels}, {"probs", probs}};
}

Json joint_to_json(const std::string& name, const JointTable& joint) {
  Json probs = Json::array();
  for (const auto& row : joint.probs()) probs.push_back(row);
  return Json{{"name", name},
              {"x_labels", joint.x_labels()},
              {"y_labels", joint.y_labels()},
              {"probs", probs}};
}

Json state_to_json(const std::string& name, const Matrix& m) {
  return Json{{"name", name}, {"matrix", matrix_to_json(m)}};
}

struct ResultBuilder {
  Json distributions = Json::array();
  Json states = Json::array();
  Json joints = Json::array();
  Json checks = Json::array();

  void check(const std::string& name, double violation, double tolerance) {
    checks.push_back(Json{{"name", name},
                          {"violation", violation},
                          {"tolerance", tolerance},
                          {"pass", violation <= tolerance}});
  }

  Json finish(const Scenario& scenario) const {
    Json violations = Json::array();
    for (const auto& c : checks) {
      if (!c.at("pass").get<bool>()) violations.push_back(c);
    }
    const char* kind = scenario.kind == ScenarioKind::model_run
                           ? "model_run"
                           : scenario.kind == ScenarioKind::local_theorem
                                 ? "local_theorem"
                                 : "bayes_demo";
    return Json{{"scenario", scenario.name}, {"kind", kind},
                {"distributions", distributions}, {"states", states},
                {"joints", joints},             {"checks", checks},
                {"violations", violations}};
  }
};

Json run_model_scenario(const Scenario& scenario) {
  const Json& payload = scenario.payload;
  const auto [model, measured] = model_from_json(require_field(payload, "model"));
  const DensityOperator rho = state_from_json(require_field(payload, "state"));
  if (rho.dim() != model.object_dim()) {
    schema_fail("state dim does not match the model's object dim");
  }

  ResultBuilder out;
  const OutcomeDistribution dist = outcome_distribution(model, rho);
  out.distributions.push_back(distribution_to_json("outcome", dist));
  out.states.push_back(state_to_json("prior", prior_state(model, rho).matrix()));
  for (const auto& e : dist.entries()) {
    if (e.prob <= 1e-12) continue;
    std::ostringstream name;
    name << "posterior a=" << e.label;
    out.states.push_back(state_to_json(
        name.str(), posterior_state(model, rho, e.label).matrix()));
  }

  // Nonselective decomposition of the prior state.
  {
    Matrix mixture = Matrix::Zero(model.object_dim(), model.object_dim());
    for (const auto& e : dist.entries()) {
      if (e.prob <= 1e-12) continue;
      mixture += e.prob * posterior_state(model, rho, e.label).matrix();
    }
    out.check("nonselective-decomposition",
              max_abs_diff(mixture, prior_state(model, rho).matrix()), 1e-9);
  }

  // Statistical formula, when the measured observable is known.
  if (measured) {
    out.distributions.push_back(distribution_to_json(
        "born(measured)", born_distribution(*measured, rho)));
    out.check("statistical-formula",
              distribution_max_abs_diff(dist, born_distribution(*measured, rho)),
              1e-10);
  }

  // Induced instrument checks.
  const Instrument inst = induced_instrument(model);
  {
    double choi_violation = 0.0;
    Matrix normalization = Matrix::Zero(model.object_dim(), model.object_dim());
    for (const auto& branch : inst.branches()) {
      Eigen::SelfAdjointEigenSolver<Matrix> solver(choi_matrix(branch.kraus));
      choi_violation =
          std::max(choi_violation, -solver.eigenvalues().minCoeff());
      for (const auto& k : branch.kraus) normalization += k.adjoint() * k;
    }
    out.check("instrument-choi-psd", std::max(choi_violation, 0.0), 1e-8);
    out.check("instrument-normalization",
              max_abs_diff(normalization, identity(model.object_dim())), 1e-9);
    double equivalence = 0.0;
    for (const auto& b : apply_instrument(inst, rho)) {
      equivalence =
          std::max(equivalence, std::abs(b.probability - dist.prob_of(b.label)));
      if (b.probability > 1e-9 && b.post_state) {
        equivalence = std::max(
            equivalence,
            max_abs_diff(b.post_state->matrix(),
                         posterior_state(model, rho, b.label).matrix()));
      }
    }
    out.check("instrument-equivalence", equivalence, 1e-9);
  }

  // Quantum Bayes consistency against each requested object observable.
  if (payload.contains("object_observables")) {
    const Json& list = payload.at("object_observables");
    if (!list.is_array()) schema_fail("object_observables must be an array");
    for (std::size_t i = 0; i < list.size(); ++i) {
      const Observable b_obs = observable_from_json(list[i]);
      const JointTable joint = probe_object_joint(model, rho, b_obs);
      std::ostringstream joint_name;
      joint_name << "B" << i << "-vs-probe";
      out.joints.push_back(joint_to_json(joint_name.str(), joint));
      double violation = 0.0;
      for (const auto& e : dist.entries()) {
        if (e.prob <= 1e-6) continue;
        violation = std::max(
            violation,
            distribution_max_abs_diff(
                bayes_posterior(joint, e.label),
                born_distribution(b_obs, posterior_state(model, rho, e.label))));
      }
      std::ostringstream check_name;
      check_name << "quantum-bayes-B" << i;
      out.check(check_name.str(), violation, 1e-9);
    }
  }
  return out.finish(scenario);
}

Json run_local_theorem_scenario(const Scenario& scenario) {
  const Json& payload = scenario.payload;
  const Observable a_obs = observable_from_json(require_field(payload, "a_obs"));
  const Observable b_obs = observable_from_json(require_field(payload, "b_obs"));

  MeasurementModel model = [&] {
    const Json& mj = require_field(payload, "model");
    if (mj.is_string() && mj.get<std::string>() == "von_neumann") {
      return von_neumann_model(a_obs);
    }
    return model_from_json(mj).model;
  }();

  std::optional<Hamiltonian> h_app;
  if (payload.contains("h_app")) {
    h_app = Hamiltonian(matrix_from_json(payload.at("h_app")));
  }

  const LocalSetup setup(
      Hamiltonian(matrix_from_json(require_field(payload, "h1"))),
      Hamiltonian(matrix_from_json(require_field(payload, "h2"))),
      std::move(model), a_obs, b_obs,
      require_number(require_field(payload, "t1"), "t1"),
      require_number(require_field(payload, "dt"), "dt"),
      require_number(require_field(payload, "t2"), "t2"),
      state_from_json(require_field(payload, "rho0")), h_app);

  ResultBuilder out;
  const JointTable formula = joint_formula(setup);
  const JointTable simulated = joint_simulated(setup);
  out.joints.push_back(joint_to_json("formula", formula));
  out.joints.push_back(joint_to_json("simulated", simulated));
  out.check("theorem-equivalence", joint_max_abs_diff(simulated, formula),
            1e-9);
  out.check("no-signaling-closed-form",
            distribution_max_abs_diff(simulated_b_marginal(setup),
                                      closed_form_b_marginal(setup)),
            1e-9);

  std::vector<std::string> extras;
  if (payload.contains("checks")) {
    for (const auto& c : payload.at("checks")) {
      extras.push_back(c.get<std::string>());
    }
  }
  for (const auto& extra : extras) {
    if (extra == "marginals") {
      const MarginalReport report = marginal_checks(setup);
      out.check("marginal-a", report.a_marginal_violation, 1e-8);
      out.check("marginal-b", report.b_marginal_violation, 1e-8);
      out.check("marginal-product", report.product_violation, 1e-8);
      out.check("marginal-psd", report.psd_violation, 1e-9);
      out.check("marginal-completeness", report.completeness_violation, 1e-8);
    } else if (extra == "affinity") {
      const std::uint64_t seed =
          payload.contains("seed")
              ? static_cast<std::uint64_t>(payload.at("seed").get<double>())
              : 1;
      Rng rng(seed);
      const Index dim = setup.dim1() * setup.dim2();
      const AffinityReport report =
          affinity_check(setup, random_density(rng, dim),
                         random_density(rng, dim), rng.uniform(0.05, 0.95));
      out.check("affinity", report.max_violation, 1e-10);
    } else {
      schema_fail("unknown check '" + extra + "'");
    }
  }
  return out.finish(scenario);
}

Json run_bayes_scenario(const Scenario& scenario) {
  const Json& payload = scenario.payload;
  const Json& pj = require_field(payload, "probs");
  if (!pj.is_array()) schema_fail("probs must be an array of rows");
  std::vector<std::vector<double>> probs;
  for (const auto& row : pj) {
    if (!row.is_array()) schema_fail("probs must be an array of rows");
    probs.push_back(row.get<std::vector<double>>());
  }
  const JointTable joint(
      require_field(payload, "x_labels").get<std::vector<double>>(),
      require_field(payload, "y_labels").get<std::vector<double>>(),
      std::move(probs));

  ResultBuilder out;
  out.joints.push_back(joint_to_json("joint", joint));
  const OutcomeDistribution prior = bayes_prior(joint);
  out.distributions.push_back(distribution_to_json("prior", prior));

  std::vector<double> conditioned;
  if (payload.contains("condition_y")) {
    conditioned.push_back(require_number(payload.at("condition_y"), "condition_y"));
  } else {
    conditioned = joint.y_labels();
  }
  const OutcomeDistribution y_marginal = bayes_prior(joint.transposed());
  for (double y : conditioned) {
    std::ostringstream name;
    name << "posterior y=" << y;
    out.distributions.push_back(
        distribution_to_json(name.str(), bayes_posterior(joint, y)));
  }

  // Reweighting identity over all y with positive probability.
  std::vector<double> reweighted(joint.x_labels().size(), 0.0);
  for (std::size_t j = 0; j < joint.y_labels().size(); ++j) {
    const double p_y = y_marginal.entries()[j].prob;
    if (p_y <= 1e-12) continue;
    const OutcomeDistribution posterior =
        bayes_posterior(joint, joint.y_labels()[j]);
    for (std::size_t i = 0; i < reweighted.size(); ++i) {
      reweighted[i] += p_y * posterior.entries()[i].prob;
    }
  }
  double violation = 0.0;
  for (std::size_t i = 0; i < reweighted.size(); ++i) {
    violation =
        std::max(violation, std::abs(reweighted[i] - prior.entries()[i].prob));
  }
  out.check("bayes-reweighting", violation, 1e-12);
  return out.finish(scenario);
}

}  // namespace

Scenario parse_scenario(const Json& j) {
  if (!j.is_object()) schema_fail("top level must be an object");
  Scenario s;
  const Json& name = require_field(j, "name");
  if (!name.is_string()) schema_fail("name must be a string");
  s.name = name.get<std::string>();
  const Json& kind = require_field(j, "kind");
  if (!kind.is_string()) schema_fail("kind must be a string");
  const std::string k = kind.get<std::string>();
  if (k == "model_run") {
    s.kind = ScenarioKind::model_run;
  } else if (k == "local_theorem") {
    s.kind = ScenarioKind::local_theorem;
  } else if (k == "bayes_demo") {
    s.kind = ScenarioKind::bayes_demo;
  } else {
    schema_fail("unknown kind '" + k + "'");
  }
  s.payload = require_field(j, "payload");
  if (!s.payload.is_object()) schema_fail("payload must be an object");
  return s;
}

Scenario load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("scenario: cannot open '" + path + "'");
  Json j;
  try {
    in >> j;
  } catch (const Json::parse_error& e) {
    throw SchemaError(std::string("scenario: invalid JSON: ") + e.what());
  }
  return parse_scenario(j);
}

const std::vector<std::string>& builtin_scenario_names() {
  static const std::vector<std::string> names = {
      "qubit-vn", "photon-counting", "epr-local", "transducer-random",
      "bayes-table"};
  return names;
}

bool is_builtin_scenario(const std::string& name) {
  for (const auto& n : builtin_scenario_names()) {
    if (n == name) return true;
  }
  return false;
}

Scenario builtin_scenario(const std::string& name) {
  if (name == "qubit-vn") {
    return parse_scenario(Json{
        {"name", "qubit-vn"},
        {"kind", "model_run"},
        {"payload",
         Json{{"state", "plus"},
              {"model",
               Json{{"transducer", Json{{"measured", "pauli_z"},
                                        {"xi", "ket:0:2"},
                                        {"pointer_states", "computational"},
                                        {"post_states", "measured"}}}}},
              {"object_observables", Json::array({"pauli_x"})}}}});
  }
  if (name == "photon-counting") {
    const double a = 1.0 / std::sqrt(3.0);
    const Json zero = Json::array({0.0, 0.0});
    const Json amp = Json::array({a, 0.0});
    return parse_scenario(Json{
        {"name", "photon-counting"},
        {"kind", "model_run"},
        {"payload",
         Json{{"state", Json::array({amp, amp, amp, zero})},
              {"model",
               Json{{"transducer", Json{{"measured", "number:4"},
                                        {"xi", "ket:0:4"},
                                        {"pointer_states", "computational"},
                                        {"post_states", "reset:0"}}}}},
              {"object_observables", Json::array({"number:4"})}}}});
  }
  if (name == "epr-local") {
    return parse_scenario(Json{
        {"name", "epr-local"},
        {"kind", "local_theorem"},
        {"payload", Json{{"rho0", "bell_phi_plus"},
                         {"h1", "zero:2"},
                         {"h2", "zero:2"},
                         {"a_obs", "pauli_z"},
                         {"b_obs", "pauli_z"},
                         {"model", "von_neumann"},
                         {"t1", 0.25},
                         {"dt", 0.25},
                         {"t2", 1.0},
                         {"checks", Json::array({"marginals", "affinity"})},
                         {"seed", 1}}}});
  }
  if (name == "transducer-random") {
    return parse_scenario(Json{
        {"name", "transducer-random"},
        {"kind", "model_run"},
        {"payload",
         Json{{"state", Json{{"random", Json{{"seed", 8}, {"dim", 3}}}}},
              {"model", Json{{"random", Json{{"seed", 7},
                                             {"object_dim", 3},
                                             {"apparatus_dim", 3}}}}},
              {"object_observables",
               Json::array({Json{{"random", Json{{"seed", 9}, {"dim", 3}}}}})}}}});
  }
  if (name == "bayes-table") {
    return parse_scenario(Json{
        {"name", "bayes-table"},
        {"kind", "bayes_demo"},
        {"payload",
         Json{{"x_labels", Json::array({0.0, 1.0})},
              {"y_labels", Json::array({0.0, 1.0})},
              {"probs", Json::array({Json::array({0.1, 0.2}),
                                     Json::array({0.3, 0.4})})},
              {"condition_y", 1.0}}}});
  }
  throw SchemaError("unknown scenario '" + name + "'");
}

Json run_scenario(const Scenario& scenario) {
  switch (scenario.kind) {
    case ScenarioKind::model_run:
      return run_model_scenario(scenario);
    case ScenarioKind::local_theorem:
      return run_local_theorem_scenario(scenario);
    case ScenarioKind::bayes_demo:
      return run_bayes_scenario(scenario);
  }
  schema_fail("unreachable scenario kind");
}

Json verification_report(const VerifyOptions& options) {
  const auto results = run_verification(options);
  Json checks = Json::array();
  Json violations = Json::array();
  for (const auto& r : results) {
    Json c{{"name", r.name},
           {"trials", r.trials},
           {"violation", r.violation},
           {"tolerance", r.tolerance},
           {"pass", r.pass}};
    checks.push_back(c);
    if (!r.pass) violations.push_back(c);
  }
  Json out{{"command", "verify"},
           {"seed", options.seed},
           {"trials", options.trials},
           {"checks", checks},
           {"violations", violations}};
  if (options.trials == 0) {
    out["warning"] = "0 trials requested: every check passed vacuously";
  }
  return out;
}

void validate_result(const Json& j) {
  if (!j.is_object()) throw SchemaError("result: not an object");
  const bool is_verify = j.contains("command");
  if (is_verify) {
    for (const char* key : {"seed", "trials", "checks", "violations"}) {
      if (!j.contains(key)) {
        throw SchemaError(std::string("result: missing '") + key + "'");
      }
    }
  } else {
    for (const char* key : {"scenario", "kind", "distributions", "states",
                            "joints", "checks", "violations"}) {
      if (!j.contains(key)) {
        throw SchemaError(std::string("result: missing '") + key + "'");
      }
    }
    for (const auto& d : j.at("distributions")) {
      if (!d.contains("name") || !d.contains("labels") || !d.contains("probs") ||
          d.at("labels").size() != d.at("probs").size()) {
        throw SchemaError("result: malformed distribution");
      }
    }
    for (const auto& s : j.at("states")) {
      if (!s.contains("name") || !s.contains("matrix")) {
        throw SchemaError("result: malformed state");
      }
      matrix_from_json(s.at("matrix"));
    }
    for (const auto& t : j.at("joints")) {
      if (!t.contains("name") || !t.contains("x_labels") ||
          !t.contains("y_labels") || !t.contains("probs")) {
        throw SchemaError("result: malformed joint");
      }
    }
  }
  for (const auto& c : j.at("checks")) {
    if (!c.contains("name") || !c.contains("violation") ||
        !c.contains("tolerance") || !c.contains("pass")) {
      throw SchemaError("result: malformed check");
    }
  }
}

namespace {

std::string format_complex(Cx z, int precision) {
  std::ostringstream out;
  out << std::setprecision(precision) << z.real();
  if (z.imag() >= 0.0) {
    out << "+" << std::setprecision(precision) << z.imag() << "i";
  } else {
    out << "-" << std::setprecision(precision) << -z.imag() << "i";
  }
  return out.str();
}

}  // namespace

std::string render_table(const Json& result, int precision) {
  std::ostringstream out;
  out << std::setprecision(precision);
  if (result.contains("command")) {
    out << "verification (seed " << result.at("seed").get<std::uint64_t>()
        << ", " << result.at("trials").get<int>() << " trials)\n";
    if (result.contains("warning")) {
      out << "warning: " << result.at("warning").get<std::string>() << "\n";
    }
    for (const auto& c : result.at("checks")) {
      out << "  " << (c.at("pass").get<bool>() ? "pass" : "FAIL") << "  "
          << std::left << std::setw(34) << c.at("name").get<std::string>()
          << " max violation " << std::scientific << std::setprecision(3)
          << c.at("violation").get<double>() << "  (tol "
          << c.at("tolerance").get<double>() << ")\n"
          << std::defaultfloat << std::setprecision(precision);
    }
    return out.str();
  }

  out << "scenario: " << result.at("scenario").get<std::string>() << " ("
      << result.at("kind").get<std::string>() << ")\n";
  for (const auto& d : result.at("distributions")) {
    out << "\ndistribution " << d.at("name").get<std::string>() << "\n";
    const auto& labels = d.at("labels");
    const auto& probs = d.at("probs");
    for (std::size_t i = 0; i < labels.size(); ++i) {
      out << "  " << std::setw(10) << labels[i].get<double>() << "  "
          << probs[i].get<double>() << "\n";
    }
  }
  for (const auto& s : result.at("states")) {
    out << "\nstate " << s.at("name").get<std::string>() << "\n";
    const Matrix m = matrix_from_json(s.at("matrix"));
    for (Index i = 0; i < m.rows(); ++i) {
      out << "  [";
      for (Index j = 0; j < m.cols(); ++j) {
        out << (j ? ", " : " ") << format_complex(m(i, j), precision);
      }
      out << " ]\n";
    }
  }
  for (const auto& t : result.at("joints")) {
    out << "\njoint " << t.at("name").get<std::string>() << " (rows: x)\n";
    const auto& ys = t.at("y_labels");
    out << "  " << std::setw(10) << "";
    for (const auto& y : ys) out << std::setw(12) << y.get<double>();
    out << "\n";
    const auto& xs = t.at("x_labels");
    const auto& probs = t.at("probs");
    for (std::size_t i = 0; i < xs.size(); ++i) {
      out << "  " << std::setw(10) << xs[i].get<double>();
      for (const auto& p : probs[i]) out << std::setw(12) << p.get<double>();
      out << "\n";
    }
  }
  if (!result.at("checks").empty()) out << "\n";
  for (const auto& c : result.at("checks")) {
    out << "  " << (c.at("pass").get<bool>() ? "pass" : "FAIL") << "  "
        << std::left << std::setw(34) << c.at("name").get<std::string>()
        << " violation " << std::scientific << std::setprecision(3)
        << c.at("violation").get<double>() << "  (tol "
        << c.at("tolerance").get<double>() << ")\n"
        << std::defaultfloat << std::setprecision(precision) << std::right;
  }
  return out.str();
}

}  // namespace qmeas
