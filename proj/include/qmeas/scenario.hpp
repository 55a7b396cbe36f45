#pragma once

#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "qmeas/verify.hpp"

namespace qmeas {

using Json = nlohmann::json;

enum class ScenarioKind { model_run, local_theorem, bayes_demo };

// A runnable scenario description: {name, kind, payload}. Complex numbers
// are two-element [re, im] arrays, kets are arrays of complex numbers,
// matrices row-major nested arrays; strings denote presets (pauli_x,
// pauli_y, pauli_z, identity:D, zero:D, number:D, ket:N:D, plus,
// bell_phi_plus).
struct Scenario {
  std::string name;
  ScenarioKind kind;
  Json payload;
};

Scenario parse_scenario(const Json& j);
Scenario load_scenario_file(const std::string& path);

const std::vector<std::string>& builtin_scenario_names();
Scenario builtin_scenario(const std::string& name);
bool is_builtin_scenario(const std::string& name);

// Executes the scenario and returns the structured result
// {scenario, kind, distributions, states, joints, checks, violations}.
Json run_scenario(const Scenario& scenario);

// Structured report of the full verification suite.
Json verification_report(const VerifyOptions& options);

// Throws SchemaError unless j is a well-formed result document.
void validate_result(const Json& j);

// JSON encodings of numerical values.
Json complex_to_json(Cx z);
Cx complex_from_json(const Json& j);
Json vector_to_json(const Vector& v);
Vector vector_from_json(const Json& j);
Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

// Human-readable rendering of a result document; `precision` controls
// matrix and probability formatting.
std::string render_table(const Json& result, int precision = 6);

}  // namespace qmeas
