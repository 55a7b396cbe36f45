#include <fstream>

#include "qmeas/scenario.hpp"
#include "test_helpers.hpp"

using namespace qmeas;
using namespace qmeas::test;

TEST_CASE("matrix and vector json round-trips") {
  Rng rng(271);
  const Matrix m = random_hermitian(rng, 3);
  CHECK(max_abs_diff(matrix_from_json(matrix_to_json(m)), m) == 0.0);
  const Vector v = random_state_vector(rng, 4).amplitudes();
  CHECK((vector_from_json(vector_to_json(v)) - v).norm() == 0.0);
}

TEST_CASE("presets parse") {
  CHECK(max_abs_diff(matrix_from_json("pauli_x"), presets::pauli_x()) == 0.0);
  CHECK(max_abs_diff(matrix_from_json("identity:3"), identity(3)) == 0.0);
  CHECK(max_abs_diff(matrix_from_json("number:4"), presets::number_operator(4)) ==
        0.0);
  CHECK((vector_from_json("ket:1:3") - presets::ket(1, 3).amplitudes()).norm() ==
        0.0);
  CHECK_THROWS_AS(matrix_from_json("no-such-preset"), SchemaError);
  CHECK_THROWS_AS(vector_from_json("ket:9:2"), ParameterError);
}

TEST_CASE("scenario parsing rejects malformed documents") {
  CHECK_THROWS_AS(parse_scenario(Json::array()), SchemaError);
  CHECK_THROWS_AS(parse_scenario(Json{{"name", "x"}, {"kind", "nope"},
                                      {"payload", Json::object()}}),
                  SchemaError);
  CHECK_THROWS_AS(parse_scenario(Json{{"name", "x"}, {"kind", "model_run"}}),
                  SchemaError);
  CHECK_THROWS_AS(load_scenario_file("/nonexistent/path.json"), SchemaError);
}

TEST_CASE("all builtin scenarios run without violations") {
  for (const auto& name : builtin_scenario_names()) {
    const Json result = run_scenario(builtin_scenario(name));
    INFO(name);
    CHECK(result.at("violations").empty());
    CHECK_NOTHROW(validate_result(result));
  }
  CHECK(builtin_scenario_names().size() == 5);
  CHECK_THROWS_AS(builtin_scenario("missing"), SchemaError);
}

TEST_CASE("scenario output is deterministic") {
  const Scenario scenario = builtin_scenario("transducer-random");
  CHECK(run_scenario(scenario).dump() == run_scenario(scenario).dump());
  const Json verify1 = verification_report(VerifyOptions{42, 3, {}});
  const Json verify2 = verification_report(VerifyOptions{42, 3, {}});
  CHECK(verify1.dump() == verify2.dump());
}

TEST_CASE("qubit-vn produces the expected posteriors") {
  const Json result = run_scenario(builtin_scenario("qubit-vn"));
  const auto& dist = result.at("distributions")[0];
  CHECK(dist.at("probs")[0].get<double>() == doctest::Approx(0.5));
  CHECK(dist.at("probs")[1].get<double>() == doctest::Approx(0.5));

  bool saw_minus = false, saw_plus = false;
  for (const auto& state : result.at("states")) {
    const std::string name = state.at("name").get<std::string>();
    if (name == "posterior a=-1") {
      saw_minus = true;
      CHECK(max_abs_diff(matrix_from_json(state.at("matrix")), diag2(0, 1)) <
            1e-12);
    }
    if (name == "posterior a=1") {
      saw_plus = true;
      CHECK(max_abs_diff(matrix_from_json(state.at("matrix")), diag2(1, 0)) <
            1e-12);
    }
  }
  CHECK(saw_minus);
  CHECK(saw_plus);
}

TEST_CASE("photon-counting builtin reports thirds and vacuum posteriors") {
  const Json result = run_scenario(builtin_scenario("photon-counting"));
  const auto& probs = result.at("distributions")[0].at("probs");
  CHECK(probs[0].get<double>() == doctest::Approx(1.0 / 3.0));
  CHECK(probs[1].get<double>() == doctest::Approx(1.0 / 3.0));
  CHECK(probs[2].get<double>() == doctest::Approx(1.0 / 3.0));
  CHECK(probs[3].get<double>() == doctest::Approx(0.0));
  const Matrix vacuum = ket_state(0, 4).matrix();
  int posteriors = 0;
  for (const auto& state : result.at("states")) {
    if (state.at("name").get<std::string>().starts_with("posterior")) {
      ++posteriors;
      CHECK(max_abs_diff(matrix_from_json(state.at("matrix")), vacuum) < 1e-12);
    }
  }
  CHECK(posteriors == 3);  // the n = 3 branch has probability zero
}

TEST_CASE("epr-local builtin reproduces the correlated joint") {
  const Json result = run_scenario(builtin_scenario("epr-local"));
  for (const auto& joint : result.at("joints")) {
    const auto& probs = joint.at("probs");
    CHECK(probs[0][0].get<double>() == doctest::Approx(0.5));
    CHECK(probs[1][1].get<double>() == doctest::Approx(0.5));
    CHECK(probs[0][1].get<double>() == doctest::Approx(0.0));
    CHECK(probs[1][0].get<double>() == doctest::Approx(0.0));
  }
}

TEST_CASE("scenario files load from disk") {
  const std::string path = "/tmp/qmeas_test_scenario.json";
  {
    std::ofstream out(path);
    out << Json{{"name", "from-file"},
                {"kind", "bayes_demo"},
                {"payload",
                 Json{{"x_labels", Json::array({0.0, 1.0})},
                      {"y_labels", Json::array({0.0, 1.0})},
                      {"probs", Json::array({Json::array({0.1, 0.2}),
                                             Json::array({0.3, 0.4})})}}}}
               .dump();
  }
  const Json result = run_scenario(load_scenario_file(path));
  CHECK(result.at("scenario").get<std::string>() == "from-file");
  CHECK(result.at("violations").empty());
  // posterior for every y; prior first
  CHECK(result.at("distributions").size() == 3);
}

TEST_CASE("dimension mismatches in payloads are schema errors") {
  Scenario s = builtin_scenario("qubit-vn");
  s.payload["state"] = "ket:0:3";
  CHECK_THROWS_AS(run_scenario(s), SchemaError);
}

TEST_CASE("verification report validates and honors the tolerance override") {
  const Json report = verification_report(VerifyOptions{7, 2, {}});
  CHECK_NOTHROW(validate_result(report));
  CHECK(report.at("violations").empty());

  const Json broken = verification_report(VerifyOptions{7, 2, 1e-20});
  CHECK_FALSE(broken.at("violations").empty());

  const Json vacuous = verification_report(VerifyOptions{7, 0, {}});
  CHECK(vacuous.contains("warning"));
  CHECK(vacuous.at("violations").empty());
}

TEST_CASE("render_table covers every result family") {
  const std::string model_table =
      render_table(run_scenario(builtin_scenario("qubit-vn")), 4);
  CHECK(model_table.find("distribution outcome") != std::string::npos);
  CHECK(model_table.find("posterior") != std::string::npos);
  const std::string verify_table =
      render_table(verification_report(VerifyOptions{42, 1, {}}), 4);
  CHECK(verify_table.find("theorem-equivalence") != std::string::npos);
}
