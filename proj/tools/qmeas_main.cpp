#include <CLI11.hpp>
#include <filesystem>
#include <iostream>
#include <string>

#include "qmeas/scenario.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitViolation = 3;

int emit(const qmeas::Json& result, const std::string& output, int precision) {
  if (output == "json") {
    std::cout << result.dump(2) << "\n";
  } else {
    std::cout << qmeas::render_table(result, precision);
  }
  return result.at("violations").empty() ? kExitOk : kExitViolation;
}

int run_command(const std::string& target, const std::string& output,
                int precision) {
  qmeas::Scenario scenario = std::filesystem::exists(target)
                                 ? qmeas::load_scenario_file(target)
                                 : qmeas::builtin_scenario(target);
  return emit(qmeas::run_scenario(scenario), output, precision);
}

int verify_command(const qmeas::VerifyOptions& options,
                   const std::string& output, int precision) {
  return emit(qmeas::verification_report(options), output, precision);
}

int list_command() {
  for (const auto& name : qmeas::builtin_scenario_names()) {
    std::cout << name << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "qmeas: indirect quantum measurement models, state reduction and the "
      "local measurement theorem, verified against brute-force oracles"};
  app.require_subcommand(1);

  std::string output = "table";
  int precision = 6;

  auto* run = app.add_subcommand(
      "run", "Run a scenario file or a built-in scenario by name");
  std::string target;
  run->add_option("scenario", target, "Scenario file path or built-in name")
      ->required();
  run->add_option("--output", output, "Output mode: table or json")
      ->check(CLI::IsMember({"table", "json"}));
  run->add_option("--precision", precision, "Digits for table output")
      ->check(CLI::Range(1, 17));

  auto* verify =
      app.add_subcommand("verify", "Run the full randomized invariant suite");
  qmeas::VerifyOptions options;
  double tol = 0.0;
  verify->add_option("--seed", options.seed, "RNG seed");
  verify->add_option("--trials", options.trials, "Trials per property")
      ->check(CLI::Range(0, 100000));
  auto* tol_opt = verify->add_option(
      "--tol", tol, "Override every property tolerance with this value");
  verify->add_option("--output", output, "Output mode: table or json")
      ->check(CLI::IsMember({"table", "json"}));
  verify->add_option("--precision", precision, "Digits for table output")
      ->check(CLI::Range(1, 17));

  auto* list = app.add_subcommand("list-scenarios", "List built-in scenarios");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (run->parsed()) return run_command(target, output, precision);
    if (verify->parsed()) {
      if (*tol_opt) options.tolerance = tol;
      return verify_command(options, output, precision);
    }
    if (list->parsed()) return list_command();
  } catch (const qmeas::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
