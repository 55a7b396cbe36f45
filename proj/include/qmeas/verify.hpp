#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qmeas/random.hpp"

namespace qmeas {

struct CheckResult {
  std::string name;
  int trials;
  double violation;
  double tolerance;
  bool pass;
};

struct VerifyOptions {
  std::uint64_t seed = 42;
  int trials = 25;
  // When set, replaces every property's default tolerance.
  std::optional<double> tolerance;
};

// Randomized property checks, each returning the max violation observed
// over `trials` independent draws. Zero trials gives a vacuous zero.
double check_theorem_equivalence(Rng& rng, int trials);
double check_a_marginal_consistency(Rng& rng, int trials);
double check_no_signaling(Rng& rng, int trials);
double check_affinity(Rng& rng, int trials);
double check_instrument_choi(Rng& rng, int trials);
double check_instrument_normalization(Rng& rng, int trials);
double check_instrument_equivalence(Rng& rng, int trials);
double check_quantum_bayes(Rng& rng, int trials);
double check_statistical_formula(Rng& rng, int trials);
double check_projection_recovery(Rng& rng, int trials);
double check_photon_counting(Rng& rng, int trials);
double check_nonselective_decomposition(Rng& rng, int trials);
double check_marginal_reconstruction(Rng& rng, int trials);
double check_bayes_reweighting(Rng& rng, int trials);
double check_rules_agreement(Rng& rng, int trials);
double check_duality(Rng& rng, int trials);
double check_completion_independence(Rng& rng, int trials);
double check_apparatus_hamiltonian_invariance(Rng& rng, int trials);

// The full suite in fixed order, each property at its own tolerance unless
// overridden.
std::vector<CheckResult> run_verification(const VerifyOptions& options);

bool all_pass(const std::vector<CheckResult>& results);

}  // namespace qmeas
