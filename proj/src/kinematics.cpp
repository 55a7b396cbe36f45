#include "qmeas/kinematics.hpp"

#include <cmath>
#include <string>

namespace qmeas {

namespace {

void check_ascending(const std::vector<double>& labels, const char* who) {
  for (std::size_t i = 1; i < labels.size(); ++i) {
    if (!(labels[i] > labels[i - 1])) {
      throw ParameterError(std::string(who) +
                           ": labels must be strictly ascending");
    }
  }
}

std::size_t label_index(const std::vector<double>& labels, double value,
                        double tol, const char* who) {
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (std::abs(labels[i] - value) <= tol) return i;
  }
  throw ParameterError(std::string(who) + ": no label matches " +
                       std::to_string(value));
}

}  // namespace

OutcomeDistribution::OutcomeDistribution(std::vector<Outcome> entries)
    : entries_(std::move(entries)) {
  if (entries_.empty()) throw ParameterError("OutcomeDistribution: empty");
  double sum = 0.0;
  double prev = entries_.front().label;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const auto& e = entries_[i];
    if (i > 0 && !(e.label > prev)) {
      throw ParameterError(
          "OutcomeDistribution: labels must be strictly ascending");
    }
    prev = e.label;
    if (e.prob < -1e-12 || !std::isfinite(e.prob)) {
      throw ParameterError("OutcomeDistribution: negative probability " +
                           std::to_string(e.prob));
    }
    sum += e.prob;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw NormalizationError(
        "OutcomeDistribution: probabilities sum to " + std::to_string(sum));
  }
}

double OutcomeDistribution::prob_of(double label, double tol) const {
  for (const auto& e : entries_) {
    if (std::abs(e.label - label) <= tol) return e.prob;
  }
  throw ParameterError("OutcomeDistribution: no label matches " +
                       std::to_string(label));
}

JointTable::JointTable(std::vector<double> x_labels,
                       std::vector<double> y_labels,
                       std::vector<std::vector<double>> probs)
    : x_labels_(std::move(x_labels)),
      y_labels_(std::move(y_labels)),
      probs_(std::move(probs)) {
  if (x_labels_.empty() || y_labels_.empty()) {
    throw ParameterError("JointTable: empty label set");
  }
  check_ascending(x_labels_, "JointTable");
  check_ascending(y_labels_, "JointTable");
  if (probs_.size() != x_labels_.size()) {
    throw DimensionError("JointTable: row count != x label count");
  }
  double sum = 0.0;
  for (auto& row : probs_) {
    if (row.size() != y_labels_.size()) {
      throw DimensionError("JointTable: column count != y label count");
    }
    for (double& p : row) {
      if (!std::isfinite(p) || p < -1e-12) {
        throw ParameterError("JointTable: invalid probability " +
                             std::to_string(p));
      }
      if (p < 0.0) p = 0.0;  // clamp eigensolver noise
      sum += p;
    }
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw NormalizationError("JointTable: probabilities sum to " +
                             std::to_string(sum));
  }
}

JointTable JointTable::transposed() const {
  std::vector<std::vector<double>> probs(
      y_labels_.size(), std::vector<double>(x_labels_.size(), 0.0));
  for (std::size_t i = 0; i < x_labels_.size(); ++i) {
    for (std::size_t j = 0; j < y_labels_.size(); ++j) {
      probs[j][i] = probs_[i][j];
    }
  }
  return JointTable(y_labels_, x_labels_, std::move(probs));
}

TupleDistribution::TupleDistribution(
    std::vector<std::vector<double>> axis_labels, std::vector<double> probs)
    : axis_labels_(std::move(axis_labels)), probs_(std::move(probs)) {
  if (axis_labels_.empty()) throw ParameterError("TupleDistribution: no axes");
  std::size_t expected = 1;
  for (const auto& labels : axis_labels_) {
    check_ascending(labels, "TupleDistribution");
    if (labels.empty()) throw ParameterError("TupleDistribution: empty axis");
    expected *= labels.size();
  }
  if (probs_.size() != expected) {
    throw DimensionError("TupleDistribution: flat size mismatch");
  }
  double sum = 0.0;
  for (double p : probs_) {
    if (!std::isfinite(p) || p < -1e-12) {
      throw ParameterError("TupleDistribution: invalid probability");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw NormalizationError("TupleDistribution: probabilities sum to " +
                             std::to_string(sum));
  }
}

std::size_t TupleDistribution::flat_index(
    const std::vector<std::size_t>& indices) const {
  if (indices.size() != axis_labels_.size()) {
    throw DimensionError("TupleDistribution: index arity mismatch");
  }
  std::size_t flat = 0;
  for (std::size_t ax = 0; ax < indices.size(); ++ax) {
    if (indices[ax] >= axis_labels_[ax].size()) {
      throw ParameterError("TupleDistribution: index out of range");
    }
    flat = flat * axis_labels_[ax].size() + indices[ax];
  }
  return flat;
}

double TupleDistribution::prob(const std::vector<std::size_t>& indices) const {
  return probs_[flat_index(indices)];
}

OutcomeDistribution TupleDistribution::marginal(std::size_t axis) const {
  if (axis >= axis_labels_.size()) {
    throw ParameterError("TupleDistribution: no such axis");
  }
  std::vector<double> sums(axis_labels_[axis].size(), 0.0);
  std::size_t stride = 1;
  for (std::size_t ax = axis + 1; ax < axis_labels_.size(); ++ax) {
    stride *= axis_labels_[ax].size();
  }
  for (std::size_t flat = 0; flat < probs_.size(); ++flat) {
    sums[(flat / stride) % axis_labels_[axis].size()] += probs_[flat];
  }
  std::vector<Outcome> entries;
  entries.reserve(sums.size());
  for (std::size_t i = 0; i < sums.size(); ++i) {
    entries.push_back({axis_labels_[axis][i], sums[i]});
  }
  return OutcomeDistribution(std::move(entries));
}

OutcomeDistribution bayes_prior(const JointTable& joint) {
  std::vector<Outcome> entries;
  entries.reserve(joint.x_labels().size());
  for (std::size_t i = 0; i < joint.x_labels().size(); ++i) {
    double sum = 0.0;
    for (double p : joint.probs()[i]) sum += p;
    entries.push_back({joint.x_labels()[i], sum});
  }
  return OutcomeDistribution(std::move(entries));
}

OutcomeDistribution bayes_posterior(const JointTable& joint, double y) {
  const std::size_t yi =
      label_index(joint.y_labels(), y, 1e-9, "bayes_posterior");
  double p_y = 0.0;
  for (std::size_t i = 0; i < joint.x_labels().size(); ++i) {
    p_y += joint.prob(i, yi);
  }
  if (p_y <= 1e-12) {
    throw ConditioningError("bayes_posterior: Pr{Y=y} = " +
                            std::to_string(p_y) + " is numerically zero");
  }
  std::vector<Outcome> entries;
  entries.reserve(joint.x_labels().size());
  for (std::size_t i = 0; i < joint.x_labels().size(); ++i) {
    entries.push_back({joint.x_labels()[i], joint.prob(i, yi) / p_y});
  }
  return OutcomeDistribution(std::move(entries));
}

OutcomeDistribution born_distribution(const Observable& a,
                                      const DensityOperator& rho) {
  if (a.dim() != rho.dim()) {
    throw DimensionError("born_distribution: observable and state differ in dim");
  }
  std::vector<Outcome> entries;
  entries.reserve(a.spectrum().size());
  for (const auto& line : a.spectrum()) {
    entries.push_back(
        {line.value, trace_product(line.projector, rho.matrix()).real()});
  }
  return OutcomeDistribution(std::move(entries));
}

DensityOperator projection_postulate_update(const Observable& a,
                                            double outcome,
                                            const DensityOperator& rho) {
  if (a.dim() != rho.dim()) {
    throw DimensionError(
        "projection_postulate_update: observable and state differ in dim");
  }
  const Matrix& e = a.projector(outcome);
  const double p = trace_product(e, rho.matrix()).real();
  if (p <= 1e-12) {
    throw ConditioningError(
        "projection_postulate_update: outcome probability " +
        std::to_string(p) + " is numerically zero");
  }
  return DensityOperator(e * rho.matrix() * e / p);
}

namespace {

// Depth-first enumeration of rule-4 outcome tuples. `sandwiched` carries the
// unnormalized E U ... rho ... U† E of the branches fixed so far; the final
// probability Tr[E rho E] is taken as Tr[E rho] (idempotence), which keeps
// the n = 1 case identical to born_distribution.
void successive_rec(const std::vector<Observable>& obs,
                    const std::vector<double>& times, const Hamiltonian& h,
                    const Matrix& sandwiched, double t_prev, std::size_t depth,
                    std::size_t flat_base, std::vector<double>& probs) {
  const double dt = times[depth] - t_prev;
  const Matrix evolved =
      dt == 0.0 ? sandwiched
                : conjugate_by(propagator(h.matrix(), dt), sandwiched);
  const auto& spectrum = obs[depth].spectrum();
  if (depth + 1 == obs.size()) {
    for (std::size_t i = 0; i < spectrum.size(); ++i) {
      probs[flat_base + i] =
          trace_product(spectrum[i].projector, evolved).real();
    }
    return;
  }
  std::size_t stride = 1;
  for (std::size_t ax = depth + 1; ax < obs.size(); ++ax) {
    stride *= obs[ax].spectrum().size();
  }
  for (std::size_t i = 0; i < spectrum.size(); ++i) {
    const Matrix& e = spectrum[i].projector;
    successive_rec(obs, times, h, e * evolved * e, times[depth], depth + 1,
                   flat_base + i * stride, probs);
  }
}

}  // namespace

TupleDistribution successive_joint(const std::vector<Observable>& observables,
                                   const std::vector<double>& times,
                                   const Hamiltonian& h,
                                   const DensityOperator& rho) {
  if (observables.empty()) {
    throw ParameterError("successive_joint: no observables");
  }
  if (times.size() != observables.size()) {
    throw ParameterError("successive_joint: need one time per observable");
  }
  if (times.front() < 0.0) {
    throw ParameterError("successive_joint: times must be >= 0");
  }
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1])) {
      throw ParameterError("successive_joint: times must be strictly increasing");
    }
  }
  std::vector<std::vector<double>> axis_labels;
  std::size_t total = 1;
  for (const auto& a : observables) {
    if (a.dim() != rho.dim()) {
      throw DimensionError("successive_joint: observable and state differ in dim");
    }
    axis_labels.push_back(a.outcomes());
    total *= a.spectrum().size();
  }
  std::vector<double> probs(total, 0.0);
  successive_rec(observables, times, h, rho.matrix(), 0.0, 0, 0, probs);
  return TupleDistribution(std::move(axis_labels), std::move(probs));
}

TupleDistribution commuting_joint(const std::vector<Observable>& observables,
                                  const DensityOperator& rho, double tol) {
  if (observables.empty()) {
    throw ParameterError("commuting_joint: no observables");
  }
  for (std::size_t i = 0; i < observables.size(); ++i) {
    if (observables[i].dim() != rho.dim()) {
      throw DimensionError("commuting_joint: observable and state differ in dim");
    }
    for (std::size_t j = i + 1; j < observables.size(); ++j) {
      if (!commutes(observables[i], observables[j], tol)) {
        throw CommutativityError("commuting_joint: observables " +
                                 std::to_string(i) + " and " +
                                 std::to_string(j) + " do not commute");
      }
    }
  }
  std::vector<std::vector<double>> axis_labels;
  std::size_t total = 1;
  for (const auto& a : observables) {
    axis_labels.push_back(a.outcomes());
    total *= a.spectrum().size();
  }
  std::vector<double> probs(total, 0.0);
  std::vector<std::size_t> indices(observables.size(), 0);
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rest = flat;
    for (std::size_t ax = observables.size(); ax-- > 0;) {
      indices[ax] = rest % axis_labels[ax].size();
      rest /= axis_labels[ax].size();
    }
    Matrix product = observables.front().spectrum()[indices[0]].projector;
    for (std::size_t ax = 1; ax < observables.size(); ++ax) {
      product *= observables[ax].spectrum()[indices[ax]].projector;
    }
    probs[flat] =
        (product * rho.matrix() * product.adjoint()).trace().real();
  }
  return TupleDistribution(std::move(axis_labels), std::move(probs));
}

namespace {

// Index of the label matching `value` within tol, or npos.
std::size_t find_label(const std::vector<double>& labels, double value,
                       double tol) {
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (std::abs(labels[i] - value) <= tol) return i;
  }
  return static_cast<std::size_t>(-1);
}

}  // namespace

double joint_max_abs_diff(const JointTable& a, const JointTable& b,
                          double label_tol) {
  const auto npos = static_cast<std::size_t>(-1);
  double worst = 0.0;
  for (std::size_t i = 0; i < a.x_labels().size(); ++i) {
    const std::size_t bi = find_label(b.x_labels(), a.x_labels()[i], label_tol);
    for (std::size_t j = 0; j < a.y_labels().size(); ++j) {
      const std::size_t bj =
          find_label(b.y_labels(), a.y_labels()[j], label_tol);
      const double other =
          (bi == npos || bj == npos) ? 0.0 : b.prob(bi, bj);
      worst = std::max(worst, std::abs(a.prob(i, j) - other));
    }
  }
  // Cells of b with no counterpart in a.
  for (std::size_t i = 0; i < b.x_labels().size(); ++i) {
    const std::size_t ai = find_label(a.x_labels(), b.x_labels()[i], label_tol);
    for (std::size_t j = 0; j < b.y_labels().size(); ++j) {
      const std::size_t aj =
          find_label(a.y_labels(), b.y_labels()[j], label_tol);
      if (ai == npos || aj == npos) {
        worst = std::max(worst, std::abs(b.prob(i, j)));
      }
    }
  }
  return worst;
}

double distribution_max_abs_diff(const OutcomeDistribution& a,
                                 const OutcomeDistribution& b,
                                 double label_tol) {
  double worst = 0.0;
  for (const auto& ea : a.entries()) {
    double other = 0.0;
    for (const auto& eb : b.entries()) {
      if (std::abs(ea.label - eb.label) <= label_tol) {
        other = eb.prob;
        break;
      }
    }
    worst = std::max(worst, std::abs(ea.prob - other));
  }
  for (const auto& eb : b.entries()) {
    bool matched = false;
    for (const auto& ea : a.entries()) {
      if (std::abs(ea.label - eb.label) <= label_tol) {
        matched = true;
        break;
      }
    }
    if (!matched) worst = std::max(worst, std::abs(eb.prob));
  }
  return worst;
}

}  // namespace qmeas
