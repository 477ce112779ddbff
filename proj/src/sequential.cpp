// Copyright 2026 The Somatic Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "somatic/sequential.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "somatic/errors.hpp"

namespace somatic {

ObservationModel::ObservationModel(std::vector<Entry> entries) : entries_(std::move(entries)) {
  std::set<std::pair<std::string, std::string>> seen;
  std::map<std::string, bool> label_supported;
  for (const auto& e : entries_) {
    if (!std::isfinite(e.likelihood) || e.likelihood < 0.0 || e.likelihood > 1.0) {
      throw ValidationError("likelihood P(" + e.observation + " | " + e.label +
                            ") outside [0, 1]");
    }
    if (!seen.insert({e.observation, e.label}).second) {
      throw ValidationError("duplicate likelihood P(" + e.observation + " | " + e.label + ")");
    }
    label_supported[e.label] = label_supported[e.label] || e.likelihood > 0.0;
  }
  for (const auto& [label, ok] : label_supported) {
    if (!ok) throw ValidationError("label '" + label + "' has no observation with positive likelihood");
  }
}

bool ObservationModel::knows(const std::string& observation) const {
  for (const auto& e : entries_) {
    if (e.observation == observation) return true;
  }
  return false;
}

double ObservationModel::likelihood(const std::string& observation,
                                    const std::string& label) const {
  bool known = false;
  for (const auto& e : entries_) {
    if (e.observation != observation) continue;
    known = true;
    if (e.label == label) return e.likelihood;
  }
  if (!known) throw ValidationError("unknown observation '" + observation + "'");
  throw ValidationError("no likelihood for label '" + label + "' under '" + observation + "'");
}

CategoricalBelief bayes_obs_update(const CategoricalBelief& belief, const ObservationModel& model,
                                   const std::string& observation) {
  if (!model.knows(observation)) {
    throw ValidationError("unknown observation '" + observation + "'");
  }
  std::vector<CategoricalBelief::Item> weights;
  weights.reserve(belief.size());
  for (const auto& item : belief.items()) {
    weights.push_back({item.label, item.probability * model.likelihood(observation, item.label)});
  }
  try {
    return CategoricalBelief::from_weights(std::move(weights));
  } catch (const NumericalError&) {
    throw NumericalError("observation '" + observation + "' is impossible under the current belief");
  }
}

InferenceState conformity_step(const InferenceState& state, const SomaticPotential& potential,
                               const ObservationModel& model, const std::string& observation,
                               Collapse collapse, const MixtureLimits& limits) {
  const auto observed = bayes_obs_update(state.belief_x, model, observation);
  auto joint = somatic_posterior(observed, state.belief_y, potential);
  auto next_y = collapse == Collapse::exact
                    ? joint.y.pruned(limits.prune_weight, limits.max_components)
                    : joint.y.moment_matched();
  return {std::move(joint.x), std::move(next_y), state.step + 1};
}

std::vector<InferenceState> run_chain(const InferenceState& initial,
                                      const SomaticPotential& potential,
                                      const ObservationModel& model,
                                      std::span<const std::string> observations, Collapse collapse,
                                      const MixtureLimits& limits) {
  std::vector<InferenceState> states{initial};
  states.reserve(observations.size() + 1);
  for (const auto& obs : observations) {
    states.push_back(conformity_step(states.back(), potential, model, obs, collapse, limits));
  }
  return states;
}

double sigma_mixture_posterior(std::span<const SigmaType> types, const CategoricalBelief& prior_x,
                               double mu_y, const SomaticPotential& potential,
                               const std::string& target) {
  if (types.empty()) throw ValidationError("sigma mixture needs at least one type");
  double total_weight = 0.0;
  for (const auto& t : types) {
    if (!std::isfinite(t.weight) || t.weight < 0.0) {
      throw ValidationError("sigma type weight must be nonnegative");
    }
    total_weight += t.weight;
  }
  if (std::abs(total_weight - 1.0) > kNormalizationTolerance) {
    throw ValidationError("sigma type weights must sum to 1");
  }
  if (!prior_x.contains(target)) throw ValidationError("unknown target label '" + target + "'");

  double result = 0.0;
  for (const auto& t : types) {
    result += t.weight * posterior_x(prior_x, GaussianBelief(mu_y, t.sd), potential).probability(target);
  }
  return result;
}

// ---------------------------------------------------------------------------
// ConformityModel

ConformityModel ConformityModel::calibrated() {
  ConformityModel m;
  m.anchor_gap = 0.509;
  m.collapse = Collapse::moment_match;
  return m;
}

SomaticPotential ConformityModel::potential() const {
  return SomaticPotential({{kRight, anchor_gap}, {kWrong, -anchor_gap}}, gamma);
}

ObservationModel ConformityModel::observation_model() const {
  return ObservationModel({{kPeerPickedOther, kRight, p_obs_given_right},
                           {kPeerPickedOther, kWrong, p_obs_given_wrong}});
}

InferenceState ConformityModel::initial_state() const {
  return InferenceState::initial(
      CategoricalBelief({{kRight, 1.0 - prior_wrong}, {kWrong, prior_wrong}}),
      GaussianBelief(mu_y, sigma_y));
}

std::vector<InferenceState> ConformityModel::run(std::size_t steps) const {
  const std::vector<std::string> observations(steps, kPeerPickedOther);
  return run_chain(initial_state(), potential(), observation_model(), observations, collapse,
                   limits);
}

namespace {

std::vector<double> grid_values(double lo, double hi, double step) {
  std::vector<double> out;
  const auto n = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
  for (long i = 0; i <= n; ++i) out.push_back(lo + step * static_cast<double>(i));
  return out;
}

CalibrationPoint evaluate(ConformityModel model, const CalibrationTargets& targets,
                          const std::string& stage, Collapse collapse, double gap) {
  model.collapse = collapse;
  model.anchor_gap = gap;
  const auto states = model.run(std::max(targets.first_step, targets.second_step));
  CalibrationPoint p;
  p.stage = stage;
  p.collapse = collapse;
  p.gap = gap;
  p.first_value = states[targets.first_step].belief_x.probability(ConformityModel::kWrong);
  p.second_value = states[targets.second_step].belief_x.probability(ConformityModel::kWrong);
  const double d1 = p.first_value - targets.first_target;
  const double d2 = p.second_value - targets.second_target;
  p.squared_error = d1 * d1 + d2 * d2;
  return p;
}

}  // namespace

CalibrationReport calibrate_conformity(const ConformityModel& base,
                                       const CalibrationTargets& targets,
                                       const CalibrationGrid& grid) {
  if (!(grid.gap_step > 0.0) || !(grid.refine_step > 0.0) || !(grid.gap_min <= grid.gap_max)) {
    throw ValidationError("invalid calibration grid");
  }
  CalibrationReport report;
  report.targets = targets;

  const Collapse strategies[] = {Collapse::exact, Collapse::moment_match};
  bool have_best = false;
  auto consider = [&](const CalibrationPoint& p) {
    report.points.push_back(p);
    if (!have_best || p.squared_error < report.best.squared_error) {
      report.best = p;
      have_best = true;
    }
  };

  for (Collapse c : strategies) {
    for (double gap : grid_values(grid.gap_min, grid.gap_max, grid.gap_step)) {
      consider(evaluate(base, targets, "coarse", c, gap));
    }
  }

  const double centre = report.best.gap;
  const double lo = std::max(grid.gap_min, centre - grid.refine_halfwidth);
  const double hi = std::min(grid.gap_max, centre + grid.refine_halfwidth);
  for (Collapse c : strategies) {
    for (double gap : grid_values(lo, hi, grid.refine_step)) {
      consider(evaluate(base, targets, "refine", c, gap));
    }
  }
  return report;
}

const char* to_string(Collapse collapse) {
  return collapse == Collapse::exact ? "exact" : "moment";
}

}  // namespace somatic
