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

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "somatic/beliefs.hpp"
#include "somatic/somatic_transform.hpp"

namespace somatic {

/// Likelihoods P(observation | label) over opaque observation symbols.
class ObservationModel {
 public:
  struct Entry {
    std::string observation;
    std::string label;
    double likelihood = 0.0;
  };

  /// Throws ValidationError for likelihoods outside [0, 1], duplicate
  /// (observation, label) pairs, or a label with no positive likelihood.
  explicit ObservationModel(std::vector<Entry> entries);

  bool knows(const std::string& observation) const;
  /// Throws ValidationError for an unknown observation or label.
  double likelihood(const std::string& observation, const std::string& label) const;

 private:
  std::vector<Entry> entries_;
};

/// P'(x) ∝ P(x) P(obs | x). Throws NumericalError if the observation is
/// impossible under every label with prior mass.
CategoricalBelief bayes_obs_update(const CategoricalBelief& belief, const ObservationModel& model,
                                   const std::string& observation);

enum class Collapse { exact, moment_match };

struct MixtureLimits {
  double prune_weight = 1e-8;
  std::size_t max_components = 64;
};

struct InferenceState {
  CategoricalBelief belief_x;
  GaussianMixture belief_y;
  std::size_t step = 0;

  static InferenceState initial(CategoricalBelief prior_x, const GaussianBelief& prior_y) {
    return {std::move(prior_x), GaussianMixture(prior_y), 0};
  }
};

/// One observation followed by the somatic coupling. The observation updates
/// the denotative belief; the coupling then crosses every connotative
/// component with every label, and both marginals become the next priors.
/// `exact` keeps the full mixture (pruned to `limits`); `moment_match`
/// collapses it to one Gaussian.
InferenceState conformity_step(const InferenceState& state, const SomaticPotential& potential,
                               const ObservationModel& model, const std::string& observation,
                               Collapse collapse, const MixtureLimits& limits = {});

/// Applies `observations` in order; returns the initial state followed by
/// the state after each observation.
std::vector<InferenceState> run_chain(const InferenceState& initial,
                                      const SomaticPotential& potential,
                                      const ObservationModel& model,
                                      std::span<const std::string> observations, Collapse collapse,
                                      const MixtureLimits& limits = {});

struct SigmaType {
  double weight = 0.0;
  double sd = 1.0;
};

/// Denotative posterior of `target` averaged over a discrete set of prior
/// connotative spreads: sum_j weight_j P'(target | sd_y = sd_j).
double sigma_mixture_posterior(std::span<const SigmaType> types, const CategoricalBelief& prior_x,
                               double mu_y, const SomaticPotential& potential,
                               const std::string& target);

// ---------------------------------------------------------------------------
// Conformity model

/// Two-answer conformity setting. Each observation is a peer picking the
/// other answer; it is more likely when the participant's own answer is
/// wrong. Anchors are symmetric: M(right) = +gap, M(wrong) = -gap.
struct ConformityModel {
  static inline const std::string kRight = "right";
  static inline const std::string kWrong = "wrong";
  static inline const std::string kPeerPickedOther = "peer_picked_other";

  double prior_wrong = 0.1;
  double mu_y = 2.0;
  double sigma_y = 1.3;
  double gamma = 0.3;
  double p_obs_given_wrong = 0.85;
  double p_obs_given_right = 0.15;
  double anchor_gap = 0.5;
  Collapse collapse = Collapse::exact;
  MixtureLimits limits{};

  /// Configuration frozen from calibrate_conformity() with default targets
  /// and grid (see tests/test_sequential.cpp, which re-derives it).
  static ConformityModel calibrated();

  SomaticPotential potential() const;
  ObservationModel observation_model() const;
  InferenceState initial_state() const;

  /// States for steps 0..steps.
  std::vector<InferenceState> run(std::size_t steps) const;
};

struct CalibrationTargets {
  std::size_t first_step = 5;
  double first_target = 0.67;
  std::size_t second_step = 10;
  double second_target = 0.995;
};

/// Anchor-gap search: a coarse pass over [gap_min, gap_max] for both
/// collapse strategies, then a fine pass of half-width `refine_halfwidth`
/// around the best coarse point (clipped to the coarse range).
struct CalibrationGrid {
  double gap_min = 0.5;
  double gap_max = 3.5;
  double gap_step = 0.05;
  double refine_halfwidth = 0.05;
  double refine_step = 0.0005;
};

struct CalibrationPoint {
  std::string stage;
  Collapse collapse = Collapse::exact;
  double gap = 0.0;
  double first_value = 0.0;
  double second_value = 0.0;
  double squared_error = 0.0;
};

struct CalibrationReport {
  CalibrationTargets targets;
  std::vector<CalibrationPoint> points;
  CalibrationPoint best;
};

/// Every field of `base` except anchor_gap and collapse is held fixed.
CalibrationReport calibrate_conformity(const ConformityModel& base,
                                       const CalibrationTargets& targets = {},
                                       const CalibrationGrid& grid = {});

const char* to_string(Collapse collapse);

}  // namespace somatic
