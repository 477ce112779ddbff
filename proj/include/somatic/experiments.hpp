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
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "somatic/beliefs.hpp"
#include "somatic/sequential.hpp"

namespace somatic {

/// One row of experiment output: named parameter bindings, named outputs and
/// an optional sampled connotative posterior.
struct ExperimentRecord {
  std::string experiment;
  std::string case_label;
  std::vector<std::pair<std::string, double>> parameters;
  std::vector<std::pair<std::string, double>> outputs;
  std::optional<std::vector<GridPoint>> grid;

  /// Throws ValidationError when the name is absent.
  double parameter(const std::string& name) const;
  double output(const std::string& name) const;
  bool has_output(const std::string& name) const;
};

/// Grid used for every emitted connotative posterior.
struct GridSpec {
  double y_min = -5.0;
  double y_max = 6.0;
  std::size_t points = 1101;
};

struct UySweepConfig {
  std::vector<double> mu_values{-1.0, 0.0, 1.0, 2.0, 2.2, 3.0, 4.0, 5.0};
  double p_nurse = 0.7;
  double sigma_y = 2.0;
  double gamma = 0.3;
  double anchor_nurse = 1.9;
  double anchor_doctor = 2.95;
  GridSpec grid{};
};

struct GammaSweepConfig {
  std::vector<double> gamma_values{0.05, 0.1, 0.2, 0.3, 0.5, 1.0, 2.0, 3.0, 5.0};
  double mu_y = 3.0;
  double p_nurse = 0.7;
  double sigma_y = 2.0;
  double anchor_nurse = 1.9;
  double anchor_doctor = 2.95;
  GridSpec grid{};
};

struct PxSweepConfig {
  std::vector<double> p_values{0.1, 0.5, 0.9};
  double mu_y = 3.0;
  double sigma_y = 3.5;
  double gamma = 0.2;
  double anchor_nurse = 1.9;
  double anchor_doctor = 2.95;
  GridSpec grid{};
};

struct DissonanceConfig {
  std::vector<double> sigma_values{1.23, 2.0, 0.5};
  double mu_y = 2.0;
  double gamma = 0.3;
  double prior_bad = 0.8;
  double anchor_good = 1.32;
  double anchor_bad = -0.67;
  GridSpec grid{};
};

struct ConformityConfig {
  std::size_t steps = 10;
  ConformityModel model = ConformityModel::calibrated();
  GridSpec grid{};
};

/// Emotion E values of the four voice x salience conditions, taken from ACT
/// simulations (characteristic emotions of student / anxious student, and
/// the emotions felt after "compromise with").
struct FairnessConfig {
  double voice_salient = 2.31;
  double voice_nonsalient = 1.94;
  double novoice_salient = -0.84;
  double novoice_nonsalient = 1.5;
};

/// Mean evaluation of "sad" (-1.88) and "disappointed" (-1.71).
inline constexpr double kSadnessReferenceE = (-1.88 + -1.71) / 2.0;

/// Affine map of the distance to kSadnessReferenceE onto the 1..7 rating
/// scale: 1 + 6 (4.3 - |e - ref|) / 8.6. Throws ValidationError outside
/// [-4.3, 4.3].
double sadness_rating(double emotion_e);

std::vector<ExperimentRecord> run_uy_sweep(const UySweepConfig& config = {});
std::vector<ExperimentRecord> run_gamma_sweep(const GammaSweepConfig& config = {});
std::vector<ExperimentRecord> run_px_sweep(const PxSweepConfig& config = {});
/// One row per sigma value plus a final "mixture" row averaging P'(bad)
/// uniformly over the sigma values.
std::vector<ExperimentRecord> run_dissonance(const DissonanceConfig& config = {});
/// Rows for steps 0..steps.
std::vector<ExperimentRecord> run_conformity(const ConformityConfig& config = {});
std::vector<ExperimentRecord> run_fairness(const FairnessConfig& config = {});

// ---------------------------------------------------------------------------
// Named experiments with string overrides

const std::vector<std::string>& experiment_names();

/// Parameter names accepted by `run_named_experiment` for `name`.
std::vector<std::string> experiment_parameters(const std::string& name);

struct ExperimentOptions {
  /// key=value pairs; list-valued parameters take comma-separated values.
  std::vector<std::pair<std::string, std::string>> overrides;
  /// Conformity only; replaces the calibrated collapse strategy.
  std::optional<Collapse> collapse;
};

/// Default conformity configuration with `options` applied.
ConformityConfig configure_conformity(const ExperimentOptions& options);

/// Throws ValidationError for an unknown experiment, an unknown parameter or
/// an unparsable value.
std::vector<ExperimentRecord> run_named_experiment(const std::string& name,
                                                   const ExperimentOptions& options = {});

}  // namespace somatic
