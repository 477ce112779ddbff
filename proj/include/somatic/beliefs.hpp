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
#include <string>
#include <vector>

namespace somatic {

/// Tolerance on the sum of probabilities / mixture weights.
inline constexpr double kNormalizationTolerance = 1e-9;

/// Distribution over a finite set of denotative labels. Probabilities lie in
/// [0, 1], sum to one within kNormalizationTolerance and labels are unique.
class CategoricalBelief {
 public:
  struct Item {
    std::string label;
    double probability = 0.0;

    friend bool operator==(const Item&, const Item&) = default;
  };

  /// Validates; throws ValidationError if the invariants do not hold.
  explicit CategoricalBelief(std::vector<Item> items);

  /// Normalizes nonnegative weights. Throws NumericalError if the total is
  /// zero or not finite.
  static CategoricalBelief from_weights(std::vector<Item> weights);

  /// Normalizes log-weights by max subtraction. -inf entries get probability 0.
  static CategoricalBelief from_log_weights(const std::vector<std::string>& labels,
                                            const std::vector<double>& log_weights);

  static CategoricalBelief uniform(const std::vector<std::string>& labels);

  const std::vector<Item>& items() const noexcept { return items_; }
  std::size_t size() const noexcept { return items_.size(); }
  std::vector<std::string> labels() const;

  bool contains(const std::string& label) const;
  /// Throws ValidationError for an unknown label.
  double probability(const std::string& label) const;

  friend bool operator==(const CategoricalBelief&, const CategoricalBelief&) = default;

 private:
  std::vector<Item> items_;
};

/// One-dimensional Gaussian belief over a connotative coordinate; sd > 0.
class GaussianBelief {
 public:
  GaussianBelief(double mean, double sd);

  double mean() const noexcept { return mean_; }
  double sd() const noexcept { return sd_; }
  double variance() const noexcept { return sd_ * sd_; }

 private:
  double mean_;
  double sd_;
};

struct MixtureComponent {
  double weight = 0.0;
  double mean = 0.0;
  double sd = 1.0;

  friend bool operator==(const MixtureComponent&, const MixtureComponent&) = default;
};

struct GridPoint {
  double y = 0.0;
  double density = 0.0;

  friend bool operator==(const GridPoint&, const GridPoint&) = default;
};

/// Weighted sum of Gaussians. Weights in [0, 1] summing to one, sds > 0.
class GaussianMixture {
 public:
  explicit GaussianMixture(std::vector<MixtureComponent> components);
  explicit GaussianMixture(const GaussianBelief& single);

  const std::vector<MixtureComponent>& components() const noexcept { return components_; }
  std::size_t size() const noexcept { return components_.size(); }

  double density(double y) const;
  double mean() const;
  double variance() const;

  /// Single Gaussian with the same mean and variance.
  GaussianMixture moment_matched() const;

  /// Drops components lighter than `min_weight`, keeps at most
  /// `max_components` of the heaviest and renormalizes. Order is preserved
  /// among survivors.
  GaussianMixture pruned(double min_weight, std::size_t max_components) const;

 private:
  std::vector<MixtureComponent> components_;
};

/// `n` evenly spaced samples of the mixture density on [y_min, y_max].
/// Throws ValidationError unless y_min < y_max and n >= 2.
std::vector<GridPoint> density_grid(const GaussianMixture& mixture, double y_min, double y_max,
                                    std::size_t n);

/// Trapezoidal mass of a sampled density.
double trapezoid_mass(const std::vector<GridPoint>& grid);

/// Local maxima of the mixture density on [y_min, y_max]: located on an
/// n-point grid, then refined by golden-section search to ~1e-9.
std::vector<double> density_modes(const GaussianMixture& mixture, double y_min, double y_max,
                                  std::size_t n);

/// Gaussian density and its log.
double normal_pdf(double x, double mean, double variance);
double normal_log_pdf(double x, double mean, double variance);

}  // namespace somatic
