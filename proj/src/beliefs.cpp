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

#include "somatic/beliefs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <set>

#include "somatic/errors.hpp"

namespace somatic {

namespace {

bool is_probability(double p) { return std::isfinite(p) && p >= 0.0 && p <= 1.0; }

}  // namespace

double normal_log_pdf(double x, double mean, double variance) {
  const double d = x - mean;
  return -0.5 * (d * d / variance + std::log(2.0 * std::numbers::pi * variance));
}

double normal_pdf(double x, double mean, double variance) {
  return std::exp(normal_log_pdf(x, mean, variance));
}

// ---------------------------------------------------------------------------
// CategoricalBelief

CategoricalBelief::CategoricalBelief(std::vector<Item> items) : items_(std::move(items)) {
  if (items_.empty()) throw ValidationError("categorical belief needs at least one label");
  std::set<std::string> seen;
  double total = 0.0;
  for (const auto& item : items_) {
    if (item.label.empty()) throw ValidationError("categorical belief has an empty label");
    if (!seen.insert(item.label).second) {
      throw ValidationError("duplicate label '" + item.label + "' in categorical belief");
    }
    if (!is_probability(item.probability)) {
      throw ValidationError("probability of '" + item.label + "' outside [0, 1]");
    }
    total += item.probability;
  }
  if (std::abs(total - 1.0) > kNormalizationTolerance) {
    throw ValidationError("categorical belief sums to " + std::to_string(total) + ", not 1");
  }
}

CategoricalBelief CategoricalBelief::from_weights(std::vector<Item> weights) {
  double total = 0.0;
  for (const auto& w : weights) {
    if (!std::isfinite(w.probability) || w.probability < 0.0) {
      throw ValidationError("weight of '" + w.label + "' is negative or not finite");
    }
    total += w.probability;
  }
  if (!(total > 0.0) || !std::isfinite(total)) {
    throw NumericalError("cannot normalize: total mass is zero");
  }
  for (auto& w : weights) w.probability /= total;
  return CategoricalBelief(std::move(weights));
}

CategoricalBelief CategoricalBelief::from_log_weights(const std::vector<std::string>& labels,
                                                      const std::vector<double>& log_weights) {
  if (labels.size() != log_weights.size()) {
    throw ValidationError("label / log-weight count mismatch");
  }
  const double top = log_weights.empty()
                         ? -std::numeric_limits<double>::infinity()
                         : *std::max_element(log_weights.begin(), log_weights.end());
  if (!std::isfinite(top)) {
    throw NumericalError("cannot normalize: all unnormalized masses are zero or non-finite");
  }
  std::vector<Item> items;
  items.reserve(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    items.push_back({labels[i], std::exp(log_weights[i] - top)});
  }
  return from_weights(std::move(items));
}

CategoricalBelief CategoricalBelief::uniform(const std::vector<std::string>& labels) {
  std::vector<Item> items;
  for (const auto& l : labels) items.push_back({l, 1.0});
  return from_weights(std::move(items));
}

std::vector<std::string> CategoricalBelief::labels() const {
  std::vector<std::string> out;
  out.reserve(items_.size());
  for (const auto& item : items_) out.push_back(item.label);
  return out;
}

bool CategoricalBelief::contains(const std::string& label) const {
  return std::any_of(items_.begin(), items_.end(),
                     [&](const Item& i) { return i.label == label; });
}

double CategoricalBelief::probability(const std::string& label) const {
  for (const auto& item : items_) {
    if (item.label == label) return item.probability;
  }
  throw ValidationError("label '" + label + "' not in belief");
}

// ---------------------------------------------------------------------------
// GaussianBelief

GaussianBelief::GaussianBelief(double mean, double sd) : mean_(mean), sd_(sd) {
  if (!std::isfinite(mean)) throw ValidationError("Gaussian mean must be finite");
  if (!(sd > 0.0) || !std::isfinite(sd)) {
    throw ValidationError("Gaussian sd must be positive and finite");
  }
}

// ---------------------------------------------------------------------------
// GaussianMixture

GaussianMixture::GaussianMixture(std::vector<MixtureComponent> components)
    : components_(std::move(components)) {
  if (components_.empty()) throw ValidationError("mixture needs at least one component");
  double total = 0.0;
  for (const auto& c : components_) {
    if (!is_probability(c.weight)) throw ValidationError("mixture weight outside [0, 1]");
    if (!std::isfinite(c.mean)) throw ValidationError("mixture component mean not finite");
    if (!(c.sd > 0.0) || !std::isfinite(c.sd)) {
      throw ValidationError("mixture component sd must be positive and finite");
    }
    total += c.weight;
  }
  if (std::abs(total - 1.0) > kNormalizationTolerance) {
    throw ValidationError("mixture weights sum to " + std::to_string(total) + ", not 1");
  }
}

GaussianMixture::GaussianMixture(const GaussianBelief& single)
    : GaussianMixture(std::vector<MixtureComponent>{{1.0, single.mean(), single.sd()}}) {}

double GaussianMixture::density(double y) const {
  double total = 0.0;
  for (const auto& c : components_) {
    if (c.weight > 0.0) total += c.weight * normal_pdf(y, c.mean, c.sd * c.sd);
  }
  return total;
}

double GaussianMixture::mean() const {
  double m = 0.0;
  for (const auto& c : components_) m += c.weight * c.mean;
  return m;
}

double GaussianMixture::variance() const {
  const double m = mean();
  double v = 0.0;
  for (const auto& c : components_) {
    const double d = c.mean - m;
    v += c.weight * (c.sd * c.sd + d * d);
  }
  return v;
}

GaussianMixture GaussianMixture::moment_matched() const {
  return GaussianMixture(std::vector<MixtureComponent>{{1.0, mean(), std::sqrt(variance())}});
}

GaussianMixture GaussianMixture::pruned(double min_weight, std::size_t max_components) const {
  std::vector<std::size_t> order(components_.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return components_[a].weight > components_[b].weight;
  });

  std::vector<std::size_t> keep;
  for (std::size_t idx : order) {
    if (keep.size() >= std::max<std::size_t>(max_components, 1)) break;
    // The heaviest component always survives.
    if (!keep.empty() && components_[idx].weight < min_weight) break;
    keep.push_back(idx);
  }
  std::sort(keep.begin(), keep.end());

  std::vector<MixtureComponent> out;
  double total = 0.0;
  for (std::size_t idx : keep) total += components_[idx].weight;
  for (std::size_t idx : keep) {
    auto c = components_[idx];
    c.weight /= total;
    out.push_back(c);
  }
  return GaussianMixture(std::move(out));
}

// ---------------------------------------------------------------------------
// Grids

std::vector<GridPoint> density_grid(const GaussianMixture& mixture, double y_min, double y_max,
                                    std::size_t n) {
  if (!(y_min < y_max) || !std::isfinite(y_min) || !std::isfinite(y_max)) {
    throw ValidationError("density grid needs y_min < y_max");
  }
  if (n < 2) throw ValidationError("density grid needs at least two points");
  std::vector<GridPoint> grid;
  grid.reserve(n);
  const double step = (y_max - y_min) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    const double y = (i + 1 == n) ? y_max : y_min + step * static_cast<double>(i);
    grid.push_back({y, mixture.density(y)});
  }
  return grid;
}

double trapezoid_mass(const std::vector<GridPoint>& grid) {
  double mass = 0.0;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    mass += 0.5 * (grid[i].density + grid[i - 1].density) * (grid[i].y - grid[i - 1].y);
  }
  return mass;
}

std::vector<double> density_modes(const GaussianMixture& mixture, double y_min, double y_max,
                                  std::size_t n) {
  const auto grid = density_grid(mixture, y_min, y_max, n);
  std::vector<double> modes;
  for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
    if (!(grid[i].density > grid[i - 1].density && grid[i].density >= grid[i + 1].density)) {
      continue;
    }
    // Golden-section search on the bracketing cell pair.
    constexpr double kInvPhi = 0.6180339887498949;
    double lo = grid[i - 1].y;
    double hi = grid[i + 1].y;
    double x1 = hi - kInvPhi * (hi - lo);
    double x2 = lo + kInvPhi * (hi - lo);
    double f1 = mixture.density(x1);
    double f2 = mixture.density(x2);
    while (hi - lo > 1e-9) {
      if (f1 < f2) {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + kInvPhi * (hi - lo);
        f2 = mixture.density(x2);
      } else {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - kInvPhi * (hi - lo);
        f1 = mixture.density(x1);
      }
    }
    modes.push_back(0.5 * (lo + hi));
  }
  return modes;
}

}  // namespace somatic
