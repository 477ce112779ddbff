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

#include "somatic/somatic_transform.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "somatic/errors.hpp"

namespace somatic {

SomaticPotential::SomaticPotential(std::vector<std::pair<std::string, double>> anchors,
                                   double gamma)
    : anchors_(std::move(anchors)), gamma_(gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw ValidationError("gamma must be positive and finite");
  }
  std::set<std::string> seen;
  for (const auto& [label, value] : anchors_) {
    if (!seen.insert(label).second) throw ValidationError("duplicate anchor '" + label + "'");
    if (!std::isfinite(value)) throw ValidationError("anchor for '" + label + "' not finite");
  }
}

bool SomaticPotential::has_anchor(const std::string& label) const {
  return std::any_of(anchors_.begin(), anchors_.end(),
                     [&](const auto& a) { return a.first == label; });
}

double SomaticPotential::anchor(const std::string& label) const {
  for (const auto& [l, v] : anchors_) {
    if (l == label) return v;
  }
  throw MissingAnchorError(label);
}

double log_kernel_evidence(const SomaticPotential& potential, const std::string& label,
                           const GaussianBelief& prior_y) {
  const double g = potential.gamma();
  return normal_log_pdf(prior_y.mean(), potential.anchor(label), prior_y.variance() + g * g);
}

double kernel_evidence(const SomaticPotential& potential, const std::string& label,
                       const GaussianBelief& prior_y) {
  return std::exp(log_kernel_evidence(potential, label, prior_y));
}

JointPosterior somatic_posterior(const CategoricalBelief& prior_x, const GaussianMixture& prior_y,
                                 const SomaticPotential& potential) {
  const double g2 = potential.gamma() * potential.gamma();
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();

  struct Cell {
    std::size_t label;
    double log_weight;
    double mean;
    double sd;
  };
  std::vector<Cell> cells;
  const auto& items = prior_x.items();

  for (std::size_t k = 0; k < items.size(); ++k) {
    if (items[k].probability <= 0.0) continue;
    const double anchor = potential.anchor(items[k].label);
    const double log_px = std::log(items[k].probability);
    for (const auto& c : prior_y.components()) {
      if (c.weight <= 0.0) continue;
      const double s2 = c.sd * c.sd;
      const double total_var = s2 + g2;
      cells.push_back({k, log_px + std::log(c.weight) + normal_log_pdf(c.mean, anchor, total_var),
                       (c.mean * g2 + anchor * s2) / total_var, std::sqrt(s2 * g2 / total_var)});
    }
  }

  double top = kNegInf;
  for (const auto& cell : cells) top = std::max(top, cell.log_weight);
  if (!std::isfinite(top)) {
    throw NumericalError("somatic posterior has zero total mass");
  }

  std::vector<double> label_mass(items.size(), 0.0);
  double total = 0.0;
  for (const auto& cell : cells) {
    const double w = std::exp(cell.log_weight - top);
    label_mass[cell.label] += w;
    total += w;
  }

  std::vector<CategoricalBelief::Item> x_items;
  x_items.reserve(items.size());
  for (std::size_t k = 0; k < items.size(); ++k) {
    x_items.push_back({items[k].label, label_mass[k] / total});
  }

  std::vector<MixtureComponent> components;
  std::vector<std::string> component_labels;
  components.reserve(cells.size());
  component_labels.reserve(cells.size());
  for (const auto& cell : cells) {
    components.push_back({std::exp(cell.log_weight - top) / total, cell.mean, cell.sd});
    component_labels.push_back(items[cell.label].label);
  }

  return {CategoricalBelief(std::move(x_items)), GaussianMixture(std::move(components)),
          std::move(component_labels)};
}

CategoricalBelief posterior_x(const CategoricalBelief& prior_x, const GaussianBelief& prior_y,
                              const SomaticPotential& potential) {
  return somatic_posterior(prior_x, GaussianMixture(prior_y), potential).x;
}

GaussianMixture posterior_y(const CategoricalBelief& prior_x, const GaussianBelief& prior_y,
                            const SomaticPotential& potential) {
  return somatic_posterior(prior_x, GaussianMixture(prior_y), potential).y;
}

double entropy(const CategoricalBelief& belief) {
  double s = 0.0;
  for (const auto& item : belief.items()) {
    if (item.probability > 0.0) s -= item.probability * std::log(item.probability);
  }
  return s;
}

std::string act_limit_label(double point_y, const SomaticPotential& potential) {
  if (potential.anchors().empty()) throw NoCandidatesError("somatic potential has no anchors");
  const std::pair<std::string, double>* best = nullptr;
  double best_distance = std::numeric_limits<double>::infinity();
  for (const auto& anchor : potential.anchors()) {
    const double d = std::abs(point_y - anchor.second);
    if (best == nullptr || d < best_distance || (d == best_distance && anchor.first < best->first)) {
      best = &anchor;
      best_distance = d;
    }
  }
  return best->first;
}

}  // namespace somatic
