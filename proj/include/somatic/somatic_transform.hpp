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

#include <string>
#include <utility>
#include <vector>

#include "somatic/beliefs.hpp"

namespace somatic {

/// Coupling between denotative labels and one connotative dimension.
///
/// Each label x carries an anchor M(x), the culturally shared sentiment for
/// that label. The coupling kernel is the normalized Gaussian with mean M(x)
/// and standard deviation gamma:
///
///     K(y; M(x), gamma) = N(y; M(x), gamma^2)
///
/// Small gamma binds labels tightly to their anchors; large gamma decouples
/// the two beliefs. Normalizing constants of the joint are never needed
/// because every posterior is renormalized.
class SomaticPotential {
 public:
  /// Throws ValidationError on duplicate labels, non-finite anchors or
  /// gamma <= 0.
  SomaticPotential(std::vector<std::pair<std::string, double>> anchors, double gamma);

  double gamma() const noexcept { return gamma_; }
  const std::vector<std::pair<std::string, double>>& anchors() const noexcept { return anchors_; }

  bool has_anchor(const std::string& label) const;
  /// Throws MissingAnchorError.
  double anchor(const std::string& label) const;

  SomaticPotential with_gamma(double gamma) const { return {anchors_, gamma}; }

 private:
  std::vector<std::pair<std::string, double>> anchors_;
  double gamma_;
};

/// Expected kernel under the connotative prior,
///     integral of P(y) K(y; M(label), gamma) dy = N(mu_y; M(label), sd_y^2 + gamma^2).
double kernel_evidence(const SomaticPotential& potential, const std::string& label,
                       const GaussianBelief& prior_y);
double log_kernel_evidence(const SomaticPotential& potential, const std::string& label,
                           const GaussianBelief& prior_y);

/// Joint result of applying the coupling to a categorical prior and a
/// (possibly multi-component) Gaussian mixture prior.
struct JointPosterior {
  CategoricalBelief x;
  GaussianMixture y;
  /// Label that produced each component of `y`.
  std::vector<std::string> component_labels;
};

/// Crosses every prior-y component j with every label k. The pair gets
///     weight  ∝ P(x_k) w_j N(m_j; M_k, s_j^2 + gamma^2)
///     mean    = (m_j gamma^2 + M_k s_j^2) / (s_j^2 + gamma^2)
///     var     = s_j^2 gamma^2 / (s_j^2 + gamma^2)
/// Components are ordered label-major (label order of prior_x, then prior-y
/// component order). Labels with zero prior mass need no anchor and produce
/// no component. Weights are computed in log space.
JointPosterior somatic_posterior(const CategoricalBelief& prior_x, const GaussianMixture& prior_y,
                                 const SomaticPotential& potential);

/// Denotative posterior P'(x) ∝ P(x) kernel_evidence(x). Label order is kept.
CategoricalBelief posterior_x(const CategoricalBelief& prior_x, const GaussianBelief& prior_y,
                              const SomaticPotential& potential);

/// Connotative posterior: one Gaussian per label with positive prior mass.
GaussianMixture posterior_y(const CategoricalBelief& prior_x, const GaussianBelief& prior_y,
                            const SomaticPotential& potential);

/// Shannon entropy in nats; 0 log 0 = 0.
double entropy(const CategoricalBelief& belief);

/// Zero-temperature limit with a point connotative observation: the label
/// whose anchor is closest to `point_y`, ties broken by label. Throws
/// NoCandidatesError when there are no anchors.
std::string act_limit_label(double point_y, const SomaticPotential& potential);

}  // namespace somatic
