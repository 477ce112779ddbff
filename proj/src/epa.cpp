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

#include "somatic/epa.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "somatic/errors.hpp"

namespace somatic {

bool EpaVector::in_range(double v) noexcept {
  return std::isfinite(v) && v >= kMin && v <= kMax;
}

EpaVector::EpaVector(double e, double p, double a) : e_(e), p_(p), a_(a) {
  if (!in_range(e) || !in_range(p) || !in_range(a)) {
    std::ostringstream msg;
    msg << "EPA value out of range [-4.3, 4.3]: (" << e << ", " << p << ", " << a << ")";
    throw ValidationError(msg.str());
  }
}

EpaVector operator-(const EpaVector& v, const EpaOffset& d) {
  return EpaVector(v.e() - d.e, v.p() - d.p, v.a() - d.a);
}

double distance(const EpaVector& a, const EpaVector& b, Metric metric) {
  const double de = a.e() - b.e();
  const double dp = a.p() - b.p();
  const double da = a.a() - b.a();
  const double sq = de * de + dp * dp + da * da;
  return metric == Metric::euclidean ? std::sqrt(sq) : sq;
}

EpaOffset emotion_deflection(const EpaVector& fundamental, const EpaVector& transient) {
  return {fundamental.e() - transient.e(), fundamental.p() - transient.p(),
          fundamental.a() - transient.a()};
}

void Lexicon::add(LexiconEntry entry) {
  if (entry.label.empty()) throw ValidationError("lexicon entry has an empty label");
  const auto& sd = entry.sd;
  if (!(sd.e >= 0.0) || !(sd.p >= 0.0) || !(sd.a >= 0.0) || !std::isfinite(sd.e) ||
      !std::isfinite(sd.p) || !std::isfinite(sd.a)) {
    throw ValidationError("negative or non-finite standard deviation for '" + entry.label + "'");
  }
  if (index_.contains(entry.label)) {
    throw ValidationError("duplicate label '" + entry.label + "'");
  }
  index_.emplace(entry.label, entries_.size());
  entries_.push_back(std::move(entry));
}

bool Lexicon::contains(const std::string& label) const { return index_.contains(label); }

const LexiconEntry& Lexicon::at(const std::string& label) const {
  auto it = index_.find(label);
  if (it == index_.end()) throw ValidationError("unknown label '" + label + "'");
  return entries_[it->second];
}

std::vector<Neighbor> nearest_labels(const Lexicon& lexicon, const EpaVector& query,
                                     std::size_t k, Metric metric) {
  if (lexicon.empty()) throw NoCandidatesError("nearest-label query on an empty lexicon");
  if (k == 0 || k > lexicon.size()) {
    throw ValidationError("k=" + std::to_string(k) + " outside [1, " +
                          std::to_string(lexicon.size()) + "]");
  }

  // Rank on the squared distance so both metrics order identically even when
  // sqrt rounds two distinct squares to the same double.
  std::vector<Neighbor> all;
  all.reserve(lexicon.size());
  for (const auto& entry : lexicon.entries()) {
    all.push_back({entry.label, distance(query, entry.mean, Metric::squared_euclidean)});
  }
  auto closer = [](const Neighbor& a, const Neighbor& b) {
    if (a.distance != b.distance) return a.distance < b.distance;
    return a.label < b.label;
  };
  std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(k), all.end(), closer);
  all.resize(k);
  if (metric == Metric::euclidean) {
    for (auto& n : all) n.distance = std::sqrt(n.distance);
  }
  return all;
}

}  // namespace somatic
