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
#include <map>
#include <string>
#include <vector>

namespace somatic {

/// Difference between two EPA points. Unbounded: a deflection can span the
/// full width of the scale (up to 8.6 per component).
struct EpaOffset {
  double e = 0.0;
  double p = 0.0;
  double a = 0.0;

  friend bool operator==(const EpaOffset&, const EpaOffset&) = default;
};

/// A point in Evaluation/Potency/Activity space. Every component lies in
/// [-4.3, 4.3]; construction outside that range throws ValidationError.
class EpaVector {
 public:
  static constexpr double kMin = -4.3;
  static constexpr double kMax = 4.3;

  EpaVector() = default;
  EpaVector(double e, double p, double a);

  double e() const noexcept { return e_; }
  double p() const noexcept { return p_; }
  double a() const noexcept { return a_; }

  static bool in_range(double v) noexcept;

  friend bool operator==(const EpaVector&, const EpaVector&) = default;

 private:
  double e_ = 0.0;
  double p_ = 0.0;
  double a_ = 0.0;
};

EpaVector operator-(const EpaVector& v, const EpaOffset& d);

enum class Metric { euclidean, squared_euclidean };

/// Squared Euclidean is the reporting default: ACT "distances" as usually quoted
/// are squared Euclidean distances.
double distance(const EpaVector& a, const EpaVector& b,
                Metric metric = Metric::squared_euclidean);

/// Fundamental minus transient, per component. A positive component means the
/// in-context impression sits below the out-of-context sentiment.
EpaOffset emotion_deflection(const EpaVector& fundamental, const EpaVector& transient);

/// Per-dimension population standard deviations of a rating.
struct EpaSpread {
  double e = 0.0;
  double p = 0.0;
  double a = 0.0;

  friend bool operator==(const EpaSpread&, const EpaSpread&) = default;
};

struct LexiconEntry {
  std::string label;
  EpaVector mean;
  EpaSpread sd;

  friend bool operator==(const LexiconEntry&, const LexiconEntry&) = default;
};

/// Label -> sentiment dictionary. Labels are unique and case-sensitive;
/// entries keep insertion order.
class Lexicon {
 public:
  Lexicon() = default;

  /// Throws ValidationError on an empty label, negative sd or duplicate label.
  void add(LexiconEntry entry);

  bool contains(const std::string& label) const;
  const LexiconEntry& at(const std::string& label) const;
  const std::vector<LexiconEntry>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }

  friend bool operator==(const Lexicon& a, const Lexicon& b) { return a.entries_ == b.entries_; }

 private:
  std::vector<LexiconEntry> entries_;
  std::map<std::string, std::size_t> index_;
};

struct Neighbor {
  std::string label;
  double distance = 0.0;
};

/// The k entries whose means are closest to `query`, ascending by distance,
/// ties broken by label. Throws NoCandidatesError on an empty lexicon and
/// ValidationError when k is zero or exceeds the lexicon size.
std::vector<Neighbor> nearest_labels(const Lexicon& lexicon, const EpaVector& query,
                                     std::size_t k,
                                     Metric metric = Metric::squared_euclidean);

}  // namespace somatic
