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

#include "somatic/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <string_view>
#include <variant>

#include "somatic/epa.hpp"
#include "somatic/errors.hpp"
#include "somatic/somatic_transform.hpp"

namespace somatic {

double ExperimentRecord::parameter(const std::string& name) const {
  for (const auto& [k, v] : parameters) {
    if (k == name) return v;
  }
  throw ValidationError("record has no parameter '" + name + "'");
}

double ExperimentRecord::output(const std::string& name) const {
  for (const auto& [k, v] : outputs) {
    if (k == name) return v;
  }
  throw ValidationError("record has no output '" + name + "'");
}

bool ExperimentRecord::has_output(const std::string& name) const {
  for (const auto& kv : outputs) {
    if (kv.first == name) return true;
  }
  return false;
}

double sadness_rating(double emotion_e) {
  if (!EpaVector::in_range(emotion_e)) {
    throw ValidationError("emotion E value outside [-4.3, 4.3]");
  }
  constexpr double kHalfRange = EpaVector::kMax;
  constexpr double kFullRange = EpaVector::kMax - EpaVector::kMin;
  return 1.0 + 6.0 * (kHalfRange - std::abs(emotion_e - kSadnessReferenceE)) / kFullRange;
}

namespace {

const std::string kNurse = "nurse";
const std::string kDoctor = "doctor";

std::vector<GridPoint> grid_for(const GaussianMixture& m, const GridSpec& spec) {
  return density_grid(m, spec.y_min, spec.y_max, spec.points);
}

CategoricalBelief nurse_doctor_prior(double p_nurse) {
  if (!(p_nurse >= 0.0 && p_nurse <= 1.0)) throw ValidationError("p must lie in [0, 1]");
  return CategoricalBelief({{kNurse, p_nurse}, {kDoctor, 1.0 - p_nurse}});
}

double label_weight(const JointPosterior& joint, const std::string& label) {
  double w = 0.0;
  for (std::size_t i = 0; i < joint.y.size(); ++i) {
    if (joint.component_labels[i] == label) w += joint.y.components()[i].weight;
  }
  return w;
}

std::string format_case(const std::string& name, double value) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return name + "=" + std::string(buf, res.ptr);
}

}  // namespace

std::vector<ExperimentRecord> run_uy_sweep(const UySweepConfig& config) {
  const auto prior_x = nurse_doctor_prior(config.p_nurse);
  const SomaticPotential potential({{kNurse, config.anchor_nurse}, {kDoctor, config.anchor_doctor}},
                                   config.gamma);
  const double expected_prior_mean =
      config.p_nurse * config.anchor_nurse + (1.0 - config.p_nurse) * config.anchor_doctor;

  std::vector<ExperimentRecord> records;
  for (double mu : config.mu_values) {
    const auto joint =
        somatic_posterior(prior_x, GaussianMixture(GaussianBelief(mu, config.sigma_y)), potential);
    ExperimentRecord r;
    r.experiment = "uy";
    r.case_label = format_case("mu_y", mu);
    r.parameters = {{"mu_y", mu},
                    {"p", config.p_nurse},
                    {"sigma_y", config.sigma_y},
                    {"gamma", config.gamma},
                    {"anchor_nurse", config.anchor_nurse},
                    {"anchor_doctor", config.anchor_doctor}};
    r.outputs = {{"p_nurse_post", joint.x.probability(kNurse)},
                 {"entropy_post", entropy(joint.x)},
                 {"nurse_weight_y", label_weight(joint, kNurse)},
                 {"expected_prior_mean", expected_prior_mean},
                 {"y_mean_post", joint.y.mean()}};
    r.grid = grid_for(joint.y, config.grid);
    records.push_back(std::move(r));
  }
  return records;
}

std::vector<ExperimentRecord> run_gamma_sweep(const GammaSweepConfig& config) {
  const auto prior_x = nurse_doctor_prior(config.p_nurse);
  const GaussianBelief prior_y(config.mu_y, config.sigma_y);

  std::vector<ExperimentRecord> records;
  for (double gamma : config.gamma_values) {
    const SomaticPotential potential(
        {{kNurse, config.anchor_nurse}, {kDoctor, config.anchor_doctor}}, gamma);
    const auto joint = somatic_posterior(prior_x, GaussianMixture(prior_y), potential);
    ExperimentRecord r;
    r.experiment = "gamma";
    r.case_label = format_case("gamma", gamma);
    r.parameters = {{"gamma", gamma},
                    {"mu_y", config.mu_y},
                    {"p", config.p_nurse},
                    {"sigma_y", config.sigma_y},
                    {"anchor_nurse", config.anchor_nurse},
                    {"anchor_doctor", config.anchor_doctor}};
    r.outputs = {{"p_nurse_post", joint.x.probability(kNurse)},
                 {"entropy_post", entropy(joint.x)}};
    const auto modes =
        density_modes(joint.y, config.grid.y_min, config.grid.y_max, config.grid.points);
    r.outputs.emplace_back("n_modes", static_cast<double>(modes.size()));
    for (std::size_t i = 0; i < modes.size(); ++i) {
      r.outputs.emplace_back("mode_" + std::to_string(i + 1), modes[i]);
    }
    r.grid = grid_for(joint.y, config.grid);
    records.push_back(std::move(r));
  }
  return records;
}

std::vector<ExperimentRecord> run_px_sweep(const PxSweepConfig& config) {
  const GaussianBelief prior_y(config.mu_y, config.sigma_y);
  const SomaticPotential potential({{kNurse, config.anchor_nurse}, {kDoctor, config.anchor_doctor}},
                                   config.gamma);
  std::vector<ExperimentRecord> records;
  for (double p : config.p_values) {
    const auto prior_x = nurse_doctor_prior(p);
    const auto joint = somatic_posterior(prior_x, GaussianMixture(prior_y), potential);
    ExperimentRecord r;
    r.experiment = "px";
    r.case_label = format_case("p", p);
    r.parameters = {{"p", p},
                    {"mu_y", config.mu_y},
                    {"sigma_y", config.sigma_y},
                    {"gamma", config.gamma},
                    {"anchor_nurse", config.anchor_nurse},
                    {"anchor_doctor", config.anchor_doctor}};
    r.outputs = {{"p_nurse_prior", p},
                 {"p_nurse_post", joint.x.probability(kNurse)},
                 {"entropy_prior", entropy(prior_x)},
                 {"entropy_post", entropy(joint.x)}};
    r.grid = grid_for(joint.y, config.grid);
    records.push_back(std::move(r));
  }
  return records;
}

std::vector<ExperimentRecord> run_dissonance(const DissonanceConfig& config) {
  if (config.sigma_values.empty()) throw ValidationError("dissonance needs sigma values");
  if (!(config.prior_bad >= 0.0 && config.prior_bad <= 1.0)) {
    throw ValidationError("prior_bad must lie in [0, 1]");
  }
  const CategoricalBelief prior_x({{"good", 1.0 - config.prior_bad}, {"bad", config.prior_bad}});
  const SomaticPotential potential({{"good", config.anchor_good}, {"bad", config.anchor_bad}},
                                   config.gamma);
  const std::vector<std::pair<std::string, double>> shared = {
      {"mu_y", config.mu_y},
      {"gamma", config.gamma},
      {"prior_bad", config.prior_bad},
      {"anchor_good", config.anchor_good},
      {"anchor_bad", config.anchor_bad}};

  std::vector<ExperimentRecord> records;
  for (double sigma : config.sigma_values) {
    const auto joint = somatic_posterior(
        prior_x, GaussianMixture(GaussianBelief(config.mu_y, sigma)), potential);
    ExperimentRecord r;
    r.experiment = "dissonance";
    r.case_label = format_case("sigma_y", sigma);
    r.parameters = {{"sigma_y", sigma}};
    r.parameters.insert(r.parameters.end(), shared.begin(), shared.end());
    r.outputs = {{"p_bad_post", joint.x.probability("bad")}, {"entropy_post", entropy(joint.x)}};
    r.grid = grid_for(joint.y, config.grid);
    records.push_back(std::move(r));
  }

  std::vector<SigmaType> types;
  const double w = 1.0 / static_cast<double>(config.sigma_values.size());
  for (double sigma : config.sigma_values) types.push_back({w, sigma});
  // Uniform weights may miss 1 by an ulp per term; renormalize exactly.
  double total = 0.0;
  for (const auto& t : types) total += t.weight;
  for (auto& t : types) t.weight /= total;

  const double p_bad = sigma_mixture_posterior(types, prior_x, config.mu_y, potential, "bad");
  ExperimentRecord mix;
  mix.experiment = "dissonance";
  mix.case_label = "mixture";
  mix.parameters = shared;
  const double p_good = 1.0 - p_bad;
  mix.outputs = {{"p_bad_post", p_bad},
                 {"entropy_post", entropy(CategoricalBelief::from_weights(
                                      {{"good", std::max(p_good, 0.0)}, {"bad", p_bad}}))}};
  records.push_back(std::move(mix));
  return records;
}

std::vector<ExperimentRecord> run_conformity(const ConformityConfig& config) {
  const auto states = config.model.run(config.steps);
  const auto& m = config.model;
  std::vector<ExperimentRecord> records;
  for (const auto& s : states) {
    ExperimentRecord r;
    r.experiment = "conformity";
    r.case_label = "step=" + std::to_string(s.step);
    r.parameters = {{"step", static_cast<double>(s.step)},
                    {"prior_wrong", m.prior_wrong},
                    {"mu_y", m.mu_y},
                    {"sigma_y", m.sigma_y},
                    {"gamma", m.gamma},
                    {"p_obs_given_wrong", m.p_obs_given_wrong},
                    {"p_obs_given_right", m.p_obs_given_right},
                    {"anchor_gap", m.anchor_gap},
                    {"moment_match", m.collapse == Collapse::moment_match ? 1.0 : 0.0}};
    r.outputs = {{"p_wrong", s.belief_x.probability(ConformityModel::kWrong)},
                 {"entropy", entropy(s.belief_x)},
                 {"y_components", static_cast<double>(s.belief_y.size())},
                 {"y_mean", s.belief_y.mean()},
                 {"y_sd", std::sqrt(s.belief_y.variance())}};
    r.grid = grid_for(s.belief_y, config.grid);
    records.push_back(std::move(r));
  }
  return records;
}

std::vector<ExperimentRecord> run_fairness(const FairnessConfig& config) {
  struct Condition {
    const char* name;
    double voice;
    double salient;
    double emotion_e;
  };
  const Condition conditions[] = {
      {"voice_salient", 1.0, 1.0, config.voice_salient},
      {"novoice_salient", 0.0, 1.0, config.novoice_salient},
      {"voice_nonsalient", 1.0, 0.0, config.voice_nonsalient},
      {"novoice_nonsalient", 0.0, 0.0, config.novoice_nonsalient},
  };
  std::vector<ExperimentRecord> records;
  for (const auto& c : conditions) {
    ExperimentRecord r;
    r.experiment = "fairness";
    r.case_label = c.name;
    r.parameters = {{"voice", c.voice}, {"salient", c.salient}, {"emotion_e", c.emotion_e}};
    r.outputs = {{"sadness_rating", sadness_rating(c.emotion_e)}};
    records.push_back(std::move(r));
  }
  return records;
}

// ---------------------------------------------------------------------------
// Named experiments

namespace {

using Binding = std::variant<double*, std::vector<double>*, std::size_t*>;
using BindingTable = std::vector<std::pair<std::string, Binding>>;

double parse_number(const std::string& key, std::string_view text) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (!text.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || !std::isfinite(value)) {
    throw ValidationError("cannot parse value '" + std::string(text) + "' for '" + key + "'");
  }
  return value;
}

void assign(const std::string& key, const Binding& binding, const std::string& text) {
  if (auto* d = std::get_if<double*>(&binding)) {
    **d = parse_number(key, text);
  } else if (auto* list = std::get_if<std::vector<double>*>(&binding)) {
    std::vector<double> values;
    std::size_t start = 0;
    while (true) {
      const auto comma = text.find(',', start);
      const auto piece = std::string_view(text).substr(
          start, comma == std::string::npos ? std::string::npos : comma - start);
      values.push_back(parse_number(key, piece));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    **list = std::move(values);
  } else {
    const double v = parse_number(key, text);
    if (v < 0.0 || v != std::floor(v)) {
      throw ValidationError("'" + key + "' needs a nonnegative integer");
    }
    *std::get<std::size_t*>(binding) = static_cast<std::size_t>(v);
  }
}

void add_grid(BindingTable& t, GridSpec& g) {
  t.emplace_back("y_min", &g.y_min);
  t.emplace_back("y_max", &g.y_max);
  t.emplace_back("grid_points", &g.points);
}

BindingTable bindings(UySweepConfig& c) {
  BindingTable t{{"mu_y", &c.mu_values},         {"p", &c.p_nurse},
                 {"sigma_y", &c.sigma_y},        {"gamma", &c.gamma},
                 {"anchor_nurse", &c.anchor_nurse}, {"anchor_doctor", &c.anchor_doctor}};
  add_grid(t, c.grid);
  return t;
}

BindingTable bindings(GammaSweepConfig& c) {
  BindingTable t{{"gamma", &c.gamma_values},     {"mu_y", &c.mu_y},
                 {"p", &c.p_nurse},              {"sigma_y", &c.sigma_y},
                 {"anchor_nurse", &c.anchor_nurse}, {"anchor_doctor", &c.anchor_doctor}};
  add_grid(t, c.grid);
  return t;
}

BindingTable bindings(PxSweepConfig& c) {
  BindingTable t{{"p", &c.p_values},             {"mu_y", &c.mu_y},
                 {"sigma_y", &c.sigma_y},        {"gamma", &c.gamma},
                 {"anchor_nurse", &c.anchor_nurse}, {"anchor_doctor", &c.anchor_doctor}};
  add_grid(t, c.grid);
  return t;
}

BindingTable bindings(DissonanceConfig& c) {
  BindingTable t{{"sigma_y", &c.sigma_values}, {"mu_y", &c.mu_y},
                 {"gamma", &c.gamma},          {"prior_bad", &c.prior_bad},
                 {"anchor_good", &c.anchor_good}, {"anchor_bad", &c.anchor_bad}};
  add_grid(t, c.grid);
  return t;
}

BindingTable bindings(ConformityConfig& c) {
  auto& m = c.model;
  BindingTable t{{"steps", &c.steps},
                 {"prior_wrong", &m.prior_wrong},
                 {"mu_y", &m.mu_y},
                 {"sigma_y", &m.sigma_y},
                 {"gamma", &m.gamma},
                 {"p_obs_given_wrong", &m.p_obs_given_wrong},
                 {"p_obs_given_right", &m.p_obs_given_right},
                 {"anchor_gap", &m.anchor_gap},
                 {"prune_weight", &m.limits.prune_weight},
                 {"max_components", &m.limits.max_components}};
  add_grid(t, c.grid);
  return t;
}

BindingTable bindings(FairnessConfig& c) {
  return {{"voice_salient", &c.voice_salient},
          {"voice_nonsalient", &c.voice_nonsalient},
          {"novoice_salient", &c.novoice_salient},
          {"novoice_nonsalient", &c.novoice_nonsalient}};
}

template <typename Config>
Config configured(Config config, const ExperimentOptions& options) {
  auto table = bindings(config);
  for (const auto& [key, value] : options.overrides) {
    auto it = std::find_if(table.begin(), table.end(),
                           [&](const auto& entry) { return entry.first == key; });
    if (it == table.end()) throw ValidationError("unknown parameter '" + key + "'");
    assign(key, it->second, value);
  }
  return config;
}

template <typename Config>
std::vector<std::string> names_of(Config config) {
  std::vector<std::string> out;
  for (const auto& entry : bindings(config)) out.push_back(entry.first);
  return out;
}

}  // namespace

ConformityConfig configure_conformity(const ExperimentOptions& options) {
  auto config = configured(ConformityConfig{}, options);
  if (options.collapse) config.model.collapse = *options.collapse;
  return config;
}

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names = {"uy",         "gamma",      "px",
                                                 "dissonance", "conformity", "fairness"};
  return names;
}

std::vector<std::string> experiment_parameters(const std::string& name) {
  if (name == "uy") return names_of(UySweepConfig{});
  if (name == "gamma") return names_of(GammaSweepConfig{});
  if (name == "px") return names_of(PxSweepConfig{});
  if (name == "dissonance") return names_of(DissonanceConfig{});
  if (name == "conformity") return names_of(ConformityConfig{});
  if (name == "fairness") return names_of(FairnessConfig{});
  throw ValidationError("unknown experiment '" + name + "'");
}

std::vector<ExperimentRecord> run_named_experiment(const std::string& name,
                                                   const ExperimentOptions& options) {
  if (name == "uy") return run_uy_sweep(configured(UySweepConfig{}, options));
  if (name == "gamma") return run_gamma_sweep(configured(GammaSweepConfig{}, options));
  if (name == "px") return run_px_sweep(configured(PxSweepConfig{}, options));
  if (name == "dissonance") return run_dissonance(configured(DissonanceConfig{}, options));
  if (name == "conformity") return run_conformity(configure_conformity(options));
  if (name == "fairness") return run_fairness(configured(FairnessConfig{}, options));
  throw ValidationError("unknown experiment '" + name + "'");
}

}  // namespace somatic
