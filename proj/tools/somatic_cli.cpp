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

// Command-line front end: lexicon queries, single somatic transforms and the
// experiment runners.
//
// Exit codes: 0 success, 1 usage error, 2 data/validation error,
// 3 numerical failure.

#include <cmath>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "record_io.hpp"
#include "somatic/delimited.hpp"
#include "somatic/epa.hpp"
#include "somatic/errors.hpp"
#include "somatic/experiments.hpp"
#include "somatic/lexicon_io.hpp"
#include "somatic/sequential.hpp"
#include "somatic/somatic_transform.hpp"

namespace {

using namespace somatic;

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitNumerical = 3;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// "a:1,b:2" -> [(a, 1), (b, 2)]. Labels may not contain ':' or ','.
std::vector<std::pair<std::string, double>> parse_label_values(const std::string& flag,
                                                                const std::string& text) {
  std::vector<std::pair<std::string, double>> out;
  std::stringstream ss(text);
  std::string piece;
  while (std::getline(ss, piece, ',')) {
    const auto colon = piece.rfind(':');
    if (colon == std::string::npos || colon == 0) {
      throw UsageError(flag + ": expected label:value, got '" + piece + "'");
    }
    const auto value = delimited::parse_number(piece.substr(colon + 1));
    if (!value) throw UsageError(flag + ": bad number in '" + piece + "'");
    out.emplace_back(piece.substr(0, colon), *value);
  }
  if (out.empty()) throw UsageError(flag + " is empty");
  return out;
}

std::string fmt(double v, int precision = 6) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << std::setprecision(precision) << v;
  return os.str();
}

void print_report(const LexiconFileReport& report, std::ostream& out) {
  out << "data lines: " << report.data_lines << "\naccepted: " << report.accepted
      << "\nrejected: " << report.rejects.size() << '\n';
  for (const auto& r : report.rejects) out << "  line " << r.line << ": " << r.reason << '\n';
  for (const auto& n : report.notes) out << "note: " << n << '\n';
}

// ---------------------------------------------------------------------------

struct NearestArgs {
  std::string lexicon;
  double e = 0.0, p = 0.0, a = 0.0;
  std::size_t k = 1;
};

int cmd_dict_nearest(const NearestArgs& args) {
  const auto loaded = load_lexicon(std::filesystem::path(args.lexicon));
  for (const auto& n : loaded.report.notes) std::cerr << "note: " << n << '\n';
  if (!loaded.report.rejects.empty()) {
    std::cerr << "warning: " << loaded.report.rejects.size() << " lexicon line(s) rejected\n";
  }
  const EpaVector query(args.e, args.p, args.a);
  const auto neighbors = nearest_labels(loaded.lexicon, query, args.k);
  std::cout << "rank,label,squared_distance,euclidean_distance\n";
  for (std::size_t i = 0; i < neighbors.size(); ++i) {
    const auto& n = neighbors[i];
    std::cout << i + 1 << ',' << delimited::quote(n.label) << ','
              << delimited::format_number(n.distance) << ','
              << delimited::format_number(std::sqrt(n.distance)) << '\n';
  }
  return 0;
}

int cmd_dict_validate(const std::string& path) {
  const auto loaded = load_lexicon(std::filesystem::path(path));
  print_report(loaded.report, std::cout);
  return loaded.report.rejects.empty() ? 0 : kExitData;
}

// ---------------------------------------------------------------------------

struct TransformArgs {
  std::string prior_x;
  std::string anchors;
  double mu_y = 0.0;
  double sigma_y = 1.0;
  double gamma = 1.0;
  std::string format = "text";
};

int cmd_transform(const TransformArgs& args) {
  auto prior_pairs = parse_label_values("--prior-x", args.prior_x);
  double total = 0.0;
  std::vector<CategoricalBelief::Item> items;
  for (const auto& [label, p] : prior_pairs) {
    if (p < 0.0) throw ValidationError("negative prior probability for '" + label + "'");
    total += p;
    items.push_back({label, p});
  }
  if (std::abs(total - 1.0) > 1e-6) {
    std::cerr << "warning: --prior-x sums to " << fmt(total, 10) << "; renormalizing\n";
  }
  const auto prior_x = CategoricalBelief::from_weights(std::move(items));
  const SomaticPotential potential(parse_label_values("--anchors", args.anchors), args.gamma);
  const GaussianBelief prior_y(args.mu_y, args.sigma_y);
  const auto joint = somatic_posterior(prior_x, GaussianMixture(prior_y), potential);

  if (args.format == "json") {
    nlohmann::ordered_json doc;
    nlohmann::ordered_json px = nlohmann::ordered_json::object();
    for (const auto& item : joint.x.items()) px[item.label] = item.probability;
    doc["posterior_x"] = std::move(px);
    auto comps = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < joint.y.size(); ++i) {
      const auto& c = joint.y.components()[i];
      comps.push_back({{"label", joint.component_labels[i]},
                       {"weight", c.weight},
                       {"mean", c.mean},
                       {"sd", c.sd}});
    }
    doc["posterior_y"] = std::move(comps);
    doc["entropy_prior"] = entropy(prior_x);
    doc["entropy_post"] = entropy(joint.x);
    std::cout << doc.dump(1) << '\n';
    return 0;
  }

  std::cout << "posterior_x\n";
  for (const auto& item : joint.x.items()) {
    std::cout << "  " << item.label << "  prior=" << fmt(prior_x.probability(item.label))
              << "  post=" << fmt(item.probability) << '\n';
  }
  std::cout << "posterior_y\n";
  for (std::size_t i = 0; i < joint.y.size(); ++i) {
    const auto& c = joint.y.components()[i];
    std::cout << "  " << joint.component_labels[i] << "  weight=" << fmt(c.weight)
              << "  mean=" << fmt(c.mean) << "  sd=" << fmt(c.sd) << '\n';
  }
  std::cout << "entropy_prior=" << fmt(entropy(prior_x)) << '\n'
            << "entropy_post=" << fmt(entropy(joint.x)) << '\n';
  return 0;
}

// ---------------------------------------------------------------------------

struct ExperimentArgs {
  std::string name;
  std::vector<std::string> sets;
  std::string format = "csv";
  std::string out;
  std::string lexicon;
  std::string collapse;
  bool calibrate = false;
  std::uint64_t seed = 0;  // reserved; every runner is deterministic
};

// Experiments whose anchors can be read from a lexicon: label -> parameter,
// and the EPA dimension that serves as the connotative coordinate.
struct LexiconBinding {
  std::vector<std::pair<std::string, std::string>> labels;
  char dimension;
};

std::optional<LexiconBinding> lexicon_binding(const std::string& experiment) {
  if (experiment == "uy" || experiment == "gamma" || experiment == "px") {
    return LexiconBinding{{{"nurse", "anchor_nurse"}, {"doctor", "anchor_doctor"}}, 'p'};
  }
  if (experiment == "dissonance") {
    return LexiconBinding{{{"good", "anchor_good"}, {"bad", "anchor_bad"}}, 'e'};
  }
  return std::nullopt;
}

int cmd_experiment(const ExperimentArgs& args) {
  const auto& names = experiment_names();
  if (std::find(names.begin(), names.end(), args.name) == names.end()) {
    std::string valid;
    for (const auto& n : names) valid += (valid.empty() ? "" : ", ") + n;
    throw UsageError("unknown experiment '" + args.name + "'; valid: " + valid);
  }
  if (args.format != "csv" && args.format != "json") {
    throw UsageError("--format must be csv or json");
  }
  const auto format = args.format == "csv" ? cli::Format::csv : cli::Format::json;

  ExperimentOptions options;
  if (!args.lexicon.empty()) {
    const auto loaded = load_lexicon(std::filesystem::path(args.lexicon));
    const auto binding = lexicon_binding(args.name);
    if (!binding) {
      std::cerr << "note: experiment '" << args.name << "' takes no anchors from a lexicon\n";
    } else {
      for (const auto& [label, param] : binding->labels) {
        if (!loaded.lexicon.contains(label)) {
          std::cerr << "note: lexicon has no '" << label << "'; keeping the default " << param
                    << "\n";
          continue;
        }
        const auto& mean = loaded.lexicon.at(label).mean;
        const double v = binding->dimension == 'e' ? mean.e() : mean.p();
        options.overrides.emplace_back(param, delimited::format_number(v));
      }
    }
  }
  const auto known = experiment_parameters(args.name);
  for (const auto& s : args.sets) {
    const auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("--set expects key=value, got '" + s + "'");
    const auto key = s.substr(0, eq);
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      std::string valid;
      for (const auto& n : known) valid += (valid.empty() ? "" : ", ") + n;
      throw UsageError("unknown parameter '" + key + "' for " + args.name + "; valid: " + valid);
    }
    options.overrides.emplace_back(key, s.substr(eq + 1));
  }
  if (!args.collapse.empty()) {
    if (args.collapse == "exact") {
      options.collapse = Collapse::exact;
    } else if (args.collapse == "moment") {
      options.collapse = Collapse::moment_match;
    } else {
      throw UsageError("--collapse must be exact or moment");
    }
  }
  if (args.calibrate && args.name != "conformity") {
    throw UsageError("--calibrate applies to the conformity experiment only");
  }

  const std::filesystem::path out_path =
      args.out.empty() ? std::filesystem::path(args.name + "." + args.format)
                       : std::filesystem::path(args.out);

  std::vector<ExperimentRecord> records;
  if (args.name == "conformity") {
    auto config = configure_conformity(options);
    if (args.calibrate) {
      const auto report = calibrate_conformity(config.model);
      // A forced strategy takes its own best gap.
      const CalibrationPoint* chosen = &report.best;
      if (options.collapse) {
        chosen = nullptr;
        for (const auto& p : report.points) {
          if (p.collapse == *options.collapse &&
              (!chosen || p.squared_error < chosen->squared_error)) {
            chosen = &p;
          }
        }
      }
      config.model.anchor_gap = chosen->gap;
      config.model.collapse = chosen->collapse;
      const auto report_path =
          out_path.parent_path() /
          (out_path.stem().string() + "_calibration." + args.format);
      cli::write_calibration(report, report_path, format);
      std::cerr << "calibration: anchor_gap=" << delimited::format_number(chosen->gap)
                << " collapse=" << to_string(chosen->collapse)
                << " squared_error=" << fmt(chosen->squared_error) << " (report "
                << report_path.string() << ")\n";
    }
    records = run_conformity(config);
  } else {
    records = run_named_experiment(args.name, options);
  }

  const auto written = cli::write_experiment_files(records, out_path, format);
  cli::print_summary(records, std::cout);
  std::cerr << "wrote " << written.size() << " file(s); records in " << out_path.string() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Somatic transform toolkit: EPA lexicons, denotative/connotative posteriors, "
               "experiment runners"};
  app.name("somatic");
  app.require_subcommand(1);

  auto* dict = app.add_subcommand("dict", "Lexicon queries");
  dict->require_subcommand(1);

  NearestArgs nearest;
  auto* nearest_cmd = dict->add_subcommand("nearest", "k nearest labels to an EPA point");
  nearest_cmd->add_option("--lexicon", nearest.lexicon, "Lexicon CSV")->required();
  nearest_cmd->add_option("--e", nearest.e, "Evaluation")->required();
  nearest_cmd->add_option("--p", nearest.p, "Potency")->required();
  nearest_cmd->add_option("--a", nearest.a, "Activity")->required();
  nearest_cmd->add_option("-k", nearest.k, "Number of labels")->capture_default_str();

  std::string validate_path;
  auto* validate_cmd = dict->add_subcommand("validate", "Load a lexicon and print its report");
  validate_cmd->add_option("--lexicon", validate_path, "Lexicon CSV")->required();

  TransformArgs transform;
  auto* transform_cmd = app.add_subcommand("transform", "Apply the somatic transform once");
  transform_cmd->add_option("--prior-x", transform.prior_x, "label:prob,...")->required();
  transform_cmd->add_option("--mu-y", transform.mu_y, "Connotative prior mean")->required();
  transform_cmd->add_option("--sigma-y", transform.sigma_y, "Connotative prior sd")->required();
  transform_cmd->add_option("--gamma", transform.gamma, "Coupling temperature")->required();
  transform_cmd->add_option("--anchors", transform.anchors, "label:value,...")->required();
  transform_cmd->add_option("--format", transform.format, "text or json")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();

  ExperimentArgs experiment;
  auto* experiment_cmd = app.add_subcommand("experiment", "Run a named experiment");
  experiment_cmd->add_option("name", experiment.name, "uy|gamma|px|dissonance|conformity|fairness")
      ->required();
  experiment_cmd->add_option("--set", experiment.sets, "Parameter override key=value")
      ->take_all();
  experiment_cmd->add_option("--format", experiment.format, "csv or json")->capture_default_str();
  experiment_cmd->add_option("--out", experiment.out, "Records file (default <name>.<format>)");
  experiment_cmd->add_option("--lexicon", experiment.lexicon, "Take anchors from a lexicon");
  experiment_cmd->add_option("--collapse", experiment.collapse, "exact or moment (conformity)");
  experiment_cmd->add_flag("--calibrate", experiment.calibrate,
                           "Re-run the conformity anchor calibration");
  experiment_cmd->add_option("--seed", experiment.seed, "Reserved; runs are deterministic");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*nearest_cmd) return cmd_dict_nearest(nearest);
    if (*validate_cmd) return cmd_dict_validate(validate_path);
    if (*transform_cmd) return cmd_transform(transform);
    if (*experiment_cmd) return cmd_experiment(experiment);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}
