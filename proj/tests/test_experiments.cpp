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

#include <doctest.h>

#include <cmath>
#include <random>

#include "somatic/beliefs.hpp"
#include "somatic/errors.hpp"
#include "somatic/experiments.hpp"
#include "tolerance.hpp"

using namespace somatic;

namespace {

const ExperimentRecord& find_case(const std::vector<ExperimentRecord>& rows, const std::string& label) {
  for (const auto& r : rows) {
    if (r.case_label == label) return r;
  }
  FAIL("missing case " << label);
  throw std::logic_error("unreachable");
}

// Posterior nurse probability from the two-label closed-form odds.
double nurse_oracle(double p, double mu, double sd2) {
  const double log_odds = std::log(p / (1.0 - p)) -
                          (std::pow(mu - 1.9, 2) - std::pow(mu - 2.95, 2)) / (2.0 * sd2);
  return 1.0 / (1.0 + std::exp(-log_odds));
}

}  // namespace

TEST_CASE("uy sweep") {
  const auto rows = run_uy_sweep();
  REQUIRE(rows.size() == 8);
  CHECK(rows[0].parameter("mu_y") == -1.0);
  CHECK(rows.back().parameter("mu_y") == 5.0);
  for (const auto& r : rows) {
    CHECK(tol::within(r.output("expected_prior_mean"), 0.7 * 1.9 + 0.3 * 2.95, 1e-12));
    CHECK(tol::within(r.output("p_nurse_post"), nurse_oracle(0.7, r.parameter("mu_y"), 4.09), 1e-12));
  }
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(rows[i].output("p_nurse_post") < rows[i - 1].output("p_nurse_post"));
  }
  const auto& mid = find_case(rows, "mu_y=2.2");
  CHECK(tol::within(mid.output("nurse_weight_y"), 0.70, 0.05));
  // The posterior over X never approaches zero at these parameters.
  CHECK(rows.back().output("p_nurse_post") > 0.5);
}

TEST_CASE("gamma sweep") {
  const auto rows = run_gamma_sweep();
  for (const auto& r : rows) {
    const double g = r.parameter("gamma");
    CHECK(tol::within(r.output("p_nurse_post"), nurse_oracle(0.7, 3.0, 4.0 + g * g), 1e-12));
    if (g >= 2.0) CHECK(std::abs(r.output("p_nurse_post") - 0.7) < 0.05);
  }
  const auto& sharp = find_case(rows, "gamma=0.05");
  REQUIRE(sharp.output("n_modes") == 2.0);
  CHECK(tol::within(sharp.output("mode_1"), 1.9, 0.05));
  CHECK(tol::within(sharp.output("mode_2"), 2.95, 0.05));

  GammaSweepConfig flat;
  flat.gamma_values = {1e6};
  CHECK(tol::within(run_gamma_sweep(flat)[0].output("p_nurse_post"), 0.7, 1e-6));

  GammaSweepConfig bad;
  bad.gamma_values = {0.3, -1.0};
  CHECK_THROWS_AS(run_gamma_sweep(bad), ValidationError);
}

TEST_CASE("px sweep") {
  const auto rows = run_px_sweep();
  const auto& even = find_case(rows, "p=0.5");
  const double p = even.output("p_nurse_post");
  CHECK(p < 0.5);
  CHECK(tol::within(p, 0.488, 0.005));
  CHECK(tol::within(p, nurse_oracle(0.5, 3.0, 3.5 * 3.5 + 0.2 * 0.2), 1e-12));
  CHECK(find_case(rows, "p=0.1").output("entropy_post") < even.output("entropy_post"));
  CHECK(find_case(rows, "p=0.9").output("entropy_post") < even.output("entropy_post"));
  CHECK(tol::within(even.output("entropy_prior"), std::log(2.0), 1e-12));
}

TEST_CASE("dissonance") {
  const auto rows = run_dissonance();
  REQUIRE(rows.size() == 4);
  CHECK(tol::within(find_case(rows, "sigma_y=1.23").output("p_bad_post"), 0.34, 0.01));
  CHECK(tol::within(find_case(rows, "sigma_y=2").output("p_bad_post"), 0.64, 0.01));
  CHECK(tol::within_rel(find_case(rows, "sigma_y=0.5").output("p_bad_post"), 2.4e-4, 0.2));
  const auto& mix = find_case(rows, "mixture");
  CHECK(tol::within(mix.output("p_bad_post"), 0.32, 0.01));
  CHECK_FALSE(mix.grid.has_value());
  CHECK(tol::within(mix.output("p_bad_post"),
                    (rows[0].output("p_bad_post") + rows[1].output("p_bad_post") +
                     rows[2].output("p_bad_post")) / 3.0,
                    1e-12));
}

TEST_CASE("dissonance reflection property") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> pos(-3.0, 3.0);
  std::uniform_real_distribution<double> prob(0.05, 0.95);
  std::uniform_real_distribution<double> spread(0.2, 2.5);
  for (int trial = 0; trial < 40; ++trial) {
    DissonanceConfig a;
    a.sigma_values = {spread(rng), spread(rng)};
    a.mu_y = pos(rng);
    a.gamma = spread(rng);
    a.prior_bad = prob(rng);
    a.anchor_good = pos(rng);
    a.anchor_bad = pos(rng);

    DissonanceConfig b = a;
    b.mu_y = -a.mu_y;
    b.anchor_good = -a.anchor_bad;
    b.anchor_bad = -a.anchor_good;
    b.prior_bad = 1.0 - a.prior_bad;

    const auto ra = run_dissonance(a);
    const auto rb = run_dissonance(b);
    for (std::size_t i = 0; i < ra.size(); ++i) {
      CHECK(tol::within(rb[i].output("p_bad_post"), 1.0 - ra[i].output("p_bad_post"), 1e-9));
      CHECK(tol::within(rb[i].output("entropy_post"), ra[i].output("entropy_post"), 1e-9));
    }
  }
}

TEST_CASE("conformity records") {
  const auto rows = run_conformity();
  REQUIRE(rows.size() == 11);
  CHECK(rows[0].output("p_wrong") == doctest::Approx(0.1));
  CHECK(tol::within(rows[5].output("p_wrong"), 0.67, 0.05));
  CHECK(tol::within(rows[10].output("p_wrong"), 0.995, 0.01));
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(rows[i].output("p_wrong") >= rows[i - 1].output("p_wrong"));
  }
  CHECK(rows[0].output("y_mean") == 2.0);
  CHECK(rows[0].output("y_sd") == 1.3);
}

TEST_CASE("sadness rating and fairness table") {
  CHECK(tol::within(sadness_rating(-0.84), 3.33, 0.01));
  CHECK(tol::within(sadness_rating(1.5), 1.70, 0.01));
  CHECK(tol::within(sadness_rating(2.31), 1.14, 0.01));
  CHECK(tol::within(sadness_rating(1.94), 1.39, 0.01));
  CHECK(tol::within(sadness_rating(-1.795), 4.0, 1e-12));
  CHECK_THROWS_AS(sadness_rating(4.4), ValidationError);
  CHECK_THROWS_AS(sadness_rating(std::nan("")), ValidationError);

  const auto rows = run_fairness();
  REQUIRE(rows.size() == 4);
  const double vs = find_case(rows, "voice_salient").output("sadness_rating");
  const double ns = find_case(rows, "novoice_salient").output("sadness_rating");
  const double vn = find_case(rows, "voice_nonsalient").output("sadness_rating");
  const double nn = find_case(rows, "novoice_nonsalient").output("sadness_rating");
  // Affine map recomputed by hand for each condition.
  for (const auto& r : rows) {
    const double e = r.parameter("emotion_e");
    CHECK(tol::within(r.output("sadness_rating"), 1.0 + 6.0 * (4.3 - std::abs(e + 1.795)) / 8.6, 1e-12));
  }
  CHECK(ns - vs > nn - vn);
}

TEST_CASE("every emitted grid is a normalized density") {
  // The default window clips the tails of the widest posteriors, so the
  // normalization check runs on a wider window; the default grid may only lose mass.
  for (const auto& name : experiment_names()) {
    for (const auto& r : run_named_experiment(name)) {
      if (!r.grid) continue;
      REQUIRE(r.grid->size() == 1101);
      CHECK(r.grid->front().y == -5.0);
      CHECK(r.grid->back().y == 6.0);
      CHECK(trapezoid_mass(*r.grid) <= 1.0 + 1e-4);
    }
    if (name == "fairness") continue;
    ExperimentOptions wide;
    wide.overrides = {{"y_min", "-20"}, {"y_max", "21"}, {"grid_points", "8201"}};
    for (const auto& r : run_named_experiment(name, wide)) {
      if (!r.grid) continue;
      CHECK(tol::within(trapezoid_mass(*r.grid), 1.0, 1e-4));
    }
  }
}

TEST_CASE("runners are deterministic") {
  for (const auto& name : experiment_names()) {
    const auto a = run_named_experiment(name);
    const auto b = run_named_experiment(name);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].outputs == b[i].outputs);
      CHECK(a[i].parameters == b[i].parameters);
      CHECK(a[i].grid.has_value() == b[i].grid.has_value());
      if (a[i].grid && b[i].grid) {
        bool same = a[i].grid->size() == b[i].grid->size();
        for (std::size_t k = 0; same && k < a[i].grid->size(); ++k) {
          same = (*a[i].grid)[k].y == (*b[i].grid)[k].y &&
                 (*a[i].grid)[k].density == (*b[i].grid)[k].density;
        }
        CHECK(same);
      }
    }
  }
}

TEST_CASE("named experiments and overrides") {
  CHECK(experiment_names() ==
        std::vector<std::string>{"uy", "gamma", "px", "dissonance", "conformity", "fairness"});
  CHECK_THROWS_AS(run_named_experiment("warp9"), ValidationError);
  CHECK_THROWS_AS(experiment_parameters("warp9"), ValidationError);

  ExperimentOptions certain;
  certain.overrides = {{"p", "1.0"}};
  for (const auto& r : run_named_experiment("uy", certain)) {
    CHECK(r.output("p_nurse_post") == 1.0);
  }

  ExperimentOptions list;
  list.overrides = {{"mu_y", "0,1.5"}, {"grid_points", "11"}};
  const auto rows = run_named_experiment("uy", list);
  REQUIRE(rows.size() == 2);
  CHECK(rows[1].parameter("mu_y") == 1.5);
  CHECK(rows[1].grid->size() == 11);

  ExperimentOptions unknown;
  unknown.overrides = {{"temperature", "2"}};
  CHECK_THROWS_AS(run_named_experiment("px", unknown), ValidationError);
  ExperimentOptions garbled;
  garbled.overrides = {{"gamma", "0.3x"}};
  CHECK_THROWS_AS(run_named_experiment("uy", garbled), ValidationError);

  ExperimentOptions collapse;
  collapse.collapse = Collapse::exact;
  CHECK(configure_conformity(collapse).model.collapse == Collapse::exact);
  CHECK(configure_conformity({}).model.collapse == Collapse::moment_match);
  ExperimentOptions steps;
  steps.overrides = {{"steps", "3"}};
  CHECK(run_named_experiment("conformity", steps).size() == 4);
}
