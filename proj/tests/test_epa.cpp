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

#include <random>

#include "somatic/epa.hpp"
#include "somatic/errors.hpp"
#include "tolerance.hpp"

using namespace somatic;

TEST_CASE("EpaVector rejects values outside the semantic differential scale") {
  CHECK_NOTHROW(EpaVector(4.3, -4.3, 0.0));
  CHECK_THROWS_AS(EpaVector(4.31, 0.0, 0.0), ValidationError);
  CHECK_THROWS_AS(EpaVector(0.0, -9.9, 0.0), ValidationError);
  CHECK_THROWS_AS(EpaVector(0.0, 0.0, std::nan("")), ValidationError);
}

TEST_CASE("distance") {
  const EpaVector query(-1.0, 2.0, 2.0);
  const EpaVector politician(-0.9, 2.3, 1.5);

  SUBCASE("reference 0.35 is the squared Euclidean distance") {
    CHECK(tol::within(distance(query, politician, Metric::squared_euclidean), 0.35, 1e-12));
    CHECK(tol::within(distance(query, politician), 0.35, 1e-12));
  }
  SUBCASE("Euclidean") {
    CHECK(distance(query, politician, Metric::euclidean) == doctest::Approx(std::sqrt(0.35)));
    CHECK(tol::within(distance(query, politician, Metric::euclidean), 0.5916, 1e-4));
  }
  SUBCASE("identity") {
    CHECK(distance(query, query, Metric::euclidean) == 0.0);
    CHECK(distance(query, query, Metric::squared_euclidean) == 0.0);
  }
}

TEST_CASE("distance is a metric on random triples") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-4.3, 4.3);
  auto draw = [&] { return EpaVector(u(rng), u(rng), u(rng)); };
  for (int i = 0; i < 1000; ++i) {
    const auto a = draw(), b = draw(), c = draw();
    const auto d = [](const EpaVector& x, const EpaVector& y) {
      return distance(x, y, Metric::euclidean);
    };
    CHECK(d(a, b) == doctest::Approx(d(b, a)));
    CHECK(d(a, c) <= d(a, b) + d(b, c) + 1e-12);
    CHECK(distance(a, b, Metric::squared_euclidean) == doctest::Approx(d(a, b) * d(a, b)));
    CHECK(d(a, b) > 0.0);
  }
}

TEST_CASE("emotion deflection") {
  SUBCASE("doctor made to feel less powerful") {
    const auto d = emotion_deflection(EpaVector(2.7, 3.0, 0.2), EpaVector(2.7, -0.1, 0.2));
    CHECK(d.p == doctest::Approx(3.1));
    CHECK(d.e == 0.0);
  }
  SUBCASE("zero when nothing moved") {
    CHECK(emotion_deflection(EpaVector(1, 2, 3), EpaVector(1, 2, 3)) == EpaOffset{});
  }
  SUBCASE("componentwise") {
    CHECK(emotion_deflection(EpaVector(1, 1, 1), EpaVector(2, 0, 1)) == EpaOffset{-1, 1, 0});
  }
  SUBCASE("can exceed the EPA range") {
    const auto d = emotion_deflection(EpaVector(4.3, 0, 0), EpaVector(-4.3, 0, 0));
    CHECK(d.e == doctest::Approx(8.6));
  }
  SUBCASE("deflection(f, f - d) == d") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int i = 0; i < 500; ++i) {
      const EpaVector f(u(rng), u(rng), u(rng));
      const EpaOffset d{u(rng), u(rng), u(rng)};
      const auto back = emotion_deflection(f, f - d);
      CHECK(back.e == doctest::Approx(d.e));
      CHECK(back.p == doctest::Approx(d.p));
      CHECK(back.a == doctest::Approx(d.a));
    }
  }
}

TEST_CASE("Lexicon invariants") {
  Lexicon lex;
  lex.add({"doctor", EpaVector(2.7, 3.0, 0.2), {}});
  CHECK_THROWS_AS(lex.add({"doctor", EpaVector(0, 0, 0), {}}), ValidationError);
  CHECK_NOTHROW(lex.add({"Doctor", EpaVector(0, 0, 0), {}}));  // case-sensitive
  CHECK_THROWS_AS(lex.add({"", EpaVector(0, 0, 0), {}}), ValidationError);
  CHECK_THROWS_AS(lex.add({"x", EpaVector(0, 0, 0), {-0.1, 0, 0}}), ValidationError);
  CHECK(lex.size() == 2);
  CHECK(lex.at("doctor").mean == EpaVector(2.7, 3.0, 0.2));
  CHECK_THROWS_AS(lex.at("nurse"), ValidationError);
}

TEST_CASE("nearest labels") {
  Lexicon lex;
  lex.add({"politician", EpaVector(-0.9, 2.3, 1.5), {}});
  lex.add({"doctor", EpaVector(2.7, 3.0, 0.2), {}});
  lex.add({"patient", EpaVector(0.6, -1.5, -1.3), {}});

  SUBCASE("politician is closest to (-1, 2, 2)") {
    const auto n = nearest_labels(lex, EpaVector(-1.0, 2.0, 2.0), 1);
    REQUIRE(n.size() == 1);
    CHECK(n[0].label == "politician");
    CHECK(n[0].distance == doctest::Approx(0.35));
  }
  SUBCASE("exact match ranks first with distance 0") {
    const auto n = nearest_labels(lex, EpaVector(2.7, 3.0, 0.2), 3);
    CHECK(n[0].label == "doctor");
    CHECK(n[0].distance == 0.0);
    CHECK(n[1].distance <= n[2].distance);
  }
  SUBCASE("ties break alphabetically") {
    Lexicon tie;
    tie.add({"zebra", EpaVector(1, 0, 0), {}});
    tie.add({"apple", EpaVector(-1, 0, 0), {}});
    const auto n = nearest_labels(tie, EpaVector(0, 0, 0), 2);
    CHECK(n[0].label == "apple");
    CHECK(n[1].label == "zebra");
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(nearest_labels(Lexicon{}, EpaVector(0, 0, 0), 1), NoCandidatesError);
    CHECK_THROWS_AS(nearest_labels(lex, EpaVector(0, 0, 0), 4), ValidationError);
    CHECK_THROWS_AS(nearest_labels(lex, EpaVector(0, 0, 0), 0), ValidationError);
  }
}

TEST_CASE("nearest-label ranking does not depend on the metric") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-4.3, 4.3);
  for (int trial = 0; trial < 50; ++trial) {
    Lexicon lex;
    for (int i = 0; i < 20; ++i) {
      lex.add({"w" + std::to_string(i), EpaVector(u(rng), u(rng), u(rng)), {}});
    }
    const EpaVector q(u(rng), u(rng), u(rng));
    const auto sq = nearest_labels(lex, q, lex.size(), Metric::squared_euclidean);
    const auto eu = nearest_labels(lex, q, lex.size(), Metric::euclidean);
    for (std::size_t i = 0; i < sq.size(); ++i) {
      CHECK(sq[i].label == eu[i].label);
      CHECK(eu[i].distance == doctest::Approx(std::sqrt(sq[i].distance)));
    }
  }
}
