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

#include <filesystem>
#include <random>
#include <sstream>

#include "somatic/delimited.hpp"
#include "somatic/lexicon_io.hpp"

using namespace somatic;

namespace {

LoadedLexicon load_text(const std::string& text) {
  std::istringstream in(text);
  return load_lexicon(in);
}

std::string save_text(const Lexicon& lex) {
  std::ostringstream out;
  save_lexicon(lex, out);
  return out.str();
}

bool has_reason(const LexiconFileReport& r, std::size_t line, const std::string& fragment) {
  for (const auto& rej : r.rejects) {
    if (rej.line == line && rej.reason.find(fragment) != std::string::npos) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("delimited records") {
  std::istringstream in("a,\"b,c\",d\r\n\"multi\nline\",x\n\n\"open,1\n");
  delimited::Reader r(in);
  auto rec = r.next();
  REQUIRE(rec);
  CHECK(rec->line == 1);
  CHECK(rec->fields == std::vector<std::string>{"a", "b,c", "d"});
  rec = r.next();
  CHECK(rec->line == 2);
  CHECK(rec->fields == std::vector<std::string>{"multi\nline", "x"});
  rec = r.next();
  CHECK(rec->fields == std::vector<std::string>{""});
  rec = r.next();
  CHECK(rec->malformed);
  CHECK_FALSE(r.next());

  CHECK(delimited::quote("plain") == "plain");
  CHECK(delimited::quote("a,b") == "\"a,b\"");
  CHECK(delimited::quote("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CHECK(delimited::format_number(0.1) == "0.1");
  CHECK(delimited::format_number(-0.0) == "0");
  CHECK(delimited::parse_number(" -1.5 ") == -1.5);
  CHECK(delimited::parse_number("+2") == 2.0);
  CHECK_FALSE(delimited::parse_number("1.5x"));
  CHECK_FALSE(delimited::parse_number(""));
}

TEST_CASE("loading a well-formed lexicon") {
  const auto loaded = load_text(
      "label,e,p,a,sd_e,sd_p,sd_a\n"
      "doctor,2.7,3.0,0.2,1.1,1.4,1.2\n"
      "\"anxious student\",-0.23,-0.04,1.16,0,0,0\n");
  CHECK(loaded.report.data_lines == 2);
  CHECK(loaded.report.accepted == 2);
  CHECK(loaded.report.rejects.empty());
  CHECK(loaded.report.notes.empty());
  const auto& doc = loaded.lexicon.at("doctor");
  CHECK(doc.mean == EpaVector(2.7, 3.0, 0.2));
  CHECK(doc.sd == EpaSpread{1.1, 1.4, 1.2});
  CHECK(loaded.lexicon.contains("anxious student"));
}

TEST_CASE("per-line rejects") {
  const auto loaded = load_text(
      "label,e,p,a\n"
      "thing,9.9,0,0\n"
      "doctor,2.7,3.0,0.2\n"
      "doctor,1,1,1\n"
      "short,1,2\n"
      "word,1,two,3\n"
      ",1,2,3\n"
      "\n"
      "\"broken,1,2,3\n");
  const auto& r = loaded.report;
  CHECK(r.data_lines == 7);
  CHECK(r.accepted == 1);
  CHECK(has_reason(r, 2, "out-of-range"));
  CHECK(has_reason(r, 4, "duplicate label 'doctor' (first defined on line 3)"));
  CHECK(has_reason(r, 5, "expected 4 fields"));
  CHECK(has_reason(r, 6, "non-numeric"));
  CHECK(has_reason(r, 7, "empty label"));
  CHECK(has_reason(r, 9, "malformed"));
  CHECK(r.accepted + r.rejects.size() == r.data_lines);
  CHECK(loaded.lexicon.at("doctor").mean == EpaVector(2.7, 3.0, 0.2));
}

TEST_CASE("negative spread and blank spread") {
  const auto loaded = load_text(
      "label,e,p,a,sd_e,sd_p,sd_a\n"
      "x,0,0,0,-1,0,0\n"
      "y,0,0,0,,,\n");
  CHECK(has_reason(loaded.report, 2, "negative"));
  CHECK(loaded.lexicon.at("y").sd == EpaSpread{});
}

TEST_CASE("header handling") {
  CHECK_THROWS_AS(load_text(""), LexiconFormatError);
  CHECK_THROWS_AS(load_text("label,e,p\nx,1,2\n"), LexiconFormatError);
  CHECK_THROWS_AS(load_text("lbl,e,p,a\nx,1,2,3\n"), LexiconFormatError);
  CHECK_THROWS_AS(load_text("label,e,e,p,a\n"), LexiconFormatError);
  CHECK_THROWS_AS(load_lexicon(std::filesystem::path("/nonexistent/lexicon.csv")),
                  LexiconFormatError);

  const auto shuffled = load_text("\xEF\xBB\xBF" "a,label,p,e,source\n1,x,2,3,survey\n");
  CHECK(shuffled.lexicon.at("x").mean == EpaVector(3, 2, 1));
  CHECK(shuffled.report.notes.size() == 4);
  CHECK(shuffled.report.notes.back() == "ignoring unknown column 'source'");
}

TEST_CASE("saving") {
  CHECK(save_text(Lexicon{}) == "label,e,p,a,sd_e,sd_p,sd_a\n");
  Lexicon lex;
  lex.add({"boss, acting", EpaVector(0.1, 2.5, -0.3), EpaSpread{0.5, 0, 0}});
  CHECK(save_text(lex) == "label,e,p,a,sd_e,sd_p,sd_a\n\"boss, acting\",0.1,2.5,-0.3,0.5,0,0\n");
  CHECK(load_text(save_text(lex)).lexicon == lex);
}

TEST_CASE("file round trip") {
  const auto path = std::filesystem::temp_directory_path() / "somatic_lexicon_io_test.csv";
  Lexicon lex;
  lex.add({"iPhone", EpaVector(1.32, 1.62, 1.48), EpaSpread{}});
  save_lexicon(lex, path);
  CHECK(load_lexicon(path).lexicon == lex);
  std::filesystem::remove(path);
}

TEST_CASE("randomized round trip") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> coord(-4.3, 4.3);
  std::uniform_real_distribution<double> spread(0.0, 3.0);
  std::uniform_int_distribution<int> count(0, 30);
  std::uniform_int_distribution<int> ch(0, 9);
  const std::string alphabet[] = {"a", "Z", " ", ",", "\"", "\n", "é", "7", "-", "x"};
  for (int trial = 0; trial < 100; ++trial) {
    Lexicon lex;
    const int n = count(rng);
    for (int i = 0; i < n; ++i) {
      std::string label = "w" + std::to_string(i);
      for (int k = ch(rng); k > 0; --k) label += alphabet[ch(rng)];
      lex.add({label, EpaVector(coord(rng), coord(rng), coord(rng)),
               EpaSpread{spread(rng), spread(rng), spread(rng)}});
    }
    const auto text = save_text(lex);
    const auto back = load_text(text);
    CHECK(back.lexicon == lex);
    CHECK(back.report.rejects.empty());
    CHECK(save_text(back.lexicon) == text);
  }
}
