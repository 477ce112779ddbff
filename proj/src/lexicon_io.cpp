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

#include "somatic/lexicon_io.hpp"

#include <array>
#include <fstream>
#include <map>
#include <optional>

#include "somatic/delimited.hpp"

namespace somatic {

namespace {

constexpr std::array<const char*, 7> kColumns = {"label", "e", "p", "a", "sd_e", "sd_p", "sd_a"};

std::string trimmed(const std::string& s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string::npos) return {};
  return s.substr(first, s.find_last_not_of(" \t") - first + 1);
}

bool is_blank(const delimited::Record& r) {
  return r.fields.size() == 1 && trimmed(r.fields[0]).empty();
}

}  // namespace

LoadedLexicon load_lexicon(std::istream& in) {
  delimited::Reader reader(in);
  LoadedLexicon result;
  auto& report = result.report;

  std::optional<delimited::Record> header;
  while ((header = reader.next()) && is_blank(*header)) {
  }
  if (!header) throw LexiconFormatError("lexicon file is empty (no header)");
  if (header->malformed) throw LexiconFormatError("lexicon header is malformed");

  auto& first = header->fields.front();
  if (first.rfind("\xEF\xBB\xBF", 0) == 0) first.erase(0, 3);

  // Column index per known name; -1 when absent.
  std::array<long, kColumns.size()> column{};
  column.fill(-1);
  std::vector<std::string> extras;
  for (std::size_t i = 0; i < header->fields.size(); ++i) {
    const auto name = trimmed(header->fields[i]);
    bool known = false;
    for (std::size_t c = 0; c < kColumns.size(); ++c) {
      if (name == kColumns[c]) {
        if (column[c] >= 0) throw LexiconFormatError("duplicate header column '" + name + "'");
        column[c] = static_cast<long>(i);
        known = true;
      }
    }
    if (!known) extras.push_back(name);
  }
  for (std::size_t c = 0; c < 4; ++c) {
    if (column[c] < 0) {
      throw LexiconFormatError(std::string("lexicon header lacks required column '") +
                               kColumns[c] + "'");
    }
  }
  for (std::size_t c = 4; c < kColumns.size(); ++c) {
    if (column[c] < 0) {
      report.notes.push_back(std::string("column '") + kColumns[c] + "' absent; defaulting to 0");
    }
  }
  for (const auto& extra : extras) {
    report.notes.push_back("ignoring unknown column '" + extra + "'");
  }

  std::map<std::string, std::size_t> first_line;
  while (auto record = reader.next()) {
    if (is_blank(*record)) continue;
    ++report.data_lines;
    auto reject = [&](std::string reason) {
      report.rejects.push_back({record->line, std::move(reason)});
    };

    if (record->malformed) {
      reject("malformed quoting");
      continue;
    }
    if (record->fields.size() != header->fields.size()) {
      reject("expected " + std::to_string(header->fields.size()) + " fields, found " +
             std::to_string(record->fields.size()));
      continue;
    }

    const std::string label = record->fields[static_cast<std::size_t>(column[0])];
    if (label.empty()) {
      reject("empty label");
      continue;
    }

    std::array<double, 6> values{};
    std::string problem;
    for (std::size_t c = 1; c < kColumns.size() && problem.empty(); ++c) {
      if (column[c] < 0) continue;
      const auto& text = record->fields[static_cast<std::size_t>(column[c])];
      if (c >= 4 && trimmed(text).empty()) continue;  // blank sd reads as 0
      const auto v = delimited::parse_number(text);
      if (!v) {
        problem = std::string("non-numeric ") + kColumns[c] + " value '" + text + "'";
      } else {
        values[c - 1] = *v;
      }
    }
    if (!problem.empty()) {
      reject(problem);
      continue;
    }
    if (!EpaVector::in_range(values[0]) || !EpaVector::in_range(values[1]) ||
        !EpaVector::in_range(values[2])) {
      reject("out-of-range EPA value (must lie in [-4.3, 4.3])");
      continue;
    }
    if (values[3] < 0.0 || values[4] < 0.0 || values[5] < 0.0) {
      reject("negative standard deviation");
      continue;
    }
    if (auto it = first_line.find(label); it != first_line.end()) {
      reject("duplicate label '" + label + "' (first defined on line " +
             std::to_string(it->second) + ")");
      continue;
    }

    first_line.emplace(label, record->line);
    result.lexicon.add({label, EpaVector(values[0], values[1], values[2]),
                        EpaSpread{values[3], values[4], values[5]}});
    ++report.accepted;
  }
  return result;
}

LoadedLexicon load_lexicon(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LexiconFormatError("cannot open lexicon file '" + path.string() + "'");
  return load_lexicon(in);
}

void save_lexicon(const Lexicon& lexicon, std::ostream& out) {
  out << "label,e,p,a,sd_e,sd_p,sd_a\n";
  using delimited::format_number;
  for (const auto& entry : lexicon.entries()) {
    out << delimited::quote(entry.label) << ',' << format_number(entry.mean.e()) << ','
        << format_number(entry.mean.p()) << ',' << format_number(entry.mean.a()) << ','
        << format_number(entry.sd.e) << ',' << format_number(entry.sd.p) << ','
        << format_number(entry.sd.a) << '\n';
  }
  if (!out) throw std::runtime_error("failed to write lexicon");
}

void save_lexicon(const Lexicon& lexicon, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  save_lexicon(lexicon, out);
}

}  // namespace somatic
