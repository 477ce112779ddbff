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

#include "somatic/delimited.hpp"

#include <charconv>
#include <cmath>

namespace somatic::delimited {

std::optional<Record> Reader::next() {
  std::string physical;
  if (!std::getline(in_, physical)) return std::nullopt;
  ++line_;

  Record record;
  record.line = line_;
  std::string field;
  bool in_quotes = false;
  bool after_quote = false;

  while (true) {
    if (!physical.empty() && physical.back() == '\r') physical.pop_back();
    for (std::size_t i = 0; i < physical.size(); ++i) {
      const char c = physical[i];
      if (in_quotes) {
        if (c == '"') {
          if (i + 1 < physical.size() && physical[i + 1] == '"') {
            field.push_back('"');
            ++i;
          } else {
            in_quotes = false;
            after_quote = true;
          }
        } else {
          field.push_back(c);
        }
      } else if (c == ',') {
        record.fields.push_back(std::move(field));
        field.clear();
        after_quote = false;
      } else if (c == '"' && field.find_first_not_of(" \t") == std::string::npos && !after_quote) {
        field.clear();
        in_quotes = true;
      } else if (after_quote) {
        if (c != ' ' && c != '\t') record.malformed = true;
      } else {
        field.push_back(c);
      }
    }
    if (!in_quotes) break;
    // Quoted field continues on the next physical line.
    if (!std::getline(in_, physical)) {
      record.malformed = true;
      break;
    }
    ++line_;
    field.push_back('\n');
  }
  record.fields.push_back(std::move(field));
  return record;
}

std::string quote(std::string_view field) {
  const bool needs = field.find_first_of(",\"\r\n") != std::string_view::npos ||
                     (!field.empty() && (field.front() == ' ' || field.back() == ' ' ||
                                         field.front() == '\t' || field.back() == '\t'));
  if (!needs) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string format_number(double value) {
  if (value == 0.0) return "0";  // folds -0
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

std::optional<double> parse_number(std::string_view text) {
  const auto first = text.find_first_not_of(" \t");
  if (first == std::string_view::npos) return std::nullopt;
  const auto last = text.find_last_not_of(" \t");
  text = text.substr(first, last - first + 1);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value)) {
    return std::nullopt;
  }
  return value;
}

}  // namespace somatic::delimited
