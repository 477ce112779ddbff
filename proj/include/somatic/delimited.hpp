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
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace somatic::delimited {

/// One comma-separated record. `line` is the 1-based physical line on which
/// the record starts; quoted fields may span lines.
struct Record {
  std::size_t line = 0;
  std::vector<std::string> fields;
  bool malformed = false;  // unterminated quote or stray text after a closing quote
};

/// Reads comma-delimited records with standard double-quote escaping.
class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  /// Next record, or nullopt at end of input. Blank lines are returned as
  /// records with a single empty field.
  std::optional<Record> next();

 private:
  std::istream& in_;
  std::size_t line_ = 0;
};

/// Quotes `field` when it contains a comma, quote, CR/LF or edge whitespace.
std::string quote(std::string_view field);

/// Shortest decimal text that parses back to exactly `value`; `.` separator,
/// no locale.
std::string format_number(double value);

/// Strict locale-independent parse of a whole field; surrounding spaces are
/// allowed.
std::optional<double> parse_number(std::string_view text);

}  // namespace somatic::delimited
