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
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "somatic/epa.hpp"
#include "somatic/errors.hpp"

namespace somatic {

/// Lexicon files are UTF-8, comma-delimited with a header row:
///
///     label,e,p,a,sd_e,sd_p,sd_a
///
/// Columns are matched by name. label/e/p/a are required; missing sd columns
/// default to 0. Unknown columns are ignored. Both cases add a report note.

/// Fatal problem with the file as a whole (unreadable, missing header).
class LexiconFormatError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

struct LexiconReject {
  std::size_t line = 0;
  std::string reason;
};

struct LexiconFileReport {
  std::size_t data_lines = 0;
  std::size_t accepted = 0;
  std::vector<LexiconReject> rejects;
  std::vector<std::string> notes;
};

struct LoadedLexicon {
  Lexicon lexicon;
  LexiconFileReport report;
};

/// Per-line problems become rejects and loading continues.
LoadedLexicon load_lexicon(std::istream& in);
LoadedLexicon load_lexicon(const std::filesystem::path& path);

void save_lexicon(const Lexicon& lexicon, std::ostream& out);
void save_lexicon(const Lexicon& lexicon, const std::filesystem::path& path);

}  // namespace somatic
