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

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "somatic/experiments.hpp"
#include "somatic/sequential.hpp"

namespace somatic::cli {

enum class Format { csv, json };

/// Header: experiment,case,<parameters...>,<outputs...>; columns are the
/// union over all records in first-seen order, absent cells left empty.
void write_records_csv(const std::vector<ExperimentRecord>& records, std::ostream& out);

/// Array of flat objects with the same columns as the CSV, plus a "grid"
/// array of [y, density] pairs when the record carries one.
void write_records_json(const std::vector<ExperimentRecord>& records, std::ostream& out);

void write_grid_csv(const std::vector<GridPoint>& grid, std::ostream& out);

/// File-name-safe version of a case label.
std::string sanitize(const std::string& case_label);

/// Writes the records file at `path` and, for CSV, one `<stem>_grid_<case>.csv`
/// per record carrying a grid. Returns every path written.
std::vector<std::filesystem::path> write_experiment_files(
    const std::vector<ExperimentRecord>& records, const std::filesystem::path& path,
    Format format);

void write_calibration(const CalibrationReport& report, const std::filesystem::path& path,
                       Format format);

/// Human-readable table of case labels and outputs.
void print_summary(const std::vector<ExperimentRecord>& records, std::ostream& out);

}  // namespace somatic::cli
