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

#include "record_io.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "somatic/delimited.hpp"

namespace somatic::cli {

namespace {

using delimited::format_number;

struct Columns {
  std::vector<std::string> parameters;
  std::vector<std::string> outputs;
};

void add_unique(std::vector<std::string>& names, const std::string& name) {
  if (std::find(names.begin(), names.end(), name) == names.end()) names.push_back(name);
}

Columns columns_of(const std::vector<ExperimentRecord>& records) {
  Columns c;
  for (const auto& r : records) {
    for (const auto& p : r.parameters) add_unique(c.parameters, p.first);
    for (const auto& o : r.outputs) add_unique(c.outputs, o.first);
  }
  return c;
}

const double* lookup(const std::vector<std::pair<std::string, double>>& values,
                     const std::string& name) {
  for (const auto& [k, v] : values) {
    if (k == name) return &v;
  }
  return nullptr;
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  return out;
}

}  // namespace

void write_records_csv(const std::vector<ExperimentRecord>& records, std::ostream& out) {
  const auto cols = columns_of(records);
  out << "experiment,case";
  for (const auto& p : cols.parameters) out << ',' << delimited::quote(p);
  for (const auto& o : cols.outputs) out << ',' << delimited::quote(o);
  out << '\n';
  for (const auto& r : records) {
    out << delimited::quote(r.experiment) << ',' << delimited::quote(r.case_label);
    for (const auto& p : cols.parameters) {
      out << ',';
      if (const double* v = lookup(r.parameters, p)) out << format_number(*v);
    }
    for (const auto& o : cols.outputs) {
      out << ',';
      if (const double* v = lookup(r.outputs, o)) out << format_number(*v);
    }
    out << '\n';
  }
}

void write_records_json(const std::vector<ExperimentRecord>& records, std::ostream& out) {
  auto doc = nlohmann::ordered_json::array();
  for (const auto& r : records) {
    nlohmann::ordered_json obj;
    obj["experiment"] = r.experiment;
    obj["case"] = r.case_label;
    for (const auto& [k, v] : r.parameters) obj[k] = v;
    for (const auto& [k, v] : r.outputs) obj[k] = v;
    if (r.grid) {
      auto grid = nlohmann::ordered_json::array();
      for (const auto& g : *r.grid) grid.push_back({g.y, g.density});
      obj["grid"] = std::move(grid);
    }
    doc.push_back(std::move(obj));
  }
  out << doc.dump(1) << '\n';
}

void write_grid_csv(const std::vector<GridPoint>& grid, std::ostream& out) {
  out << "y,density\n";
  for (const auto& g : grid) out << format_number(g.y) << ',' << format_number(g.density) << '\n';
}

std::string sanitize(const std::string& case_label) {
  std::string out;
  for (char c : case_label) {
    const bool keep = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                      c == '.' || c == '-' || c == '_';
    out.push_back(keep ? c : '_');
  }
  return out;
}

std::vector<std::filesystem::path> write_experiment_files(
    const std::vector<ExperimentRecord>& records, const std::filesystem::path& path,
    Format format) {
  std::vector<std::filesystem::path> written;
  {
    auto out = open_for_write(path);
    if (format == Format::csv) {
      write_records_csv(records, out);
    } else {
      write_records_json(records, out);
    }
    if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
  }
  written.push_back(path);

  if (format == Format::csv) {
    for (const auto& r : records) {
      if (!r.grid) continue;
      auto grid_path = path.parent_path() /
                       (path.stem().string() + "_grid_" + sanitize(r.case_label) + ".csv");
      auto out = open_for_write(grid_path);
      write_grid_csv(*r.grid, out);
      if (!out) throw std::runtime_error("failed writing '" + grid_path.string() + "'");
      written.push_back(grid_path);
    }
  }
  return written;
}

void write_calibration(const CalibrationReport& report, const std::filesystem::path& path,
                       Format format) {
  auto out = open_for_write(path);
  const auto first = "p_wrong_step" + std::to_string(report.targets.first_step);
  const auto second = "p_wrong_step" + std::to_string(report.targets.second_step);
  if (format == Format::csv) {
    out << "stage,collapse,anchor_gap," << first << ',' << second << ",squared_error,selected\n";
    for (const auto& p : report.points) {
      const bool selected = p.stage == report.best.stage && p.collapse == report.best.collapse &&
                            p.gap == report.best.gap;
      out << p.stage << ',' << to_string(p.collapse) << ',' << format_number(p.gap) << ','
          << format_number(p.first_value) << ',' << format_number(p.second_value) << ','
          << format_number(p.squared_error) << ',' << (selected ? 1 : 0) << '\n';
    }
  } else {
    auto point = [&](const CalibrationPoint& p) {
      nlohmann::ordered_json j;
      j["stage"] = p.stage;
      j["collapse"] = to_string(p.collapse);
      j["anchor_gap"] = p.gap;
      j[first] = p.first_value;
      j[second] = p.second_value;
      j["squared_error"] = p.squared_error;
      return j;
    };
    nlohmann::ordered_json doc;
    doc["targets"] = {{first, report.targets.first_target},
                      {second, report.targets.second_target}};
    doc["selected"] = point(report.best);
    auto points = nlohmann::ordered_json::array();
    for (const auto& p : report.points) points.push_back(point(p));
    doc["points"] = std::move(points);
    out << doc.dump(1) << '\n';
  }
  if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

void print_summary(const std::vector<ExperimentRecord>& records, std::ostream& out) {
  const auto cols = columns_of(records);
  std::vector<std::string> header{"case"};
  header.insert(header.end(), cols.outputs.begin(), cols.outputs.end());

  std::vector<std::vector<std::string>> rows;
  for (const auto& r : records) {
    std::vector<std::string> row{r.case_label};
    for (const auto& o : cols.outputs) {
      std::ostringstream cell;
      cell.imbue(std::locale::classic());
      if (const double* v = lookup(r.outputs, o)) cell << std::setprecision(6) << *v;
      row.push_back(cell.str());
    }
    rows.push_back(std::move(row));
  }

  std::vector<std::size_t> width(header.size());
  for (std::size_t i = 0; i < header.size(); ++i) {
    width[i] = header[i].size();
    for (const auto& row : rows) width[i] = std::max(width[i], row[i].size());
  }
  auto emit = [&](const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      out << (i ? "  " : "");
      if (i + 1 == row.size()) {
        out << row[i];
      } else {
        out << std::left << std::setw(static_cast<int>(width[i])) << row[i];
      }
    }
    out << '\n';
  };
  emit(header);
  for (const auto& row : rows) emit(row);
}

}  // namespace somatic::cli
