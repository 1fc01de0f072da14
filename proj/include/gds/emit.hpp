// Copyright 2026 The GDS Sparsity Authors.
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

// File surfaces: result tables (CSV), criterion reports and configs (JSON),
// and whitespace-separated heatmap/curve data for gnuplot.

#ifndef GDS_EMIT_HPP_
#define GDS_EMIT_HPP_

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "gds/criteria.hpp"
#include "gds/experiment.hpp"

namespace gds {

inline constexpr std::string_view kCellCsvHeader = "distribution,k_fraction,m,p,trial,mse";

// Shortest round-trip decimal form; "nan" for NaN.
std::string format_double(double v);

void write_cells_csv(std::ostream& os, const std::vector<CellResult>& cells);
// Parses the format written above. Throws kIo on malformed input.
std::vector<CellResult> read_cells_csv(std::istream& is);

void write_aggregates_csv(std::ostream& os, const std::vector<AggregateRow>& rows);

// One line per (p, M) cell of each (distribution, K) panel; blank lines
// separate scans of constant p.
void write_heatmap(std::ostream& os, const std::vector<AggregateRow>& rows);

void write_curve(std::ostream& os, const std::vector<CurvePoint>& curve, std::string_view x_label);

std::string criteria_report_json(const std::vector<CriterionReport>& reports);
std::vector<CriterionReport> parse_criteria_report(std::string_view json);

// JSON mirroring ExperimentGrid and SpsaConfig; absent keys keep the
// desk-scale defaults. Throws kBadConfig on invalid input.
ExperimentGrid parse_grid_config(std::string_view json);
SpsaConfig parse_spsa_config(std::string_view json, SpsaConfig base = {});

// Numeric CSV; a leading non-numeric row is taken as a header.
// Throws kIo when a cell cannot be parsed or rows are ragged.
Eigen::MatrixXd read_numeric_csv(std::istream& is);

std::string read_file(const std::filesystem::path& path);
// Throws kIo with the path in the message.
void write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace gds

#endif  // GDS_EMIT_HPP_
