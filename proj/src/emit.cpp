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

#include "gds/emit.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <tuple>

#include <json.hpp>

#include "gds/error.hpp"

namespace gds {

using nlohmann::json;

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, sep)) out.push_back(field);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool parse_number(const std::string& text, double& out) {
  const std::string t = trim(text);
  if (t == "nan" || t == "NaN") {
    out = std::numeric_limits<double>::quiet_NaN();
    return true;
  }
  const char* begin = t.data();
  const char* end = t.data() + t.size();
  if (begin != end && *begin == '+') ++begin;
  auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc() && ptr == end && begin != end;
}

double number_or_throw(const std::string& text, std::size_t line_no) {
  double v = 0.0;
  if (!parse_number(text, v)) {
    throw Error(ErrorKind::kIo, "line " + std::to_string(line_no) + ": cannot parse '" + text + "'");
  }
  return v;
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

void write_cells_csv(std::ostream& os, const std::vector<CellResult>& cells) {
  os << kCellCsvHeader << '\n';
  for (const CellResult& c : cells) {
    os << to_string(c.distribution) << ',' << format_double(c.k_fraction) << ',' << c.m << ','
       << format_double(c.p) << ',' << c.trial << ',' << format_double(c.mse) << '\n';
  }
}

std::vector<CellResult> read_cells_csv(std::istream& is) {
  std::vector<CellResult> cells;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty()) continue;
    if (line_no == 1 && line == kCellCsvHeader) continue;
    const auto f = split(line, ',');
    if (f.size() != 6) {
      throw Error(ErrorKind::kIo, "line " + std::to_string(line_no) + ": expected 6 fields");
    }
    CellResult c{};
    try {
      c.distribution = parse_distribution(trim(f[0]));
    } catch (const Error& e) {
      throw Error(ErrorKind::kIo, "line " + std::to_string(line_no) + ": " + e.what());
    }
    c.k_fraction = number_or_throw(f[1], line_no);
    c.m = static_cast<int>(number_or_throw(f[2], line_no));
    c.p = number_or_throw(f[3], line_no);
    c.trial = static_cast<std::size_t>(number_or_throw(f[4], line_no));
    c.mse = number_or_throw(f[5], line_no);
    cells.push_back(c);
  }
  return cells;
}

void write_aggregates_csv(std::ostream& os, const std::vector<AggregateRow>& rows) {
  os << "distribution,k_fraction,m,p,mean_mse,median_mse,count,failures\n";
  for (const AggregateRow& r : rows) {
    os << to_string(r.distribution) << ',' << format_double(r.k_fraction) << ',' << r.m << ','
       << format_double(r.p) << ',' << format_double(r.mean_mse) << ','
       << format_double(r.median_mse) << ',' << r.count << ',' << r.failures << '\n';
  }
}

void write_heatmap(std::ostream& os, const std::vector<AggregateRow>& rows) {
  os << "# distribution k_fraction p m mean_mse median_mse\n";
  // Panels keep grid order; inside a panel rows are sorted by (p, M).
  std::vector<const AggregateRow*> sorted;
  sorted.reserve(rows.size());
  for (const AggregateRow& r : rows) sorted.push_back(&r);
  std::stable_sort(sorted.begin(), sorted.end(), [](const AggregateRow* a, const AggregateRow* b) {
    return std::tie(a->distribution, a->k_fraction, a->p, a->m) <
           std::tie(b->distribution, b->k_fraction, b->p, b->m);
  });
  const AggregateRow* prev = nullptr;
  for (const AggregateRow* r : sorted) {
    if (prev != nullptr) {
      const bool new_panel = prev->distribution != r->distribution || prev->k_fraction != r->k_fraction;
      if (new_panel) {
        os << "\n\n";
      } else if (prev->p != r->p) {
        os << '\n';
      }
    }
    os << to_string(r->distribution) << ' ' << format_double(r->k_fraction) << ' '
       << format_double(r->p) << ' ' << r->m << ' ' << format_double(r->mean_mse) << ' '
       << format_double(r->median_mse) << '\n';
    prev = r;
  }
}

void write_curve(std::ostream& os, const std::vector<CurvePoint>& curve, std::string_view x_label) {
  os << "# " << x_label << " mean_optimal_p cells\n";
  for (const CurvePoint& pt : curve) {
    os << format_double(pt.x) << ' ' << format_double(pt.mean_optimal_p) << ' ' << pt.cells << '\n';
  }
}

std::string criteria_report_json(const std::vector<CriterionReport>& reports) {
  json doc = json::object();
  for (const CriterionReport& r : reports) {
    doc[std::string(label(r.criterion))] = {
        {"name", std::string(description(r.criterion))},
        {"trials", r.trials},
        {"violations", r.violations},
        {"worst_margin", r.worst_margin},
    };
  }
  return doc.dump(2);
}

std::vector<CriterionReport> parse_criteria_report(std::string_view text) {
  std::vector<CriterionReport> reports;
  try {
    const json doc = json::parse(text);
    for (Criterion c : kAllCriteria) {
      const auto it = doc.find(std::string(label(c)));
      if (it == doc.end()) continue;
      reports.push_back({c, it->at("trials").get<std::size_t>(),
                         it->at("violations").get<std::size_t>(),
                         it->at("worst_margin").get<double>()});
    }
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kIo, std::string("criteria report: ") + e.what());
  }
  return reports;
}

SpsaConfig parse_spsa_config(std::string_view text, SpsaConfig cfg) {
  try {
    const json j = json::parse(text);
    cfg.iterations = j.value("iterations", cfg.iterations);
    cfg.a = j.value("a", cfg.a);
    cfg.first_step = j.value("first_step", cfg.first_step);
    cfg.stability = j.value("stability", cfg.stability);
    cfg.alpha = j.value("alpha", cfg.alpha);
    cfg.c = j.value("c", cfg.c);
    cfg.gamma = j.value("gamma", cfg.gamma);
    cfg.restarts = j.value("restarts", cfg.restarts);
    cfg.restart_spread = j.value("restart_spread", cfg.restart_spread);
    cfg.seed = j.value("seed", cfg.seed);
    cfg.polish = j.value("polish", cfg.polish);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kBadConfig, std::string("spsa config: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

ExperimentGrid parse_grid_config(std::string_view text) {
  ExperimentGrid g = ExperimentGrid::desk_scale();
  try {
    const json j = json::parse(text);
    g.n = j.value("n", g.n);
    if (j.contains("distributions")) {
      g.distributions.clear();
      for (const auto& name : j.at("distributions")) {
        g.distributions.push_back(parse_distribution(name.get<std::string>()));
      }
    }
    g.k_fractions = j.value("k_fractions", g.k_fractions);
    g.m_values = j.value("m_values", g.m_values);
    g.p_values = j.value("p_values", g.p_values);
    g.trials = j.value("trials", g.trials);
    g.base_seed = j.value("base_seed", g.base_seed);
    if (j.contains("spsa")) g.spsa = parse_spsa_config(j.at("spsa").dump(), g.spsa);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kBadConfig, std::string("grid config: ") + e.what());
  }
  g.validate();
  return g;
}

Eigen::MatrixXd read_numeric_csv(std::istream& is) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split(trim(line), ',');
    std::vector<double> row;
    bool numeric = true;
    for (const auto& f : fields) {
      double v = 0.0;
      if (!parse_number(f, v)) {
        numeric = false;
        break;
      }
      row.push_back(v);
    }
    if (!numeric) {
      if (rows.empty() && line_no == 1) continue;  // header
      throw Error(ErrorKind::kIo, "line " + std::to_string(line_no) + ": non-numeric field");
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw Error(ErrorKind::kIo, "line " + std::to_string(line_no) + ": ragged row");
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw Error(ErrorKind::kIo, "no numeric rows");
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t k = 0; k < rows[i].size(); ++k) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = rows[i][k];
    }
  }
  return m;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot open '" + path.string() + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::kIo, "cannot open '" + path.string() + "' for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw Error(ErrorKind::kIo, "write to '" + path.string() + "' failed");
}

}  // namespace gds
