#include "revcast/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <vector>

#include "revcast/errors.hpp"

namespace revcast {

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  for (const char c : line) {
    if (c == ',') {
      fields.push_back(field);
      field.clear();
    } else if (c != '\r') {
      field.push_back(c);
    }
  }
  fields.push_back(field);
  return fields;
}

std::string trimmed(const std::string& s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

int parse_year(const std::string& field, const std::string& origin,
               std::size_t line_no) {
  const std::string t = trimmed(field);
  int year = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), year);
  if (ec != std::errc{} || ptr != t.data() + t.size()) {
    throw Error(ErrorCode::malformed_input,
                origin + ":" + std::to_string(line_no) +
                    ": year column holds '" + field + "', not an integer");
  }
  return year;
}

double parse_cell(const std::string& field, const std::string& origin,
                  std::size_t line_no, const std::string& column) {
  const std::string t = trimmed(field);
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc{} || ptr != t.data() + t.size() ||
      !std::isfinite(value)) {
    throw Error(ErrorCode::malformed_input,
                origin + ":" + std::to_string(line_no) + ": column '" +
                    column + "' holds '" + field + "', not a finite number");
  }
  return value;
}

}  // namespace

const AnnualSeries& Dataset::at(const std::string& name) const {
  const auto it = series.find(name);
  if (it == series.end()) {
    throw Error(ErrorCode::invalid_argument,
                "dataset has no series named '" + name + "'");
  }
  return it->second;
}

bool Dataset::contains(const std::string& name) const {
  return series.find(name) != series.end();
}

Dataset parse_series_csv(const std::string& text, const std::string& origin) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) {
    throw Error(ErrorCode::malformed_input, origin + ": file is empty");
  }
  const std::vector<std::string> header = split_line(line);
  if (header.empty() || trimmed(header[0]) != "year") {
    throw Error(ErrorCode::malformed_input,
                origin + ": header must start with 'year'");
  }

  // Column index -> series name; provenance columns are left unnamed.
  std::vector<std::optional<std::string>> columns(header.size());
  std::size_t n_series = 0;
  for (std::size_t j = 1; j < header.size(); ++j) {
    const std::string name = trimmed(header[j]);
    if (name == "provenance") continue;
    if (name.empty()) {
      throw Error(ErrorCode::malformed_input,
                  origin + ": header column " + std::to_string(j + 1) +
                      " has no name");
    }
    for (std::size_t k = 1; k < j; ++k) {
      if (columns[k] && *columns[k] == name) {
        throw Error(ErrorCode::malformed_input,
                    origin + ": header names column '" + name + "' twice");
      }
    }
    columns[j] = name;
    ++n_series;
  }
  if (n_series == 0) {
    throw Error(ErrorCode::malformed_input,
                origin + ": header declares no series columns");
  }

  // year -> raw cells, kept per column so rows may arrive out of order.
  std::map<int, std::vector<std::optional<double>>> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trimmed(line).empty()) continue;
    const std::vector<std::string> fields = split_line(line);
    if (fields.size() != header.size()) {
      throw Error(ErrorCode::malformed_input,
                  origin + ":" + std::to_string(line_no) + ": expected " +
                      std::to_string(header.size()) + " fields, found " +
                      std::to_string(fields.size()));
    }
    const int year = parse_year(fields[0], origin, line_no);
    if (rows.count(year) != 0) {
      throw Error(ErrorCode::duplicate_cell,
                  origin + ":" + std::to_string(line_no) + ": year " +
                      std::to_string(year) + " appears twice");
    }
    std::vector<std::optional<double>> cells(header.size());
    for (std::size_t j = 1; j < fields.size(); ++j) {
      if (!columns[j]) continue;
      if (trimmed(fields[j]).empty()) continue;  // absent at this year
      cells[j] = parse_cell(fields[j], origin, line_no, *columns[j]);
    }
    rows.emplace(year, std::move(cells));
  }
  if (rows.empty()) {
    throw Error(ErrorCode::malformed_input, origin + ": no data rows");
  }

  // The year range must be contiguous.
  const int first_year = rows.begin()->first;
  const int last_year = rows.rbegin()->first;
  for (int year = first_year; year <= last_year; ++year) {
    if (rows.count(year) == 0) {
      throw Error(ErrorCode::year_gap, origin + ": year " +
                                           std::to_string(year) +
                                           " is missing from the year range " +
                                           std::to_string(first_year) + ".." +
                                           std::to_string(last_year));
    }
  }

  Dataset out;
  for (std::size_t j = 1; j < columns.size(); ++j) {
    if (!columns[j]) continue;
    const std::string& name = *columns[j];
    // Locate the contiguous non-empty run; holes inside it are gaps.
    int start = 0;
    std::vector<double> values;
    bool in_run = false;
    bool ended = false;
    for (const auto& [year, cells] : rows) {
      if (cells[j].has_value()) {
        if (ended) {
          throw Error(ErrorCode::year_gap,
                      origin + ": series '" + name +
                          "' has an interior gap before year " +
                          std::to_string(year));
        }
        if (!in_run) {
          start = year;
          in_run = true;
        }
        values.push_back(*cells[j]);
      } else if (in_run) {
        ended = true;
      }
    }
    if (values.empty()) {
      throw Error(ErrorCode::malformed_input,
                  origin + ": series '" + name + "' has no values");
    }
    out.series.emplace(name, AnnualSeries(start, std::move(values)));
    out.provenance.emplace(name, origin + ":" + name);
  }
  return out;
}

Dataset load_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::missing_file, "cannot open '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_series_csv(buffer.str(), path);
}

}  // namespace revcast
