#pragma once

#include <map>
#include <string>

#include "revcast/series.hpp"

namespace revcast {

/// A bundle of named annual series loaded from one source, with a
/// human-readable provenance note per series.
struct Dataset {
  std::map<std::string, AnnualSeries> series;
  std::map<std::string, std::string> provenance;

  const AnnualSeries& at(const std::string& name) const;
  bool contains(const std::string& name) const;
};

/// Parses the SERIES CSV format: header `year,<name1>,<name2>,...`, one row
/// per year, `.` decimal separator, empty cell = series absent that year
/// (allowed only at the edges of a column). A column literally named
/// `provenance` carries per-row source notes and is skipped. Rows may appear
/// in any order; the year range must be contiguous once sorted.
///
/// `origin` labels error messages and provenance notes (typically the file
/// path, or a fixture tag for embedded text).
Dataset parse_series_csv(const std::string& text, const std::string& origin);

/// Reads a SERIES CSV file. Throws missing-file if it cannot be opened.
Dataset load_csv(const std::string& path);

}  // namespace revcast
