#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace revcast {

// Machine-parsable failure categories. The CLI prints the kebab-case code on
// its own line before any human-readable detail, so scripts can branch on it
// without scraping prose.
enum class ErrorCode {
  insufficient_data,   // series/design too short for the requested operation
  arity_mismatch,      // two aligned inputs disagree in length or shape
  division_by_zero,    // a zero denominator (level, actual, loss spread, ...)
  singular_design,     // rank-deficient regression design
  invalid_nesting,     // F-test models are not properly nested
  degenerate_series,   // constant input where variation is required
  non_convergence,     // iterative fit exhausted its budget
  insufficient_context,// forecast anchor history too short
  selection_failure,   // every candidate in a model search failed
  alignment_mismatch,  // series do not share the required year coverage
  configuration,       // malformed scenario/spec inputs
  year_gap,            // non-consecutive years in a CSV
  duplicate_cell,      // repeated (series, year) assignment
  missing_file,        // input path does not exist / cannot be opened
  malformed_input,     // unparsable CSV cell, header, or key=value line
  invalid_argument,    // precondition violated (bad enum, negative order, ...)
  usage,               // CLI invocation error (exit code 2)
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }
  std::string_view code_name() const { return error_code_name(code_); }

 private:
  ErrorCode code_;
};

}  // namespace revcast
