#include "revcast/errors.hpp"

namespace revcast {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::insufficient_data: return "insufficient-data";
    case ErrorCode::arity_mismatch: return "arity-mismatch";
    case ErrorCode::division_by_zero: return "division-by-zero";
    case ErrorCode::singular_design: return "singular-design";
    case ErrorCode::invalid_nesting: return "invalid-nesting";
    case ErrorCode::degenerate_series: return "degenerate-series";
    case ErrorCode::non_convergence: return "non-convergence";
    case ErrorCode::insufficient_context: return "insufficient-context";
    case ErrorCode::selection_failure: return "selection-failure";
    case ErrorCode::alignment_mismatch: return "alignment-mismatch";
    case ErrorCode::configuration: return "configuration";
    case ErrorCode::year_gap: return "year-gap";
    case ErrorCode::duplicate_cell: return "duplicate-cell";
    case ErrorCode::missing_file: return "missing-file";
    case ErrorCode::malformed_input: return "malformed-input";
    case ErrorCode::invalid_argument: return "invalid-argument";
    case ErrorCode::usage: return "usage";
  }
  return "unknown";
}

}  // namespace revcast
