#pragma once

#include "imds/claims.hpp"

#include <string>

namespace imds {

inline constexpr int report_schema_version = 1;
inline constexpr const char* tool_version = "0.1.0";

// All renderers produce deterministic key order; reruns of the same task
// differ only in the elapsed_ms values.

// Analysis of one matrix (the `check` command payload).
std::string check_report_json(const Matrix& a, bool pretty = true);

// A single search task with its outcome (the `search` command payload).
std::string search_report_json(const SearchTask& task, const SearchResult& result,
                               bool pretty = true);

// The claim suite (the `claims` command payload). `allow_inconclusive`
// only affects the advisory exit_hint field.
std::string claims_report_json(const std::vector<ClaimReport>& claims,
                               const ClaimSuiteOptions& opts,
                               bool allow_inconclusive = false,
                               bool pretty = true);

} // namespace imds
