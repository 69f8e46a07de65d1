#pragma once

#include "entbound/bounds.hpp"

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace entbound::csv {

// Shortest representation that round-trips to the same double, so rewriting
// a file from the same numbers is byte-identical.
std::string format_double(double value);

// RFC-4180 quoting: fields containing comma, quote or newline get quoted,
// embedded quotes doubled.
std::string escape_field(const std::string& field);

// Fixed report column tail; preceded by whatever meta columns the rows carry.
extern const char* const report_columns[12];

// Header comment block ("# key = value" lines), then one header row, then one
// row per report. Every row must carry the same meta keys in the same order.
void write_reports(std::ostream& out,
                   const std::vector<std::pair<std::string, std::string>>& header_info,
                   const std::vector<BoundReport>& reports);

}  // namespace entbound::csv
