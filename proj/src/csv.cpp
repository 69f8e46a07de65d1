#include "entbound/csv.hpp"

#include <charconv>
#include <ostream>
#include <stdexcept>

namespace entbound::csv {

std::string format_double(double value) {
  if (value == 0.0) value = 0.0;  // collapse -0
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  if (ec != std::errc())
    throw std::runtime_error("csv: failed to format a double");
  return std::string(buffer, ptr);
}

std::string escape_field(const std::string& field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
  std::string quoted = "\"";
  for (const char c : field) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

const char* const report_columns[12] = {"hxx",      "hzz",      "q_mu",    "q_pn",
                                        "q_c",      "q_fsd",    "bound_mu", "bound_pn",
                                        "bound_c",  "bound_fsd", "true_neg_hab", nullptr};

namespace {

void write_row(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out << ',';
    out << escape_field(fields[i]);
  }
  out << '\n';
}

std::string optional_field(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string();
}

}  // namespace

void write_reports(std::ostream& out,
                   const std::vector<std::pair<std::string, std::string>>& header_info,
                   const std::vector<BoundReport>& reports) {
  for (const auto& [key, value] : header_info) out << "# " << key << " = " << value << '\n';
  if (reports.empty()) throw std::invalid_argument("csv: no rows to write");
  std::vector<std::string> header;
  for (const auto& [key, value] : reports.front().meta) header.push_back(key);
  for (int i = 0; report_columns[i] != nullptr; ++i) header.push_back(report_columns[i]);
  write_row(out, header);
  for (const BoundReport& r : reports) {
    if (r.meta.size() != reports.front().meta.size())
      throw std::invalid_argument("csv: rows carry inconsistent meta columns");
    std::vector<std::string> fields;
    fields.reserve(header.size());
    for (const auto& [key, value] : r.meta) fields.push_back(value);
    fields.push_back(format_double(r.hxx));
    fields.push_back(format_double(r.hzz));
    fields.push_back(format_double(r.q_mu));
    fields.push_back(optional_field(r.q_pn));
    fields.push_back(format_double(r.q_c));
    fields.push_back(format_double(r.q_fsd));
    fields.push_back(format_double(r.bound_mu));
    fields.push_back(optional_field(r.bound_pn));
    fields.push_back(format_double(r.bound_c));
    fields.push_back(format_double(r.bound_fsd));
    fields.push_back(optional_field(r.true_neg_hab));
    write_row(out, fields);
  }
}

}  // namespace entbound::csv
