#include "lps/report.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace lps {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  out += '"';
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  out += '"';
  return out;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

std::string render(const Cell& c, bool json) {
  if (const auto* s = std::get_if<std::string>(&c)) return json ? json_escape(*s) : csv_field(*s);
  if (const auto* d = std::get_if<double>(&c)) {
    if (json && !std::isfinite(*d)) return "null";
    return format_double(*d);
  }
  if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
  return std::get<bool>(c) ? "true" : "false";
}

}  // namespace

ReportWriter::ReportWriter(std::ostream& out, ReportFormat format, std::string task, std::vector<std::string> columns,
                           const std::string& timestamp)
    : out_(out), format_(format), columns_(std::move(columns)) {
  if (format_ == ReportFormat::csv) {
    if (!timestamp.empty()) out_ << "# lps " << task << " generated " << timestamp << '\n';
    for (std::size_t i = 0; i < columns_.size(); ++i) out_ << (i ? "," : "") << csv_field(columns_[i]);
    out_ << '\n';
  } else {
    out_ << "{\"task\":" << json_escape(task);
    if (!timestamp.empty()) out_ << ",\"generated\":" << json_escape(timestamp);
    out_ << ",\"columns\":[";
    for (std::size_t i = 0; i < columns_.size(); ++i) out_ << (i ? "," : "") << json_escape(columns_[i]);
    out_ << "]}\n";
  }
}

void ReportWriter::row(const std::vector<Cell>& cells) {
  if (cells.size() != columns_.size()) throw std::logic_error("report row has the wrong number of cells");
  if (format_ == ReportFormat::csv) {
    for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << render(cells[i], false);
  } else {
    out_ << '{';
    for (std::size_t i = 0; i < cells.size(); ++i)
      out_ << (i ? "," : "") << json_escape(columns_[i]) << ':' << render(cells[i], true);
    out_ << '}';
  }
  out_ << '\n';
  ++rows_;
}

}  // namespace lps
