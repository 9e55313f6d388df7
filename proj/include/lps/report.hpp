#pragma once

#include "lps/config.hpp"

#include <cstdint>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace lps {

using Cell = std::variant<std::string, double, std::int64_t, bool>;

/// Row-oriented report: CSV with a fixed column order, or one JSON object
/// per line. Floats are written with 17 significant digits so identical
/// runs produce identical bytes.
class ReportWriter {
 public:
  /// `timestamp` is written as a leading comment/metadata line when non-empty.
  ReportWriter(std::ostream& out, ReportFormat format, std::string task, std::vector<std::string> columns,
               const std::string& timestamp);

  void row(const std::vector<Cell>& cells);
  std::size_t rows() const { return rows_; }

 private:
  std::ostream& out_;
  ReportFormat format_;
  std::vector<std::string> columns_;
  std::size_t rows_ = 0;
};

std::string format_double(double v);
std::string json_escape(const std::string& s);

}  // namespace lps
