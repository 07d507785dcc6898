#pragma once

#include <string>
#include <variant>
#include <vector>

namespace desoc::io {

/// Comma-separated table with a header row. Numbers are written with 10 significant digits.
class ResultTable {
 public:
  using Cell = std::variant<double, long long, std::string>;

  explicit ResultTable(std::vector<std::string> header);

  void add_row(std::vector<Cell> row);
  const std::vector<std::string>& header() const { return header_; }
  std::size_t num_rows() const { return rows_.size(); }
  std::string to_csv() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<Cell>> rows_;
};

std::string format_number(double x);

/// Writes `content` to a sibling temporary file, then renames it over `path`.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace desoc::io
