#include "desoc/result_table.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <system_error>

#include <unistd.h>

#include "desoc/error.hpp"

namespace desoc::io {

ResultTable::ResultTable(std::vector<std::string> header) : header_(std::move(header)) {
  if (header_.empty()) {
    throw Error(ErrorCode::InvalidArgument, "table needs at least one column");
  }
}

void ResultTable::add_row(std::vector<Cell> row) {
  if (row.size() != header_.size()) {
    throw Error(ErrorCode::DimensionMismatch, "row has " + std::to_string(row.size()) + " cells, header has " +
                                                  std::to_string(header_.size()));
  }
  rows_.push_back(std::move(row));
}

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.10g", x);
  return buf;
}

std::string ResultTable::to_csv() const {
  std::string out;
  for (std::size_t i = 0; i < header_.size(); ++i) {
    out += (i ? "," : "") + header_[i];
  }
  out += "\n";
  for (const auto& row : rows_) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) {
        out += ",";
      }
      if (const double* d = std::get_if<double>(&row[i])) {
        out += format_number(*d);
      } else if (const long long* n = std::get_if<long long>(&row[i])) {
        out += std::to_string(*n);
      } else {
        out += std::get<std::string>(row[i]);
      }
    }
    out += "\n";
  }
  return out;
}

void write_file_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  const fs::path tmp = target.parent_path() / ("." + target.filename().string() + ".tmp" + std::to_string(::getpid()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw Error(ErrorCode::IoError, "cannot write '" + tmp.string() + "'");
    }
    out << content;
    out.flush();
    if (!out) {
      throw Error(ErrorCode::IoError, "write failed for '" + tmp.string() + "'");
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error(ErrorCode::IoError, "cannot move output into place at '" + path + "'");
  }
}

}  // namespace desoc::io
