#pragma once

#include <map>
#include <string>
#include <vector>

#include "glab/seqcore.hpp"

namespace glab {

// CSV with '#'-prefixed comment header lines (the effective config), one
// column-name row, then data rows.  UTF-8, LF line endings.  Cells that
// contain commas or quotes are double-quoted.
class CsvWriter {
 public:
  void comment(const std::string& key, const std::string& value);
  void header(std::vector<std::string> columns);
  void row(const std::vector<std::string>& cells);
  std::string str() const;
  void write(const std::string& path) const;

 private:
  std::vector<std::pair<std::string, std::string>> comments_;
  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
};

struct CsvTable {
  std::vector<std::pair<std::string, std::string>> comments;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(const std::string& name) const;  // throws input_error
  std::vector<double> numeric(const std::string& name) const;
};

CsvTable read_csv(const std::string& path);
CsvTable read_csv_text(const std::string& text);

}  // namespace glab
