#include "glab/csv.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace glab {

namespace {

std::string quote_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

void CsvWriter::comment(const std::string& key, const std::string& value) {
  comments_.push_back({key, value});
}

void CsvWriter::header(std::vector<std::string> columns) {
  columns_ = std::move(columns);
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  if (cells.size() != columns_.size())
    throw input_error("csv row width does not match the header");
  rows_.push_back(cells);
}

std::string CsvWriter::str() const {
  std::string out;
  for (const auto& [k, v] : comments_) out += "# " + k + "=" + v + "\n";
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    if (i) out += ',';
    out += quote_cell(columns_[i]);
  }
  out += '\n';
  for (const auto& r : rows_) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i) out += ',';
      out += quote_cell(r[i]);
    }
    out += '\n';
  }
  return out;
}

void CsvWriter::write(const std::string& path) const {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw input_error("cannot open '" + path + "' for writing");
  f << str();
  if (!f) throw input_error("write to '" + path + "' failed");
}

namespace {

std::vector<std::string> parse_row(const std::string& line) {
  std::vector<std::string> cells;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      cells.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  cells.push_back(cur);
  return cells;
}

}  // namespace

std::size_t CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i)
    if (columns[i] == name) return i;
  throw input_error("csv has no column '" + name + "'");
}

std::vector<double> CsvTable::numeric(const std::string& name) const {
  std::size_t c = column(name);
  std::vector<double> out;
  for (const auto& r : rows) {
    const std::string& s = r[c];
    char* end = nullptr;
    double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size())
      throw input_error("non-numeric value '" + s + "' in column " + name);
    out.push_back(v);
  }
  return out;
}

namespace {

CsvTable parse_csv_stream(std::istream& f, const std::string& what) {
  CsvTable t;
  std::string line;
  bool have_header = false;
  while (std::getline(f, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::string body = line.substr(line.find_first_not_of("# "));
      std::size_t eq = body.find('=');
      if (eq == std::string::npos)
        t.comments.push_back({body, ""});
      else
        t.comments.push_back({body.substr(0, eq), body.substr(eq + 1)});
      continue;
    }
    if (!have_header) {
      t.columns = parse_row(line);
      have_header = true;
    } else {
      t.rows.push_back(parse_row(line));
    }
  }
  if (!have_header) throw input_error("csv " + what + " has no header row");
  return t;
}

}  // namespace

CsvTable read_csv(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw input_error("cannot open '" + path + "'");
  return parse_csv_stream(f, "'" + path + "'");
}

CsvTable read_csv_text(const std::string& text) {
  std::istringstream f(text);
  return parse_csv_stream(f, "text");
}

}  // namespace glab
