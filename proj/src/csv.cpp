#include "ergm/csv.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "ergm/errors.hpp"

namespace ergm {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::string to_lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::optional<std::size_t> DelimitedTable::column(std::string_view name) const {
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (header[c] == name) return c;
  }
  return std::nullopt;
}

std::size_t DelimitedTable::require_column(std::string_view name, std::string_view source) const {
  if (auto c = column(name)) return *c;
  throw ValidationError(fmt::format("{}: missing column '{}'", source, name));
}

namespace {

std::vector<std::string> split_line(std::string_view line, char delim, std::size_t line_no) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t k = 0; k < line.size(); ++k) {
    const char c = line[k];
    if (quoted) {
      if (c == '"') {
        if (k + 1 < line.size() && line[k + 1] == '"') {
          cur.push_back('"');
          ++k;
        } else {
          quoted = false;
        }
      } else {
        cur.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == delim) {
      fields.push_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (quoted) throw ParseError(fmt::format("line {}: unterminated quoted field", line_no), line.size());
  fields.push_back(trim(cur));
  return fields;
}

}  // namespace

DelimitedTable parse_delimited(std::string_view text) {
  DelimitedTable table;
  char delim = ',';
  bool have_header = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (trim(line).empty()) {
      if (end == text.size()) break;
      continue;
    }
    if (!have_header) {
      if (line.find('\t') != std::string_view::npos && line.find(',') == std::string_view::npos) delim = '\t';
      table.header = split_line(line, delim, line_no);
      have_header = true;
      continue;
    }
    auto fields = split_line(line, delim, line_no);
    if (fields.size() != table.header.size()) {
      throw ParseError(fmt::format("line {}: expected {} fields, found {}", line_no,
                                   table.header.size(), fields.size()),
                       0);
    }
    table.rows.push_back(std::move(fields));
    table.line_numbers.push_back(line_no);
    if (end == text.size()) break;
  }
  return table;
}

DelimitedTable read_delimited(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(fmt::format("cannot open '{}'", path.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_delimited(ss.str());
}

std::string csv_escape(std::string_view field, char delimiter) {
  if (field.find_first_of(std::string{delimiter, '"', '\n', '\r'}) == std::string_view::npos) {
    return std::string(field);
  }
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace ergm
