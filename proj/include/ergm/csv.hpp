#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ergm {

/// Header-indexed delimited table. Comma is the default delimiter; a header
/// line containing tabs but no commas switches the whole file to tabs.
/// Fields may be double-quoted with "" as the escaped quote.
struct DelimitedTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> line_numbers;  // 1-based source line per row

  std::optional<std::size_t> column(std::string_view name) const;
  /// Throws ValidationError naming the missing column and the file.
  std::size_t require_column(std::string_view name, std::string_view source) const;
};

DelimitedTable read_delimited(const std::filesystem::path& path);
DelimitedTable parse_delimited(std::string_view text);

/// Quotes a field if it contains the delimiter, a quote or a newline.
std::string csv_escape(std::string_view field, char delimiter = ',');

std::string trim(std::string_view s);
std::string to_lower(std::string_view s);

}  // namespace ergm
