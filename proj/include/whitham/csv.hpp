#ifndef WHITHAM_CSV_HPP
#define WHITHAM_CSV_HPP

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace whitham::io {

/// Shortest decimal form that parses back to the same double; locale-free.
std::string format_double(double v);

/// Locale-free parse of a whole field; throws ParseError on junk.
double parse_double(std::string_view field);

std::vector<std::string> split(std::string_view line, char sep = ',');

struct CsvTable {
  std::vector<std::pair<std::string, std::string>> metadata;  // from "# key=value" lines
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Column index by name; throws ParseError if absent.
  std::size_t column(std::string_view name) const;
  std::vector<double> numeric_column(std::string_view name) const;
};

CsvTable read_csv(const std::filesystem::path& path);
CsvTable parse_csv(std::string_view text);

/// Ordered key=value records, one key per line; records separated by a blank line.
using Record = std::vector<std::pair<std::string, std::string>>;

std::string format_records(const std::vector<Record>& records);
std::vector<Record> parse_records(std::string_view text);

/// Plain key=value config file ('#' comments, blank lines ignored).
std::map<std::string, std::string> read_config(const std::filesystem::path& path);

void write_text(const std::filesystem::path& path, std::string_view text);
std::string read_text(const std::filesystem::path& path);

}  // namespace whitham::io

#endif  // WHITHAM_CSV_HPP
