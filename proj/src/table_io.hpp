#ifndef HSC_SRC_TABLE_IO_HPP_
#define HSC_SRC_TABLE_IO_HPP_

// Readers and writers for the two plain-text formats of a scenario bundle:
// `key = value` configuration files and whitespace-delimited tables with a
// header line. `#` starts a comment in both.

#include <filesystem>
#include <map>
#include <ostream>
#include <string>
#include <vector>

namespace hsc::io {

struct ConfEntry {
  std::string value;
  int line = 0;
};

struct ConfFile {
  std::string name;
  std::map<std::string, ConfEntry> entries;

  bool has(const std::string& key) const { return entries.count(key) > 0; }
  const std::string& text(const std::string& key) const;
  double number(const std::string& key) const;
  double number_or(const std::string& key, double fallback) const;
  std::vector<std::string> list(const std::string& key) const;
  std::vector<double> number_list(const std::string& key) const;
};

ConfFile read_conf(const std::filesystem::path& path, const std::string& name);

struct Table {
  std::string name;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<int> lines;  // source line of each row

  std::size_t column(const std::string& col) const;
  bool has_column(const std::string& col) const;
  const std::string& cell(std::size_t row, std::size_t col) const;
  double number(std::size_t row, std::size_t col) const;
  int integer(std::size_t row, std::size_t col) const;
};

Table read_table(const std::filesystem::path& path, const std::string& name);
bool table_exists(const std::filesystem::path& path);

double parse_number(const std::string& token, const std::string& file,
                    int line, int column);

// Shortest decimal representation that reads back to the same double.
std::string format_number(double v);

std::vector<std::string> split(const std::string& s, char sep);
std::string join(const std::vector<std::string>& parts, char sep);

}  // namespace hsc::io

#endif  // HSC_SRC_TABLE_IO_HPP_
