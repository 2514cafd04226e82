#include "table_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "hsc/error.hpp"

namespace hsc::io {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string strip_comment(const std::string& s) {
  const auto pos = s.find('#');
  return pos == std::string::npos ? s : s.substr(0, pos);
}

// Splits on runs of spaces/tabs and records the 1-based column of each token.
std::vector<std::pair<std::string, int>> tokens(const std::string& line) {
  std::vector<std::pair<std::string, int>> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' ||
                               line[i] == '\r')) {
      ++i;
    }
    if (i >= line.size()) break;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' &&
           line[i] != '\r') {
      ++i;
    }
    out.emplace_back(line.substr(start, i - start), static_cast<int>(start) + 1);
  }
  return out;
}

}  // namespace

const std::string& ConfFile::text(const std::string& key) const {
  auto it = entries.find(key);
  if (it == entries.end()) throw MissingDataError(name, key);
  return it->second.value;
}

double ConfFile::number(const std::string& key) const {
  auto it = entries.find(key);
  if (it == entries.end()) throw MissingDataError(name, key);
  return parse_number(it->second.value, name, it->second.line, 0);
}

double ConfFile::number_or(const std::string& key, double fallback) const {
  return has(key) ? number(key) : fallback;
}

std::vector<std::string> ConfFile::list(const std::string& key) const {
  std::vector<std::string> out;
  for (const auto& part : split(text(key), ',')) {
    const std::string t = trim(part);
    if (!t.empty()) out.push_back(t);
  }
  return out;
}

std::vector<double> ConfFile::number_list(const std::string& key) const {
  std::vector<double> out;
  const int line = entries.at(key).line;
  for (const auto& part : list(key)) out.push_back(parse_number(part, name, line, 0));
  return out;
}

ConfFile read_conf(const std::filesystem::path& path, const std::string& name) {
  std::ifstream in(path);
  if (!in) throw MissingDataError(name, "file " + path.string());
  ConfFile conf;
  conf.name = name;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string body = trim(strip_comment(raw));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw ParseError(name, line, 0, "expected key = value");
    }
    const std::string key = trim(body.substr(0, eq));
    if (key.empty()) throw ParseError(name, line, 1, "empty key");
    if (conf.entries.count(key)) {
      throw ParseError(name, line, 1, "duplicate key '" + key + "'");
    }
    conf.entries[key] = ConfEntry{trim(body.substr(eq + 1)), line};
  }
  return conf;
}

std::size_t Table::column(const std::string& col) const {
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (header[c] == col) return c;
  }
  throw MissingDataError(name, "column '" + col + "'");
}

bool Table::has_column(const std::string& col) const {
  for (const auto& h : header) {
    if (h == col) return true;
  }
  return false;
}

const std::string& Table::cell(std::size_t row, std::size_t col) const {
  return rows.at(row).at(col);
}

double Table::number(std::size_t row, std::size_t col) const {
  return parse_number(rows.at(row).at(col), name, lines.at(row),
                      static_cast<int>(col) + 1);
}

int Table::integer(std::size_t row, std::size_t col) const {
  const double v = number(row, col);
  if (v != std::floor(v) || std::abs(v) > 1e9) {
    throw ParseError(name, lines.at(row), static_cast<int>(col) + 1,
                     "expected an integer, got '" + rows[row][col] + "'");
  }
  return static_cast<int>(v);
}

bool table_exists(const std::filesystem::path& path) {
  return std::filesystem::exists(path);
}

Table read_table(const std::filesystem::path& path, const std::string& name) {
  std::ifstream in(path);
  if (!in) throw MissingDataError(name, "file " + path.string());
  Table t;
  t.name = name;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto toks = tokens(strip_comment(raw));
    if (toks.empty()) continue;
    std::vector<std::string> cells;
    cells.reserve(toks.size());
    for (const auto& [tok, col] : toks) cells.push_back(tok);
    if (t.header.empty()) {
      t.header = std::move(cells);
      continue;
    }
    if (cells.size() != t.header.size()) {
      throw ParseError(name, line, 0,
                       "expected " + std::to_string(t.header.size()) +
                           " columns, found " + std::to_string(cells.size()));
    }
    t.rows.push_back(std::move(cells));
    t.lines.push_back(line);
  }
  if (t.header.empty()) throw ParseError(name, 0, 0, "missing header line");
  return t;
}

double parse_number(const std::string& token, const std::string& file,
                    int line, int column) {
  if (token == "inf" || token == "+inf") return std::numeric_limits<double>::infinity();
  if (token == "-inf") return -std::numeric_limits<double>::infinity();
  double v = 0.0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || token.empty()) {
    throw ParseError(file, line, column, "malformed number '" + token + "'");
  }
  return v;
}

std::string format_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

std::string join(const std::vector<std::string>& parts, char sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

}  // namespace hsc::io
