#include "hsc/error.hpp"

#include <sstream>
#include <utility>

namespace hsc {

namespace {

std::string format_parse(const std::string& file, int line, int column,
                         const std::string& what) {
  std::ostringstream os;
  os << file;
  if (line > 0) os << ":" << line;
  if (column > 0) os << ":" << column;
  os << ": " << what;
  return os.str();
}

std::string format_cap(double product, double cap) {
  std::ostringstream os;
  os << "integer domain product " << product << " exceeds oracle cap " << cap;
  return os.str();
}

}  // namespace

ParseError::ParseError(std::string file, int line, int column,
                       const std::string& what)
    : Error(format_parse(file, line, column, what)),
      file_(std::move(file)),
      line_(line),
      column_(column) {}

MissingDataError::MissingDataError(std::string table, std::string keys)
    : Error(table + ": missing " + keys),
      table_(std::move(table)),
      keys_(std::move(keys)) {}

OracleCapError::OracleCapError(double product, double cap)
    : Error(format_cap(product, cap)), product_(product) {}

}  // namespace hsc
