#ifndef HSC_ERROR_HPP_
#define HSC_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace hsc {

// Base class for every error raised by the library. The CLI maps the
// subclasses onto process exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A file could not be opened, read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

// Malformed content in a scenario bundle or MPS file. Carries the file name
// and the 1-based line/column of the offending token (0 when unknown).
class ParseError : public Error {
 public:
  ParseError(std::string file, int line, int column, const std::string& what);

  const std::string& file() const { return file_; }
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  std::string file_;
  int line_;
  int column_;
};

// A mandatory table or key is absent from a bundle.
class MissingDataError : public Error {
 public:
  MissingDataError(std::string table, std::string keys);

  const std::string& table() const { return table_; }
  const std::string& keys() const { return keys_; }

 private:
  std::string table_;
  std::string keys_;
};

// Inconsistent configuration (e.g. an asymmetric distance matrix, gamma = 0).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Index outside the declared set.
class IndexError : public Error {
 public:
  using Error::Error;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// The simplex lost numerical accuracy and could not recover by
// refactorization.
class NumericalError : public Error {
 public:
  using Error::Error;
};

// Enumeration oracle refused an instance whose integer domain is too large.
class OracleCapError : public Error {
 public:
  OracleCapError(double product, double cap);

  double product() const { return product_; }

 private:
  double product_;
};

// No feasible point where one was required (epsilon-sweep anchors).
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

}  // namespace hsc

#endif  // HSC_ERROR_HPP_
