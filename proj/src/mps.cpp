#include "hsc/mps.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "hsc/error.hpp"
#include "table_io.hpp"

namespace hsc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kMpsInf = 1e30;
constexpr const char* kObjective = "OBJ";

std::string col_name(std::size_t j) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "C%07zu", j + 1);
  return buf;
}

std::string row_name(std::size_t r) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "R%07zu", r + 1);
  return buf;
}

std::string num(double v) {
  if (v >= kMpsInf) return "1e+30";
  if (v <= -kMpsInf) return "-1e+30";
  return io::format_number(v);
}

std::string pad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

// "    name1     name2     value" in the classic column layout.
void entry(std::ostream& out, const std::string& a, const std::string& b, double v) {
  out << "    " << pad(a, 10) << pad(b, 10) << num(v) << '\n';
}

void bound(std::ostream& out, const char* type, const std::string& col) {
  out << ' ' << type << " BND       " << col << '\n';
}

void bound(std::ostream& out, const char* type, const std::string& col, double v) {
  out << ' ' << type << " BND       " << pad(col, 10) << num(v) << '\n';
}

}  // namespace

std::string to_mps(const MilpInstance& inst) {
  inst.check();
  std::ostringstream out;
  out << "NAME          " << inst.name << '\n';
  out << "ROWS\n";
  out << " N  " << kObjective << '\n';
  for (std::size_t r = 0; r < inst.rows.size(); ++r) {
    const char* t = inst.rows[r].sense == Sense::kLe   ? "L"
                    : inst.rows[r].sense == Sense::kGe ? "G"
                                                       : "E";
    out << ' ' << t << "  " << row_name(r) << '\n';
  }

  std::vector<std::vector<std::pair<std::size_t, double>>> by_col(inst.vars.size());
  for (std::size_t r = 0; r < inst.rows.size(); ++r) {
    const Row& row = inst.rows[r];
    for (std::size_t k = 0; k < row.idx.size(); ++k) {
      by_col[row.idx[k]].emplace_back(r, row.coef[k]);
    }
  }
  out << "COLUMNS\n";
  bool in_int = false;
  int marker = 0;
  for (std::size_t j = 0; j < inst.vars.size(); ++j) {
    const bool is_int = inst.vars[j].is_integer();
    if (is_int != in_int) {
      char buf[16];
      std::snprintf(buf, sizeof(buf), "MARKER%02d", marker++ % 100);
      out << "    " << pad(buf, 10) << pad("'MARKER'", 20)
          << (is_int ? "'INTORG'" : "'INTEND'") << '\n';
      in_int = is_int;
    }
    const std::string name = col_name(j);
    bool any = false;
    if (inst.objective[j] != 0.0) {
      entry(out, name, kObjective, inst.objective[j]);
      any = true;
    }
    for (const auto& [r, v] : by_col[j]) {
      entry(out, name, row_name(r), v);
      any = true;
    }
    if (!any) entry(out, name, kObjective, 0.0);
  }
  if (in_int) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "MARKER%02d", marker++ % 100);
    out << "    " << pad(buf, 10) << pad("'MARKER'", 20) << "'INTEND'" << '\n';
  }

  out << "RHS\n";
  if (inst.objective_constant != 0.0) entry(out, "RHS", kObjective, -inst.objective_constant);
  for (std::size_t r = 0; r < inst.rows.size(); ++r) {
    if (inst.rows[r].rhs != 0.0) entry(out, "RHS", row_name(r), inst.rows[r].rhs);
  }

  out << "BOUNDS\n";
  for (std::size_t j = 0; j < inst.vars.size(); ++j) {
    const Variable& v = inst.vars[j];
    const std::string name = col_name(j);
    if (v.type == VarType::kBinary && v.lo == 0.0 && v.hi == 1.0) {
      bound(out, "BV", name);
      continue;
    }
    if (v.lo == v.hi) {
      bound(out, "FX", name, v.lo);
      continue;
    }
    if (v.is_integer()) {
      if (v.lo == -kInf) {
        bound(out, "MI", name);
      } else {
        bound(out, "LI", name, v.lo);
      }
      if (v.hi == kInf) {
        bound(out, "PL", name);
      } else {
        bound(out, "UI", name, v.hi);
      }
      continue;
    }
    if (v.lo == -kInf && v.hi == kInf) {
      bound(out, "FR", name);
      continue;
    }
    if (v.lo == -kInf) {
      bound(out, "MI", name);
    } else if (v.lo != 0.0) {
      bound(out, "LO", name, v.lo);
    }
    if (v.hi != kInf) bound(out, "UP", name, v.hi);
  }
  out << "ENDATA\n";
  return out.str();
}

void export_mps(const MilpInstance& inst, const std::filesystem::path& path) {
  const std::string text = to_mps(inst);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("write failed for " + path.string());
}

namespace {

class MpsReader {
 public:
  MpsReader(const std::string& text, std::string source)
      : in_(text), source_(std::move(source)) {}

  MilpInstance read() {
    std::string raw;
    std::string section;
    bool integer_block = false;
    while (std::getline(in_, raw)) {
      ++line_;
      if (!raw.empty() && raw.back() == '\r') raw.pop_back();
      if (raw.empty() || raw[0] == '*') continue;
      std::vector<std::string> tok = split_ws(raw);
      if (tok.empty()) continue;
      if (raw[0] != ' ' && raw[0] != '\t') {
        section = tok[0];
        if (section == "NAME") {
          inst_.name = tok.size() > 1 ? tok[1] : "";
        } else if (section == "RANGES") {
          fail(1, "RANGES section is not supported");
        } else if (section == "ENDATA") {
          break;
        } else if (section != "ROWS" && section != "COLUMNS" && section != "RHS" &&
                   section != "BOUNDS" && section != "OBJSENSE") {
          fail(1, "unknown section '" + section + "'");
        }
        continue;
      }
      if (section == "ROWS") {
        read_row(tok);
      } else if (section == "COLUMNS") {
        if (tok.size() >= 3 && tok[1] == "'MARKER'") {
          if (tok[2] == "'INTORG'") integer_block = true;
          else if (tok[2] == "'INTEND'") integer_block = false;
          else fail(0, "unknown marker " + tok[2]);
          continue;
        }
        read_column(tok, integer_block);
      } else if (section == "RHS") {
        read_rhs(tok);
      } else if (section == "BOUNDS") {
        read_bound(tok);
      } else if (section == "OBJSENSE") {
        if (tok[0] != "MIN" && tok[0] != "MINIMIZE") fail(0, "only minimization is supported");
      } else {
        fail(0, "data line outside any section");
      }
    }
    // Rows keep declaration order; coefficients were collected per row.
    for (std::size_t r = 0; r < inst_.rows.size(); ++r) {
      Row& row = inst_.rows[r];
      for (auto& [j, v] : pending_[r]) {
        row.idx.push_back(j);
        row.coef.push_back(v);
      }
    }
    return std::move(inst_);
  }

 private:
  static std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    std::string t;
    while (is >> t) out.push_back(t);
    return out;
  }

  [[noreturn]] void fail(int column, const std::string& what) const {
    throw ParseError(source_, line_, column, what);
  }

  double value(const std::string& tok) const {
    const double v = io::parse_number(tok, source_, line_, 0);
    if (v >= kMpsInf) return kInf;
    if (v <= -kMpsInf) return -kInf;
    return v;
  }

  void read_row(const std::vector<std::string>& tok) {
    if (tok.size() != 2) fail(0, "expected row type and name");
    const std::string& type = tok[0];
    const std::string& name = tok[1];
    if (type == "N") {
      if (objective_.empty()) objective_ = name;
      else free_rows_[name] = true;
      return;
    }
    Sense sense;
    if (type == "L") sense = Sense::kLe;
    else if (type == "G") sense = Sense::kGe;
    else if (type == "E") sense = Sense::kEq;
    else fail(2, "unknown row type '" + type + "'");
    if (row_index_.count(name) || name == objective_) fail(5, "duplicate row " + name);
    row_index_[name] = static_cast<int>(inst_.rows.size());
    Row row;
    row.name = name;
    row.sense = sense;
    inst_.rows.push_back(row);
    pending_.emplace_back();
  }

  int column(const std::string& name, bool integer) {
    auto it = col_index_.find(name);
    if (it != col_index_.end()) return it->second;
    const int j = inst_.add_var(name, 0.0, kInf,
                                integer ? VarType::kInteger : VarType::kContinuous);
    col_index_[name] = j;
    return j;
  }

  void read_column(const std::vector<std::string>& tok, bool integer) {
    if (tok.size() != 3 && tok.size() != 5) fail(0, "expected column, row, value pairs");
    const int j = column(tok[0], integer);
    for (std::size_t k = 1; k + 1 < tok.size(); k += 2) {
      const double v = value(tok[k + 1]);
      if (tok[k] == objective_) {
        inst_.objective[j] += v;
      } else if (free_rows_.count(tok[k])) {
        continue;
      } else {
        auto it = row_index_.find(tok[k]);
        if (it == row_index_.end()) fail(0, "unknown row '" + tok[k] + "'");
        if (v != 0.0) pending_[it->second].emplace_back(j, v);
      }
    }
  }

  void read_rhs(const std::vector<std::string>& tok) {
    // The set name is optional in free MPS.
    const std::size_t first = tok.size() % 2 == 1 ? 1 : 0;
    for (std::size_t k = first; k + 1 < tok.size(); k += 2) {
      const double v = value(tok[k + 1]);
      if (tok[k] == objective_) {
        inst_.objective_constant = -v;
        continue;
      }
      auto it = row_index_.find(tok[k]);
      if (it == row_index_.end()) fail(0, "unknown row '" + tok[k] + "'");
      inst_.rows[it->second].rhs = v;
    }
  }

  void read_bound(const std::vector<std::string>& tok) {
    if (tok.size() < 3) fail(0, "expected bound type, set and column");
    const std::string& type = tok[0];
    auto it = col_index_.find(tok[2]);
    if (it == col_index_.end()) fail(0, "unknown column '" + tok[2] + "'");
    Variable& var = inst_.vars[it->second];
    const bool needs_value = type == "UP" || type == "LO" || type == "FX" ||
                             type == "LI" || type == "UI";
    if (needs_value && tok.size() < 4) fail(0, type + " bound without a value");
    const double v = needs_value ? value(tok[3]) : 0.0;
    if (type == "UP") {
      var.hi = v;
      if (v < 0 && var.lo == 0.0) var.lo = -kInf;
    } else if (type == "LO") {
      var.lo = v;
    } else if (type == "FX") {
      var.lo = var.hi = v;
    } else if (type == "FR") {
      var.lo = -kInf;
      var.hi = kInf;
    } else if (type == "MI") {
      var.lo = -kInf;
    } else if (type == "PL") {
      var.hi = kInf;
    } else if (type == "BV") {
      var.type = VarType::kBinary;
      var.lo = 0.0;
      var.hi = 1.0;
    } else if (type == "LI") {
      var.type = VarType::kInteger;
      var.lo = v;
    } else if (type == "UI") {
      var.type = VarType::kInteger;
      var.hi = v;
    } else {
      fail(2, "unknown bound type '" + type + "'");
    }
  }

  std::istringstream in_;
  std::string source_;
  int line_ = 0;
  MilpInstance inst_;
  std::string objective_;
  std::map<std::string, bool> free_rows_;
  std::map<std::string, int> row_index_;
  std::map<std::string, int> col_index_;
  std::vector<std::vector<std::pair<int, double>>> pending_;
};

}  // namespace

MilpInstance parse_mps(const std::string& text, const std::string& source) {
  return MpsReader(text, source).read();
}

MilpInstance read_mps(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_mps(ss.str(), path.filename().string());
}

}  // namespace hsc
