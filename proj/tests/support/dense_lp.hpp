#ifndef HSC_TESTS_DENSE_LP_HPP_
#define HSC_TESTS_DENSE_LP_HPP_

// Textbook reference LP used to cross-check the library simplex. It shares
// no code with src/: bounds become explicit rows, every row gets an
// artificial, and both phases pivot with Bland's rule on a full tableau.

#include <cmath>
#include <limits>
#include <vector>

#include "hsc/milp.hpp"

namespace hsc::testing {

enum class RefStatus { kOptimal, kInfeasible, kUnbounded };

struct RefResult {
  RefStatus status = RefStatus::kInfeasible;
  double objective = 0.0;
  std::vector<double> x;
};

class DenseReference {
 public:
  explicit DenseReference(double tol = 1e-9) : tol_(tol) {}

  RefResult solve(const MilpInstance& inst) const {
    constexpr double inf = std::numeric_limits<double>::infinity();
    const int nv = static_cast<int>(inst.vars.size());

    // x_j = shift_j + sign_j * y_a (+ optional - y_b for free variables).
    struct Map {
      double shift = 0.0;
      double sign = 1.0;
      int pos = -1;
      int neg = -1;
    };
    std::vector<Map> map(nv);
    int ny = 0;
    std::vector<std::vector<double>> rows;
    std::vector<double> rhs;
    std::vector<int> kind;  // -1 <=, 0 =, 1 >=
    std::vector<std::pair<int, double>> upper;  // y_pos <= value
    for (int j = 0; j < nv; ++j) {
      const double lo = inst.vars[j].lo;
      const double hi = inst.vars[j].hi;
      Map& mp = map[j];
      if (lo != -inf) {
        mp.shift = lo;
        mp.pos = ny++;
        if (hi != inf) upper.emplace_back(mp.pos, hi - lo);
      } else if (hi != inf) {
        mp.shift = hi;
        mp.sign = -1.0;
        mp.pos = ny++;
      } else {
        mp.pos = ny++;
        mp.neg = ny++;
      }
    }
    auto push = [&](std::vector<double> a, double b, int k) {
      rows.push_back(std::move(a));
      rhs.push_back(b);
      kind.push_back(k);
    };
    for (const Row& r : inst.rows) {
      if ((r.sense == Sense::kLe && r.rhs == inf) || (r.sense == Sense::kGe && r.rhs == -inf)) {
        continue;
      }
      std::vector<double> a(ny, 0.0);
      double b = r.rhs;
      for (std::size_t k = 0; k < r.idx.size(); ++k) {
        const Map& mp = map[r.idx[k]];
        const double c = r.coef[k];
        b -= c * mp.shift;
        a[mp.pos] += c * mp.sign;
        if (mp.neg >= 0) a[mp.neg] -= c;
      }
      push(std::move(a), b, r.sense == Sense::kLe ? -1 : r.sense == Sense::kEq ? 0 : 1);
    }
    for (const auto& [p, v] : upper) {
      std::vector<double> a(ny, 0.0);
      a[p] = 1.0;
      push(std::move(a), v, -1);
    }
    std::vector<double> cost(ny, 0.0);
    double constant = inst.objective_constant;
    for (int j = 0; j < nv; ++j) {
      const Map& mp = map[j];
      const double c = inst.objective[j];
      constant += c * mp.shift;
      cost[mp.pos] += c * mp.sign;
      if (mp.neg >= 0) cost[mp.neg] -= c;
    }

    // Columns: y, one slack per inequality, one artificial per row.
    const int m = static_cast<int>(rows.size());
    std::vector<int> slack_of(m, -1);
    int ncol = ny;
    for (int i = 0; i < m; ++i) {
      if (kind[i] != 0) slack_of[i] = ncol++;
    }
    const int first_art = ncol;
    ncol += m;
    const int w = ncol + 1;  // last column holds the rhs
    std::vector<double> t(static_cast<std::size_t>(m) * w, 0.0);
    auto at = [&](int i, int j) -> double& { return t[static_cast<std::size_t>(i) * w + j]; };
    std::vector<int> basis(m);
    for (int i = 0; i < m; ++i) {
      const double f = rhs[i] < 0 ? -1.0 : 1.0;
      for (int j = 0; j < ny; ++j) at(i, j) = f * rows[i][j];
      if (slack_of[i] >= 0) at(i, slack_of[i]) = f * (kind[i] < 0 ? 1.0 : -1.0);
      at(i, first_art + i) = 1.0;
      at(i, ncol) = f * rhs[i];
      basis[i] = first_art + i;
    }
    std::vector<bool> allowed(ncol, true);

    auto pivot = [&](int r, int q) {
      const double p = at(r, q);
      for (int j = 0; j < w; ++j) at(r, j) /= p;
      for (int i = 0; i < m; ++i) {
        if (i == r) continue;
        const double f = at(i, q);
        if (f == 0.0) continue;
        for (int j = 0; j < w; ++j) at(i, j) -= f * at(r, j);
      }
      basis[r] = q;
    };
    // Returns false when unbounded.
    auto optimize = [&](const std::vector<double>& c) {
      while (true) {
        int q = -1;
        for (int j = 0; j < ncol && q < 0; ++j) {
          if (!allowed[j]) continue;
          bool basic = false;
          for (int i = 0; i < m; ++i) basic = basic || basis[i] == j;
          if (basic) continue;
          double d = c[j];
          for (int i = 0; i < m; ++i) d -= c[basis[i]] * at(i, j);
          if (d < -tol_) q = j;
        }
        if (q < 0) return true;
        int r = -1;
        double best = inf;
        for (int i = 0; i < m; ++i) {
          if (at(i, q) <= tol_) continue;
          const double ratio = at(i, ncol) / at(i, q);
          if (ratio < best - 1e-12 || (ratio <= best + 1e-12 && r >= 0 && basis[i] < basis[r])) {
            best = ratio;
            r = i;
          }
        }
        if (r < 0) return false;
        pivot(r, q);
      }
    };

    RefResult out;
    std::vector<double> c1(ncol, 0.0);
    for (int i = 0; i < m; ++i) c1[first_art + i] = 1.0;
    optimize(c1);
    double infeas = 0.0;
    double scale = 1.0;
    for (int i = 0; i < m; ++i) {
      if (basis[i] >= first_art) infeas += at(i, ncol);
      scale = std::max(scale, std::abs(rhs[i]));
    }
    if (infeas > 1e-7 * scale) {
      out.status = RefStatus::kInfeasible;
      return out;
    }
    // Drive zero-level artificials out of the basis.
    for (int i = 0; i < m; ++i) {
      if (basis[i] < first_art) continue;
      for (int j = 0; j < first_art; ++j) {
        if (std::abs(at(i, j)) > 1e-7) {
          pivot(i, j);
          break;
        }
      }
    }
    for (int j = first_art; j < ncol; ++j) allowed[j] = false;
    std::vector<double> c2(ncol, 0.0);
    for (int j = 0; j < ny; ++j) c2[j] = cost[j];
    if (!optimize(c2)) {
      out.status = RefStatus::kUnbounded;
      return out;
    }
    std::vector<double> y(ncol, 0.0);
    for (int i = 0; i < m; ++i) y[basis[i]] = at(i, ncol);
    out.x.assign(nv, 0.0);
    for (int j = 0; j < nv; ++j) {
      const Map& mp = map[j];
      out.x[j] = mp.shift + mp.sign * y[mp.pos] - (mp.neg >= 0 ? y[mp.neg] : 0.0);
    }
    out.objective = constant;
    for (int j = 0; j < ny; ++j) out.objective += cost[j] * y[j];
    out.status = RefStatus::kOptimal;
    return out;
  }

 private:
  double tol_;
};

}  // namespace hsc::testing

#endif  // HSC_TESTS_DENSE_LP_HPP_
