// Dense bounded-variable primal simplex.
//
// The working problem is  A x + s = b  with one slack per row (bounds encode
// the row sense) and one signed artificial column per row. The artificial
// columns are never dropped from the tableau: since their original columns
// are sigma_i * e_i, their tableau columns hold B^-1 up to row signs, which
// gives the duals and the phase-1 infeasibility certificate for free.

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "hsc/error.hpp"
#include "hsc/solver.hpp"

namespace hsc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

enum class At { kLower, kUpper, kFree, kBasic };

struct Reduced {
  int m = 0;                  // kept rows
  int n = 0;                  // kept structural columns
  std::vector<int> var_of_col;
  std::vector<int> row_of_kept;
  std::vector<double> a;      // m x n dense, scaled
  std::vector<double> b;      // scaled rhs
  std::vector<Sense> sense;
  std::vector<double> cost;   // scaled
  std::vector<double> lo, hi; // scaled
  std::vector<double> row_scale;
  std::vector<double> col_scale;
  double constant = 0.0;
  std::vector<double> fixed_value;  // per original variable, NaN if kept
};

bool infinite_rhs(const Row& row) {
  if (row.sense == Sense::kLe) return row.rhs == kInf;
  if (row.sense == Sense::kGe) return row.rhs == -kInf;
  return false;
}

// Removes fixed columns and vacuous rows. Returns false with the offending
// row when a row without free columns cannot be satisfied.
bool reduce(const MilpInstance& inst, const std::vector<double>& lo,
            const std::vector<double>& hi, double tol, Reduced& out,
            std::vector<int>& bad_rows) {
  const int nv = static_cast<int>(inst.vars.size());
  out.fixed_value.assign(nv, std::numeric_limits<double>::quiet_NaN());
  std::vector<int> col_of_var(nv, -1);
  for (int j = 0; j < nv; ++j) {
    if (lo[j] > hi[j]) {
      // contradictory bounds: no row to blame
      return false;
    }
    if (lo[j] == hi[j]) {
      out.fixed_value[j] = lo[j];
      out.constant += inst.objective[j] * lo[j];
    } else {
      col_of_var[j] = out.n++;
      out.var_of_col.push_back(j);
    }
  }
  out.constant += inst.objective_constant;

  std::vector<std::vector<std::pair<int, double>>> kept_rows;
  for (int r = 0; r < static_cast<int>(inst.rows.size()); ++r) {
    const Row& row = inst.rows[r];
    if (infinite_rhs(row)) continue;
    double rhs = row.rhs;
    std::vector<std::pair<int, double>> entries;
    for (std::size_t k = 0; k < row.idx.size(); ++k) {
      const int j = row.idx[k];
      if (col_of_var[j] < 0) {
        rhs -= row.coef[k] * out.fixed_value[j];
      } else {
        entries.emplace_back(col_of_var[j], row.coef[k]);
      }
    }
    if (std::isinf(rhs)) {
      bad_rows.push_back(r);
      return false;
    }
    if (entries.empty()) {
      const double slack = std::max(1.0, std::abs(row.rhs)) * tol;
      const bool ok = row.sense == Sense::kLe   ? 0.0 <= rhs + slack
                      : row.sense == Sense::kGe ? 0.0 >= rhs - slack
                                                : std::abs(rhs) <= slack;
      if (!ok) {
        bad_rows.push_back(r);
        return false;
      }
      continue;
    }
    out.row_of_kept.push_back(r);
    out.b.push_back(rhs);
    out.sense.push_back(row.sense);
    kept_rows.push_back(std::move(entries));
  }
  out.m = static_cast<int>(out.row_of_kept.size());
  out.a.assign(static_cast<std::size_t>(out.m) * out.n, 0.0);
  for (int i = 0; i < out.m; ++i) {
    for (const auto& [c, v] : kept_rows[i]) {
      out.a[static_cast<std::size_t>(i) * out.n + c] += v;
    }
  }
  out.cost.resize(out.n);
  out.lo.resize(out.n);
  out.hi.resize(out.n);
  for (int c = 0; c < out.n; ++c) {
    const int j = out.var_of_col[c];
    out.cost[c] = inst.objective[j];
    out.lo[c] = lo[j];
    out.hi[c] = hi[j];
  }
  return true;
}

// Geometric-mean equilibration, a few alternating passes.
void scale(Reduced& p) {
  p.row_scale.assign(p.m, 1.0);
  p.col_scale.assign(p.n, 1.0);
  auto at = [&p](int i, int c) -> double& {
    return p.a[static_cast<std::size_t>(i) * p.n + c];
  };
  for (int pass = 0; pass < 4; ++pass) {
    for (int i = 0; i < p.m; ++i) {
      double big = 0.0;
      double small = kInf;
      for (int c = 0; c < p.n; ++c) {
        const double v = std::abs(at(i, c));
        if (v > 0) {
          big = std::max(big, v);
          small = std::min(small, v);
        }
      }
      if (big == 0) continue;
      const double f = 1.0 / std::sqrt(big * small);
      p.row_scale[i] *= f;
      for (int c = 0; c < p.n; ++c) at(i, c) *= f;
    }
    for (int c = 0; c < p.n; ++c) {
      double big = 0.0;
      double small = kInf;
      for (int i = 0; i < p.m; ++i) {
        const double v = std::abs(at(i, c));
        if (v > 0) {
          big = std::max(big, v);
          small = std::min(small, v);
        }
      }
      if (big == 0) continue;
      const double f = 1.0 / std::sqrt(big * small);
      p.col_scale[c] *= f;
      for (int i = 0; i < p.m; ++i) at(i, c) *= f;
    }
  }
  for (int i = 0; i < p.m; ++i) p.b[i] *= p.row_scale[i];
  for (int c = 0; c < p.n; ++c) {
    // x = col_scale * x'
    p.cost[c] *= p.col_scale[c];
    p.lo[c] /= p.col_scale[c];
    p.hi[c] /= p.col_scale[c];
  }
}

class Simplex {
 public:
  Simplex(const Reduced& p, const Tolerances& tol) : p_(p), tol_(tol) {
    m_ = p.m;
    n_ = p.n;
    cols_ = n_ + 2 * m_;
    lo_.resize(cols_);
    hi_.resize(cols_);
    for (int c = 0; c < n_; ++c) {
      lo_[c] = p.lo[c];
      hi_[c] = p.hi[c];
    }
    for (int i = 0; i < m_; ++i) {
      const int s = n_ + i;
      lo_[s] = p.sense[i] == Sense::kGe ? -kInf : 0.0;
      hi_[s] = p.sense[i] == Sense::kLe ? kInf : 0.0;
    }
    sigma_.assign(m_, 1.0);
    x_.assign(cols_, 0.0);
    state_.assign(cols_, At::kLower);
    basis_.assign(m_, -1);
  }

  long iterations() const { return iterations_; }

  SolveStatus run(std::vector<int>& certificate) {
    start();
    const bool need_phase1 =
        std::any_of(basis_.begin(), basis_.end(), [&](int k) { return k >= n_ + m_; });
    if (need_phase1) {
      std::vector<double> c1(cols_, 0.0);
      for (int i = 0; i < m_; ++i) {
        if (basis_[i] >= n_ + m_) c1[basis_[i]] = 1.0;
      }
      cost_ = c1;
      compute_reduced_costs();
      const SolveStatus s = iterate(true);
      if (s != SolveStatus::kOptimal) {
        throw NumericalError("simplex: phase 1 did not converge");
      }
      refactor();
      double infeas = 0.0;
      for (int k = n_ + m_; k < cols_; ++k) infeas += x_[k];
      double bscale = 1.0;
      for (double v : p_.b) bscale = std::max(bscale, std::abs(v));
      if (infeas > 1e-7 * bscale) {
        for (int i = 0; i < m_; ++i) {
          const int art = n_ + m_ + i;
          const double y = sigma_[i] * (cost_[art] - d_[art]);
          if (std::abs(y) > 1e-9) certificate.push_back(i);
        }
        return SolveStatus::kInfeasible;
      }
      for (int k = n_ + m_; k < cols_; ++k) {
        lo_[k] = hi_[k] = 0.0;
        x_[k] = 0.0;
        if (state_[k] != At::kBasic) state_[k] = At::kLower;
      }
    }
    cost_.assign(cols_, 0.0);
    for (int c = 0; c < n_; ++c) cost_[c] = p_.cost[c];
    compute_reduced_costs();
    const SolveStatus s = iterate(false);
    if (s != SolveStatus::kOptimal) return s;
    refactor();
    check_final();
    return SolveStatus::kOptimal;
  }

  const std::vector<double>& x() const { return x_; }
  const std::vector<At>& state() const { return state_; }

  // Scaled duals: y_i = -sigma_i * d_art_i.
  std::vector<double> duals() const {
    std::vector<double> y(m_);
    for (int i = 0; i < m_; ++i) y[i] = -sigma_[i] * d_[n_ + m_ + i];
    return y;
  }

 private:
  double& t(int i, int j) { return tab_[static_cast<std::size_t>(i) * cols_ + j]; }
  double t(int i, int j) const { return tab_[static_cast<std::size_t>(i) * cols_ + j]; }

  // Original (unreduced) column j of [A | I | diag(sigma)] at row i.
  double original(int i, int j) const {
    if (j < n_) return p_.a[static_cast<std::size_t>(i) * n_ + j];
    if (j < n_ + m_) return j - n_ == i ? 1.0 : 0.0;
    return j - n_ - m_ == i ? sigma_[i] : 0.0;
  }

  void place_nonbasic(int k) {
    if (std::isfinite(lo_[k])) {
      state_[k] = At::kLower;
      x_[k] = lo_[k];
    } else if (std::isfinite(hi_[k])) {
      state_[k] = At::kUpper;
      x_[k] = hi_[k];
    } else {
      state_[k] = At::kFree;
      x_[k] = 0.0;
    }
  }

  void start() {
    for (int c = 0; c < n_ + m_; ++c) place_nonbasic(c);
    std::vector<double> r(p_.b);
    for (int i = 0; i < m_; ++i) {
      for (int c = 0; c < n_; ++c) r[i] -= p_.a[static_cast<std::size_t>(i) * n_ + c] * x_[c];
    }
    tab_.assign(static_cast<std::size_t>(m_) * cols_, 0.0);
    for (int i = 0; i < m_; ++i) {
      const int s = n_ + i;
      const int art = n_ + m_ + i;
      const bool slack_ok = (p_.sense[i] == Sense::kLe && r[i] >= 0) ||
                            (p_.sense[i] == Sense::kGe && r[i] <= 0);
      if (slack_ok) {
        sigma_[i] = 1.0;
        basis_[i] = s;
        state_[s] = At::kBasic;
        x_[s] = r[i];
        lo_[art] = hi_[art] = 0.0;
        x_[art] = 0.0;
        state_[art] = At::kLower;
      } else {
        sigma_[i] = r[i] >= 0 ? 1.0 : -1.0;
        basis_[i] = art;
        state_[art] = At::kBasic;
        lo_[art] = 0.0;
        hi_[art] = kInf;
        x_[art] = std::abs(r[i]);
      }
      // Row i of B^-1 [A | I | diag(sigma)] with B = diag(1 or sigma_i).
      const double f = slack_ok ? 1.0 : sigma_[i];
      for (int c = 0; c < n_; ++c) t(i, c) = f * p_.a[static_cast<std::size_t>(i) * n_ + c];
      t(i, s) = f;
      t(i, art) = f * sigma_[i];
    }
    d_.assign(cols_, 0.0);
  }

  void compute_reduced_costs() {
    d_ = cost_;
    for (int i = 0; i < m_; ++i) {
      const double cb = cost_[basis_[i]];
      if (cb == 0.0) continue;
      for (int j = 0; j < cols_; ++j) d_[j] -= cb * t(i, j);
    }
    for (int i = 0; i < m_; ++i) d_[basis_[i]] = 0.0;
  }

  // Rebuilds the tableau from the current basis by Gauss-Jordan on B.
  void refactor() {
    const std::size_t mm = static_cast<std::size_t>(m_);
    std::vector<double> bmat(mm * mm);
    for (int i = 0; i < m_; ++i) {
      for (int k = 0; k < m_; ++k) bmat[i * mm + k] = original(i, basis_[k]);
    }
    std::vector<double> inv(mm * mm, 0.0);
    for (int i = 0; i < m_; ++i) inv[i * mm + i] = 1.0;
    for (int col = 0; col < m_; ++col) {
      int piv = col;
      double best = std::abs(bmat[col * mm + col]);
      for (int i = col + 1; i < m_; ++i) {
        if (std::abs(bmat[i * mm + col]) > best) {
          best = std::abs(bmat[i * mm + col]);
          piv = i;
        }
      }
      if (best < 1e-11) {
        std::ostringstream os;
        os << "simplex: singular basis during refactorization (column " << col
           << " of " << m_ << ", pivot " << best << ", " << iterations_
           << " iterations)";
        throw NumericalError(os.str());
      }
      if (piv != col) {
        for (int k = 0; k < m_; ++k) {
          std::swap(bmat[piv * mm + k], bmat[col * mm + k]);
          std::swap(inv[piv * mm + k], inv[col * mm + k]);
        }
      }
      const double dv = bmat[col * mm + col];
      for (int k = 0; k < m_; ++k) {
        bmat[col * mm + k] /= dv;
        inv[col * mm + k] /= dv;
      }
      for (int i = 0; i < m_; ++i) {
        if (i == col) continue;
        const double f = bmat[i * mm + col];
        if (f == 0.0) continue;
        for (int k = 0; k < m_; ++k) {
          bmat[i * mm + k] -= f * bmat[col * mm + k];
          inv[i * mm + k] -= f * inv[col * mm + k];
        }
      }
    }
    // Column k of B is basis_[k], so row k of B^-1 belongs to basis_[k].
    std::fill(tab_.begin(), tab_.end(), 0.0);
    for (int k = 0; k < m_; ++k) {
      for (int i = 0; i < m_; ++i) {
        const double f = inv[k * mm + i];
        if (f == 0.0) continue;
        for (int c = 0; c < n_; ++c) {
          t(k, c) += f * p_.a[static_cast<std::size_t>(i) * n_ + c];
        }
        t(k, n_ + i) += f;
        t(k, n_ + m_ + i) += f * sigma_[i];
      }
    }
    // Basic values from the nonbasic ones.
    std::vector<double> r(p_.b);
    for (int j = 0; j < cols_; ++j) {
      if (state_[j] == At::kBasic || x_[j] == 0.0) continue;
      for (int i = 0; i < m_; ++i) r[i] -= original(i, j) * x_[j];
    }
    for (int k = 0; k < m_; ++k) {
      double v = 0.0;
      for (int i = 0; i < m_; ++i) v += inv[k * mm + i] * r[i];
      x_[basis_[k]] = v;
    }
    compute_reduced_costs();
    since_refactor_ = 0;
  }

  void check_final() {
    double worst = 0.0;
    int where = -1;
    for (int k = 0; k < m_; ++k) {
      const int j = basis_[k];
      const double v = std::max(lo_[j] - x_[j], x_[j] - hi_[j]);
      if (v > worst) {
        worst = v;
        where = j;
      }
    }
    if (worst > tol_.residual) {
      std::ostringstream os;
      os << "simplex: basic variable " << where << " violates its bound by " << worst
         << " after refactorization (" << iterations_ << " iterations)";
      throw NumericalError(os.str());
    }
    for (int k = 0; k < m_; ++k) {
      const int j = basis_[k];
      x_[j] = std::clamp(x_[j], lo_[j], hi_[j]);
    }
  }

  SolveStatus iterate(bool phase1) {
    int degenerate = 0;
    std::vector<int> nz;
    nz.reserve(cols_);
    while (true) {
      if (iterations_ >= tol_.max_iterations) return SolveStatus::kLimit;
      const bool bland = degenerate >= tol_.degenerate_switch;
      // Pricing.
      int q = -1;
      double best = 0.0;
      for (int j = 0; j < cols_; ++j) {
        const At st = state_[j];
        if (st == At::kBasic || lo_[j] == hi_[j]) continue;
        const double dj = d_[j];
        double gain = 0.0;
        if (st == At::kLower && dj < -tol_.dual) gain = -dj;
        else if (st == At::kUpper && dj > tol_.dual) gain = dj;
        else if (st == At::kFree && std::abs(dj) > tol_.dual) gain = std::abs(dj);
        if (gain == 0.0) continue;
        if (bland) {
          q = j;
          break;
        }
        if (gain > best) {
          best = gain;
          q = j;
        }
      }
      if (q < 0) return SolveStatus::kOptimal;
      const double dir = d_[q] < 0 ? 1.0 : -1.0;

      // Ratio test.
      double theta = kInf;
      int leave = -1;
      double leave_alpha = 0.0;
      for (int i = 0; i < m_; ++i) {
        const double alpha = t(i, q);
        if (std::abs(alpha) <= tol_.pivot) continue;
        const int k = basis_[i];
        const double rate = -dir * alpha;
        double lim = kInf;
        if (rate < 0 && std::isfinite(lo_[k])) {
          lim = (x_[k] - lo_[k]) / -rate;
        } else if (rate > 0 && std::isfinite(hi_[k])) {
          lim = (hi_[k] - x_[k]) / rate;
        }
        if (!std::isfinite(lim)) continue;
        lim = std::max(lim, 0.0);
        bool take = false;
        if (lim < theta - 1e-12) {
          take = true;
        } else if (lim <= theta + 1e-12 && leave >= 0) {
          take = bland ? basis_[i] < basis_[leave] : std::abs(alpha) > std::abs(leave_alpha);
        }
        if (take) {
          theta = lim;
          leave = i;
          leave_alpha = alpha;
        }
      }
      const double span = hi_[q] - lo_[q];
      const bool flip = std::isfinite(span) && span <= theta;
      if (!flip && leave < 0) {
        if (phase1) throw NumericalError("simplex: phase 1 unbounded direction");
        return SolveStatus::kUnbounded;
      }
      const double step = flip ? span : theta;
      ++iterations_;
      degenerate = step <= tol_.primal ? degenerate + 1 : 0;

      if (step != 0.0) {
        x_[q] += dir * step;
        for (int i = 0; i < m_; ++i) {
          const double alpha = t(i, q);
          if (alpha != 0.0) x_[basis_[i]] -= dir * step * alpha;
        }
      }
      if (flip) {
        state_[q] = dir > 0 ? At::kUpper : At::kLower;
        x_[q] = dir > 0 ? hi_[q] : lo_[q];
        continue;
      }

      // Pivot on (leave, q).
      const int k = basis_[leave];
      const double rate = -dir * leave_alpha;
      if (rate < 0) {
        state_[k] = At::kLower;
        x_[k] = lo_[k];
      } else {
        state_[k] = At::kUpper;
        x_[k] = hi_[k];
      }
      if (lo_[k] == hi_[k]) state_[k] = At::kLower;
      basis_[leave] = q;
      state_[q] = At::kBasic;

      const double piv = t(leave, q);
      nz.clear();
      for (int j = 0; j < cols_; ++j) {
        double& v = t(leave, j);
        if (v != 0.0) {
          v /= piv;
          nz.push_back(j);
        }
      }
      t(leave, q) = 1.0;
      for (int i = 0; i < m_; ++i) {
        if (i == leave) continue;
        const double f = t(i, q);
        if (f == 0.0) continue;
        for (int j : nz) t(i, j) -= f * t(leave, j);
        t(i, q) = 0.0;
      }
      const double fd = d_[q];
      if (fd != 0.0) {
        for (int j : nz) d_[j] -= fd * t(leave, j);
      }
      d_[q] = 0.0;

      if (++since_refactor_ >= tol_.refactor_every) refactor();
    }
  }

  const Reduced& p_;
  Tolerances tol_;
  int m_ = 0;
  int n_ = 0;
  int cols_ = 0;
  std::vector<double> tab_;
  std::vector<double> lo_, hi_, x_, d_, cost_, sigma_;
  std::vector<At> state_;
  std::vector<int> basis_;
  long iterations_ = 0;
  int since_refactor_ = 0;
};

}  // namespace

LpSolution solve_lp(const MilpInstance& inst, const Tolerances& tol) {
  std::vector<double> lo(inst.vars.size());
  std::vector<double> hi(inst.vars.size());
  for (std::size_t j = 0; j < inst.vars.size(); ++j) {
    lo[j] = inst.vars[j].lo;
    hi[j] = inst.vars[j].hi;
  }
  return solve_lp(inst, lo, hi, tol);
}

LpSolution solve_lp(const MilpInstance& inst, const std::vector<double>& lo,
                    const std::vector<double>& hi, const Tolerances& tol) {
  LpSolution out;
  out.duals.assign(inst.rows.size(), 0.0);
  Reduced p;
  std::vector<int> bad;
  if (!reduce(inst, lo, hi, tol.residual, p, bad)) {
    out.status = SolveStatus::kInfeasible;
    out.infeasible_rows = bad;
    return out;
  }
  scale(p);
  Simplex spx(p, tol);
  std::vector<int> cert;
  out.status = spx.run(cert);
  out.iterations = spx.iterations();
  if (out.status == SolveStatus::kInfeasible) {
    for (int i : cert) out.infeasible_rows.push_back(p.row_of_kept[i]);
    return out;
  }
  if (out.status != SolveStatus::kOptimal) return out;

  out.x.assign(inst.vars.size(), 0.0);
  for (std::size_t j = 0; j < inst.vars.size(); ++j) {
    if (!std::isnan(p.fixed_value[j])) out.x[j] = p.fixed_value[j];
  }
  for (int c = 0; c < p.n; ++c) {
    const int j = p.var_of_col[c];
    out.x[j] = std::clamp(spx.x()[c] * p.col_scale[c], lo[j], hi[j]);
    if (spx.state()[c] == At::kBasic) out.basis.push_back(j);
  }
  const std::vector<double> y = spx.duals();
  for (int i = 0; i < p.m; ++i) out.duals[p.row_of_kept[i]] = y[i] * p.row_scale[i];
  out.objective = inst.evaluate_objective(out.x);

  // Guard against a silently wrong answer.
  double worst = 0.0;
  for (std::size_t r = 0; r < inst.rows.size(); ++r) {
    const Row& row = inst.rows[r];
    if (infinite_rhs(row)) continue;
    double scale = 1.0;
    for (double c : row.coef) scale = std::max(scale, std::abs(c));
    scale = std::max(scale, std::abs(row.rhs));
    const double a = inst.activity(r, out.x);
    double v = 0.0;
    if (row.sense == Sense::kLe) v = a - row.rhs;
    else if (row.sense == Sense::kGe) v = row.rhs - a;
    else v = std::abs(a - row.rhs);
    worst = std::max(worst, v / scale);
  }
  if (worst > tol.residual) {
    std::ostringstream os;
    os << "simplex: final relative residual " << worst << " exceeds " << tol.residual
       << " (" << p.m << " rows, " << p.n << " columns)";
    throw NumericalError(os.str());
  }
  return out;
}

}  // namespace hsc
