#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <queue>

#include "hsc/solver.hpp"

namespace hsc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Node {
  double bound = 0.0;
  long id = 0;
  std::vector<double> lo;
  std::vector<double> hi;
  std::vector<double> x;  // LP optimum at this node
};

struct NodeOrder {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;
    return a.id > b.id;
  }
};

// Integer variable with the largest distance to the nearest integer, or -1.
int most_fractional(const MilpInstance& inst, const std::vector<double>& x, double tol) {
  int best = -1;
  double best_frac = tol;
  for (std::size_t j = 0; j < inst.vars.size(); ++j) {
    if (!inst.vars[j].is_integer()) continue;
    const double f = std::abs(x[j] - std::round(x[j]));
    if (f > best_frac) {
      best_frac = f;
      best = static_cast<int>(j);
    }
  }
  return best;
}

// Integer variable closest to (but not at) an integer, used for diving.
int least_fractional(const MilpInstance& inst, const std::vector<double>& x,
                     const std::vector<double>& lo, const std::vector<double>& hi,
                     double tol) {
  int best = -1;
  double best_frac = kInf;
  for (std::size_t j = 0; j < inst.vars.size(); ++j) {
    if (!inst.vars[j].is_integer() || lo[j] == hi[j]) continue;
    const double f = std::abs(x[j] - std::round(x[j]));
    if (f > tol && f < best_frac) {
      best_frac = f;
      best = static_cast<int>(j);
    }
  }
  return best;
}

class BranchAndBound {
 public:
  BranchAndBound(const MilpInstance& inst, const BnbOptions& opts)
      : inst_(inst), opts_(opts), start_(std::chrono::steady_clock::now()) {}

  MilpSolution run() {
    std::vector<double> lo(inst_.vars.size());
    std::vector<double> hi(inst_.vars.size());
    for (std::size_t j = 0; j < inst_.vars.size(); ++j) {
      lo[j] = inst_.vars[j].lo;
      hi[j] = inst_.vars[j].hi;
      if (inst_.vars[j].is_integer()) {
        lo[j] = std::ceil(lo[j] - opts_.tol.integrality);
        hi[j] = std::floor(hi[j] + opts_.tol.integrality);
      }
    }
    const LpSolution root = lp(lo, hi);
    if (root.status != SolveStatus::kOptimal) {
      out_.status = root.status;
      out_.infeasible_rows = root.infeasible_rows;
      out_.bound = root.status == SolveStatus::kUnbounded ? -kInf : kInf;
      return finish();
    }
    if (opts_.dive) dive(lo, hi, root.x);

    std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
    open.push({root.objective, next_id_++, lo, hi, root.x});
    bool limited = false;
    while (!open.empty()) {
      const double global = std::min(open.top().bound, incumbent_);
      out_.bound_trace.push_back(global);
      if (closed(global)) break;
      if (out_.nodes >= opts_.node_limit || elapsed() > opts_.time_limit_s) {
        limited = true;
        break;
      }
      Node node = open.top();
      open.pop();
      ++out_.nodes;
      if (node.bound >= incumbent_) continue;
      const int j = most_fractional(inst_, node.x, opts_.tol.integrality);
      if (j < 0) {
        accept(node.lo, node.hi, node.x);
        continue;
      }
      const double v = node.x[j];
      for (int side = 0; side < 2; ++side) {
        Node child;
        child.lo = node.lo;
        child.hi = node.hi;
        if (side == 0) {
          child.hi[j] = std::floor(v);
        } else {
          child.lo[j] = std::ceil(v);
        }
        if (child.lo[j] > child.hi[j]) continue;
        const LpSolution sol = lp(child.lo, child.hi);
        if (sol.status != SolveStatus::kOptimal) continue;
        // Children never bound below their parent.
        child.bound = std::max(sol.objective, node.bound);
        if (child.bound >= incumbent_ - gap_tolerance()) continue;
        child.id = next_id_++;
        child.x = sol.x;
        open.push(std::move(child));
      }
      if (opts_.log && out_.nodes % 100 == 0) {
        std::fprintf(stderr, "bnb: nodes %ld open %zu bound %.10g incumbent %.10g\n",
                     out_.nodes, open.size(), global, incumbent_);
      }
    }
    out_.bound = open.empty() ? incumbent_ : std::min(open.top().bound, incumbent_);
    if (!out_.bound_trace.empty() && out_.bound < out_.bound_trace.back()) {
      out_.bound = out_.bound_trace.back();
    }
    if (std::isfinite(incumbent_)) {
      out_.status = limited ? SolveStatus::kLimit : SolveStatus::kOptimal;
      out_.objective = incumbent_;
      out_.x = best_x_;
      if (!limited) out_.bound = std::min(out_.bound, incumbent_);
    } else {
      out_.status = limited ? SolveStatus::kLimit : SolveStatus::kInfeasible;
    }
    return finish();
  }

 private:
  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

  double gap_tolerance() const {
    if (!std::isfinite(incumbent_)) return 0.0;
    return std::max(opts_.abs_gap, opts_.rel_gap * std::abs(incumbent_));
  }

  bool closed(double global) const {
    return std::isfinite(incumbent_) && incumbent_ - global <= gap_tolerance();
  }

  LpSolution lp(const std::vector<double>& lo, const std::vector<double>& hi) {
    ++out_.lp_solves;
    return solve_lp(inst_, lo, hi, opts_.tol);
  }

  // Re-solves with integers pinned to their rounded values so the stored
  // incumbent is an exact LP optimum of its integer assignment.
  void accept(const std::vector<double>& lo, const std::vector<double>& hi,
              const std::vector<double>& x) {
    std::vector<double> flo(lo), fhi(hi);
    for (std::size_t j = 0; j < inst_.vars.size(); ++j) {
      if (inst_.vars[j].is_integer()) flo[j] = fhi[j] = std::round(x[j]);
    }
    const LpSolution sol = lp(flo, fhi);
    if (sol.status != SolveStatus::kOptimal) return;
    if (sol.objective < incumbent_) {
      incumbent_ = sol.objective;
      best_x_ = sol.x;
      if (opts_.log) {
        std::fprintf(stderr, "bnb: incumbent %.10g after %ld nodes\n", incumbent_,
                     out_.nodes);
      }
    }
  }

  void dive(std::vector<double> lo, std::vector<double> hi, std::vector<double> x) {
    const double tol = opts_.tol.integrality;
    while (true) {
      if (most_fractional(inst_, x, tol) < 0) {
        accept(lo, hi, x);
        return;
      }
      const int j = least_fractional(inst_, x, lo, hi, tol);
      if (j < 0) return;
      const double near = std::round(x[j]);
      const double far = near > x[j] ? std::floor(x[j]) : std::ceil(x[j]);
      bool moved = false;
      for (double v : {near, far}) {
        if (v < lo[j] || v > hi[j]) continue;
        std::vector<double> tlo(lo), thi(hi);
        tlo[j] = thi[j] = v;
        const LpSolution sol = lp(tlo, thi);
        if (sol.status != SolveStatus::kOptimal) continue;
        if (sol.objective >= incumbent_) return;
        lo = std::move(tlo);
        hi = std::move(thi);
        x = sol.x;
        moved = true;
        break;
      }
      if (!moved) return;
    }
  }

  MilpSolution finish() { return std::move(out_); }

  const MilpInstance& inst_;
  BnbOptions opts_;
  std::chrono::steady_clock::time_point start_;
  MilpSolution out_;
  double incumbent_ = kInf;
  std::vector<double> best_x_;
  long next_id_ = 0;
};

}  // namespace

MilpSolution solve_milp(const MilpInstance& inst, const BnbOptions& opts) {
  inst.check();
  return BranchAndBound(inst, opts).run();
}

}  // namespace hsc
