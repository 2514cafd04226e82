#include "hsc/topsis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "hsc/error.hpp"

namespace hsc {

RankingResult mtopsis_rank(const std::vector<std::vector<double>>& rows,
                           const std::vector<double>& weights, RankingMethod method) {
  if (rows.empty()) throw DomainError("ranking needs at least one alternative");
  const std::size_t n = rows.size();
  const std::size_t nc = weights.size();
  double wsum = 0.0;
  for (double w : weights) {
    if (!(w > 0) || !std::isfinite(w)) throw DomainError("weights must be positive");
    wsum += w;
  }
  for (const auto& r : rows) {
    if (r.size() != nc) throw DomainError("criterion count differs from weight count");
    for (double v : r) {
      if (!std::isfinite(v)) throw DomainError("criterion values must be finite");
    }
  }

  RankingResult out;
  out.method = method;
  for (double w : weights) out.weights.push_back(w / wsum);
  out.alternatives.resize(n);
  for (auto& a : out.alternatives) {
    a.normalized.assign(nc, 0.0);
    a.weighted.assign(nc, 0.0);
  }

  std::vector<double> ideal(nc, 0.0), anti(nc, 0.0);
  for (std::size_t c = 0; c < nc; ++c) {
    double lo = rows[0][c], hi = rows[0][c], norm = 0.0;
    for (const auto& r : rows) {
      lo = std::min(lo, r[c]);
      hi = std::max(hi, r[c]);
      norm += r[c] * r[c];
    }
    norm = std::sqrt(norm);
    if (lo == hi || norm == 0.0) {
      if (n > 1) out.warnings.push_back("criterion " + std::to_string(c) + " is constant");
      continue;
    }
    ideal[c] = std::numeric_limits<double>::infinity();
    anti[c] = -std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < n; ++a) {
      auto& alt = out.alternatives[a];
      alt.normalized[c] = rows[a][c] / norm;
      alt.weighted[c] = alt.normalized[c] * out.weights[c];
      ideal[c] = std::min(ideal[c], alt.weighted[c]);
      anti[c] = std::max(anti[c], alt.weighted[c]);
    }
  }

  double best_plus = std::numeric_limits<double>::infinity();
  double best_minus = 0.0;
  for (auto& alt : out.alternatives) {
    double sp = 0.0, sm = 0.0;
    for (std::size_t c = 0; c < nc; ++c) {
      sp += (alt.weighted[c] - ideal[c]) * (alt.weighted[c] - ideal[c]);
      sm += (alt.weighted[c] - anti[c]) * (alt.weighted[c] - anti[c]);
    }
    alt.d_plus = std::sqrt(sp);
    alt.d_minus = std::sqrt(sm);
    best_plus = std::min(best_plus, alt.d_plus);
    best_minus = std::max(best_minus, alt.d_minus);
  }
  for (auto& alt : out.alternatives) {
    if (method == RankingMethod::kModified) {
      alt.score = std::hypot(alt.d_plus - best_plus, alt.d_minus - best_minus);
    } else {
      const double d = alt.d_plus + alt.d_minus;
      alt.score = d > 0 ? alt.d_minus / d : 0.0;
    }
  }

  out.order.resize(n);
  std::iota(out.order.begin(), out.order.end(), 0);
  std::stable_sort(out.order.begin(), out.order.end(), [&](std::size_t a, std::size_t b) {
    const double sa = out.alternatives[a].score;
    const double sb = out.alternatives[b].score;
    if (sa != sb) return method == RankingMethod::kModified ? sa < sb : sa > sb;
    return nc > 0 && rows[a][0] < rows[b][0];
  });
  for (std::size_t k = 0; k < n; ++k) out.alternatives[out.order[k]].rank = k + 1;
  return out;
}

}  // namespace hsc
