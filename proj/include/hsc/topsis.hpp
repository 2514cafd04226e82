#ifndef HSC_TOPSIS_HPP_
#define HSC_TOPSIS_HPP_

// Compromise ranking of alternatives whose criteria are all minimized.

#include <cstddef>
#include <string>
#include <vector>

namespace hsc {

enum class RankingMethod {
  kModified,  // distance to (min D+, max D-) in the (D+, D-) plane
  kClassic,   // closeness D- / (D+ + D-)
};

struct RankedAlternative {
  std::vector<double> normalized;
  std::vector<double> weighted;
  double d_plus = 0.0;   // to the ideal (column minima)
  double d_minus = 0.0;  // to the anti-ideal (column maxima)
  double score = 0.0;    // lower is better for kModified, higher for kClassic
  std::size_t rank = 0;  // 1-based
};

struct RankingResult {
  RankingMethod method = RankingMethod::kModified;
  std::vector<double> weights;  // normalized to sum 1
  std::vector<RankedAlternative> alternatives;  // input order
  std::vector<std::size_t> order;               // input indices, best first
  std::vector<std::string> warnings;

  std::size_t best() const { return order.front(); }
};

// rows[a][c]: criterion c of alternative a. Column 0 breaks ties (lower
// first), then input order. Throws DomainError on empty input, ragged rows,
// non-finite values or non-positive weights.
RankingResult mtopsis_rank(const std::vector<std::vector<double>>& rows,
                           const std::vector<double>& weights,
                           RankingMethod method = RankingMethod::kModified);

}  // namespace hsc

#endif  // HSC_TOPSIS_HPP_
