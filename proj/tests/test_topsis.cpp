#include <cmath>
#include <random>

#include "doctest.h"
#include "hsc/error.hpp"
#include "hsc/topsis.hpp"

using namespace hsc;

namespace {

// Cost, GHG and risk optima of the island study.
const std::vector<std::vector<double>> kAnchors{
    {61.4, 22.0, 51.6}, {84.8, 16.6, 263.9}, {76.9, 21.3, 49.1}};

std::vector<std::vector<double>> random_matrix(std::mt19937& rng, std::size_t n, std::size_t c) {
  std::uniform_real_distribution<double> u(1.0, 100.0);
  std::vector<std::vector<double>> rows(n, std::vector<double>(c));
  for (auto& r : rows)
    for (double& v : r) v = u(rng);
  return rows;
}

}  // namespace

TEST_CASE("topsis: one alternative") {
  const RankingResult r = mtopsis_rank({{3.0, 4.0, 5.0}}, {1, 1, 1});
  CHECK(r.order == std::vector<std::size_t>{0});
  CHECK(r.alternatives[0].rank == 1);
  CHECK(r.alternatives[0].score == 0.0);
}

TEST_CASE("topsis: anchor triple") {
  // Scores frozen from an independent numpy evaluation.
  const RankingResult eq = mtopsis_rank(kAnchors, {1, 1, 1});
  CHECK(eq.order == std::vector<std::size_t>{0, 2, 1});
  CHECK(eq.best() == 0);
  CHECK(eq.alternatives[0].score == doctest::Approx(0.0));
  CHECK(eq.alternatives[1].score == doctest::Approx(0.3048099).epsilon(1e-6));
  CHECK(eq.alternatives[2].score == doctest::Approx(0.00878618).epsilon(1e-6));
  for (double w : eq.weights) CHECK(w == doctest::Approx(1.0 / 3));

  const RankingResult ghg = mtopsis_rank(kAnchors, {1, 2, 1});
  CHECK(ghg.order == std::vector<std::size_t>{2, 0, 1});
  CHECK(ghg.alternatives[0].score == doctest::Approx(0.00378163).epsilon(1e-6));
  CHECK(ghg.alternatives[2].score == doctest::Approx(0.00202398).epsilon(1e-6));

  const RankingResult classic = mtopsis_rank(kAnchors, {1, 1, 1}, RankingMethod::kClassic);
  CHECK(classic.order == std::vector<std::size_t>{0, 2, 1});
  const auto& a = classic.alternatives[1];
  CHECK(a.d_minus / (a.d_plus + a.d_minus) == doctest::Approx(a.score));
}

TEST_CASE("topsis: rows are normalized and weighted") {
  const RankingResult r = mtopsis_rank(kAnchors, {1, 1, 1});
  for (std::size_t c = 0; c < 3; ++c) {
    double ss = 0;
    for (const auto& a : r.alternatives) ss += a.normalized[c] * a.normalized[c];
    CHECK(ss == doctest::Approx(1.0));
  }
  CHECK(r.alternatives[1].weighted[2] == doctest::Approx(r.alternatives[1].normalized[2] / 3));
}

TEST_CASE("topsis: positive column scaling leaves the order unchanged") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> factor(1e-3, 1e3);
  for (int round = 0; round < 50; ++round) {
    auto rows = random_matrix(rng, 6, 3);
    const RankingResult before = mtopsis_rank(rows, {1, 2, 3});
    for (std::size_t c = 0; c < 3; ++c) {
      const double k = factor(rng);
      for (auto& r : rows) r[c] *= k;
    }
    CHECK(mtopsis_rank(rows, {1, 2, 3}).order == before.order);
  }
}

TEST_CASE("topsis: a dominating row ranks strictly better") {
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> shrink(0.5, 0.99);
  std::uniform_real_distribution<double> w(0.1, 5.0);
  std::uniform_int_distribution<int> pick(0, 2);
  for (int round = 0; round < 100; ++round) {
    auto rows = random_matrix(rng, 5, 3);
    // Row 4 copies row 1 and improves one criterion.
    rows[4] = rows[1];
    rows[4][pick(rng)] *= shrink(rng);
    const std::vector<double> weights{w(rng), w(rng), w(rng)};
    const RankingResult r = mtopsis_rank(rows, weights);
    CHECK(r.alternatives[4].rank < r.alternatives[1].rank);
    CHECK(r.alternatives[4].score < r.alternatives[1].score);
  }
}

TEST_CASE("topsis: ties and warnings") {
  const RankingResult r = mtopsis_rank({{2, 5}, {1, 5}, {1, 5}}, {1, 1});
  CHECK(r.order == std::vector<std::size_t>{1, 2, 0});
  CHECK_FALSE(r.warnings.empty());
}

TEST_CASE("topsis: input errors") {
  CHECK_THROWS_AS(mtopsis_rank({}, {1}), DomainError);
  CHECK_THROWS_AS(mtopsis_rank({{1, 2}, {1}}, {1, 1}), DomainError);
  CHECK_THROWS_AS(mtopsis_rank({{1, NAN}}, {1, 1}), DomainError);
  CHECK_THROWS_AS(mtopsis_rank({{1, 2}}, {1, 0}), DomainError);
  CHECK_THROWS_AS(mtopsis_rank({{1, 2}}, {1}), DomainError);
}
