#include <cmath>
#include <numeric>

#include "doctest.h"
#include "tgds/degree_sequence.hpp"
#include "tgds/error.hpp"
#include "tgds/rng.hpp"
#include "helpers.hpp"

using namespace tgds;

namespace {

using th::code_of;

DegreeSequence binary(Count k) { return DegreeSequence::validate({{0, k + 1}, {2, k}}); }

}  // namespace

TEST_CASE("validate accepts tree-shaped counts and rejects the rest") {
  const auto cherry = DegreeSequence::validate({{0, 2}, {2, 1}});
  CHECK(cherry.num_vertices() == 3);
  CHECK(cherry.num_edges() == 2);
  const auto edge = DegreeSequence::validate({{0, 1}, {1, 1}});
  CHECK(edge.num_vertices() == 2);
  CHECK(edge.num_edges() == 1);
  CHECK(code_of([] { DegreeSequence::validate({{0, 2}, {1, 1}}); }) == ErrorCode::kConstraintViolation);
  CHECK(code_of([] { DegreeSequence::validate({{0, 0}, {3, 0}}); }) == ErrorCode::kEmpty);
  CHECK(code_of([] { DegreeSequence::validate({{0, -1}}); }) == ErrorCode::kConstraintViolation);
  // zero entries are dropped, so equality is on the support
  CHECK(DegreeSequence::validate({{0, 2}, {2, 1}, {5, 0}}) == cherry);
}

TEST_CASE("stats") {
  auto s = stats(DegreeSequence::validate({{0, 3}, {3, 1}}));
  CHECK(s.num_vertices == 4);
  CHECK(s.num_edges == 3);
  CHECK(s.sigma2 == 6);
  CHECK(s.max_degree == 3);

  s = stats(DegreeSequence::validate({{0, 3}, {1, 1}, {2, 2}}));
  CHECK(s.num_vertices == 6);
  CHECK(s.num_edges == 5);
  CHECK(s.sigma2 == 4);
  CHECK(s.max_degree == 2);

  s = stats(DegreeSequence::validate({{0, 3}, {1, 2}, {2, 2}}));
  CHECK(s.num_vertices == 7);
  CHECK(s.num_edges == 6);
  CHECK(s.sigma2 == 4);
  CHECK(s.max_degree == 2);
}

TEST_CASE("child sequence") {
  CHECK(child_sequence(DegreeSequence::validate({{0, 3}, {3, 1}})) == std::vector<Count>{3, 0, 0, 0});
  CHECK(child_sequence(DegreeSequence::validate({{0, 3}, {1, 1}, {2, 2}})) ==
        std::vector<Count>{2, 2, 1, 0, 0, 0});
  CHECK(child_sequence(DegreeSequence::validate({{0, 2}, {2, 1}})) == std::vector<Count>{2, 0, 0});
}

TEST_CASE("random sequences: E = V - 1, child sums, and round trip through the child sequence") {
  Rng rng(Seed{11, 0});
  for (int trial = 0; trial < 300; ++trial) {
    std::map<Count, Count> counts;
    Count extra = 0;
    const int kinds = 1 + static_cast<int>(rng.below(5));
    for (int j = 0; j < kinds; ++j) {
      const auto i = static_cast<Count>(1 + rng.below(40));
      const auto n = static_cast<Count>(rng.below(50));
      counts[i] += n;
      extra += (i - 1) * n;
    }
    counts[0] += 1 + extra;
    const auto ds = DegreeSequence::validate(counts);
    const auto st = stats(ds);
    const auto d = child_sequence(ds);
    CHECK(st.num_edges == st.num_vertices - 1);
    CHECK(std::accumulate(d.begin(), d.end(), Count{0}) == st.num_edges);
    CHECK(d.front() == st.max_degree);
    CHECK(std::is_sorted(d.rbegin(), d.rend()));
    CHECK(from_child_sequence(d) == ds);
  }
}

TEST_CASE("theta_check") {
  auto brownian = theta_check(1.0, {});
  CHECK(brownian.normalized);
  CHECK(brownian.condition_b);
  CHECK(brownian.condition_a4);

  const double r7 = std::sqrt(7.0);
  auto fig = theta_check(1 / r7, {1 / r7, 2 / r7, 1 / r7}, true);
  CHECK(fig.normalized);
  CHECK(fig.condition_b);
  CHECK(fig.betas == std::vector<double>{2 / r7, 1 / r7, 1 / r7});

  auto pure = theta_check(0.0, {1.0});
  CHECK(pure.normalized);
  CHECK_FALSE(pure.condition_b);
  CHECK_FALSE(pure.condition_a4);

  auto marker = theta_check(0.0, {0.5}, false, true);
  CHECK(marker.condition_a4);
  CHECK_FALSE(marker.condition_b);

  CHECK(code_of([] { theta_check(0.5, {0.5}, true); }) == ErrorCode::kNotNormalized);
  CHECK_FALSE(theta_check(0.5, {0.5}).normalized);

  for (const auto& p : {brownian, fig, pure, marker}) {
    CHECK(theta_check(p.sigma, p.betas, false, p.divergent_beta) == p);
  }
}

TEST_CASE("hypothesis report on binary sequences") {
  std::vector<std::pair<DegreeSequence, double>> fam;
  for (Count k : {10, 100, 1000, 10000}) fam.emplace_back(binary(k), std::sqrt(2.0 * static_cast<double>(k)));
  const auto rep = hypothesis_report(fam);
  REQUIRE(rep.rows.size() == 4);
  const Count ks[] = {10, 100, 1000, 10000};
  for (std::size_t r = 0; r < 4; ++r) {
    const double k = static_cast<double>(ks[r]);
    CHECK(rep.rows[r].variance_ratio == doctest::Approx((2 * k + 1) / (2 * k)).epsilon(1e-12));
    CHECK(rep.rows[r].size_ratio == doctest::Approx((2 * k + 1) / std::sqrt(2 * k)).epsilon(1e-12));
    CHECK(rep.rows[r].hub_ratios.size() == 10);
    CHECK(rep.rows[r].hub_ratios[0] == doctest::Approx(2 / std::sqrt(2 * k)));
  }
  CHECK(rep.size_trend == Trend::kIncreasing);
  CHECK(rep.variance_trend == Trend::kDecreasing);
  CHECK(rep.hub_trends[0] == Trend::kDecreasing);
}

TEST_CASE("hypothesis report sees a hub of size ceil(sqrt(n))") {
  std::vector<std::pair<DegreeSequence, double>> fam;
  for (Count n : {100, 10000, 1000000}) {
    const double b = std::sqrt(static_cast<double>(n));
    const auto h = static_cast<Count>(std::ceil(b));
    const Count k = (n - 1 - h) / 2;
    fam.emplace_back(DegreeSequence::validate({{h, 1}, {2, k}, {0, 1 + k + h - 1}}), b);
  }
  const auto rep = hypothesis_report(fam);
  for (const auto& row : rep.rows) CHECK(std::abs(row.hub_ratios[0] - 1.0) <= 1.0 / std::sqrt(row.b_n * row.b_n));
  CHECK(std::abs(rep.rows.back().hub_ratios[0] - 1.0) < 1e-3);
}

TEST_CASE("hypothesis report needs two sequences") {
  CHECK(code_of([] { hypothesis_report({{binary(3), 2.0}}); }) == ErrorCode::kTooFewPoints);
}

TEST_CASE("JSON and CSV round trips are exact") {
  const Count big = 4'000'000'000'000LL;
  const auto ds = DegreeSequence::validate({{0, big + 1}, {2, big}, {7, 0}});
  CHECK(degree_sequence_from_json(to_json(ds)) == ds);
  CHECK(degree_sequence_from_csv(to_csv(ds)) == ds);
  CHECK(to_json(DegreeSequence::validate({{0, 2}, {2, 1}})) == R"({"counts":{"0":2,"2":1}})");
  CHECK(code_of([] { degree_sequence_from_json("{\"counts\": {\"0\": 2, \"1\": 1}}"); }) ==
        ErrorCode::kConstraintViolation);
  CHECK(code_of([] { degree_sequence_from_json("not json"); }) == ErrorCode::kInvalidArgument);
}
