#include <doctest.h>

#include <map>
#include <random>
#include <tuple>

#include "deplen/stats.hpp"
#include "support.hpp"

using namespace deplen;
using testing_support::chain;
using testing_support::make;

namespace {

struct Census {
  std::uint64_t count;
  std::int64_t sum_d;
};

// Frozen from tests/oracles/brute_force.py (enumeration of all head vectors).
const std::map<std::pair<int, DepClass>, Census> kCensus{
    {{3, DepClass::kAll}, {9, 24}},         {{3, DepClass::kPlanar}, {9, 24}},
    {{3, DepClass::kProjective}, {7, 18}},  {{3, DepClass::kWg1}, {9, 24}},
    {{3, DepClass::kEc1}, {9, 24}},         {{4, DepClass::kAll}, {64, 320}},
    {{4, DepClass::kPlanar}, {48, 232}},    {{4, DepClass::kProjective}, {30, 138}},
    {{4, DepClass::kWg1}, {64, 320}},       {{4, DepClass::kEc1}, {64, 320}},
    {{5, DepClass::kAll}, {625, 5000}},     {{5, DepClass::kPlanar}, {275, 2040}},
    {{5, DepClass::kProjective}, {143, 1004}}, {{5, DepClass::kWg1}, {569, 4500}},
    {{5, DepClass::kEc1}, {565, 4464}},     {{6, DepClass::kAll}, {7776, 90720}},
    {{6, DepClass::kPlanar}, {1638, 16986}}, {{6, DepClass::kProjective}, {728, 7128}},
    {{6, DepClass::kWg1}, {5652, 63994}},   {{6, DepClass::kEc1}, {5244, 58820}},
};

LengthClassStats random_stats(std::mt19937_64& rng, int n) {
  LengthClassStats s{n, DepClass::kPlanar};
  s.count = rng() % 1000;
  s.sum_d = static_cast<wide_int>(s.count) * (n - 1) + static_cast<wide_int>(rng() % 5000);
  s.sum_d_squared = static_cast<wide_int>(rng() % 100000);
  return s;
}

}  // namespace

TEST_CASE("accumulate") {
  auto a = accumulate(LengthClassStats{4}, chain(4));
  CHECK(a.count == 1);
  CHECK(a.sum_d == 3);
  auto b = accumulate(LengthClassStats{4}, make({0, 1, 1, 1}));
  CHECK(b.sum_d == 6);
  CHECK_THROWS_AS(accumulate(LengthClassStats{5}, chain(4)), std::invalid_argument);

  LengthClassStats all{3};
  enumerate_all(3, [&](const DepStructure& s) { all = accumulate(all, s); });
  CHECK(all.count == 9);
  CHECK(all.mean() == Rational(4, 3));
  CHECK_FALSE(LengthClassStats{3}.mean().has_value());
}

TEST_CASE("merge is a commutative monoid") {
  std::mt19937_64 rng(1);
  for (int k = 0; k < 100; ++k) {
    auto a = random_stats(rng, 9), b = random_stats(rng, 9), c = random_stats(rng, 9);
    CHECK(merge(a, LengthClassStats{9, DepClass::kPlanar}) == a);
    CHECK(merge(merge(a, b), c) == merge(a, merge(b, c)));
    CHECK(merge(a, b) == merge(b, a));
  }
  CHECK_THROWS_AS(merge(LengthClassStats{4}, LengthClassStats{5}), std::invalid_argument);
  CHECK_THROWS_AS(merge(LengthClassStats{4, DepClass::kAll}, LengthClassStats{4, DepClass::kWg1}),
                  std::invalid_argument);
}

TEST_CASE("split enumeration merges to the single pass") {
  LengthClassStats whole{4}, left{4}, right{4};
  enumerate_all(4, [&](const DepStructure& s) { whole = accumulate(whole, s); });
  enumerate_code_range(4, 0, 7, [&](const DepStructure& s) { left = accumulate(left, s); });
  enumerate_code_range(4, 7, 16, [&](const DepStructure& s) { right = accumulate(right, s); });
  CHECK(merge(left, right) == whole);
}

TEST_CASE("standard error") {
  LengthClassStats s{3};
  add_total(s, 2);
  CHECK(std::isnan(s.std_error()));
  add_total(s, 4);
  // <d> values 1 and 2: sample sd 0.7071, se 0.5
  CHECK(s.std_error() == doctest::Approx(0.5));
}

TEST_CASE("exhaustive survey matches the brute-force census") {
  GenConfig cfg{3, 6, 6, 1, 0};
  auto table = survey(cfg, supported_classes());
  CHECK(table.size() == 4 * 5);
  for (const auto& row : table) {
    auto it = kCensus.find({row.n(), row.cls()});
    REQUIRE(it != kCensus.end());
    CHECK(row.stats.count == it->second.count);
    CHECK(row.stats.sum_d == it->second.sum_d);
    CHECK(row.exhaustive);
    CHECK(row.reported);
    CHECK(row.baseline() == baseline_rla(row.n()));
    CHECK(row.proportion() ==
          Rational(static_cast<wide_int>(row.stats.count), static_cast<wide_int>(kCensus.at({row.n(), DepClass::kAll}).count)));
    CHECK(*row.mean() <= row.baseline());
  }
  // sorted by class then length
  CHECK(table.front().cls() == DepClass::kAll);
  CHECK(table.front().n() == 3);
  CHECK(table.back().cls() == DepClass::kEc1);
  CHECK(table.back().n() == 6);
}

TEST_CASE("survey rows at n = 3") {
  GenConfig cfg{3, 3, 3, 1, 0};
  auto table = survey(cfg, supported_classes());
  auto row = [&](DepClass c) {
    return *std::find_if(table.begin(), table.end(), [c](const SurveyRow& r) { return r.cls() == c; });
  };
  CHECK(row(DepClass::kProjective).stats.count == 7);
  CHECK(row(DepClass::kProjective).proportion() == Rational(7, 9));
  CHECK(row(DepClass::kProjective).mean() == Rational(9, 7));
  CHECK(row(DepClass::kPlanar).proportion() == Rational(1));
  CHECK(row(DepClass::kPlanar).mean() == Rational(4, 3));
}

TEST_CASE("undersampling filter") {
  LengthTally tally(20, std::vector<DepClass>{DepClass::kAll, DepClass::kProjective});
  sample_uniform(20, 12, 5, [&](const DepStructure& s) { tally.add(s); });
  auto rows = rows_from_tally(tally, Source::kArtificial, false, false);
  CHECK(rows[0].stats.count == 12);
  CHECK_FALSE(rows[0].reported);

  GenConfig cfg{3, 8, 4, 40, 1};
  auto table = survey(cfg, std::vector<DepClass>{DepClass::kAll, DepClass::kProjective});
  for (const auto& r : table) {
    if (r.n() <= 4) {
      CHECK(r.reported);
    } else if (r.cls() == DepClass::kAll) {
      CHECK(r.stats.count == 40);
      CHECK(r.reported);
    } else {
      CHECK(r.reported == (r.stats.count >= 30));
    }
    if (r.cls() == DepClass::kAll) CHECK(r.proportion() == Rational(1));
  }
}

TEST_CASE("survey does not depend on the thread count") {
  GenConfig cfg{3, 9, 5, 3 * kSampleChunkSize / 2, 77};
  auto one = survey(cfg, supported_classes(), {1, nullptr});
  auto three = survey(cfg, supported_classes(), {3, nullptr});
  REQUIRE(one.size() == three.size());
  for (std::size_t i = 0; i < one.size(); ++i) {
    CHECK(one[i].stats == three[i].stats);
    CHECK(one[i].examined == three[i].examined);
  }
}

TEST_CASE("survey progress and validation") {
  std::vector<int> seen;
  SurveyOptions opts;
  opts.progress = [&](int n, std::uint64_t, bool) { seen.push_back(n); };
  survey(GenConfig{3, 5, 4, 10, 0}, std::vector<DepClass>{DepClass::kAll}, opts);
  CHECK(seen == std::vector<int>{3, 4, 5});
  CHECK_THROWS_AS(survey(GenConfig{3, 5, 6, 10, 0}, supported_classes()), std::invalid_argument);
  CHECK_THROWS_AS(survey(GenConfig{3, 5, 4, 10, 0}, {}), std::invalid_argument);
}

TEST_CASE("deviation onset") {
  GenConfig cfg{3, 7, 7, 1, 0};
  auto table = survey(cfg, supported_classes());
  CHECK(deviation_onset(table, DepClass::kProjective) == 3);
  CHECK(deviation_onset(table, DepClass::kPlanar) == 4);
  CHECK(deviation_onset(table, DepClass::kWg1) == 5);
  CHECK(deviation_onset(table, DepClass::kEc1) == 5);
  CHECK_FALSE(deviation_onset(table, DepClass::kAll).has_value());

  auto only_all = survey(GenConfig{3, 4, 4, 1, 0}, std::vector<DepClass>{DepClass::kAll});
  CHECK_THROWS_AS(deviation_onset(only_all, DepClass::kPlanar), std::invalid_argument);
}

TEST_CASE("planar maximum mean distance") {
  CHECK(planar_max_mean(4) == Rational(2));
  CHECK(planar_max_mean(3) == Rational(3, 2));
  // star centred on an end word
  CHECK(distance_summary(make({0, 1, 1, 1})).mean == planar_max_mean(4));
  for (int n = 3; n <= 7; ++n) {
    Rational best(0);
    enumerate_all(n, [&](const DepStructure& s) {
      if (oracle::planar(testing_support::to_oracle(s))) best = std::max(best, distance_summary(s).mean);
    });
    CHECK(best == planar_max_mean(n));
  }
  CHECK_THROWS_AS(planar_max_mean(1), std::invalid_argument);
}
