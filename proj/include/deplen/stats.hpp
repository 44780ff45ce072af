#pragma once

// Exact per-(length, class) dependency distance statistics and the survey
// driver that fills them from exhaustive or sampled generation.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "deplen/classes.hpp"
#include "deplen/prufer.hpp"
#include "deplen/rational.hpp"
#include "deplen/tree.hpp"

namespace deplen {

/// Rows backed by fewer structures than this are hidden from reports when
/// they come from sampling.
inline constexpr std::uint64_t kMinReportedCount = 30;

struct LengthClassStats {
  int n = 0;
  DepClass cls = DepClass::kAll;
  std::uint64_t count = 0;
  wide_int sum_d = 0;          // sum of D over counted structures
  wide_int sum_d_squared = 0;  // sum of D^2, for the standard error

  /// sum_d / (count (n - 1)); empty when count == 0.
  std::optional<Rational> mean() const;

  /// Standard error of the mean of per-structure <d>; NaN when count < 2.
  double std_error() const;

  friend bool operator==(const LengthClassStats&, const LengthClassStats&) = default;
};

/// Adds one structure with total distance `total`.
void add_total(LengthClassStats& acc, std::int64_t total);

/// Throws std::invalid_argument when s.n() != acc.n.
LengthClassStats accumulate(LengthClassStats acc, const DepStructure& s);

/// Componentwise sum. Throws std::invalid_argument when (n, cls) differ.
LengthClassStats merge(const LengthClassStats& a, const LengthClassStats& b);

/// Accumulators for several classes at one length; classifies each
/// structure once.
class LengthTally {
 public:
  LengthTally(int n, std::span<const DepClass> classes);

  void add(const DepStructure& s);
  void merge(const LengthTally& other);

  int n() const { return n_; }
  std::uint64_t examined() const { return examined_; }
  const std::vector<LengthClassStats>& per_class() const { return stats_; }

 private:
  int n_;
  bool needs_mask_;
  std::uint64_t examined_ = 0;
  std::vector<LengthClassStats> stats_;
};

enum class Source { kArtificial, kAttested };

/// "AS" or "RS".
std::string_view source_name(Source s);

struct SurveyRow {
  Source source = Source::kArtificial;
  LengthClassStats stats;
  std::uint64_t examined = 0;  // structures of this length, any class
  bool exhaustive = false;     // exact expectation rather than an estimate
  bool reported = true;        // undersampling filter verdict

  int n() const { return stats.n; }
  DepClass cls() const { return stats.cls; }
  Rational proportion() const;
  std::optional<Rational> mean() const { return stats.mean(); }
  Rational baseline() const { return baseline_rla(stats.n); }
};

using SurveyTable = std::vector<SurveyRow>;

/// Rows for one length, one per class of the tally.
std::vector<SurveyRow> rows_from_tally(const LengthTally& tally, Source source, bool exhaustive, bool reported_if_small);

/// Orders rows by (class registry order, n).
void sort_table(SurveyTable& table);

struct SurveyOptions {
  unsigned threads = 1;
  /// Called on the calling thread after each length completes.
  std::function<void(int n, std::uint64_t examined, bool exhaustive)> progress;
};

/// Exhaustive enumeration for n_min..n_star and cfg.samples uniform draws
/// for n_star < n <= n_max. Independent of the thread count.
SurveyTable survey(const GenConfig& cfg, std::span<const DepClass> classes, const SurveyOptions& options = {});

/// Smallest n whose exhaustive row for `cls` has mean < baseline; empty if
/// none does. Throws std::invalid_argument when the table has no exhaustive
/// row for the class.
std::optional<int> deviation_onset(const SurveyTable& table, DepClass cls);

/// Largest mean distance among planar structures of length n: n / 2.
Rational planar_max_mean(int n);

}  // namespace deplen
