#include "deplen/stats.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <string>
#include <thread>

namespace deplen {

namespace {

// Exhaustive lengths are split into at most this many code ranges.
constexpr std::uint64_t kMaxCodeRanges = 256;

struct Task {
  std::uint64_t first = 0;  // code index or chunk index
  std::uint64_t last = 0;
};

// Runs fn(i) for i in [0, count) on `threads` workers. Results are written by
// index, so the caller sees the same output for any schedule.
void run_parallel(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count)));
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  {
    std::vector<std::jthread> workers;
    workers.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
      workers.emplace_back([&] {
        for (std::size_t i = next++; i < count && !failed; i = next++) {
          try {
            fn(i);
          } catch (...) {
            if (!failed.exchange(true)) failure = std::current_exception();
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

std::optional<Rational> LengthClassStats::mean() const {
  if (count == 0) return std::nullopt;
  return Rational(sum_d, static_cast<wide_int>(count) * (n - 1));
}

double LengthClassStats::std_error() const {
  if (count < 2) return std::numeric_limits<double>::quiet_NaN();
  // Sample variance of D from exact sums, then scaled to <d> = D / (n - 1).
  const wide_int c = static_cast<wide_int>(count);
  const wide_int spread = c * sum_d_squared - sum_d * sum_d;  // c^2 * population variance
  const double var_d = static_cast<double>(spread) / (static_cast<double>(c) * static_cast<double>(c - 1));
  const double scale = static_cast<double>(n - 1);
  return std::sqrt(var_d / static_cast<double>(count)) / scale;
}

void add_total(LengthClassStats& acc, std::int64_t total) {
  ++acc.count;
  acc.sum_d += total;
  acc.sum_d_squared += static_cast<wide_int>(total) * total;
}

LengthClassStats accumulate(LengthClassStats acc, const DepStructure& s) {
  if (s.n() != acc.n) {
    throw std::invalid_argument("structure of length " + std::to_string(s.n()) + " added to accumulator for n=" +
                                std::to_string(acc.n));
  }
  add_total(acc, total_distance(s));
  return acc;
}

LengthClassStats merge(const LengthClassStats& a, const LengthClassStats& b) {
  if (a.n != b.n || a.cls != b.cls) throw std::invalid_argument("merging accumulators with different keys");
  LengthClassStats out = a;
  out.count += b.count;
  out.sum_d += b.sum_d;
  out.sum_d_squared += b.sum_d_squared;
  return out;
}

LengthTally::LengthTally(int n, std::span<const DepClass> classes) : n_(n) {
  needs_mask_ = std::any_of(classes.begin(), classes.end(), [](DepClass c) { return c != DepClass::kAll; });
  for (DepClass c : classes) stats_.push_back(LengthClassStats{n, c});
}

void LengthTally::add(const DepStructure& s) {
  if (s.n() != n_) {
    throw std::invalid_argument("structure of length " + std::to_string(s.n()) + " added to tally for n=" +
                                std::to_string(n_));
  }
  ++examined_;
  const std::int64_t total = total_distance(s);
  ClassMask mask;
  if (needs_mask_) mask = classify(s);
  for (auto& acc : stats_) {
    if (acc.cls == DepClass::kAll || mask.contains(acc.cls)) add_total(acc, total);
  }
}

void LengthTally::merge(const LengthTally& other) {
  if (other.n_ != n_ || other.stats_.size() != stats_.size()) {
    throw std::invalid_argument("merging tallies with different keys");
  }
  examined_ += other.examined_;
  for (std::size_t i = 0; i < stats_.size(); ++i) stats_[i] = deplen::merge(stats_[i], other.stats_[i]);
}

std::string_view source_name(Source s) { return s == Source::kArtificial ? "AS" : "RS"; }

Rational SurveyRow::proportion() const {
  if (examined == 0) return Rational(0);
  return Rational(static_cast<wide_int>(stats.count), static_cast<wide_int>(examined));
}

std::vector<SurveyRow> rows_from_tally(const LengthTally& tally, Source source, bool exhaustive,
                                       bool reported_if_small) {
  std::vector<SurveyRow> rows;
  for (const auto& acc : tally.per_class()) {
    SurveyRow row;
    row.source = source;
    row.stats = acc;
    row.examined = tally.examined();
    row.exhaustive = exhaustive;
    row.reported = exhaustive || reported_if_small || acc.count >= kMinReportedCount;
    rows.push_back(row);
  }
  return rows;
}

void sort_table(SurveyTable& table) {
  std::stable_sort(table.begin(), table.end(), [](const SurveyRow& a, const SurveyRow& b) {
    if (a.cls() != b.cls()) return a.cls() < b.cls();
    return a.n() < b.n();
  });
}

SurveyTable survey(const GenConfig& cfg, std::span<const DepClass> classes, const SurveyOptions& options) {
  cfg.validate();
  if (classes.empty()) throw std::invalid_argument("survey needs at least one class");

  SurveyTable table;
  for (int n = cfg.n_min; n <= cfg.n_max; ++n) {
    const bool exhaustive = n <= cfg.n_star;
    std::vector<Task> tasks;
    if (exhaustive) {
      const std::uint64_t codes = code_count(n);
      const std::uint64_t ranges = std::min(codes, kMaxCodeRanges);
      for (std::uint64_t r = 0; r < ranges; ++r) tasks.push_back({codes * r / ranges, codes * (r + 1) / ranges});
    } else {
      const std::uint64_t chunks = sample_chunk_count(cfg.samples);
      for (std::uint64_t c = 0; c < chunks; ++c) tasks.push_back({c, c + 1});
    }

    std::vector<LengthTally> partial(tasks.size(), LengthTally(n, classes));
    run_parallel(tasks.size(), options.threads, [&](std::size_t i) {
      LengthTally& tally = partial[i];
      auto visit = [&tally](const DepStructure& s) { tally.add(s); };
      if (exhaustive) {
        enumerate_code_range(n, tasks[i].first, tasks[i].last, visit);
      } else {
        sample_chunk(n, cfg.samples, cfg.seed, tasks[i].first, visit);
      }
    });

    LengthTally total(n, classes);
    for (const auto& p : partial) total.merge(p);
    auto rows = rows_from_tally(total, Source::kArtificial, exhaustive, false);
    table.insert(table.end(), rows.begin(), rows.end());
    if (options.progress) options.progress(n, total.examined(), exhaustive);
  }
  sort_table(table);
  return table;
}

std::optional<int> deviation_onset(const SurveyTable& table, DepClass cls) {
  bool seen = false;
  std::optional<int> onset;
  for (const auto& row : table) {
    if (row.cls() != cls || !row.exhaustive) continue;
    seen = true;
    auto mean = row.mean();
    if (mean && *mean < row.baseline() && (!onset || row.n() < *onset)) onset = row.n();
  }
  if (!seen) {
    throw std::invalid_argument("no exhaustive rows for class " + std::string(class_name(cls)));
  }
  return onset;
}

Rational planar_max_mean(int n) {
  if (n < 2) throw std::invalid_argument("planar_max_mean needs n >= 2");
  return Rational(n, 2);
}

}  // namespace deplen
