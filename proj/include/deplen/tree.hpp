#pragma once

// Rooted dependency structures over a sentence of n words, with the
// linear arrangement given by the word positions 1..n themselves.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "deplen/rational.hpp"

namespace deplen {

/// 1-based word position.
using Position = std::int32_t;

/// Head entry of the root word. Distinct from every valid position; the
/// structure line format writes it as 0.
inline constexpr Position kRoot = -1;

class DepStructure {
 public:
  /// `heads[i - 1]` is the head of position i, or kRoot. Throws
  /// std::invalid_argument unless the vector describes a single rooted tree
  /// over n >= 2 words.
  explicit DepStructure(std::vector<Position> heads);

  /// Skips validation (checked with assert only). For generators that
  /// construct trees by design.
  static DepStructure from_valid_heads(std::vector<Position> heads);

  int n() const { return static_cast<int>(heads_.size()); }
  Position root() const { return root_; }
  Position head(Position p) const { return heads_[static_cast<std::size_t>(p - 1)]; }
  std::span<const Position> heads() const { return heads_; }

  friend bool operator==(const DepStructure&, const DepStructure&) = default;

 private:
  DepStructure() = default;

  std::vector<Position> heads_;
  Position root_ = kRoot;
};

/// Returns a description of the first violated tree invariant, or nothing
/// when `heads` is a valid rooted tree.
std::optional<std::string> tree_violation(std::span<const Position> heads);

struct DepStructureHash {
  std::size_t operator()(const DepStructure& s) const noexcept;
};

struct Edge {
  Position head_pos = 0;
  Position dep_pos = 0;

  constexpr Position left() const { return head_pos < dep_pos ? head_pos : dep_pos; }
  constexpr Position right() const { return head_pos < dep_pos ? dep_pos : head_pos; }
  constexpr int distance() const { return right() - left(); }
  constexpr bool has_endpoint(Position p) const { return p == head_pos || p == dep_pos; }

  friend bool operator==(const Edge&, const Edge&) = default;
};

struct DistanceSummary {
  int n = 0;
  std::int64_t total = 0;  // D
  Rational mean;           // D / (n - 1)
};

/// One edge per non-root position, ordered by dependent position.
std::vector<Edge> edges(const DepStructure& s);

/// Sum of dependency distances.
std::int64_t total_distance(const DepStructure& s);

DistanceSummary distance_summary(const DepStructure& s);

/// Expected mean distance under a uniformly random linear arrangement,
/// (n + 1) / 3. Throws std::invalid_argument for n < 2.
Rational baseline_rla(int n);

/// Positions of v and all of its descendants, ascending.
std::vector<Position> yield_of(const DepStructure& s, Position v);

/// Strict interior: an edge never covers its own endpoints.
constexpr bool covers(const Edge& e, Position p) { return e.left() < p && p < e.right(); }

/// Two arcs drawn above the words intersect. Arcs sharing an endpoint never
/// cross.
constexpr bool crossing(const Edge& e1, const Edge& e2) {
  Position a = e1.left(), b = e1.right(), c = e2.left(), d = e2.right();
  if (a > c) {
    std::swap(a, c);
    std::swap(b, d);
  }
  return a < c && c < b && b < d;
}

}  // namespace deplen
