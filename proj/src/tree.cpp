#include "deplen/tree.hpp"

#include <cassert>
#include <stdexcept>

namespace deplen {

std::optional<std::string> tree_violation(std::span<const Position> heads) {
  const auto n = static_cast<Position>(heads.size());
  if (n < 2) return "structure needs at least 2 words, got " + std::to_string(n);

  Position root = kRoot;
  for (Position p = 1; p <= n; ++p) {
    Position h = heads[static_cast<std::size_t>(p - 1)];
    if (h == kRoot) {
      if (root != kRoot) {
        return "multiple roots at positions " + std::to_string(root) + " and " + std::to_string(p);
      }
      root = p;
    } else if (h < 1 || h > n) {
      return "head " + std::to_string(h) + " of position " + std::to_string(p) + " out of range";
    } else if (h == p) {
      return "position " + std::to_string(p) + " is its own head";
    }
  }
  if (root == kRoot) return std::string("no root");

  // 0 = unvisited, 1 = on the current walk, 2 = known to reach the root.
  std::vector<unsigned char> state(static_cast<std::size_t>(n) + 1, 0);
  state[static_cast<std::size_t>(root)] = 2;
  std::vector<Position> walk;
  for (Position start = 1; start <= n; ++start) {
    walk.clear();
    Position v = start;
    while (state[static_cast<std::size_t>(v)] == 0) {
      state[static_cast<std::size_t>(v)] = 1;
      walk.push_back(v);
      v = heads[static_cast<std::size_t>(v - 1)];
    }
    if (state[static_cast<std::size_t>(v)] == 1) {
      return "cycle through position " + std::to_string(v);
    }
    for (Position w : walk) state[static_cast<std::size_t>(w)] = 2;
  }
  return std::nullopt;
}

DepStructure::DepStructure(std::vector<Position> heads) {
  if (auto why = tree_violation(heads)) throw std::invalid_argument("invalid dependency structure: " + *why);
  heads_ = std::move(heads);
  for (Position p = 1; p <= n(); ++p) {
    if (head(p) == kRoot) root_ = p;
  }
}

DepStructure DepStructure::from_valid_heads(std::vector<Position> heads) {
  assert(!tree_violation(heads));
  DepStructure s;
  s.heads_ = std::move(heads);
  for (Position p = 1; p <= s.n(); ++p) {
    if (s.head(p) == kRoot) s.root_ = p;
  }
  return s;
}

std::size_t DepStructureHash::operator()(const DepStructure& s) const noexcept {
  // FNV-1a over the head vector.
  std::uint64_t h = 1469598103934665603ull;
  for (Position p : s.heads()) {
    h ^= static_cast<std::uint32_t>(p);
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h);
}

std::vector<Edge> edges(const DepStructure& s) {
  std::vector<Edge> out;
  out.reserve(static_cast<std::size_t>(s.n() - 1));
  for (Position p = 1; p <= s.n(); ++p) {
    if (s.head(p) != kRoot) out.push_back(Edge{s.head(p), p});
  }
  return out;
}

std::int64_t total_distance(const DepStructure& s) {
  std::int64_t total = 0;
  for (Position p = 1; p <= s.n(); ++p) {
    Position h = s.head(p);
    if (h != kRoot) total += h < p ? p - h : h - p;
  }
  return total;
}

DistanceSummary distance_summary(const DepStructure& s) {
  DistanceSummary out;
  out.n = s.n();
  out.total = total_distance(s);
  out.mean = Rational(out.total, out.n - 1);
  return out;
}

Rational baseline_rla(int n) {
  if (n < 2) throw std::invalid_argument("baseline needs n >= 2, got " + std::to_string(n));
  return Rational(n + 1, 3);
}

std::vector<Position> yield_of(const DepStructure& s, Position v) {
  if (v < 1 || v > s.n()) throw std::out_of_range("position " + std::to_string(v) + " outside the sentence");
  // A position is in the yield iff its head chain passes through v.
  std::vector<signed char> in_yield(static_cast<std::size_t>(s.n()) + 1, -1);
  in_yield[static_cast<std::size_t>(v)] = 1;
  in_yield[static_cast<std::size_t>(s.root())] = s.root() == v ? 1 : 0;
  std::vector<Position> chain;
  std::vector<Position> out;
  for (Position p = 1; p <= s.n(); ++p) {
    chain.clear();
    Position u = p;
    while (in_yield[static_cast<std::size_t>(u)] < 0) {
      chain.push_back(u);
      u = s.head(u);
    }
    signed char verdict = in_yield[static_cast<std::size_t>(u)];
    for (Position w : chain) in_yield[static_cast<std::size_t>(w)] = verdict;
    if (verdict == 1) out.push_back(p);
  }
  return out;
}

}  // namespace deplen
