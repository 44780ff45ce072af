#pragma once

#include <initializer_list>
#include <vector>

#include "deplen/tree.hpp"
#include "oracles.hpp"

namespace testing_support {

/// Head vector with 0 for the root, as written in structure files.
inline deplen::DepStructure make(std::initializer_list<int> heads) {
  std::vector<deplen::Position> h;
  for (int x : heads) h.push_back(x == 0 ? deplen::kRoot : x);
  return deplen::DepStructure(std::move(h));
}

inline deplen::DepStructure from_oracle(const oracle::Heads& heads) {
  std::vector<deplen::Position> h;
  for (int x : heads) h.push_back(x == 0 ? deplen::kRoot : x);
  return deplen::DepStructure(std::move(h));
}

inline oracle::Heads to_oracle(const deplen::DepStructure& s) {
  oracle::Heads out;
  for (deplen::Position p : s.heads()) out.push_back(p == deplen::kRoot ? 0 : p);
  return out;
}

inline deplen::DepStructure chain(int n) {
  std::vector<deplen::Position> h{deplen::kRoot};
  for (int p = 2; p <= n; ++p) h.push_back(p - 1);
  return deplen::DepStructure(std::move(h));
}

}  // namespace testing_support
