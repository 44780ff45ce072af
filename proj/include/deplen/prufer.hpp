#pragma once

// Generation of dependency structures from Prüfer codes: exhaustive
// enumeration for small lengths and uniform sampling for larger ones.

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "deplen/tree.hpp"

namespace deplen {

using BigInt = boost::multiprecision::cpp_int;

struct PruferCode {
  int n = 2;
  std::vector<Position> code;  // n - 2 labels in 1..n

  friend bool operator==(const PruferCode&, const PruferCode&) = default;
};

/// Labelled undirected tree. Edges are stored canonically: each pair as
/// (smaller, larger) and the list sorted, so == compares edge sets.
struct UndirectedTree {
  int n = 2;
  std::vector<std::pair<Position, Position>> edges;

  void canonicalize();

  friend bool operator==(const UndirectedTree&, const UndirectedTree&) = default;
};

struct GenConfig {
  int n_min = 3;
  int n_max = 25;
  int n_star = 10;  // largest exhaustively enumerated length
  std::uint64_t samples = 1'000'000'000;  // per sampled length
  std::uint64_t seed = 0;

  /// Throws std::invalid_argument when the bounds are inconsistent.
  void validate() const;
};

/// Raised when exhaustive enumeration is requested beyond the allowed length.
class ExhaustiveLimitError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Lengths up to this bound have n^(n-1) representable in 64 bits.
inline constexpr int kMaxEnumerableLength = 16;

/// Draws per sampling chunk. Each chunk owns an independent generator, so
/// the stream does not depend on how chunks are scheduled.
inline constexpr std::uint64_t kSampleChunkSize = std::uint64_t{1} << 16;

using StructureVisitor = std::function<void(const DepStructure&)>;

/// Throws std::out_of_range for a label outside 1..n and
/// std::invalid_argument for a code of the wrong length.
UndirectedTree prufer_decode(const PruferCode& code);

/// Throws std::invalid_argument when `tree` is not a tree on 1..n.
PruferCode prufer_encode(const UndirectedTree& tree);

/// n^(n-2) (Cayley).
BigInt count_labelled_trees(int n);

/// n^(n-1): every labelled tree rooted at each of its vertices.
BigInt count_structures(int n);

/// Orients every edge away from `root` with a depth-first traversal; vertex
/// labels become word positions.
DepStructure root_tree(const UndirectedTree& tree, Position root);

/// Number of Prüfer codes of length n - 2, i.e. n^(n-2), as a 64-bit value.
std::uint64_t code_count(int n);

/// Visits every structure of length n exactly once, in lexicographic code
/// order and ascending root within a code. Throws ExhaustiveLimitError when
/// n > max_n.
void enumerate_all(int n, const StructureVisitor& visit, int max_n = 10);

/// Same order as enumerate_all, restricted to codes whose base-n index
/// (first label most significant) lies in [first_code, last_code).
void enumerate_code_range(int n, std::uint64_t first_code, std::uint64_t last_code,
                          const StructureVisitor& visit);

std::uint64_t sample_chunk_count(std::uint64_t samples);

/// Draws of chunk `chunk` of the stream (n, samples, seed). Each draw is a
/// uniform Prüfer code followed by a uniform root.
void sample_chunk(int n, std::uint64_t samples, std::uint64_t seed, std::uint64_t chunk,
                  const StructureVisitor& visit);

/// The whole stream, chunks in ascending order.
void sample_uniform(int n, std::uint64_t samples, std::uint64_t seed, const StructureVisitor& visit);
std::vector<DepStructure> sample_uniform(int n, std::uint64_t samples, std::uint64_t seed);

/// Structures examined by a full run: (n_max - n_star) * S + sum n^(n-1).
BigInt estimate_workload(const GenConfig& cfg);

}  // namespace deplen
