#include "deplen/prufer.hpp"

#include <algorithm>
#include <random>
#include <string>

namespace deplen {

namespace {

std::size_t idx(Position p) { return static_cast<std::size_t>(p); }

// Orients a fixed undirected tree for any choice of root. Adjacency is built
// once and reused across roots.
class Rooter {
 public:
  explicit Rooter(const UndirectedTree& tree) : n_(tree.n) {
    offsets_.assign(idx(n_) + 2, 0);
    for (auto [a, b] : tree.edges) {
      ++offsets_[idx(a) + 1];
      ++offsets_[idx(b) + 1];
    }
    for (std::size_t i = 1; i < offsets_.size(); ++i) offsets_[i] += offsets_[i - 1];
    neighbours_.resize(offsets_.back());
    std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
    for (auto [a, b] : tree.edges) {
      neighbours_[fill[idx(a)]++] = b;
      neighbours_[fill[idx(b)]++] = a;
    }
    stack_.reserve(idx(n_));
  }

  DepStructure root_at(Position root) {
    std::vector<Position> heads(idx(n_), 0);
    heads[idx(root - 1)] = kRoot;
    stack_.clear();
    stack_.push_back(root);
    while (!stack_.empty()) {
      Position v = stack_.back();
      stack_.pop_back();
      Position parent = heads[idx(v - 1)];
      for (std::size_t k = offsets_[idx(v)]; k < offsets_[idx(v) + 1]; ++k) {
        Position w = neighbours_[k];
        if (w == parent) continue;
        heads[idx(w - 1)] = v;
        stack_.push_back(w);
      }
    }
    return DepStructure::from_valid_heads(std::move(heads));
  }

 private:
  int n_;
  std::vector<std::size_t> offsets_;
  std::vector<Position> neighbours_;
  std::vector<Position> stack_;
};

// Unbiased integer in [1, bound] by rejection on the top of the 64-bit range.
// std::uniform_int_distribution is implementation-defined, which would make
// streams differ between standard libraries.
Position draw_label(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return static_cast<Position>(x % bound) + 1;
}

std::mt19937_64 chunk_engine(std::uint64_t seed, int n, std::uint64_t chunk) {
  // std::seed_seq's mixing is fixed by the standard, so this is portable.
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(chunk),
                    static_cast<std::uint32_t>(chunk >> 32)};
  return std::mt19937_64(seq);
}

void check_length(int n) {
  if (n < 2) throw std::invalid_argument("length must be >= 2, got " + std::to_string(n));
}

}  // namespace

void UndirectedTree::canonicalize() {
  for (auto& e : edges) {
    if (e.first > e.second) std::swap(e.first, e.second);
  }
  std::sort(edges.begin(), edges.end());
}

void GenConfig::validate() const {
  if (n_min < 3) throw std::invalid_argument("n_min must be >= 3");
  if (n_star < n_min) throw std::invalid_argument("n_star must be >= n_min");
  if (n_max < n_star) throw std::invalid_argument("n_max must be >= n_star");
  if (n_star > kMaxEnumerableLength) {
    throw std::invalid_argument("n_star must be <= " + std::to_string(kMaxEnumerableLength));
  }
  if (samples < 1) throw std::invalid_argument("samples must be >= 1");
}

UndirectedTree prufer_decode(const PruferCode& code) {
  const int n = code.n;
  check_length(n);
  if (code.code.size() != idx(n - 2)) {
    throw std::invalid_argument("Prüfer code for n=" + std::to_string(n) + " needs " + std::to_string(n - 2) +
                                " labels, got " + std::to_string(code.code.size()));
  }
  std::vector<int> degree(idx(n) + 1, 1);
  for (Position label : code.code) {
    if (label < 1 || label > n) {
      throw std::out_of_range("Prüfer label " + std::to_string(label) + " outside 1.." + std::to_string(n));
    }
    ++degree[idx(label)];
  }

  UndirectedTree tree;
  tree.n = n;
  tree.edges.reserve(idx(n - 1));
  Position ptr = 1;
  while (degree[idx(ptr)] != 1) ++ptr;
  Position leaf = ptr;
  for (Position label : code.code) {
    tree.edges.emplace_back(leaf, label);
    if (--degree[idx(label)] == 1 && label < ptr) {
      leaf = label;
    } else {
      ++ptr;
      while (degree[idx(ptr)] != 1) ++ptr;
      leaf = ptr;
    }
  }
  tree.edges.emplace_back(leaf, n);
  tree.canonicalize();
  return tree;
}

PruferCode prufer_encode(const UndirectedTree& tree) {
  const int n = tree.n;
  check_length(n);
  if (tree.edges.size() != idx(n - 1)) throw std::invalid_argument("a tree on n vertices has n-1 edges");

  std::vector<std::vector<Position>> adj(idx(n) + 1);
  for (auto [a, b] : tree.edges) {
    if (a < 1 || a > n || b < 1 || b > n || a == b) throw std::invalid_argument("bad edge in tree");
    adj[idx(a)].push_back(b);
    adj[idx(b)].push_back(a);
  }

  // Parent pointers towards vertex n; n-1 edges plus connectivity means tree.
  std::vector<Position> parent(idx(n) + 1, 0);
  std::vector<bool> seen(idx(n) + 1, false);
  std::vector<Position> stack{n};
  seen[idx(n)] = true;
  int reached = 1;
  while (!stack.empty()) {
    Position v = stack.back();
    stack.pop_back();
    for (Position w : adj[idx(v)]) {
      if (seen[idx(w)]) continue;
      seen[idx(w)] = true;
      parent[idx(w)] = v;
      ++reached;
      stack.push_back(w);
    }
  }
  if (reached != n) throw std::invalid_argument("edge list is not connected");

  std::vector<int> degree(idx(n) + 1, 0);
  for (Position v = 1; v <= n; ++v) degree[idx(v)] = static_cast<int>(adj[idx(v)].size());

  PruferCode out;
  out.n = n;
  out.code.reserve(idx(std::max(n - 2, 0)));
  Position ptr = 1;
  while (degree[idx(ptr)] != 1) ++ptr;
  Position leaf = ptr;
  for (int i = 0; i < n - 2; ++i) {
    Position next = parent[idx(leaf)];
    out.code.push_back(next);
    if (--degree[idx(next)] == 1 && next < ptr) {
      leaf = next;
    } else {
      ++ptr;
      while (degree[idx(ptr)] != 1) ++ptr;
      leaf = ptr;
    }
  }
  return out;
}

BigInt count_labelled_trees(int n) {
  check_length(n);
  return boost::multiprecision::pow(BigInt(n), static_cast<unsigned>(n - 2));
}

BigInt count_structures(int n) {
  check_length(n);
  return boost::multiprecision::pow(BigInt(n), static_cast<unsigned>(n - 1));
}

DepStructure root_tree(const UndirectedTree& tree, Position root) {
  if (root < 1 || root > tree.n) throw std::out_of_range("root " + std::to_string(root) + " outside the tree");
  return Rooter(tree).root_at(root);
}

std::uint64_t code_count(int n) {
  check_length(n);
  if (n > kMaxEnumerableLength) throw ExhaustiveLimitError("code count overflows for n=" + std::to_string(n));
  std::uint64_t total = 1;
  for (int i = 0; i < n - 2; ++i) total *= static_cast<std::uint64_t>(n);
  return total;
}

void enumerate_all(int n, const StructureVisitor& visit, int max_n) {
  check_length(n);
  if (n > max_n || n > kMaxEnumerableLength) {
    throw ExhaustiveLimitError("exhaustive enumeration of n=" + std::to_string(n) + " refused (" +
                               std::to_string(n) + "^" + std::to_string(n - 1) + " structures; limit n <= " +
                               std::to_string(std::min(max_n, kMaxEnumerableLength)) + ")");
  }
  enumerate_code_range(n, 0, code_count(n), visit);
}

void enumerate_code_range(int n, std::uint64_t first_code, std::uint64_t last_code,
                          const StructureVisitor& visit) {
  const std::uint64_t total = code_count(n);
  last_code = std::min(last_code, total);
  if (first_code >= last_code) return;

  PruferCode code;
  code.n = n;
  code.code.assign(idx(n - 2), 1);
  // Base-n digits of first_code, most significant first.
  std::uint64_t rest = first_code;
  for (std::size_t i = code.code.size(); i-- > 0;) {
    code.code[i] = static_cast<Position>(rest % static_cast<std::uint64_t>(n)) + 1;
    rest /= static_cast<std::uint64_t>(n);
  }

  for (std::uint64_t c = first_code; c < last_code; ++c) {
    Rooter rooter(prufer_decode(code));
    for (Position root = 1; root <= n; ++root) visit(rooter.root_at(root));
    // Odometer step, last label fastest.
    for (std::size_t i = code.code.size(); i-- > 0;) {
      if (code.code[i] < n) {
        ++code.code[i];
        break;
      }
      code.code[i] = 1;
    }
  }
}

std::uint64_t sample_chunk_count(std::uint64_t samples) {
  return (samples + kSampleChunkSize - 1) / kSampleChunkSize;
}

void sample_chunk(int n, std::uint64_t samples, std::uint64_t seed, std::uint64_t chunk,
                  const StructureVisitor& visit) {
  check_length(n);
  const std::uint64_t begin = chunk * kSampleChunkSize;
  if (begin >= samples) return;
  const std::uint64_t draws = std::min(kSampleChunkSize, samples - begin);

  auto rng = chunk_engine(seed, n, chunk);
  const auto bound = static_cast<std::uint64_t>(n);
  PruferCode code;
  code.n = n;
  code.code.resize(idx(n - 2));
  for (std::uint64_t d = 0; d < draws; ++d) {
    for (auto& label : code.code) label = draw_label(rng, bound);
    Position root = draw_label(rng, bound);
    visit(Rooter(prufer_decode(code)).root_at(root));
  }
}

void sample_uniform(int n, std::uint64_t samples, std::uint64_t seed, const StructureVisitor& visit) {
  const std::uint64_t chunks = sample_chunk_count(samples);
  for (std::uint64_t c = 0; c < chunks; ++c) sample_chunk(n, samples, seed, c, visit);
}

std::vector<DepStructure> sample_uniform(int n, std::uint64_t samples, std::uint64_t seed) {
  std::vector<DepStructure> out;
  out.reserve(static_cast<std::size_t>(samples));
  sample_uniform(n, samples, seed, [&](const DepStructure& s) { out.push_back(s); });
  return out;
}

BigInt estimate_workload(const GenConfig& cfg) {
  cfg.validate();
  BigInt total = BigInt(cfg.n_max - cfg.n_star) * BigInt(cfg.samples);
  for (int n = cfg.n_min; n <= cfg.n_star; ++n) total += count_structures(n);
  return total;
}

}  // namespace deplen
