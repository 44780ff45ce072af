#include "deplen/classes.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace deplen {

namespace {

constexpr std::array kSupported{DepClass::kAll, DepClass::kPlanar, DepClass::kProjective, DepClass::kWg1,
                                DepClass::kEc1};

std::size_t idx(Position p) { return static_cast<std::size_t>(p); }

// Pre-order layout of a structure. The yield of v is the contiguous slice
// order[pre[v], pre[v] + size[v]), which turns yield membership into two
// comparisons.
class Layout {
 public:
  explicit Layout(const DepStructure& s) : n_(s.n()), root_(s.root()), edges_(edges(s)) {
    const std::size_t count = idx(n_) + 1;
    std::vector<std::size_t> first(count + 1, 0);
    for (Position p = 1; p <= n_; ++p) {
      if (s.head(p) != kRoot) ++first[idx(s.head(p)) + 1];
    }
    for (std::size_t i = 1; i < first.size(); ++i) first[i] += first[i - 1];
    std::vector<Position> children(idx(n_));
    std::vector<std::size_t> fill(first.begin(), first.end() - 1);
    for (Position p = 1; p <= n_; ++p) {
      if (s.head(p) != kRoot) children[fill[idx(s.head(p))]++] = p;
    }

    pre_.assign(count, 0);
    size_.assign(count, 1);
    order_.reserve(idx(n_));
    std::vector<Position> stack{root_};
    while (!stack.empty()) {
      Position v = stack.back();
      stack.pop_back();
      pre_[idx(v)] = static_cast<int>(order_.size());
      order_.push_back(v);
      for (std::size_t k = first[idx(v) + 1]; k-- > first[idx(v)];) stack.push_back(children[k]);
    }
    // Reverse pre-order visits children before parents.
    for (auto it = order_.rbegin(); it != order_.rend(); ++it) {
      Position h = s.head(*it);
      if (h != kRoot) size_[idx(h)] += size_[idx(*it)];
    }
  }

  int n() const { return n_; }
  Position root() const { return root_; }
  const std::vector<Edge>& arcs() const { return edges_; }

  bool in_yield(Position v, Position u) const {
    return pre_[idx(v)] <= pre_[idx(u)] && pre_[idx(u)] < pre_[idx(v)] + size_[idx(v)];
  }

  int blocks(Position v) const {
    int count = 0;
    const auto begin = order_.begin() + pre_[idx(v)];
    for (auto it = begin; it != begin + size_[idx(v)]; ++it) {
      if (*it == 1 || !in_yield(v, *it - 1)) ++count;
    }
    return count;
  }

 private:
  int n_;
  Position root_;
  std::vector<Edge> edges_;
  std::vector<int> pre_;
  std::vector<int> size_;
  std::vector<Position> order_;
};

bool planar(const Layout& l) {
  const auto& arcs = l.arcs();
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    for (std::size_t j = i + 1; j < arcs.size(); ++j) {
      if (crossing(arcs[i], arcs[j])) return false;
    }
  }
  return true;
}

bool root_uncovered(const Layout& l) {
  return std::none_of(l.arcs().begin(), l.arcs().end(), [&](const Edge& e) { return covers(e, l.root()); });
}

// Returns the gap degree and collects the nodes whose yield has a gap.
int gaps(const Layout& l, std::vector<Position>* gapped) {
  int worst = 1;
  for (Position v = 1; v <= l.n(); ++v) {
    int b = l.blocks(v);
    worst = std::max(worst, b);
    if (gapped && b > 1) gapped->push_back(v);
  }
  return worst - 1;
}

// Two disjoint yields interleave iff the sequence of owners along the
// sentence alternates at least four times. A contiguous yield cannot be
// interleaved by a disjoint one, so only gapped nodes need checking.
bool well_nested(const Layout& l, const std::vector<Position>& gapped) {
  for (std::size_t i = 0; i < gapped.size(); ++i) {
    for (std::size_t j = i + 1; j < gapped.size(); ++j) {
      Position a = gapped[i], b = gapped[j];
      if (l.in_yield(a, b) || l.in_yield(b, a)) continue;
      int runs = 0;
      int last = 0;
      for (Position p = 1; p <= l.n(); ++p) {
        int owner = l.in_yield(a, p) ? 1 : l.in_yield(b, p) ? 2 : 0;
        if (owner != 0 && owner != last) {
          ++runs;
          last = owner;
        }
      }
      if (runs >= 4) return false;
    }
  }
  return true;
}

bool one_endpoint_crossing(const Layout& l, RootArc root_arc) {
  std::vector<Edge> arcs = l.arcs();
  const std::size_t real = arcs.size();
  // The artificial root token sits at position 0.
  if (root_arc != RootArc::kIgnored) arcs.push_back(Edge{0, l.root()});
  const std::size_t checked = root_arc == RootArc::kOrdinary ? arcs.size() : real;

  std::vector<const Edge*> crossers;
  for (std::size_t i = 0; i < checked; ++i) {
    const Edge& e = arcs[i];
    crossers.clear();
    for (const Edge& f : arcs) {
      if (crossing(e, f)) crossers.push_back(&f);
    }
    if (crossers.size() < 2) continue;
    auto shared_by_all = [&](Position p) {
      return std::all_of(crossers.begin(), crossers.end(), [p](const Edge* f) { return f->has_endpoint(p); });
    };
    if (!shared_by_all(crossers.front()->head_pos) && !shared_by_all(crossers.front()->dep_pos)) return false;
  }
  return true;
}

}  // namespace

std::span<const DepClass> supported_classes() { return kSupported; }

std::string_view class_name(DepClass c) {
  switch (c) {
    case DepClass::kAll: return "all";
    case DepClass::kPlanar: return "planar";
    case DepClass::kProjective: return "projective";
    case DepClass::kWg1: return "wg1";
    case DepClass::kEc1: return "1ec";
  }
  return "?";
}

DepClass parse_class(std::string_view name) {
  for (DepClass c : kSupported) {
    if (class_name(c) == name) return c;
  }
  if (name.size() > 2 && name.substr(0, 2) == "mh" &&
      std::all_of(name.begin() + 2, name.end(), [](unsigned char ch) { return std::isdigit(ch); })) {
    throw UnsupportedClassError("unsupported class '" + std::string(name) +
                                "': MH_k membership is not implemented");
  }
  throw std::invalid_argument("unknown class '" + std::string(name) + "' (expected all, planar, projective, wg1, 1ec)");
}

std::vector<DepClass> parse_class_list(std::string_view names) {
  std::vector<bool> wanted(kSupported.size(), false);
  std::size_t start = 0;
  while (start <= names.size()) {
    std::size_t comma = names.find(',', start);
    if (comma == std::string_view::npos) comma = names.size();
    std::string_view item = names.substr(start, comma - start);
    if (!item.empty()) wanted[static_cast<std::size_t>(parse_class(item))] = true;
    start = comma + 1;
  }
  std::vector<DepClass> out;
  for (DepClass c : kSupported) {
    if (wanted[static_cast<std::size_t>(c)]) out.push_back(c);
  }
  if (out.empty()) throw std::invalid_argument("empty class list");
  return out;
}

bool ClassMask::contains(DepClass c) const {
  switch (c) {
    case DepClass::kAll: return true;
    case DepClass::kPlanar: return planar;
    case DepClass::kProjective: return projective;
    case DepClass::kWg1: return wg1;
    case DepClass::kEc1: return ec1;
  }
  return false;
}

bool is_planar(const DepStructure& s) { return planar(Layout(s)); }

bool is_projective(const DepStructure& s) {
  Layout l(s);
  return root_uncovered(l) && planar(l);
}

int gap_degree(const DepStructure& s) { return gaps(Layout(s), nullptr); }

bool is_well_nested(const DepStructure& s) {
  Layout l(s);
  std::vector<Position> gapped;
  gaps(l, &gapped);
  return well_nested(l, gapped);
}

bool is_wg1(const DepStructure& s) {
  Layout l(s);
  std::vector<Position> gapped;
  return gaps(l, &gapped) <= 1 && well_nested(l, gapped);
}

bool is_1ec(const DepStructure& s, RootArc root_arc) { return one_endpoint_crossing(Layout(s), root_arc); }

ClassMask classify(const DepStructure& s) {
  Layout l(s);
  ClassMask mask;
  mask.planar = planar(l);
  mask.projective = mask.planar && root_uncovered(l);
  // In a planar structure a real arc can be crossed by the root attachment
  // alone, so it passes.
  mask.ec1 = mask.planar || one_endpoint_crossing(l, RootArc::kCrossesOnly);
  std::vector<Position> gapped;
  mask.wg1 = gaps(l, &gapped) <= 1 && well_nested(l, gapped);
  return mask;
}

}  // namespace deplen
