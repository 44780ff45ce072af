#pragma once

// Membership of dependency structures in formal classes: planar, projective,
// well-nested with gap degree <= 1 (WG1) and 1-Endpoint-Crossing (1EC).

#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "deplen/tree.hpp"

namespace deplen {

enum class DepClass { kAll, kPlanar, kProjective, kWg1, kEc1 };

/// Registry order; also the row order of survey tables.
std::span<const DepClass> supported_classes();

/// Stable lowercase identifiers: all, planar, projective, wg1, 1ec.
std::string_view class_name(DepClass c);

/// A class name that is known but has no membership test (the MH_k family).
class UnsupportedClassError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Throws UnsupportedClassError for mh<k> and std::invalid_argument for
/// unknown names.
DepClass parse_class(std::string_view name);

/// Comma-separated list; duplicates removed, registry order kept.
std::vector<DepClass> parse_class_list(std::string_view names);

struct ClassMask {
  bool planar = false;
  bool projective = false;
  bool wg1 = false;
  bool ec1 = false;

  bool contains(DepClass c) const;

  friend bool operator==(const ClassMask&, const ClassMask&) = default;
};

bool is_planar(const DepStructure& s);
bool is_projective(const DepStructure& s);
int gap_degree(const DepStructure& s);
bool is_well_nested(const DepStructure& s);
bool is_wg1(const DepStructure& s);

/// How the attachment of the root word to an artificial root token placed
/// before the first word takes part in the 1-Endpoint-Crossing test.
enum class RootArc {
  kIgnored,      // only the sentence's own arcs exist
  kCrossesOnly,  // the attachment can cross arcs but is not checked itself
  kOrdinary,     // the attachment is checked like any other arc
};

/// For every arc, all arcs crossing it share a common endpoint (which may
/// be an endpoint of the arc itself). The default convention keeps every
/// planar structure in the class while still letting the root attachment
/// contribute crossings.
bool is_1ec(const DepStructure& s, RootArc root_arc = RootArc::kCrossesOnly);

/// All four predicates, sharing one traversal of the structure.
ClassMask classify(const DepStructure& s);

}  // namespace deplen
