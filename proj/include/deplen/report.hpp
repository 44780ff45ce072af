#pragma once

// Text formats of the command-line tool: structure lines, survey CSV/JSON
// and run manifests.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "deplen/classes.hpp"
#include "deplen/prufer.hpp"
#include "deplen/stats.hpp"
#include "deplen/tree.hpp"

namespace deplen {

inline constexpr std::string_view kToolVersion = "0.1.0";

class FormatError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// "n<TAB>h1 h2 ... hn", root written as 0.
std::string format_structure_line(const DepStructure& s);

/// Inverse of format_structure_line. Extra tab-separated columns after the
/// head list are ignored. Throws FormatError.
DepStructure parse_structure_line(std::string_view line);

/// "planar,projective,wg1,1ec" membership as 0/1, e.g. "1,1,1,1".
std::string format_class_flags(const ClassMask& mask);

/// source,class,n,count,p,sum_D,mean_d,baseline,reported,mean_d_float,baseline_float,std_error
std::string_view csv_header();

/// Unreported rows are dropped unless keep_undersampled is set.
std::string render_csv(const SurveyTable& table, bool keep_undersampled);
nlohmann::json render_json(const SurveyTable& table, bool keep_undersampled);

struct LengthRecord {
  int n = 0;
  std::uint64_t examined = 0;
  bool exhaustive = false;
};

struct RunManifest {
  std::string mode = "survey";
  GenConfig config;
  std::vector<DepClass> classes;
  bool keep_undersampled = false;
  std::string format = "csv";
  unsigned threads = 1;
  std::string tool_version{kToolVersion};
  std::vector<LengthRecord> lengths;
  double wall_clock_seconds = 0;
};

nlohmann::json manifest_to_json(const RunManifest& m);

/// Throws FormatError on missing or ill-typed fields.
RunManifest manifest_from_json(const nlohmann::json& j);

}  // namespace deplen
