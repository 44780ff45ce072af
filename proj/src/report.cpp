#include "deplen/report.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace deplen {

namespace {

std::string format_double(double v) {
  if (std::isnan(v)) return "";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

}  // namespace

std::string format_structure_line(const DepStructure& s) {
  std::string out = std::to_string(s.n());
  out.push_back('\t');
  for (Position p = 1; p <= s.n(); ++p) {
    if (p > 1) out.push_back(' ');
    out += std::to_string(s.head(p) == kRoot ? 0 : s.head(p));
  }
  return out;
}

DepStructure parse_structure_line(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  auto tab = line.find('\t');
  if (tab == std::string_view::npos) throw FormatError("expected 'n<TAB>heads'");
  std::string_view n_text = line.substr(0, tab);
  std::string_view rest = line.substr(tab + 1);
  if (auto next_tab = rest.find('\t'); next_tab != std::string_view::npos) rest = rest.substr(0, next_tab);

  int n = 0;
  auto [p, ec] = std::from_chars(n_text.data(), n_text.data() + n_text.size(), n);
  if (ec != std::errc() || p != n_text.data() + n_text.size() || n < 2) {
    throw FormatError("bad length '" + std::string(n_text) + "'");
  }

  std::vector<Position> heads;
  heads.reserve(static_cast<std::size_t>(n));
  std::size_t pos = 0;
  while (pos < rest.size()) {
    if (rest[pos] == ' ') {
      ++pos;
      continue;
    }
    std::size_t end = rest.find(' ', pos);
    if (end == std::string_view::npos) end = rest.size();
    int h = 0;
    auto [q, ec2] = std::from_chars(rest.data() + pos, rest.data() + end, h);
    if (ec2 != std::errc() || q != rest.data() + end) {
      throw FormatError("bad head '" + std::string(rest.substr(pos, end - pos)) + "'");
    }
    heads.push_back(h == 0 ? kRoot : h);
    pos = end;
  }
  if (heads.size() != static_cast<std::size_t>(n)) {
    throw FormatError("length " + std::to_string(n) + " but " + std::to_string(heads.size()) + " heads");
  }
  if (auto why = tree_violation(heads)) throw FormatError(*why);
  return DepStructure::from_valid_heads(std::move(heads));
}

std::string format_class_flags(const ClassMask& mask) {
  std::string out;
  out += mask.planar ? '1' : '0';
  out += ',';
  out += mask.projective ? '1' : '0';
  out += ',';
  out += mask.wg1 ? '1' : '0';
  out += ',';
  out += mask.ec1 ? '1' : '0';
  return out;
}

std::string_view csv_header() {
  return "source,class,n,count,p,sum_D,mean_d,baseline,reported,mean_d_float,baseline_float,std_error";
}

std::string render_csv(const SurveyTable& table, bool keep_undersampled) {
  std::ostringstream out;
  out << csv_header() << '\n';
  for (const auto& row : table) {
    if (!row.reported && !keep_undersampled) continue;
    auto mean = row.mean();
    out << source_name(row.source) << ',' << class_name(row.cls()) << ',' << row.n() << ',' << row.stats.count
        << ',' << row.proportion().str() << ',' << to_string(row.stats.sum_d) << ',' << (mean ? mean->str() : "")
        << ',' << row.baseline().str() << ',' << (row.reported ? "true" : "false") << ','
        << (mean ? format_double(mean->to_double()) : "") << ',' << format_double(row.baseline().to_double())
        << ',' << (row.exhaustive ? "" : format_double(row.stats.std_error())) << '\n';
  }
  return out.str();
}

nlohmann::json render_json(const SurveyTable& table, bool keep_undersampled) {
  auto rows = nlohmann::json::array();
  for (const auto& row : table) {
    if (!row.reported && !keep_undersampled) continue;
    auto mean = row.mean();
    nlohmann::json j = {
        {"source", source_name(row.source)},
        {"class", class_name(row.cls())},
        {"n", row.n()},
        {"count", row.stats.count},
        {"p", row.proportion().str()},
        {"sum_D", to_string(row.stats.sum_d)},
        {"mean_d", mean ? nlohmann::json(mean->str()) : nlohmann::json(nullptr)},
        {"baseline", row.baseline().str()},
        {"reported", row.reported},
        {"exhaustive", row.exhaustive},
        {"mean_d_float", mean ? nlohmann::json(mean->to_double()) : nlohmann::json(nullptr)},
    };
    double se = row.stats.std_error();
    j["std_error"] = row.exhaustive || std::isnan(se) ? nlohmann::json(nullptr) : nlohmann::json(se);
    rows.push_back(std::move(j));
  }
  return rows;
}

nlohmann::json manifest_to_json(const RunManifest& m) {
  auto classes = nlohmann::json::array();
  for (DepClass c : m.classes) classes.push_back(class_name(c));
  auto lengths = nlohmann::json::array();
  for (const auto& l : m.lengths) {
    lengths.push_back({{"n", l.n}, {"examined", l.examined}, {"exhaustive", l.exhaustive}});
  }
  return {
      {"tool", "deplen"},
      {"tool_version", m.tool_version},
      {"mode", m.mode},
      {"config",
       {{"n_min", m.config.n_min},
        {"n_max", m.config.n_max},
        {"n_star", m.config.n_star},
        {"samples", m.config.samples},
        {"seed", m.config.seed}}},
      {"seed", m.config.seed},
      {"classes", classes},
      {"keep_undersampled", m.keep_undersampled},
      {"format", m.format},
      {"threads", m.threads},
      {"lengths", lengths},
      {"wall_clock_seconds", m.wall_clock_seconds},
  };
}

RunManifest manifest_from_json(const nlohmann::json& j) {
  try {
    RunManifest m;
    m.mode = j.at("mode").get<std::string>();
    const auto& cfg = j.at("config");
    m.config.n_min = cfg.at("n_min").get<int>();
    m.config.n_max = cfg.at("n_max").get<int>();
    m.config.n_star = cfg.at("n_star").get<int>();
    m.config.samples = cfg.at("samples").get<std::uint64_t>();
    m.config.seed = cfg.at("seed").get<std::uint64_t>();
    for (const auto& c : j.at("classes")) m.classes.push_back(parse_class(c.get<std::string>()));
    m.keep_undersampled = j.value("keep_undersampled", false);
    m.format = j.value("format", std::string("csv"));
    m.threads = j.value("threads", 1u);
    m.tool_version = j.value("tool_version", std::string(kToolVersion));
    if (j.contains("lengths")) {
      for (const auto& l : j.at("lengths")) {
        m.lengths.push_back({l.at("n").get<int>(), l.at("examined").get<std::uint64_t>(), l.at("exhaustive").get<bool>()});
      }
    }
    m.wall_clock_seconds = j.value("wall_clock_seconds", 0.0);
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("bad manifest: ") + e.what());
  }
}

}  // namespace deplen
