// deplen: generate, classify and survey dependency structures, and measure
// attested treebanks.
//
// Exit codes: 0 success, 1 usage error, 2 data error. Diagnostics go to
// stderr as one JSON object per line; data goes to stdout or --out.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "deplen/classes.hpp"
#include "deplen/prufer.hpp"
#include "deplen/report.hpp"
#include "deplen/stats.hpp"
#include "deplen/treebank.hpp"

namespace {

using namespace deplen;

enum ExitCode { kOk = 0, kUsage = 1, kData = 2 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void diagnostic(std::string_view level, nlohmann::json fields) {
  fields["level"] = level;
  std::cerr << fields.dump() << '\n';
}

void error(std::string_view kind, const std::string& message) {
  diagnostic("error", {{"kind", kind}, {"message", message}});
}

// Output sink: a file, or stdout for "" and "-".
class Output {
 public:
  explicit Output(const std::string& path) : path_(path) {
    if (path.empty() || path == "-") return;
    file_.open(path, std::ios::binary);
    if (!file_) throw DataError("cannot write '" + path + "'");
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }
  void close() {
    stream().flush();
    if (!stream()) throw DataError("write failed for '" + (path_.empty() ? std::string("-") : path_) + "'");
  }

 private:
  std::string path_;
  std::ofstream file_;
};

unsigned default_threads() { return std::max(1u, std::thread::hardware_concurrency()); }

std::vector<DepClass> classes_or_usage(const std::string& list) {
  try {
    return parse_class_list(list);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

// ---- generate ----

struct GenerateArgs {
  int n = 0;
  std::string mode = "exhaustive";
  std::uint64_t count = 1000;
  std::uint64_t seed = 0;
  int n_star = GenConfig{}.n_star;
  bool force = false;
  std::string out;
};

void run_generate(const GenerateArgs& a) {
  if (a.n < 2) throw UsageError("--n must be at least 2");
  Output out(a.out);
  auto& os = out.stream();
  auto emit = [&](const DepStructure& s) { os << format_structure_line(s) << '\n'; };
  if (a.mode == "exhaustive") {
    if (a.n > a.n_star && !a.force) {
      throw UsageError("exhaustive generation of n=" + std::to_string(a.n) + " yields " +
                       count_structures(a.n).str() + " structures; above --n-star " + std::to_string(a.n_star) +
                       ", use --mode sample or --force");
    }
    try {
      enumerate_all(a.n, emit, a.force ? kMaxEnumerableLength : a.n_star);
    } catch (const ExhaustiveLimitError& e) {
      throw UsageError(e.what());
    }
  } else {
    sample_uniform(a.n, a.count, a.seed, emit);
  }
  out.close();
}

// ---- classify ----

struct ClassifyArgs {
  std::string in;
  std::string out;
};

void run_classify(const ClassifyArgs& a) {
  std::ifstream file;
  if (!a.in.empty() && a.in != "-") {
    file.open(a.in, std::ios::binary);
    if (!file) throw DataError("cannot open '" + a.in + "'");
  }
  std::istream& is = file.is_open() ? file : std::cin;
  Output out(a.out);
  auto& os = out.stream();
  std::string line;
  for (std::size_t no = 1; std::getline(is, line); ++no) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    DepStructure s = [&] {
      try {
        return parse_structure_line(line);
      } catch (const FormatError& e) {
        throw DataError("line " + std::to_string(no) + ": " + e.what());
      }
    }();
    os << line << '\t' << format_class_flags(classify(s)) << '\n';
  }
  out.close();
}

// ---- survey ----

struct SurveyArgs {
  GenConfig cfg{3, 12, 7, 1'000'000, 0};
  std::string classes = "all,planar,projective,wg1,1ec";
  unsigned threads = default_threads();
  bool keep_undersampled = false;
  std::string format = "csv";
  std::string out;
  std::string manifest;
  std::string from_manifest;
  bool quiet = false;
};

void write_table(std::ostream& os, const SurveyTable& table, bool keep, const std::string& format) {
  if (format == "json") {
    os << render_json(table, keep).dump(2) << '\n';
  } else {
    os << render_csv(table, keep);
  }
}

void run_survey(SurveyArgs a) {
  RunManifest m;
  if (!a.from_manifest.empty()) {
    std::ifstream in(a.from_manifest);
    if (!in) throw DataError("cannot open manifest '" + a.from_manifest + "'");
    try {
      m = manifest_from_json(nlohmann::json::parse(in));
    } catch (const UnsupportedClassError& e) {
      throw DataError(e.what());
    } catch (const std::exception& e) {
      throw DataError(std::string("manifest '") + a.from_manifest + "': " + e.what());
    }
    m.lengths.clear();
  } else {
    m.config = a.cfg;
    m.classes = classes_or_usage(a.classes);
    m.keep_undersampled = a.keep_undersampled;
    m.format = a.format;
  }
  m.threads = a.threads;
  try {
    m.config.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  SurveyOptions opts;
  opts.threads = a.threads;
  opts.progress = [&](int n, std::uint64_t examined, bool exhaustive) {
    m.lengths.push_back({n, examined, exhaustive});
    if (!a.quiet) diagnostic("progress", {{"n", n}, {"examined", examined}, {"exhaustive", exhaustive}});
  };
  auto start = std::chrono::steady_clock::now();
  auto table = survey(m.config, m.classes, opts);
  m.wall_clock_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  Output out(a.out);
  write_table(out.stream(), table, m.keep_undersampled, m.format);
  out.close();

  std::string manifest_path = a.manifest;
  if (manifest_path.empty() && !a.out.empty() && a.out != "-") manifest_path = a.out + ".manifest.json";
  if (!manifest_path.empty()) {
    Output mf(manifest_path);
    mf.stream() << manifest_to_json(m).dump(2) << '\n';
    mf.close();
  }
}

// ---- treebank ----

struct TreebankArgs {
  std::vector<std::string> files;
  std::string punct_tags = "PUNCT";
  std::string classes = "all,planar,projective,wg1,1ec";
  unsigned threads = default_threads();
  bool keep_undersampled = false;
  std::string format = "csv";
  std::string out;
};

std::vector<std::string> split_commas(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string item; std::getline(in, item, ',');) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

int run_treebank(const TreebankArgs& a) {
  auto classes = classes_or_usage(a.classes);
  auto report = treebank_survey(a.files, punct_by_upos(split_commas(a.punct_tags)), classes, a.threads);
  bool unreadable = false;
  for (const auto& issue : report.issues) {
    unreadable |= issue.line == 0;
    diagnostic(issue.line == 0 ? "error" : "warning",
               {{"kind", "data"}, {"file", issue.file}, {"line", issue.line}, {"message", issue.message}});
  }
  diagnostic("info", {{"sentences", report.sentences},
                      {"kept", report.kept},
                      {"too_short", report.too_short},
                      {"malformed", report.malformed}});
  Output out(a.out);
  write_table(out.stream(), report.table, a.keep_undersampled, a.format);
  out.close();
  return unreadable ? kData : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dependency distance across formal dependency-structure classes"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Write dependency structures, one per line");
  generate->add_option("--n", gen.n, "Sentence length")->required();
  generate->add_option("--mode", gen.mode, "exhaustive or sample")
      ->check(CLI::IsMember({"exhaustive", "sample"}))
      ->capture_default_str();
  generate->add_option("--count", gen.count, "Number of draws in sample mode")->capture_default_str();
  generate->add_option("--seed", gen.seed, "Sampling seed")->capture_default_str();
  generate->add_option("--n-star", gen.n_star, "Largest length enumerated without --force")->capture_default_str();
  generate->add_flag("--force", gen.force, "Allow exhaustive generation above --n-star");
  generate->add_option("--out", gen.out, "Output file (default stdout)");

  ClassifyArgs cls;
  auto* classify_cmd = app.add_subcommand("classify", "Append planar,projective,wg1,1ec flags to structure lines");
  classify_cmd->add_option("--in", cls.in, "Structure file (default stdin)");
  classify_cmd->add_option("--out", cls.out, "Output file (default stdout)");

  SurveyArgs sv;
  auto* survey_cmd = app.add_subcommand("survey", "Mean dependency distance per class and length");
  std::vector<CLI::Option*> config_opts{
      survey_cmd->add_option("--n-min", sv.cfg.n_min, "Shortest length")->capture_default_str(),
      survey_cmd->add_option("--n-max", sv.cfg.n_max, "Longest length")->capture_default_str(),
      survey_cmd->add_option("--n-star", sv.cfg.n_star, "Longest exhaustively enumerated length")
          ->capture_default_str(),
      survey_cmd->add_option("--samples", sv.cfg.samples, "Draws per sampled length")->capture_default_str(),
      survey_cmd->add_option("--seed", sv.cfg.seed, "Sampling seed")->capture_default_str(),
      survey_cmd->add_option("--classes", sv.classes, "Comma-separated classes")->capture_default_str(),
      survey_cmd->add_flag("--keep-undersampled", sv.keep_undersampled, "Keep rows marked reported=false"),
      survey_cmd->add_option("--format", sv.format, "csv or json")
          ->check(CLI::IsMember({"csv", "json"}))
          ->capture_default_str(),
  };
  survey_cmd->add_option("--threads", sv.threads, "Worker threads")->check(CLI::PositiveNumber);
  survey_cmd->add_option("--out", sv.out, "Output file (default stdout)");
  survey_cmd->add_option("--manifest", sv.manifest, "Manifest path (default <out>.manifest.json)");
  auto* from = survey_cmd->add_option("--from-manifest", sv.from_manifest, "Rerun the survey a manifest describes");
  for (auto* o : config_opts) from->excludes(o);
  survey_cmd->add_flag("--quiet", sv.quiet, "No progress lines");

  TreebankArgs tb;
  auto* treebank_cmd = app.add_subcommand("treebank", "Mean dependency distance of CoNLL-U sentences");
  treebank_cmd->add_option("files", tb.files, "CoNLL-U files, plain or gzip")->required();
  treebank_cmd->add_option("--punct-tags", tb.punct_tags, "UPOS tags removed as punctuation")->capture_default_str();
  treebank_cmd->add_option("--classes", tb.classes, "Comma-separated classes")->capture_default_str();
  treebank_cmd->add_option("--threads", tb.threads, "Worker threads")->check(CLI::PositiveNumber);
  treebank_cmd->add_flag("--keep-undersampled", tb.keep_undersampled, "Keep rows marked reported=false");
  treebank_cmd->add_option("--format", tb.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  treebank_cmd->add_option("--out", tb.out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    error("usage", e.what());
    return kUsage;
  }

  try {
    if (generate->parsed()) run_generate(gen);
    if (classify_cmd->parsed()) run_classify(cls);
    if (survey_cmd->parsed()) run_survey(sv);
    if (treebank_cmd->parsed()) return run_treebank(tb);
    return kOk;
  } catch (const UsageError& e) {
    error("usage", e.what());
    return kUsage;
  } catch (const DataError& e) {
    error("data", e.what());
    return kData;
  } catch (const std::exception& e) {
    error("data", e.what());
    return kData;
  }
}
