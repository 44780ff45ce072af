#pragma once

// CoNLL-U ingestion and the preprocessing that turns annotated sentences
// into dependency structures: punctuation removal, reattachment to the
// nearest surviving ancestor and a minimum length.

#include <cstdint>
#include <functional>
#include <istream>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "deplen/classes.hpp"
#include "deplen/stats.hpp"
#include "deplen/tree.hpp"

namespace deplen {

struct Token {
  int id = 0;
  std::string form;
  std::string upos;
  int head = 0;  // 0 = root
  std::string deprel;
};

struct TreebankSentence {
  std::vector<Token> tokens;
  std::string file;
  std::size_t index = 0;       // 0-based sentence number within the file
  std::size_t first_line = 0;  // 1-based
};

struct ParseIssue {
  std::string file;
  std::size_t line = 0;  // 0 when the issue concerns the whole file
  std::string message;
};

/// Streams sentences out of CoNLL-U text. Comment lines, multiword token
/// ranges ("3-4") and empty nodes ("2.1") are skipped. A malformed line
/// drops its sentence, records an issue and reading resumes at the next
/// sentence.
class ConlluReader {
 public:
  ConlluReader(std::istream& in, std::string file_name);

  /// False at end of input.
  bool next(TreebankSentence& out);

  const std::vector<ParseIssue>& issues() const { return issues_; }

 private:
  bool finish_sentence(TreebankSentence& out);

  std::istream& in_;
  std::string file_;
  std::size_t line_no_ = 0;
  std::size_t sentence_index_ = 0;
  std::vector<ParseIssue> issues_;
};

std::vector<TreebankSentence> parse_conllu(std::istream& in, const std::string& file_name,
                                           std::vector<ParseIssue>* issues = nullptr);

/// Opens a plain or gzip-compressed file. Throws std::runtime_error when the
/// file cannot be opened.
std::unique_ptr<std::istream> open_maybe_gzip(const std::string& path);

using TokenPredicate = std::function<bool(const Token&)>;

/// Matches tokens whose UPOS is one of `tags`.
TokenPredicate punct_by_upos(std::vector<std::string> tags = {"PUNCT"});

struct Discard {
  enum class Reason { kTooShort, kMalformed };
  Reason reason = Reason::kMalformed;
  std::string detail;
};

using Preprocessed = std::variant<DepStructure, Discard>;

/// Minimum number of words a preprocessed sentence must keep.
inline constexpr int kMinSentenceLength = 3;

/// Removes tokens matching `is_punct`, reattaches orphans to their nearest
/// surviving ancestor and renumbers positions in order. When the root is
/// removed, its surviving stand-ins (in sentence order) are resolved by
/// making the first the new root and attaching the rest to it.
Preprocessed preprocess(const TreebankSentence& sentence, const TokenPredicate& is_punct);

/// A punctuation-free sentence with the heads of `s`.
TreebankSentence sentence_from_structure(const DepStructure& s);

struct TreebankReport {
  SurveyTable table;
  std::vector<ParseIssue> issues;
  std::uint64_t sentences = 0;
  std::uint64_t kept = 0;
  std::uint64_t too_short = 0;
  std::uint64_t malformed = 0;
};

/// Aggregates every surviving sentence of every file by length. A file that
/// fails to open is recorded as an issue and skipped. Rows with fewer than
/// kMinReportedCount sentences are marked unreported.
TreebankReport treebank_survey(const std::vector<std::string>& files, const TokenPredicate& is_punct,
                               std::span<const DepClass> classes, unsigned threads = 1);

/// Same aggregation over already-loaded sentences.
TreebankReport treebank_survey(const std::vector<TreebankSentence>& sentences, const TokenPredicate& is_punct,
                               std::span<const DepClass> classes);

}  // namespace deplen
