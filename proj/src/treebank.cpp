#include "deplen/treebank.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <charconv>
#include <map>
#include <streambuf>
#include <string_view>
#include <thread>

#include <zlib.h>

namespace deplen {

namespace {

// Read-only streambuf over zlib. gzread passes uncompressed files through
// unchanged, so this serves plain and gzip input alike.
class GzStreamBuf : public std::streambuf {
 public:
  explicit GzStreamBuf(gzFile file) : file_(file) {}
  ~GzStreamBuf() override { gzclose(file_); }
  GzStreamBuf(const GzStreamBuf&) = delete;
  GzStreamBuf& operator=(const GzStreamBuf&) = delete;

 protected:
  int_type underflow() override {
    if (gptr() < egptr()) return traits_type::to_int_type(*gptr());
    int got = gzread(file_, buffer_.data(), static_cast<unsigned>(buffer_.size()));
    if (got <= 0) return traits_type::eof();
    setg(buffer_.data(), buffer_.data(), buffer_.data() + got);
    return traits_type::to_int_type(*gptr());
  }

 private:
  gzFile file_;
  std::array<char, 1 << 16> buffer_{};
};

class GzIStream : public std::istream {
 public:
  explicit GzIStream(gzFile file) : std::istream(nullptr), buf_(file) { rdbuf(&buf_); }

 private:
  GzStreamBuf buf_;
};

bool parse_int(std::string_view text, int& out) {
  if (text.empty()) return false;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc() && ptr == text.data() + text.size();
}

void split_tabs(std::string_view line, std::vector<std::string_view>& fields) {
  fields.clear();
  std::size_t start = 0;
  while (true) {
    std::size_t tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

// Aggregation state for one batch of sentences.
struct Aggregate {
  std::map<int, LengthTally> by_length;
  std::uint64_t sentences = 0;
  std::uint64_t kept = 0;
  std::uint64_t too_short = 0;
  std::uint64_t malformed = 0;

  void add(const TreebankSentence& sentence, const TokenPredicate& is_punct, std::span<const DepClass> classes) {
    ++sentences;
    auto result = preprocess(sentence, is_punct);
    if (auto* discard = std::get_if<Discard>(&result)) {
      ++(discard->reason == Discard::Reason::kTooShort ? too_short : malformed);
      return;
    }
    const auto& s = std::get<DepStructure>(result);
    ++kept;
    auto it = by_length.find(s.n());
    if (it == by_length.end()) it = by_length.emplace(s.n(), LengthTally(s.n(), classes)).first;
    it->second.add(s);
  }

  void merge(const Aggregate& other) {
    sentences += other.sentences;
    kept += other.kept;
    too_short += other.too_short;
    malformed += other.malformed;
    for (const auto& [n, tally] : other.by_length) {
      auto it = by_length.find(n);
      if (it == by_length.end()) {
        by_length.emplace(n, tally);
      } else {
        it->second.merge(tally);
      }
    }
  }

  void fill(TreebankReport& report) const {
    report.sentences = sentences;
    report.kept = kept;
    report.too_short = too_short;
    report.malformed = malformed;
    for (const auto& [n, tally] : by_length) {
      auto rows = rows_from_tally(tally, Source::kAttested, false, false);
      report.table.insert(report.table.end(), rows.begin(), rows.end());
    }
    sort_table(report.table);
  }
};

}  // namespace

ConlluReader::ConlluReader(std::istream& in, std::string file_name) : in_(in), file_(std::move(file_name)) {}

bool ConlluReader::next(TreebankSentence& out) {
  out.tokens.clear();
  out.file = file_;
  out.first_line = 0;
  bool broken = false;
  std::string line;
  std::vector<std::string_view> fields;

  auto fail = [&](std::string message) {
    if (!broken) issues_.push_back({file_, line_no_, std::move(message)});
    broken = true;
  };

  while (true) {
    bool have_line = static_cast<bool>(std::getline(in_, line));
    if (have_line) {
      ++line_no_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
    }
    if (!have_line || line.empty()) {
      const bool in_sentence = out.first_line != 0;
      if (in_sentence) {
        ++sentence_index_;
        if (!broken && finish_sentence(out)) return true;
        out.tokens.clear();
        out.first_line = 0;
        broken = false;
      }
      if (!have_line) return false;
      continue;
    }

    if (out.first_line == 0) {
      out.first_line = line_no_;
      out.index = sentence_index_;
    }
    if (line.front() == '#' || broken) continue;

    split_tabs(line, fields);
    if (fields.size() < 8) {
      fail("expected at least 8 tab-separated columns, got " + std::to_string(fields.size()));
      continue;
    }
    std::string_view id = fields[0];
    if (id.find('-') != std::string_view::npos || id.find('.') != std::string_view::npos) continue;

    Token token;
    if (!parse_int(id, token.id) || token.id < 1) {
      fail("bad token id '" + std::string(id) + "'");
      continue;
    }
    if (!parse_int(fields[6], token.head) || token.head < 0) {
      fail("bad head '" + std::string(fields[6]) + "'");
      continue;
    }
    token.form = fields[1];
    token.upos = fields[3];
    token.deprel = fields[7];
    out.tokens.push_back(std::move(token));
  }
}

bool ConlluReader::finish_sentence(TreebankSentence& out) {
  const auto m = static_cast<int>(out.tokens.size());
  if (m == 0) return false;  // comments only
  for (int i = 0; i < m; ++i) {
    const Token& t = out.tokens[static_cast<std::size_t>(i)];
    if (t.id != i + 1) {
      issues_.push_back({file_, out.first_line,
                         "token ids not consecutive: expected " + std::to_string(i + 1) + ", got " +
                             std::to_string(t.id)});
      return false;
    }
    if (t.head > m) {
      issues_.push_back({file_, out.first_line,
                         "head " + std::to_string(t.head) + " of token " + std::to_string(t.id) +
                             " beyond sentence length " + std::to_string(m)});
      return false;
    }
  }
  return true;
}

std::vector<TreebankSentence> parse_conllu(std::istream& in, const std::string& file_name,
                                           std::vector<ParseIssue>* issues) {
  ConlluReader reader(in, file_name);
  std::vector<TreebankSentence> out;
  TreebankSentence sentence;
  while (reader.next(sentence)) out.push_back(sentence);
  if (issues) issues->insert(issues->end(), reader.issues().begin(), reader.issues().end());
  return out;
}

std::unique_ptr<std::istream> open_maybe_gzip(const std::string& path) {
  gzFile file = gzopen(path.c_str(), "rb");
  if (file == nullptr) throw std::runtime_error("cannot open " + path);
  return std::make_unique<GzIStream>(file);
}

TokenPredicate punct_by_upos(std::vector<std::string> tags) {
  return [tags = std::move(tags)](const Token& t) {
    return std::find(tags.begin(), tags.end(), t.upos) != tags.end();
  };
}

Preprocessed preprocess(const TreebankSentence& sentence, const TokenPredicate& is_punct) {
  const auto m = static_cast<int>(sentence.tokens.size());
  auto malformed = [](std::string detail) { return Discard{Discard::Reason::kMalformed, std::move(detail)}; };

  // heads[i] for token i + 1; 0 = root.
  std::vector<int> heads(static_cast<std::size_t>(m));
  int roots = 0;
  for (int i = 0; i < m; ++i) {
    const Token& t = sentence.tokens[static_cast<std::size_t>(i)];
    if (t.id != i + 1) return malformed("token ids not consecutive");
    if (t.head < 0 || t.head > m || t.head == t.id) return malformed("bad head for token " + std::to_string(t.id));
    heads[static_cast<std::size_t>(i)] = t.head;
    if (t.head == 0) ++roots;
  }
  if (roots != 1) return malformed(std::to_string(roots) + " root tokens");
  for (int start = 1; start <= m; ++start) {
    int v = start;
    for (int steps = 0; v != 0; ++steps) {
      if (steps > m) return malformed("cycle through token " + std::to_string(start));
      v = heads[static_cast<std::size_t>(v - 1)];
    }
  }

  // New position of each kept token, 0 for removed ones.
  std::vector<Position> renumber(static_cast<std::size_t>(m) + 1, 0);
  Position n = 0;
  for (int i = 1; i <= m; ++i) {
    if (!is_punct(sentence.tokens[static_cast<std::size_t>(i - 1)])) renumber[static_cast<std::size_t>(i)] = ++n;
  }
  if (n < kMinSentenceLength) {
    return Discard{Discard::Reason::kTooShort, std::to_string(n) + " words after removal"};
  }

  std::vector<Position> out(static_cast<std::size_t>(n), kRoot);
  Position new_root = kRoot;
  std::vector<Position> orphans;  // tokens whose whole ancestry was removed
  for (int i = 1; i <= m; ++i) {
    Position self = renumber[static_cast<std::size_t>(i)];
    if (self == 0) continue;
    int a = heads[static_cast<std::size_t>(i - 1)];
    while (a != 0 && renumber[static_cast<std::size_t>(a)] == 0) a = heads[static_cast<std::size_t>(a - 1)];
    if (a != 0) {
      out[static_cast<std::size_t>(self - 1)] = renumber[static_cast<std::size_t>(a)];
    } else if (new_root == kRoot) {
      new_root = self;
    } else {
      orphans.push_back(self);
    }
  }
  for (Position p : orphans) out[static_cast<std::size_t>(p - 1)] = new_root;
  return DepStructure(std::move(out));
}

TreebankSentence sentence_from_structure(const DepStructure& s) {
  TreebankSentence out;
  for (Position p = 1; p <= s.n(); ++p) {
    Token t;
    t.id = p;
    t.form = "w" + std::to_string(p);
    t.upos = "X";
    t.head = s.head(p) == kRoot ? 0 : s.head(p);
    t.deprel = s.head(p) == kRoot ? "root" : "dep";
    out.tokens.push_back(std::move(t));
  }
  return out;
}

TreebankReport treebank_survey(const std::vector<std::string>& files, const TokenPredicate& is_punct,
                               std::span<const DepClass> classes, unsigned threads) {
  std::vector<Aggregate> partial(files.size());
  std::vector<std::vector<ParseIssue>> issues(files.size());
  auto work = [&](std::size_t i) {
    try {
      auto in = open_maybe_gzip(files[i]);
      ConlluReader reader(*in, files[i]);
      TreebankSentence sentence;
      while (reader.next(sentence)) partial[i].add(sentence, is_punct, classes);
      issues[i] = reader.issues();
      if (in->bad()) issues[i].push_back({files[i], 0, "read error"});
    } catch (const std::exception& e) {
      issues[i].push_back({files[i], 0, e.what()});
    }
  };

  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(files.size())));
  if (threads <= 1) {
    for (std::size_t i = 0; i < files.size(); ++i) work(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < files.size(); i = next++) work(i);
      });
    }
  }

  Aggregate total;
  TreebankReport report;
  for (std::size_t i = 0; i < files.size(); ++i) {
    total.merge(partial[i]);
    report.issues.insert(report.issues.end(), issues[i].begin(), issues[i].end());
  }
  total.fill(report);
  return report;
}

TreebankReport treebank_survey(const std::vector<TreebankSentence>& sentences, const TokenPredicate& is_punct,
                               std::span<const DepClass> classes) {
  Aggregate total;
  for (const auto& s : sentences) total.add(s, is_punct, classes);
  TreebankReport report;
  total.fill(report);
  return report;
}

}  // namespace deplen
