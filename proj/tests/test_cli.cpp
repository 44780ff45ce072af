#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>
#include <zlib.h>

namespace fs = std::filesystem;

namespace {

struct Result {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch() {
  static const fs::path dir = [] {
    auto d = fs::temp_directory_path() / ("deplen_cli_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

// Runs the CLI through the shell; `args` is spliced in verbatim.
Result cli(const std::string& args, const std::string& stdin_text = "") {
  auto in = scratch() / "stdin";
  auto out = scratch() / "stdout";
  auto err = scratch() / "stderr";
  std::ofstream(in, std::ios::binary) << stdin_text;
  std::string cmd = std::string("'") + DEPLEN_CLI_PATH + "' " + args + " <'" + in.string() + "' >'" + out.string() +
                    "' 2>'" + err.string() + "'";
  int status = std::system(cmd.c_str());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out), slurp(err)};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::string chain_corpus(int sentences, int n) {
  std::string out;
  for (int s = 0; s < sentences; ++s) {
    for (int i = 1; i <= n; ++i) {
      out += std::to_string(i) + "\tw\tw\tNOUN\t_\t_\t" + std::to_string(i - 1) + "\tdep\t_\t_\n";
    }
    out += "\n";
  }
  return out;
}

}  // namespace

TEST_CASE("generate exhaustive") {
  auto r = cli("generate --n 3 --mode exhaustive");
  CHECK(r.code == 0);
  auto l = lines(r.out);
  CHECK(l.size() == 9);
  CHECK(l[0] == "3\t0 1 1");
  CHECK(r.err.empty());
}

TEST_CASE("generate sample is deterministic") {
  auto a = scratch() / "a.txt";
  auto b = scratch() / "b.txt";
  CHECK(cli("generate --n 12 --mode sample --count 1000 --seed 1 --out '" + a.string() + "'").code == 0);
  CHECK(cli("generate --n 12 --mode sample --count 1000 --seed 1 --out '" + b.string() + "'").code == 0);
  CHECK(lines(slurp(a)).size() == 1000);
  CHECK(slurp(a) == slurp(b));
  CHECK(cli("generate --n 12 --mode sample --count 1000 --seed 2").out != slurp(a));
}

TEST_CASE("generate refuses large exhaustive runs") {
  auto r = cli("generate --n 12 --mode exhaustive");
  CHECK(r.code == 1);
  CHECK(r.out.empty());
  auto j = nlohmann::json::parse(r.err);
  CHECK(j["level"] == "error");
  CHECK(j["kind"] == "usage");
  CHECK(j["message"].get<std::string>().find("--n-star") != std::string::npos);
}

TEST_CASE("classify") {
  auto r = cli("classify", "4\t0 1 2 3\n5\t0 1 1 2 3\n");
  CHECK(r.code == 0);
  CHECK(lines(r.out) == std::vector<std::string>{"4\t0 1 2 3\t1,1,1,1", "5\t0 1 1 2 3\t0,0,0,1"});

  auto empty = cli("classify", "");
  CHECK(empty.code == 0);
  CHECK(empty.out.empty());

  auto bad = cli("classify", "3\t0 1 2\n3\t0 0 1\n");
  CHECK(bad.code == 2);
  CHECK(nlohmann::json::parse(bad.err)["message"].get<std::string>().rfind("line 2:", 0) == 0);

  auto generated = cli("generate --n 4").out;
  auto classified = lines(cli("classify", generated).out);
  CHECK(classified.size() == 64);
}

TEST_CASE("survey rows and errors") {
  auto r = cli("survey --n-min 3 --n-max 5 --n-star 5 --classes all --quiet");
  CHECK(r.code == 0);
  auto l = lines(r.out);
  REQUIRE(l.size() == 4);
  CHECK(l[0].rfind("source,class,n,count,p,sum_D,mean_d,baseline,reported", 0) == 0);
  CHECK(l[3].rfind("AS,all,5,625,1/1,5000,2/1,2/1,true,", 0) == 0);

  auto mh = cli("survey --classes all,mh4");
  CHECK(mh.code == 1);
  CHECK(mh.err.find("mh4") != std::string::npos);

  CHECK(cli("survey --n-min 3 --n-max 5 --n-star 6").code == 1);
  CHECK(cli("survey --format xml").code == 1);
  CHECK(cli("bogus").code == 1);
}

TEST_CASE("survey progress goes to stderr only") {
  auto r = cli("survey --n-min 3 --n-max 4 --n-star 4 --classes all");
  CHECK(r.code == 0);
  auto progress = lines(r.err);
  REQUIRE(progress.size() == 2);
  CHECK(nlohmann::json::parse(progress[1])["n"] == 4);
  CHECK(r.out.find("progress") == std::string::npos);
}

TEST_CASE("keep-undersampled") {
  const std::string base = "survey --n-min 3 --n-max 6 --n-star 4 --samples 50 --seed 9 --classes projective --quiet";
  auto dropped = lines(cli(base).out);
  auto kept = lines(cli(base + " --keep-undersampled").out);
  CHECK(kept.size() > dropped.size());
  for (const auto& l : dropped) CHECK(l.find(",false,") == std::string::npos);
  bool any_false = false;
  for (const auto& l : kept) any_false |= l.find(",false,") != std::string::npos;
  CHECK(any_false);
}

TEST_CASE("survey output is independent of threads and reproducible from its manifest") {
  auto out1 = scratch() / "t1.csv";
  auto out3 = scratch() / "t3.csv";
  auto rerun = scratch() / "rerun.csv";
  const std::string args = "survey --n-min 3 --n-max 9 --n-star 5 --samples 70000 --seed 4 --quiet --keep-undersampled";
  REQUIRE(cli(args + " --threads 1 --out '" + out1.string() + "'").code == 0);
  REQUIRE(cli(args + " --threads 3 --out '" + out3.string() + "'").code == 0);
  CHECK(slurp(out1) == slurp(out3));

  auto manifest = nlohmann::json::parse(slurp(out1.string() + ".manifest.json"));
  CHECK(manifest["config"]["seed"] == 4);
  CHECK(manifest["lengths"].size() == 7);
  CHECK(manifest["lengths"][6]["examined"] == 70000);
  CHECK(manifest["keep_undersampled"] == true);

  REQUIRE(cli("survey --quiet --threads 2 --from-manifest '" + out1.string() + ".manifest.json' --out '" +
              rerun.string() + "'")
              .code == 0);
  CHECK(slurp(rerun) == slurp(out1));

  CHECK(cli("survey --from-manifest '" + (scratch() / "missing.json").string() + "'").code == 2);
  CHECK(cli("survey --from-manifest x --seed 1").code == 1);
}

TEST_CASE("json format") {
  auto r = cli("survey --n-min 3 --n-max 3 --n-star 3 --classes projective --format json --quiet");
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  REQUIRE(j.size() == 1);
  CHECK(j[0]["mean_d"] == "9/7");
  CHECK(j[0]["p"] == "7/9");
}

TEST_CASE("treebank command") {
  auto plain = scratch() / "chains.conllu";
  std::ofstream(plain) << chain_corpus(40, 5);
  auto r = cli("treebank --classes all '" + plain.string() + "'");
  CHECK(r.code == 0);
  auto l = lines(r.out);
  REQUIRE(l.size() == 2);
  CHECK(l[1].rfind("RS,all,5,40,1/1,160,1/1,2/1,true,", 0) == 0);

  auto packed = scratch() / "chains.conllu.gz";
  auto text = chain_corpus(35, 6);
  gzFile gz = gzopen(packed.c_str(), "wb");
  REQUIRE(gz != nullptr);
  gzwrite(gz, text.data(), static_cast<unsigned>(text.size()));
  gzclose(gz);
  auto z = cli("treebank --classes all,planar '" + packed.string() + "'");
  CHECK(z.code == 0);
  CHECK(lines(z.out).size() == 3);
  CHECK(z.out.find("RS,planar,6,35,1/1,") != std::string::npos);

  auto missing = cli("treebank '" + plain.string() + "' '" + (scratch() / "nope.conllu").string() + "'");
  CHECK(missing.code == 2);
  CHECK(lines(missing.out).size() == 6);
  CHECK(missing.err.find("nope.conllu") != std::string::npos);

  auto punct = scratch() / "punct.conllu";
  std::ofstream(punct) << chain_corpus(40, 5);
  CHECK(lines(cli("treebank --classes all --punct-tags NOUN --keep-undersampled '" + punct.string() + "'").out).size() ==
        1);
}
