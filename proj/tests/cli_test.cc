// Copyright 2026 The Evnoun Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.h"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"

namespace evnoun::cli {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result RunArgs(std::vector<std::string> args) {
  args.insert(args.begin(), "evnoun");
  std::ostringstream out, err;
  int code = Run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path TempDir(const std::string& name) {
  fs::path dir = fs::path(EVNOUN_TEST_TMPDIR) / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void WriteFile(const fs::path& path, const std::string& text) {
  std::ofstream(path, std::ios::binary) << text;
}

int CountLines(const std::string& text) {
  int n = 0;
  for (char c : text) n += c == '\n';
  return n;
}

constexpr char kEnglishCorpus[] =
    "During\tduring\tADP\nthe\tthe\tDET\nwar\twar\tNOUN\n\n"
    "a\ta\tDET\nmap\tmap\tNOUN\n";

TEST_CASE("usage errors") {
  CHECK(RunArgs({}).code == kExitUsage);
  CHECK(RunArgs({"frobnicate"}).code == kExitUsage);
  CHECK(RunArgs({"--help"}).code == kExitOk);
  CHECK(RunArgs({"--lang", "FR", "extract"}).code == kExitUsage);
}

TEST_CASE("extract with the built-in gold writes one row per gold lemma") {
  fs::path dir = TempDir("extract");
  WriteFile(dir / "c.tsv", kEnglishCorpus);
  Result r = RunArgs({"extract", "--lang", "EN", "--corpus",
                      (dir / "c.tsv").string(), "--builtin-gold", "--out",
                      (dir / "d.csv").string()});
  REQUIRE(r.code == kExitOk);
  CHECK(r.out.find("lemmas: 167") != std::string::npos);
  CHECK(r.out.find("nonzero vectors: 2") != std::string::npos);
  std::string csv = ReadFile(dir / "d.csv");
  CHECK(CountLines(csv) == 168);
  CHECK(csv.find("\nwar,1,1,") != std::string::npos);
}

TEST_CASE("missing corpus file is a usage error naming the path") {
  fs::path dir = TempDir("missing");
  Result r = RunArgs({"extract", "--corpus", (dir / "nope.tsv").string(),
                      "--builtin-gold", "--out", (dir / "d.csv").string()});
  CHECK(r.code == kExitUsage);
  CHECK(r.err.find("nope.tsv") != std::string::npos);
  CHECK_FALSE(fs::exists(dir / "d.csv"));
}

TEST_CASE("malformed corpus line is a data error; lenient mode skips it") {
  fs::path dir = TempDir("malformed");
  WriteFile(dir / "c.tsv", std::string(kEnglishCorpus) + "broken\tline\n");
  std::vector<std::string> args = {"extract", "--corpus",
                                   (dir / "c.tsv").string(), "--builtin-gold",
                                   "--out", (dir / "d.csv").string()};
  Result r = RunArgs(args);
  CHECK(r.code == kExitDataError);
  CHECK(r.err.find("line 7") != std::string::npos);
  args.push_back("--lenient");
  r = RunArgs(args);
  CHECK(r.code == kExitOk);
  CHECK(r.err.find("warning") != std::string::npos);
}

TEST_CASE("train then classify; a model for another language is rejected") {
  fs::path dir = TempDir("classify");
  REQUIRE(RunArgs({"synth", "--lang", "ES", "--seed", "1", "--events", "20",
                   "--non-events", "20", "--out", (dir / "es").string()})
              .code == kExitOk);
  REQUIRE(RunArgs({"train", "--lang", "ES", "--corpus",
                   (dir / "es/corpus.tsv").string(), "--gold",
                   (dir / "es/gold.csv").string(), "--out",
                   (dir / "es.json").string()})
              .code == kExitOk);
  Result ok = RunArgs({"classify", "--lang", "ES", "--model",
                       (dir / "es.json").string(), "--corpus",
                       (dir / "es/corpus.tsv").string(), "--targets",
                       (dir / "targets.txt").string(), "--out",
                       (dir / "p.csv").string()});
  CHECK(ok.code == kExitUsage);  // targets file does not exist yet
  WriteFile(dir / "targets.txt", "ev0001\nne0001\n");
  ok = RunArgs({"classify", "--lang", "ES", "--model",
                (dir / "es.json").string(), "--corpus",
                (dir / "es/corpus.tsv").string(), "--targets",
                (dir / "targets.txt").string(), "--out",
                (dir / "p.csv").string()});
  REQUIRE(ok.code == kExitOk);
  std::string preds = ReadFile(dir / "p.csv");
  CHECK(preds.rfind("lemma,predicted,confidence\n", 0) == 0);
  CHECK(CountLines(preds) == 3);

  WriteFile(dir / "en.tsv", kEnglishCorpus);
  Result bad = RunArgs({"classify", "--lang", "EN", "--model",
                        (dir / "es.json").string(), "--corpus",
                        (dir / "en.tsv").string(), "--builtin-gold", "--out",
                        (dir / "q.csv").string()});
  CHECK(bad.code == kExitDataError);
  CHECK(bad.err.find("16") != std::string::npos);
  CHECK(bad.err.find("11") != std::string::npos);
}

TEST_CASE("evaluate is deterministic and partitions the predictions") {
  fs::path dir = TempDir("evaluate");
  REQUIRE(RunArgs({"synth", "--seed", "5", "--events", "30", "--non-events",
                   "30", "--silence", "0.1", "--noise", "0.05", "--out",
                   (dir / "s").string()})
              .code == kExitOk);
  auto evaluate = [&](const std::string& name, const std::string& seed) {
    return RunArgs({"evaluate", "--seed", seed, "--corpus",
                    (dir / "s/corpus.tsv").string(), "--gold",
                    (dir / "s/gold.csv").string(), "--threshold", "0.8",
                    "--out", (dir / name).string()});
  };
  CHECK(RunArgs({"evaluate", "--corpus", (dir / "s/corpus.tsv").string(),
                 "--gold", (dir / "s/gold.csv").string(), "--out",
                 (dir / "x").string()})
            .code == kExitUsage);  // no seed
  Result a = evaluate("a", "3");
  Result b = evaluate("b", "3");
  REQUIRE(a.code == kExitOk);
  REQUIRE(b.code == kExitOk);
  CHECK(a.out == b.out);
  CHECK(a.out.find("mean accuracy: ") != std::string::npos);
  for (const char* file : {"report.txt", "predictions.csv", "curve.csv",
                           "confusion.csv", "accepted.csv", "to_review.csv"}) {
    CAPTURE(file);
    CHECK(ReadFile(dir / "a" / file) == ReadFile(dir / "b" / file));
  }
  CHECK(CountLines(ReadFile(dir / "a/predictions.csv")) == 61);
  CHECK(CountLines(ReadFile(dir / "a/accepted.csv")) +
            CountLines(ReadFile(dir / "a/to_review.csv")) ==
        62);
  CHECK(CountLines(ReadFile(dir / "a/curve.csv")) == 22);

  Result curve = RunArgs({"curve", "--predictions",
                          (dir / "a/predictions.csv").string(), "--out",
                          (dir / "curve.csv").string()});
  REQUIRE(curve.code == kExitOk);
  CHECK(ReadFile(dir / "curve.csv") == ReadFile(dir / "a/curve.csv"));
}

TEST_CASE("bad tree parameters are usage errors") {
  fs::path dir = TempDir("params");
  WriteFile(dir / "c.tsv", kEnglishCorpus);
  Result r = RunArgs({"train", "--corpus", (dir / "c.tsv").string(),
                      "--builtin-gold", "--cf", "1.5", "--out",
                      (dir / "m.json").string()});
  CHECK(r.code == kExitUsage);
}

}  // namespace
}  // namespace evnoun::cli
