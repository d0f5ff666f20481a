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

#include "evnoun/corpus.h"

#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "evnoun/random.h"

namespace evnoun {
namespace {

constexpr char kWarCorpus[] =
    "# two sentences\n"
    "During\tduring\tADP\n"
    "the\tthe\tDET\n"
    "war\twar\tNOUN\n"
    ".\t.\tPUNCT\n"
    "\n"
    "The\tthe\tDET\n"
    "Wars\tWar\tNOUN:PL\n"
    "ended\tend\tVERB:PAST\n";

TEST_CASE("tags parse coarse and fine parts") {
  auto tag = PosTag::Parse("VERB:PART");
  REQUIRE(tag);
  CHECK(tag->coarse == CoarseTag::kVerb);
  CHECK(tag->fine == "PART");
  CHECK(tag->ToString() == "VERB:PART");
  CHECK(PosTag::Parse("NOUN")->fine.empty());
  CHECK_FALSE(PosTag::Parse("NOUNS"));
  CHECK_FALSE(PosTag::Parse(""));
  for (CoarseTag t : {CoarseTag::kNoun, CoarseTag::kPropn, CoarseTag::kPunct,
                      CoarseTag::kOther}) {
    CHECK(ParseCoarseTag(CoarseTagName(t)) == t);
  }
}

TEST_CASE("lowercasing covers ASCII and Latin-1 letters") {
  CHECK(LowercaseUtf8("War") == "war");
  CHECK(LowercaseUtf8("AÑO") == "año");
  CHECK(LowercaseUtf8("Índice") == "índice");
}

TEST_CASE("reads sentences, skips comments, lowercases lemmas") {
  auto corpus = ReadCorpusString(kWarCorpus);
  REQUIRE(corpus.size() == 2);
  CHECK(corpus[0].size() == 4);
  CHECK(corpus[0][2].lemma == "war");
  CHECK(corpus[0][2].IsNoun());
  CHECK(corpus[1][1].surface == "Wars");
  CHECK(corpus[1][1].lemma == "war");
  CHECK(corpus[1][1].tag.fine == "PL");
  CHECK_FALSE(corpus[0][0].IsNoun());
}

TEST_CASE("CRLF and whitespace-only separators") {
  std::string text = "a\ta\tDET\r\nwar\twar\tNOUN\r\n  \t\r\nmap\tmap\tNOUN\r\n";
  auto corpus = ReadCorpusString(text);
  REQUIRE(corpus.size() == 2);
  CHECK(corpus[0][1].lemma == "war");
  CHECK(corpus[1][0].tag.ToString() == "NOUN");
}

TEST_CASE("strict mode reports the line of a malformed token") {
  for (std::string bad : {"war\twar\n", "war\t\tNOUN\n", "war\twar\tNOUNY\n",
                          "war\twar\tNOUN\textra\n"}) {
    std::string text = "the\tthe\tDET\n" + bad;
    try {
      ReadCorpusString(text);
      FAIL("expected a parse error for: " << bad);
    } catch (const ParseError& e) {
      CHECK(e.line() == 2);
      CHECK(std::string(e.what()).rfind("line 2:", 0) == 0);
    }
  }
}

TEST_CASE("lenient mode skips malformed lines and warns") {
  std::istringstream in("the\tthe\tDET\nbroken line\nwar\twar\tNOUN\n");
  std::vector<int64_t> warned;
  ReaderOptions options;
  options.strict = false;
  options.on_warning = [&](const ParseError& e) { warned.push_back(e.line()); };
  CorpusReader reader(in, options);
  Sentence s;
  REQUIRE(reader.Next(&s));
  CHECK(s.size() == 2);
  CHECK_FALSE(reader.Next(&s));
  CHECK(reader.skipped_lines() == 1);
  CHECK(warned == std::vector<int64_t>{2});
}

TEST_CASE("empty input yields no sentences") {
  CHECK(ReadCorpusString("").empty());
  CHECK(ReadCorpusString("\n\n# only a comment\n\n").empty());
}

Sentence RandomSentence(Rng& rng) {
  static const std::vector<std::string> words = {"war", "map", "the", "año",
                                                 "trip", "of", "during"};
  static const std::vector<std::string> tags = {"NOUN", "DET", "ADP",
                                                "VERB:PART", "ADJ", "PUNCT"};
  Sentence s;
  int n = static_cast<int>(rng.Between(1, 8));
  for (int i = 0; i < n; ++i) {
    const std::string& w = words[rng.Below(words.size())];
    s.tokens.push_back(
        {w, w, *PosTag::Parse(tags[rng.Below(tags.size())])});
  }
  return s;
}

TEST_CASE("serialization round-trips random corpora") {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Sentence> corpus;
    int n = static_cast<int>(rng.Below(6));
    for (int i = 0; i < n; ++i) corpus.push_back(RandomSentence(rng));
    CHECK(ReadCorpusString(SerializeCorpus(corpus)) == corpus);
  }
}

TEST_CASE("noun occurrence counts are additive over concatenation") {
  Rng rng(5);
  const std::set<std::string> lemmas = {"war", "map", "trip", "absent"};
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Sentence> a, b;
    for (int i = 0; i < 4; ++i) a.push_back(RandomSentence(rng));
    for (int i = 0; i < 3; ++i) b.push_back(RandomSentence(rng));
    std::vector<Sentence> ab = a;
    ab.insert(ab.end(), b.begin(), b.end());
    auto ca = CountNounOccurrences(a, lemmas);
    auto cb = CountNounOccurrences(b, lemmas);
    auto cab = CountNounOccurrences(ab, lemmas);
    for (const auto& lemma : lemmas) CHECK(cab[lemma] == ca[lemma] + cb[lemma]);
    CHECK(cab["absent"] == 0);
  }
}

TEST_CASE("only NOUN tokens are counted") {
  auto corpus = ReadCorpusString(
      "war\twar\tNOUN\nwar\twar\tVERB\nWar\twar\tPROPN\n\nwars\twar\tNOUN:PL\n");
  auto counts = CountNounOccurrences(corpus, {"war"});
  CHECK(counts["war"] == 2);
}

}  // namespace
}  // namespace evnoun
