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

#include "evnoun/data.h"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "evnoun/corpus.h"
#include "evnoun/features.h"

namespace evnoun {
namespace {

constexpr Label E = Label::kEvent;
constexpr Label N = Label::kNonEvent;

TEST_CASE("english gold is the published list") {
  GoldStandard gold = EnglishGold();
  CHECK(gold.language == Language::kEnglish);
  CHECK(gold.Count(E) == 73);
  CHECK(gold.Count(N) == 94);
  CHECK(gold.entries.size() == 167);
  CHECK(gold.entries.at("war") == E);
  CHECK(gold.entries.at("meiosis") == E);
  CHECK(gold.entries.at("map") == N);
  CHECK(gold.entries.at("world") == N);
  for (const auto& [lemma, label] : gold.entries) {
    CHECK(lemma == LowercaseUtf8(lemma));
  }
}

TEST_CASE("spanish sample gold") {
  GoldStandard gold = BuiltinGold(Language::kSpanish);
  CHECK(gold.entries.at("guerra") == E);
  CHECK(gold.entries.at("mapa") == N);
  CHECK(gold.Count(E) == 4);
  CHECK(gold.Count(N) == 2);
}

TEST_CASE("loading gold files") {
  std::istringstream with_header("lemma,label\nWar,event\nmap,NON_EVENT\n");
  GoldStandard gold = LoadGold(with_header, Language::kEnglish);
  CHECK(gold.entries.size() == 2);
  CHECK(gold.entries.at("war") == E);

  std::istringstream bare("trip,EVENT\r\n\r\nmap,NON_EVENT\r\n");
  CHECK(LoadGold(bare, Language::kEnglish).entries.size() == 2);

  std::istringstream dup("war,EVENT\nWAR,NON_EVENT\n");
  try {
    LoadGold(dup, Language::kEnglish);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  std::istringstream label("war,MAYBE\n");
  CHECK_THROWS_AS(LoadGold(label, Language::kEnglish), ParseError);

  std::stringstream file;
  WriteGold(file, EnglishGold());
  CHECK(LoadGold(file, Language::kEnglish).entries == EnglishGold().entries);
}

TEST_CASE("each template fires its own rule exactly once on the slot") {
  for (Language lang : {Language::kEnglish, Language::kSpanish}) {
    CueSet cues = BuiltinCueSet(lang).WithAllEnabled();
    const std::string lemma = lang == Language::kEnglish ? "zork" : "zorka";
    for (const CueRule& rule : cues.rules()) {
      CAPTURE(rule.id);
      auto tpl = CueTemplate(lang, rule.id);
      REQUIRE(tpl);
      for (bool compound : {false, true}) {
        if (compound && !tpl->TargetIsFinal()) continue;
        Sentence s = compound
                         ? tpl->InstantiateCompound(lemma, CompoundHead(lang))
                         : tpl->Instantiate(lemma);
        CHECK(s[tpl->target_slot].lemma == lemma);
        CHECK(s[tpl->target_slot].IsNoun());
        int own = 0, other = 0;
        for (const CueHit& h : MatchSentence(s, cues)) {
          if (h.token_index != tpl->target_slot) continue;
          (h.cue_id == rule.id ? own : other)++;
        }
        CHECK(own == 1);
        CHECK(other == 0);
      }
    }
    for (const SentenceTemplate& d : DistractorTemplates(lang)) {
      Sentence s = d.Instantiate(lemma);
      for (const CueHit& h : MatchSentence(s, cues)) {
        CHECK(h.token_index != d.target_slot);
      }
    }
  }
  CHECK_FALSE(CueTemplate(Language::kEnglish, "EN-99"));
}

Dataset Extract(const SyntheticCorpus& synth, Language lang) {
  CueSet cues = BuiltinCueSet(lang);
  auto corpus = ReadCorpusString(synth.corpus_text);
  return ExtractFeatures(corpus, cues, synth.gold.Lemmas());
}

TEST_CASE("extraction recovers the generator's draws") {
  for (Language lang : {Language::kEnglish, Language::kSpanish}) {
    SynthParams params;
    params.event_lemmas = 30;
    params.non_event_lemmas = 30;
    params.silence_fraction = 0.1;
    params.noise_fraction = 0.1;
    params.seed = 21;
    SyntheticCorpus synth =
        GenerateSyntheticCorpus(params, BuiltinCueSet(lang));
    Dataset extracted = Extract(synth, lang);
    CHECK(extracted.vectors == synth.draw_log.vectors);
    CHECK(synth.draw_log.CountLabel(E) == 30);
    CHECK(synth.gold.Count(N) == 30);
    size_t silent = synth.draw_log.size() - synth.draw_log.CountNonZero();
    CHECK(silent >= 6);
  }
}

TEST_CASE("generation is deterministic per seed") {
  SynthParams params;
  params.event_lemmas = 10;
  params.non_event_lemmas = 10;
  params.seed = 3;
  CueSet cues = BuiltinCueSet(Language::kEnglish);
  auto a = GenerateSyntheticCorpus(params, cues);
  auto b = GenerateSyntheticCorpus(params, cues);
  CHECK(a.corpus_text == b.corpus_text);
  params.seed = 4;
  CHECK(GenerateSyntheticCorpus(params, cues).corpus_text != a.corpus_text);
}

TEST_CASE("zero cue probabilities leave only distractors") {
  SynthParams params;
  params.event_lemmas = 10;
  params.non_event_lemmas = 10;
  params.p_event = 0;
  params.p_non_event = 0;
  auto synth = GenerateSyntheticCorpus(params, BuiltinCueSet(Language::kEnglish));
  for (const FeatureVector& v : synth.draw_log.vectors) {
    CHECK(v.IsZero());
    CHECK(v.total_occurrences >= params.min_occurrences);
    CHECK(v.total_occurrences <= params.max_occurrences);
  }
  CHECK(Extract(synth, Language::kEnglish).vectors == synth.draw_log.vectors);
}

TEST_CASE("cue counts follow the binomial draw rate") {
  SynthParams params;
  params.event_lemmas = 200;
  params.non_event_lemmas = 200;
  params.min_occurrences = 20;
  params.max_occurrences = 20;
  CueSet cues = BuiltinCueSet(Language::kEnglish);
  auto synth = GenerateSyntheticCorpus(params, cues);
  // Per lemma and positive cue, counts are Binomial(20, p).
  double event_sum = 0, non_event_sum = 0, cells = 0;
  const auto& log = synth.draw_log;
  for (size_t i = 0; i < log.size(); ++i) {
    for (size_t c = 0; c < cues.size(); ++c) {
      if (!cues[c].enabled || cues[c].polarity != Polarity::kPositive) continue;
      double count = log.vectors[i].counts[c];
      CHECK(count <= 20);
      if ((*log.labels)[i] == E) {
        event_sum += count;
        cells += 1;
      } else {
        non_event_sum += count;
      }
    }
  }
  CHECK(event_sum / cells == doctest::Approx(8.0).epsilon(0.03));
  CHECK(non_event_sum / cells == doctest::Approx(0.4).epsilon(0.15));
}

TEST_CASE("a larger silence fraction silences a superset") {
  CueSet cues = BuiltinCueSet(Language::kEnglish);
  SynthParams params;
  params.event_lemmas = 40;
  params.non_event_lemmas = 40;
  params.seed = 9;
  std::vector<std::string> previous;
  for (double silence : {0.0, 0.1, 0.25, 0.5}) {
    params.silence_fraction = silence;
    auto synth = GenerateSyntheticCorpus(params, cues);
    std::vector<std::string> silent;
    for (const auto& v : synth.draw_log.vectors) {
      if (v.total_occurrences == 0) silent.push_back(v.lemma);
    }
    CHECK(silent.size() == static_cast<size_t>(std::llround(silence * 80)));
    CHECK(std::includes(silent.begin(), silent.end(), previous.begin(),
                        previous.end()));
    previous = silent;
  }
  params.silence_fraction = 0;
  params.event_silence_fraction = 0.25;
  auto synth = GenerateSyntheticCorpus(params, cues);
  for (size_t i = 0; i < synth.draw_log.size(); ++i) {
    if (synth.draw_log.vectors[i].total_occurrences == 0) {
      CHECK((*synth.draw_log.labels)[i] == E);
    }
  }
}

TEST_CASE("parameter validation") {
  CueSet cues = BuiltinCueSet(Language::kEnglish);
  SynthParams params;
  params.p_event = 1.5;
  CHECK_THROWS_AS(GenerateSyntheticCorpus(params, cues), std::invalid_argument);
  params = SynthParams{};
  params.min_occurrences = 10;
  params.max_occurrences = 5;
  CHECK_THROWS_AS(params.Validate(), std::invalid_argument);
  // A custom enabled rule without a template cannot be generated.
  std::istringstream file("X-1\tpositive\tduring TARGET\n");
  CueSet custom = LoadCueSet(file, Language::kEnglish);
  CHECK_THROWS_AS(GenerateSyntheticCorpus(SynthParams{}, custom),
                  std::invalid_argument);
}

}  // namespace
}  // namespace evnoun
