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

// Gold standards and the synthetic corpus generator.

#ifndef EVNOUN_DATA_H_
#define EVNOUN_DATA_H_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "evnoun/corpus.h"
#include "evnoun/cues.h"
#include "evnoun/features.h"

namespace evnoun {

struct GoldStandard {
  Language language = Language::kEnglish;
  std::map<std::string, Label> entries;

  size_t Count(Label label) const;
  std::set<std::string> Lemmas() const;
};

// The published English list of non-deverbal event nouns (EVENT) and non-event
// nouns (NON_EVENT), verbatim.
GoldStandard EnglishGold();

// Six illustrative Spanish nouns. Not a real evaluation set.
GoldStandard SpanishSampleGold();

GoldStandard BuiltinGold(Language language);

// CSV with `lemma,label` rows (header optional). Labels are EVENT or NON_EVENT
// in any case; lemmas are lowercased. Throws ParseError on a duplicate lemma
// or an unknown label.
GoldStandard LoadGold(std::istream& in, Language language);
GoldStandard LoadGoldFile(const std::string& path, Language language);
void WriteGold(std::ostream& out, const GoldStandard& gold);

// A tagged sentence with one slot for the target lemma.
struct SentenceTemplate {
  std::vector<TaggedToken> tokens;
  size_t target_slot = 0;

  Sentence Instantiate(std::string_view lemma) const;
  // Puts `head` right after the target, forming a noun compound whose first
  // member is the target lemma.
  Sentence InstantiateCompound(std::string_view lemma,
                               std::string_view head) const;
  // True when only punctuation follows the slot.
  bool TargetIsFinal() const;
};

// One template per built-in rule id, written so that the rule fires exactly
// once on the slot and no other rule hits the slot. Returns nullopt for ids
// without a template.
std::optional<SentenceTemplate> CueTemplate(Language language,
                                            std::string_view cue_id);

// Templates matching no built-in rule.
std::vector<SentenceTemplate> DistractorTemplates(Language language);

// Noun used as compound head by the noise generator.
std::string_view CompoundHead(Language language);

struct SynthParams {
  int event_lemmas = 100;
  int non_event_lemmas = 100;
  // Per occurrence and per enabled cue. EVENT lemmas fire positive cues with
  // p_event and negative cues with p_non_event; NON_EVENT lemmas the reverse.
  double p_event = 0.4;
  double p_non_event = 0.02;
  // Trials per lemma, uniform in [min, max].
  int min_occurrences = 5;
  int max_occurrences = 30;
  // Fraction of each class emitted zero times.
  double silence_fraction = 0;
  // Extra fraction of EVENT lemmas emitted zero times.
  double event_silence_fraction = 0;
  // Per-trial probability of a wrong-class cue context in which the lemma is
  // the non-head member of a noun compound.
  double noise_fraction = 0;
  uint64_t seed = 1;

  // Throws std::invalid_argument.
  void Validate() const;
};

struct SyntheticCorpus {
  std::string corpus_text;
  GoldStandard gold;
  // Expected feature vectors from the generator's own draws, labeled.
  Dataset draw_log;
};

// Draw order, for reproducibility: one shuffle of the EVENT lemmas and one of
// the NON_EVENT lemmas pick the silent ones (a prefix of each permutation, so
// a larger fraction silences a superset). Then, lemma by lemma (EVENT lemmas
// first), the trial count is drawn, and per trial one Bernoulli draw per
// enabled cue, a distractor pick, and a noise draw with its cue pick. Silent
// lemmas consume the same draws but emit nothing. Finally the sentences are
// shuffled.
SyntheticCorpus GenerateSyntheticCorpus(const SynthParams& params,
                                        const CueSet& cue_set);

}  // namespace evnoun

#endif  // EVNOUN_DATA_H_
