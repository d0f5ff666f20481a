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

// Lexico-syntactic cues as declarative token-sequence rules.
//
// A cue rule is a linear pattern of token constraints with one TARGET slot
// that must bind a NOUN. Matching is shallow: there is no head finding, so by
// default the slot binds the first noun after the pattern prefix ("during the
// first world war" binds "world").
//
// Rule files are line oriented:
//
//   id<TAB>polarity<TAB>pattern[<TAB>disabled]
//
// A pattern is a space-separated list of atoms. An atom is either TARGET, a
// bare word (shorthand for lemma=word), ANY, or a '&'-joined conjunction of
// lemma=a|b, surface=a|b and tag=T1|T2 fields. A trailing '?' makes the atom
// optional and a trailing '*' lets it repeat zero to three times. The token
// '||' separates alternative patterns of the same rule.

#ifndef EVNOUN_CUES_H_
#define EVNOUN_CUES_H_

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "evnoun/corpus.h"

namespace evnoun {

enum class Language { kSpanish, kEnglish };

std::string_view LanguageCode(Language language);  // "ES" / "EN"
// Accepts ES/EN in any case. Throws std::invalid_argument otherwise.
Language ParseLanguage(std::string_view code);

enum class Polarity { kPositive, kNegative };

std::string_view PolarityName(Polarity polarity);

// Upper bound for '*' repetitions.
inline constexpr int kMaxStarRepetition = 3;

struct TokenConstraint {
  std::optional<std::set<std::string>> lemma_in;
  std::optional<std::set<std::string>> surface_in;
  // Coarse-only entries match any refinement; refined entries match exactly.
  std::optional<std::vector<PosTag>> tag_in;
  int min_count = 1;
  int max_count = 1;

  static TokenConstraint Target();

  bool IsWildcard() const { return !lemma_in && !surface_in && !tag_in; }
  bool IsExactlyOne() const { return min_count == 1 && max_count == 1; }
  bool RequiresNoun() const;
  bool Matches(const TaggedToken& token) const;

  bool operator==(const TokenConstraint&) const = default;
};

struct CuePattern {
  std::vector<TokenConstraint> elements;
  size_t target_index = 0;

  bool operator==(const CuePattern&) const = default;
};

struct CueRule {
  std::string id;
  Language language = Language::kEnglish;
  Polarity polarity = Polarity::kPositive;
  // Tried in order at each start position; the first one that matches wins.
  std::vector<CuePattern> alternatives;
  bool enabled = true;

  // Throws std::invalid_argument when a structural invariant is broken.
  void Validate() const;
};

class CueSet {
 public:
  // Validates every rule and id uniqueness; throws std::invalid_argument.
  CueSet(Language language, std::vector<CueRule> rules);

  Language language() const { return language_; }
  const std::vector<CueRule>& rules() const { return rules_; }
  // Vector dimensionality: enabled and disabled rules alike.
  size_t size() const { return rules_.size(); }
  const CueRule& operator[](size_t i) const { return rules_[i]; }

  std::optional<size_t> IndexOf(std::string_view id) const;
  std::vector<std::string> Ids() const;
  size_t CountPolarity(Polarity polarity) const;

  // Returns a copy with the named rule switched on or off.
  CueSet WithEnabled(std::string_view id, bool enabled) const;
  CueSet WithAllEnabled() const;

 private:
  Language language_;
  std::vector<CueRule> rules_;
};

struct CueHit {
  std::string cue_id;
  size_t cue_index = 0;
  std::string lemma;
  size_t sentence_index = 0;
  size_t token_index = 0;

  bool operator==(const CueHit&) const = default;
};

enum class TargetPolicy {
  // TARGET binds one noun: the first after the prefix.
  kFirstNoun,
  // TARGET absorbs a maximal run of nouns and binds the last one. A TARGET in
  // first position only starts a run (it never binds a compound's interior).
  kLastNounOfCompound,
};

struct MatchOptions {
  TargetPolicy policy = TargetPolicy::kFirstNoun;
};

CueSet BuiltinCueSet(Language language);

// Token index bound to TARGET when `rule` matches starting at `start`.
std::optional<size_t> MatchRuleAt(const Sentence& sentence,
                                  const CueRule& rule, size_t start,
                                  const MatchOptions& options = {});

// All hits of the enabled rules, grouped by rule in cue-set order and by start
// position within a rule.
std::vector<CueHit> MatchSentence(const Sentence& sentence,
                                  const CueSet& cue_set,
                                  size_t sentence_index = 0,
                                  const MatchOptions& options = {});

// Pattern text <-> constraints. ParsePattern throws std::invalid_argument.
std::vector<CuePattern> ParsePattern(std::string_view text);
std::string FormatPattern(const std::vector<CuePattern>& alternatives);

// Throws ParseError (with line number) on malformed lines.
CueSet LoadCueSet(std::istream& in, Language language);
CueSet LoadCueSetFile(const std::string& path, Language language);
void WriteCueSet(std::ostream& out, const CueSet& cue_set);

}  // namespace evnoun

#endif  // EVNOUN_CUES_H_
