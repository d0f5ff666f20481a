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

#include "evnoun/cues.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace evnoun {
namespace {

std::vector<std::string_view> Split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  size_t start = 0;
  while (true) {
    size_t end = text.find(sep, start);
    parts.push_back(text.substr(start, end - start));
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return parts;
}

std::vector<std::string_view> SplitWords(std::string_view text) {
  std::vector<std::string_view> words;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t start = text.find_first_not_of(' ', pos);
    if (start == std::string_view::npos) break;
    size_t end = text.find(' ', start);
    if (end == std::string_view::npos) end = text.size();
    words.push_back(text.substr(start, end - start));
    pos = end;
  }
  return words;
}

std::set<std::string> ParseValueSet(std::string_view values, bool lowercase,
                                    std::string_view atom) {
  std::set<std::string> out;
  for (std::string_view value : Split(values, '|')) {
    if (value.empty()) {
      throw std::invalid_argument("empty value in atom '" + std::string(atom) +
                                  "'");
    }
    out.insert(lowercase ? LowercaseUtf8(value) : std::string(value));
  }
  return out;
}

bool IsPlainWord(const std::string& word) {
  return !word.empty() &&
         word.find_first_of("=&|?* \t") == std::string::npos &&
         word != "TARGET" && word != "ANY" && word != "||";
}

TokenConstraint ParseAtom(std::string_view atom) {
  const std::string atom_text(atom);
  TokenConstraint constraint;
  if (atom.size() > 1 && (atom.back() == '?' || atom.back() == '*')) {
    constraint.min_count = 0;
    constraint.max_count = atom.back() == '?' ? 1 : kMaxStarRepetition;
    atom.remove_suffix(1);
  }
  if (atom == "TARGET") {
    if (constraint.min_count != 1) {
      throw std::invalid_argument("TARGET cannot repeat: " + atom_text);
    }
    return TokenConstraint::Target();
  }
  if (atom == "ANY") return constraint;
  if (atom.find('=') == std::string_view::npos) {
    constraint.lemma_in = ParseValueSet(atom, /*lowercase=*/true, atom_text);
    return constraint;
  }
  for (std::string_view field : Split(atom, '&')) {
    size_t eq = field.find('=');
    if (eq == std::string_view::npos) {
      throw std::invalid_argument("expected key=value in atom '" + atom_text +
                                  "'");
    }
    std::string_view key = field.substr(0, eq);
    std::string_view values = field.substr(eq + 1);
    if (key == "lemma") {
      constraint.lemma_in = ParseValueSet(values, true, atom_text);
    } else if (key == "surface") {
      constraint.surface_in = ParseValueSet(values, false, atom_text);
    } else if (key == "tag") {
      std::vector<PosTag> tags;
      for (const std::string& name : ParseValueSet(values, false, atom_text)) {
        auto tag = PosTag::Parse(name);
        if (!tag) throw std::invalid_argument("unknown tag '" + name + "'");
        tags.push_back(*tag);
      }
      constraint.tag_in = std::move(tags);
    } else {
      throw std::invalid_argument("unknown field '" + std::string(key) +
                                  "' in atom '" + atom_text + "'");
    }
  }
  return constraint;
}

std::string JoinSet(const std::set<std::string>& values) {
  std::string out;
  for (const std::string& v : values) {
    if (!out.empty()) out += '|';
    out += v;
  }
  return out;
}

std::string FormatAtom(const TokenConstraint& c, bool is_target) {
  if (is_target) return "TARGET";
  std::string out;
  if (c.IsWildcard()) {
    out = "ANY";
  } else if (c.lemma_in && !c.surface_in && !c.tag_in &&
             c.lemma_in->size() == 1 && IsPlainWord(*c.lemma_in->begin())) {
    out = *c.lemma_in->begin();
  } else {
    std::vector<std::string> fields;
    if (c.lemma_in) fields.push_back("lemma=" + JoinSet(*c.lemma_in));
    if (c.surface_in) fields.push_back("surface=" + JoinSet(*c.surface_in));
    if (c.tag_in) {
      std::string tags = "tag=";
      for (size_t i = 0; i < c.tag_in->size(); ++i) {
        if (i > 0) tags += '|';
        tags += (*c.tag_in)[i].ToString();
      }
      fields.push_back(std::move(tags));
    }
    for (size_t i = 0; i < fields.size(); ++i) {
      if (i > 0) out += '&';
      out += fields[i];
    }
  }
  if (c.min_count == 0 && c.max_count == 1) out += '?';
  if (c.min_count == 0 && c.max_count > 1) out += '*';
  return out;
}

// Lazy backtracking: optional and starred elements try the fewest tokens
// first, so the earliest (shortest) match wins.
std::optional<size_t> MatchElements(const Sentence& sentence,
                                    const CuePattern& pattern, size_t element,
                                    size_t pos, std::optional<size_t> bound,
                                    TargetPolicy policy) {
  if (element == pattern.elements.size()) return bound;
  const TokenConstraint& constraint = pattern.elements[element];

  if (element == pattern.target_index) {
    if (pos >= sentence.size() || !constraint.Matches(sentence[pos])) {
      return std::nullopt;
    }
    size_t bind = pos;
    size_t next = pos + 1;
    if (policy == TargetPolicy::kLastNounOfCompound) {
      if (element == 0 && pos > 0 && sentence[pos - 1].IsNoun()) {
        return std::nullopt;
      }
      while (next < sentence.size() && constraint.Matches(sentence[next])) {
        bind = next++;
      }
    }
    return MatchElements(sentence, pattern, element + 1, next, bind, policy);
  }

  for (int count = 0; count <= constraint.max_count; ++count) {
    if (count > 0) {
      size_t last = pos + static_cast<size_t>(count) - 1;
      if (last >= sentence.size() || !constraint.Matches(sentence[last])) {
        break;
      }
    }
    if (count < constraint.min_count) continue;
    if (auto result = MatchElements(sentence, pattern, element + 1,
                                    pos + static_cast<size_t>(count), bound,
                                    policy)) {
      return result;
    }
  }
  return std::nullopt;
}

struct BuiltinRule {
  std::string_view id;
  Polarity polarity;
  std::string_view pattern;
  bool enabled = true;
};

constexpr Polarity kPos = Polarity::kPositive;
constexpr Polarity kNeg = Polarity::kNegative;

// Spanish. Cues 4-8 split the occurrence/celebration verbs into presentative
// se-constructions, postverbal and preverbal arguments, celebrar, and
// participial absolutes.
const BuiltinRule kSpanishRules[] = {
    {"ES-1", kPos, "durante tag=DET? tag=ADJ* TARGET"},
    {"ES-2", kPos, "hasta el final de tag=DET? TARGET"},
    {"ES-3", kPos, "desde el principio de tag=DET? TARGET"},
    {"ES-4", kPos, "se producir tag=DET? tag=ADJ* TARGET"},
    {"ES-5", kPos, "lemma=ocurrir|suceder tag=DET? tag=ADJ* TARGET"},
    {"ES-6", kPos, "TARGET lemma=ocurrir|suceder"},
    {"ES-7", kPos, "se? celebrar tag=DET? tag=ADJ* TARGET"},
    {"ES-8", kPos, "TARGET lemma=celebrar|ocurrir|producir&tag=VERB:PART"},
    {"ES-9", kPos,
     "tag=NUM lemma=año|día|hora|mes|minuto|semana de tag=DET? TARGET"},
    {"ES-10", kNeg, "lemma=cerca|debajo|dentro|encima de tag=DET? TARGET"},
    {"ES-11", kPos, "TARGET tag=ADJ"},
};

// English. EN-9 and EN-16 are not described in the cue inventory and are
// reconstructed: aspectual subjects (last, continue) and complex locative
// prepositions.
const BuiltinRule kEnglishRules[] = {
    {"EN-1", kPos, "during tag=DET? tag=ADJ* TARGET"},
    {"EN-2", kPos, "lemma=after|before&tag=ADP tag=DET? tag=ADJ* TARGET"},
    {"EN-3", kPos, "at the lemma=beginning|end of tag=DET? TARGET"},
    {"EN-4", kPos,
     "TARGET lemma=begin|happen|occur|start || TARGET take place"},
    {"EN-5", kPos,
     "TARGET lemma=be&tag=AUX lemma=begin|initiate|start&tag=VERB:PART"},
    {"EN-6", kPos, "lemma=frequency|occurrence|period of tag=DET? TARGET"},
    {"EN-7", kPos,
     "lemma=begin|initiate|start&tag=VERB tag=DET? tag=ADJ* TARGET"},
    {"EN-8", kPos, "carry out tag=DET? tag=ADJ* TARGET"},
    {"EN-9", kPos, "TARGET lemma=continue|last"},
    {"EN-10", kPos, "tag=NOUN|PROPN tag=PART:POSS tag=ADJ* TARGET"},
    {"EN-11", kPos, "tag=ADJ TARGET", false},
    {"EN-12", kNeg, "lemma=a|an tag=ADJ* TARGET"},
    {"EN-13", kNeg,
     "lemma=above|behind|below|inside|near|on|under&tag=ADP tag=DET? TARGET"},
    {"EN-14", kNeg, "TARGET lemma=by&tag=ADP"},
    {"EN-15", kNeg, "TARGET lemma=of&tag=ADP"},
    {"EN-16", kNeg, "on top of tag=DET? TARGET || in front of tag=DET? TARGET"},
};

template <size_t N>
CueSet MakeCueSet(Language language, const BuiltinRule (&table)[N]) {
  std::vector<CueRule> rules;
  rules.reserve(N);
  for (const BuiltinRule& entry : table) {
    rules.push_back(CueRule{std::string(entry.id), language, entry.polarity,
                            ParsePattern(entry.pattern), entry.enabled});
  }
  return CueSet(language, std::move(rules));
}

}  // namespace

std::string_view LanguageCode(Language language) {
  return language == Language::kSpanish ? "ES" : "EN";
}

Language ParseLanguage(std::string_view code) {
  std::string upper(code);
  for (char& c : upper) c = static_cast<char>(std::toupper(c));
  if (upper == "ES") return Language::kSpanish;
  if (upper == "EN") return Language::kEnglish;
  throw std::invalid_argument("unknown language '" + std::string(code) +
                              "' (expected ES or EN)");
}

std::string_view PolarityName(Polarity polarity) {
  return polarity == Polarity::kPositive ? "positive" : "negative";
}

TokenConstraint TokenConstraint::Target() {
  TokenConstraint target;
  target.tag_in = std::vector<PosTag>{PosTag{CoarseTag::kNoun, ""}};
  return target;
}

bool TokenConstraint::RequiresNoun() const {
  if (!tag_in || tag_in->empty()) return false;
  return std::all_of(tag_in->begin(), tag_in->end(), [](const PosTag& tag) {
    return tag.coarse == CoarseTag::kNoun;
  });
}

bool TokenConstraint::Matches(const TaggedToken& token) const {
  if (lemma_in && !lemma_in->contains(token.lemma)) return false;
  if (surface_in && !surface_in->contains(token.surface)) return false;
  if (tag_in) {
    bool any = std::any_of(tag_in->begin(), tag_in->end(),
                           [&](const PosTag& tag) {
                             return tag.coarse == token.tag.coarse &&
                                    (tag.fine.empty() ||
                                     tag.fine == token.tag.fine);
                           });
    if (!any) return false;
  }
  return true;
}

void CueRule::Validate() const {
  if (id.empty()) throw std::invalid_argument("cue rule without id");
  if (alternatives.empty()) {
    throw std::invalid_argument(id + ": rule has no pattern");
  }
  for (const CuePattern& pattern : alternatives) {
    if (pattern.target_index >= pattern.elements.size()) {
      throw std::invalid_argument(id + ": target index out of range");
    }
    const TokenConstraint& target = pattern.elements[pattern.target_index];
    if (!target.RequiresNoun() || !target.IsExactlyOne()) {
      throw std::invalid_argument(
          id + ": target slot must be a single NOUN token");
    }
    for (const TokenConstraint& c : pattern.elements) {
      if (c.min_count < 0 || c.min_count > c.max_count ||
          c.max_count > kMaxStarRepetition || c.max_count == 0) {
        throw std::invalid_argument(id + ": bad repetition bounds");
      }
    }
  }
}

CueSet::CueSet(Language language, std::vector<CueRule> rules)
    : language_(language), rules_(std::move(rules)) {
  std::set<std::string> seen;
  for (const CueRule& rule : rules_) {
    rule.Validate();
    if (!seen.insert(rule.id).second) {
      throw std::invalid_argument("duplicate cue id " + rule.id);
    }
  }
}

std::optional<size_t> CueSet::IndexOf(std::string_view id) const {
  for (size_t i = 0; i < rules_.size(); ++i) {
    if (rules_[i].id == id) return i;
  }
  return std::nullopt;
}

std::vector<std::string> CueSet::Ids() const {
  std::vector<std::string> ids;
  ids.reserve(rules_.size());
  for (const CueRule& rule : rules_) ids.push_back(rule.id);
  return ids;
}

size_t CueSet::CountPolarity(Polarity polarity) const {
  return static_cast<size_t>(
      std::count_if(rules_.begin(), rules_.end(), [&](const CueRule& rule) {
        return rule.polarity == polarity;
      }));
}

CueSet CueSet::WithEnabled(std::string_view id, bool enabled) const {
  auto index = IndexOf(id);
  if (!index) {
    throw std::invalid_argument("unknown cue id " + std::string(id));
  }
  CueSet copy = *this;
  copy.rules_[*index].enabled = enabled;
  return copy;
}

CueSet CueSet::WithAllEnabled() const {
  CueSet copy = *this;
  for (CueRule& rule : copy.rules_) rule.enabled = true;
  return copy;
}

CueSet BuiltinCueSet(Language language) {
  switch (language) {
    case Language::kSpanish:
      return MakeCueSet(language, kSpanishRules);
    case Language::kEnglish:
      return MakeCueSet(language, kEnglishRules);
  }
  throw std::invalid_argument("unknown language");
}

std::optional<size_t> MatchRuleAt(const Sentence& sentence,
                                  const CueRule& rule, size_t start,
                                  const MatchOptions& options) {
  for (const CuePattern& pattern : rule.alternatives) {
    if (auto bound = MatchElements(sentence, pattern, 0, start, std::nullopt,
                                   options.policy)) {
      return bound;
    }
  }
  return std::nullopt;
}

std::vector<CueHit> MatchSentence(const Sentence& sentence,
                                  const CueSet& cue_set,
                                  size_t sentence_index,
                                  const MatchOptions& options) {
  std::vector<CueHit> hits;
  for (size_t r = 0; r < cue_set.size(); ++r) {
    const CueRule& rule = cue_set[r];
    if (!rule.enabled) continue;
    for (size_t start = 0; start < sentence.size(); ++start) {
      if (auto target = MatchRuleAt(sentence, rule, start, options)) {
        hits.push_back(CueHit{rule.id, r, sentence[*target].lemma,
                              sentence_index, *target});
      }
    }
  }
  return hits;
}

std::vector<CuePattern> ParsePattern(std::string_view text) {
  std::vector<CuePattern> alternatives(1);
  std::vector<int> targets(1, 0);
  for (std::string_view word : SplitWords(text)) {
    if (word == "||") {
      alternatives.emplace_back();
      targets.push_back(0);
      continue;
    }
    CuePattern& current = alternatives.back();
    if (word == "TARGET") {
      current.target_index = current.elements.size();
      ++targets.back();
    }
    current.elements.push_back(ParseAtom(word));
  }
  for (size_t i = 0; i < alternatives.size(); ++i) {
    if (alternatives[i].elements.empty()) {
      throw std::invalid_argument("empty pattern in '" + std::string(text) +
                                  "'");
    }
    if (targets[i] != 1) {
      throw std::invalid_argument("pattern needs exactly one TARGET: '" +
                                  std::string(text) + "'");
    }
  }
  return alternatives;
}

std::string FormatPattern(const std::vector<CuePattern>& alternatives) {
  std::string out;
  for (size_t a = 0; a < alternatives.size(); ++a) {
    if (a > 0) out += " || ";
    const CuePattern& pattern = alternatives[a];
    for (size_t i = 0; i < pattern.elements.size(); ++i) {
      if (i > 0) out += ' ';
      out += FormatAtom(pattern.elements[i], i == pattern.target_index);
    }
  }
  return out;
}

CueSet LoadCueSet(std::istream& in, Language language) {
  std::vector<CueRule> rules;
  std::set<std::string> ids;
  std::string line;
  int64_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    if (line.front() == '#') continue;

    std::vector<std::string_view> fields = Split(line, '\t');
    if (fields.size() != 3 && fields.size() != 4) {
      throw ParseError(line_number,
                       "expected id<TAB>polarity<TAB>pattern[<TAB>disabled]");
    }
    CueRule rule;
    rule.id = std::string(fields[0]);
    rule.language = language;
    if (fields[1] == "positive") {
      rule.polarity = Polarity::kPositive;
    } else if (fields[1] == "negative") {
      rule.polarity = Polarity::kNegative;
    } else {
      throw ParseError(line_number,
                       "unknown polarity '" + std::string(fields[1]) + "'");
    }
    if (fields.size() == 4) {
      if (fields[3] == "disabled") {
        rule.enabled = false;
      } else if (fields[3] != "enabled") {
        throw ParseError(line_number,
                         "unknown flag '" + std::string(fields[3]) + "'");
      }
    }
    try {
      rule.alternatives = ParsePattern(fields[2]);
      rule.Validate();
    } catch (const std::invalid_argument& e) {
      throw ParseError(line_number, e.what());
    }
    if (!ids.insert(rule.id).second) {
      throw ParseError(line_number, "duplicate cue id " + rule.id);
    }
    rules.push_back(std::move(rule));
  }
  return CueSet(language, std::move(rules));
}

CueSet LoadCueSetFile(const std::string& path, Language language) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open cue file: " + path);
  return LoadCueSet(in, language);
}

void WriteCueSet(std::ostream& out, const CueSet& cue_set) {
  out << "# cues for " << LanguageCode(cue_set.language()) << '\n';
  for (const CueRule& rule : cue_set.rules()) {
    out << rule.id << '\t' << PolarityName(rule.polarity) << '\t'
        << FormatPattern(rule.alternatives);
    if (!rule.enabled) out << "\tdisabled";
    out << '\n';
  }
}

}  // namespace evnoun
