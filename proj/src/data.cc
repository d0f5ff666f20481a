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
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "evnoun/csv.h"
#include "evnoun/random.h"

namespace evnoun {
namespace {

constexpr const char* kEnglishPositive[] = {
    "accident",   "assembly",    "audience",   "battle",     "boycott",
    "campaign",   "catastrophe", "ceremony",   "cold",       "collapse",
    "conference", "conflict",    "course",     "crime",      "crisis",
    "cycle",      "cyclone",     "change",     "choice",     "decline",
    "disease",    "disaster",    "drought",    "earthquake", "epidemic",
    "event",      "excursion",   "fair",       "famine",     "feast",
    "festival",   "fever",       "fight",      "fire",       "flight",
    "flood",      "growth",      "holiday",    "hurricane",  "impact",
    "incident",   "increase",    "injury",     "interview",  "journey",
    "lecture",    "loss",        "meal",       "measurement", "meiosis",
    "marriage",   "mitosis",     "monsoon",    "period",     "process",
    "program",    "quake",       "response",   "seminar",    "snowstorm",
    "speech",     "storm",       "strike",     "struggle",   "summit",
    "symposium",  "therapy",     "tour",       "treaty",     "trial",
    "trip",       "vacation",    "war",
};

constexpr const char* kEnglishNegative[] = {
    "agency",      "airport",      "animal",    "architecture", "bag",
    "battery",     "bird",         "bridge",    "bus",          "canal",
    "circle",      "city",         "climate",   "community",    "company",
    "computer",    "constitution", "country",   "creature",     "customer",
    "chain",       "chair",        "channel",   "characteristic", "child",
    "defence",     "director",     "drug",      "economy",      "ecosystem",
    "energy",      "face",         "family",    "firm",         "folder",
    "food",        "grade",        "grant",     "group",        "health",
    "hope",        "hospital",     "house",     "illusion",     "information",
    "intelligence", "internet",    "island",    "malaria",      "mammal",
    "map",         "market",       "mountain",  "nation",       "nature",
    "ocean",       "office",       "organism",  "pencil",       "people",
    "perspective", "phone",        "pipe",      "plan",         "plant",
    "profile",     "profit",       "reserve",   "river",        "role",
    "satellite",   "school",       "sea",       "shape",        "source",
    "space",       "star",         "statistics", "store",       "technology",
    "television",  "temperature",  "theme",     "theory",       "tree",
    "medicine",    "tube",         "university", "visa",        "visitor",
    "water",       "weather",      "window",    "world",
};

// Templates are space-separated surface|lemma|TAG tokens; '@' is the slot.
struct TemplateSpec {
  std::string_view cue_id;
  std::string_view text;
};

constexpr TemplateSpec kEnglishTemplates[] = {
    {"EN-1", "It|it|PRON rained|rain|VERB during|during|ADP the|the|DET @ .|.|PUNCT"},
    {"EN-2", "We|we|PRON left|leave|VERB after|after|ADP the|the|DET @ .|.|PUNCT"},
    {"EN-3",
     "She|she|PRON spoke|speak|VERB at|at|ADP the|the|DET end|end|NOUN "
     "of|of|ADP the|the|DET @ .|.|PUNCT"},
    {"EN-4", "The|the|DET @ happened|happen|VERB .|.|PUNCT"},
    {"EN-5", "The|the|DET @ was|be|AUX initiated|initiate|VERB:PART .|.|PUNCT"},
    {"EN-6",
     "The|the|DET frequency|frequency|NOUN of|of|ADP @ rose|rise|VERB "
     ".|.|PUNCT"},
    {"EN-7", "They|they|PRON began|begin|VERB the|the|DET @ .|.|PUNCT"},
    {"EN-8",
     "They|they|PRON carried|carry|VERB out|out|ADP the|the|DET @ .|.|PUNCT"},
    {"EN-9",
     "The|the|DET @ lasted|last|VERB two|two|NUM hours|hour|NOUN .|.|PUNCT"},
    {"EN-10", "John|john|PROPN 's|'s|PART:POSS @ ended|end|VERB .|.|PUNCT"},
    {"EN-11",
     "They|they|PRON recalled|recall|VERB the|the|DET "
     "Napoleonic|napoleonic|ADJ @ .|.|PUNCT"},
    {"EN-12", "There|there|PRON was|be|VERB a|a|DET @ .|.|PUNCT"},
    {"EN-13", "It|it|PRON stood|stand|VERB near|near|ADP the|the|DET @ .|.|PUNCT"},
    {"EN-14",
     "The|the|DET @ by|by|ADP the|the|DET lake|lake|NOUN is|be|AUX "
     "old|old|ADJ .|.|PUNCT"},
    {"EN-15", "The|the|DET @ of|of|ADP John|john|PROPN ended|end|VERB .|.|PUNCT"},
    {"EN-16",
     "It|it|PRON fell|fall|VERB in|in|ADP front|front|NOUN of|of|ADP "
     "the|the|DET @ .|.|PUNCT"},
};

constexpr TemplateSpec kSpanishTemplates[] = {
    {"ES-1", "Llovió|llover|VERB durante|durante|ADP la|el|DET @ .|.|PUNCT"},
    {"ES-2",
     "Se|se|PRON quedó|quedar|VERB hasta|hasta|ADP el|el|DET final|final|NOUN "
     "de|de|ADP la|el|DET @ .|.|PUNCT"},
    {"ES-3",
     "Lo|lo|PRON supo|saber|VERB desde|desde|ADP el|el|DET "
     "principio|principio|NOUN de|de|ADP la|el|DET @ .|.|PUNCT"},
    {"ES-4", "Se|se|PRON produjo|producir|VERB un|uno|DET @ .|.|PUNCT"},
    {"ES-5", "Ocurrió|ocurrir|VERB un|uno|DET @ .|.|PUNCT"},
    {"ES-6", "El|el|DET @ ocurrió|ocurrir|VERB ayer|ayer|ADV .|.|PUNCT"},
    {"ES-7", "Celebraron|celebrar|VERB la|el|DET @ .|.|PUNCT"},
    {"ES-8",
     "Con|con|ADP la|el|DET @ celebrada|celebrar|VERB:PART ,|,|PUNCT "
     "volvimos|volver|VERB .|.|PUNCT"},
    {"ES-9",
     "Tras|tras|ADP dos|dos|NUM semanas|semana|NOUN de|de|ADP @ .|.|PUNCT"},
    {"ES-10",
     "Estaba|estar|VERB encima|encima|ADV de|de|ADP la|el|DET @ .|.|PUNCT"},
    {"ES-11", "Vimos|ver|VERB la|el|DET @ nacional|nacional|ADJ .|.|PUNCT"},
};

constexpr std::string_view kEnglishDistractors[] = {
    "We|we|PRON saw|see|VERB the|the|DET @ .|.|PUNCT",
    "The|the|DET @ is|be|AUX here|here|ADV .|.|PUNCT",
    "This|this|DET @ seems|seem|VERB new|new|ADJ .|.|PUNCT",
};

constexpr std::string_view kSpanishDistractors[] = {
    "Vimos|ver|VERB la|el|DET @ .|.|PUNCT",
    "La|el|DET @ es|ser|AUX grande|grande|ADJ .|.|PUNCT",
};

SentenceTemplate ParseTemplate(std::string_view text) {
  SentenceTemplate tpl;
  bool has_slot = false;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t end = text.find(' ', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view word = text.substr(pos, end - pos);
    pos = end + 1;
    if (word.empty()) continue;
    if (word == "@") {
      tpl.target_slot = tpl.tokens.size();
      tpl.tokens.push_back(TaggedToken{"", "", PosTag{CoarseTag::kNoun, ""}});
      has_slot = true;
      continue;
    }
    size_t a = word.find('|');
    size_t b = word.find('|', a + 1);
    auto tag = PosTag::Parse(word.substr(b + 1));
    if (a == std::string_view::npos || b == std::string_view::npos || !tag) {
      throw std::logic_error("bad template token " + std::string(word));
    }
    tpl.tokens.push_back(TaggedToken{std::string(word.substr(0, a)),
                                     std::string(word.substr(a + 1, b - a - 1)),
                                     *tag});
  }
  if (!has_slot) throw std::logic_error("template without slot");
  return tpl;
}

std::string LemmaName(std::string_view prefix, int index) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.*s%04d",
                static_cast<int>(prefix.size()), prefix.data(), index);
  return buffer;
}

}  // namespace

size_t GoldStandard::Count(Label label) const {
  return static_cast<size_t>(
      std::count_if(entries.begin(), entries.end(),
                    [&](const auto& entry) { return entry.second == label; }));
}

std::set<std::string> GoldStandard::Lemmas() const {
  std::set<std::string> lemmas;
  for (const auto& [lemma, label] : entries) lemmas.insert(lemma);
  return lemmas;
}

GoldStandard EnglishGold() {
  GoldStandard gold;
  gold.language = Language::kEnglish;
  for (const char* lemma : kEnglishPositive) gold.entries[lemma] = Label::kEvent;
  for (const char* lemma : kEnglishNegative) {
    gold.entries[lemma] = Label::kNonEvent;
  }
  return gold;
}

GoldStandard SpanishSampleGold() {
  GoldStandard gold;
  gold.language = Language::kSpanish;
  for (const char* lemma : {"guerra", "accidente", "fiesta", "terremoto"}) {
    gold.entries[lemma] = Label::kEvent;
  }
  for (const char* lemma : {"tren", "mapa"}) {
    gold.entries[lemma] = Label::kNonEvent;
  }
  return gold;
}

GoldStandard BuiltinGold(Language language) {
  return language == Language::kEnglish ? EnglishGold() : SpanishSampleGold();
}

GoldStandard LoadGold(std::istream& in, Language language) {
  GoldStandard gold;
  gold.language = language;
  long line = 0;
  std::vector<std::string> fields;
  bool first = true;
  while (csv::ReadRow(in, &fields, &line)) {
    if (first && fields.size() == 2 && fields[0] == "lemma" &&
        fields[1] == "label") {
      first = false;
      continue;
    }
    first = false;
    if (fields.size() != 2 || fields[0].empty()) {
      throw ParseError(line, "expected lemma,label");
    }
    auto label = ParseLabel(fields[1]);
    if (!label) throw ParseError(line, "unknown label '" + fields[1] + "'");
    std::string lemma = LowercaseUtf8(fields[0]);
    if (!gold.entries.emplace(lemma, *label).second) {
      throw ParseError(line, "duplicate lemma '" + lemma + "'");
    }
  }
  return gold;
}

GoldStandard LoadGoldFile(const std::string& path, Language language) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open gold file: " + path);
  return LoadGold(in, language);
}

void WriteGold(std::ostream& out, const GoldStandard& gold) {
  csv::WriteRow(out, {"lemma", "label"});
  for (const auto& [lemma, label] : gold.entries) {
    csv::WriteRow(out, {lemma, std::string(LabelName(label))});
  }
}

Sentence SentenceTemplate::Instantiate(std::string_view lemma) const {
  Sentence sentence{tokens};
  sentence.tokens[target_slot].surface = std::string(lemma);
  sentence.tokens[target_slot].lemma = std::string(lemma);
  return sentence;
}

Sentence SentenceTemplate::InstantiateCompound(std::string_view lemma,
                                               std::string_view head) const {
  Sentence sentence = Instantiate(lemma);
  TaggedToken head_token{std::string(head), std::string(head),
                         PosTag{CoarseTag::kNoun, ""}};
  sentence.tokens.insert(
      sentence.tokens.begin() + static_cast<long>(target_slot) + 1,
      std::move(head_token));
  return sentence;
}

bool SentenceTemplate::TargetIsFinal() const {
  for (size_t i = target_slot + 1; i < tokens.size(); ++i) {
    if (tokens[i].tag.coarse != CoarseTag::kPunct) return false;
  }
  return true;
}

std::optional<SentenceTemplate> CueTemplate(Language language,
                                            std::string_view cue_id) {
  auto find = [&](const auto& table) -> std::optional<SentenceTemplate> {
    for (const TemplateSpec& spec : table) {
      if (spec.cue_id == cue_id) return ParseTemplate(spec.text);
    }
    return std::nullopt;
  };
  return language == Language::kEnglish ? find(kEnglishTemplates)
                                        : find(kSpanishTemplates);
}

std::vector<SentenceTemplate> DistractorTemplates(Language language) {
  std::vector<SentenceTemplate> out;
  if (language == Language::kEnglish) {
    for (std::string_view text : kEnglishDistractors) {
      out.push_back(ParseTemplate(text));
    }
  } else {
    for (std::string_view text : kSpanishDistractors) {
      out.push_back(ParseTemplate(text));
    }
  }
  return out;
}

std::string_view CompoundHead(Language language) {
  return language == Language::kEnglish ? "thing" : "cosa";
}

void SynthParams::Validate() const {
  auto check_probability = [](double p, const char* name) {
    if (!(p >= 0 && p <= 1)) {
      throw std::invalid_argument(std::string(name) + " must lie in [0, 1]");
    }
  };
  check_probability(p_event, "p_event");
  check_probability(p_non_event, "p_non_event");
  check_probability(silence_fraction, "silence_fraction");
  check_probability(event_silence_fraction, "event_silence_fraction");
  check_probability(noise_fraction, "noise_fraction");
  if (event_lemmas < 0 || non_event_lemmas < 0 ||
      event_lemmas + non_event_lemmas == 0) {
    throw std::invalid_argument("need at least one lemma");
  }
  if (min_occurrences < 1 || max_occurrences < min_occurrences) {
    throw std::invalid_argument("need 1 <= min_occurrences <= max_occurrences");
  }
}

SyntheticCorpus GenerateSyntheticCorpus(const SynthParams& params,
                                        const CueSet& cue_set) {
  params.Validate();
  const Language language = cue_set.language();

  struct CueSource {
    size_t index;
    Polarity polarity;
    SentenceTemplate tpl;
  };
  std::vector<CueSource> cues;
  for (size_t i = 0; i < cue_set.size(); ++i) {
    const CueRule& rule = cue_set[i];
    if (!rule.enabled) continue;
    auto tpl = CueTemplate(language, rule.id);
    if (!tpl) {
      throw std::invalid_argument("no sentence template for cue " + rule.id);
    }
    cues.push_back({i, rule.polarity, std::move(*tpl)});
  }
  const std::vector<SentenceTemplate> distractors =
      DistractorTemplates(language);
  const std::string_view head = CompoundHead(language);

  Rng rng(params.seed);

  struct LemmaPlan {
    std::string lemma;
    Label label;
    bool silent = false;
  };
  std::vector<LemmaPlan> plans;
  auto add_class = [&](Label label, int count, std::string_view prefix,
                       double silence) {
    std::vector<size_t> order(static_cast<size_t>(count));
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    rng.Shuffle(order);
    const auto silent_count = static_cast<size_t>(
        std::llround(std::min(1.0, silence) * static_cast<double>(count)));
    const size_t first = plans.size();
    for (int i = 0; i < count; ++i) {
      plans.push_back({LemmaName(prefix, i + 1), label, false});
    }
    for (size_t k = 0; k < silent_count; ++k) plans[first + order[k]].silent = true;
  };
  add_class(Label::kEvent, params.event_lemmas, "ev",
            params.silence_fraction + params.event_silence_fraction);
  add_class(Label::kNonEvent, params.non_event_lemmas, "ne",
            params.silence_fraction);

  std::vector<Sentence> sentences;
  SyntheticCorpus out;
  out.gold.language = language;
  std::map<std::string, std::pair<FeatureVector, Label>> log;

  for (const LemmaPlan& plan : plans) {
    out.gold.entries[plan.lemma] = plan.label;
    FeatureVector expected{plan.lemma,
                           std::vector<double>(cue_set.size(), 0.0), 0};
    const bool is_event = plan.label == Label::kEvent;

    std::vector<size_t> noise_sources;
    for (size_t c = 0; c < cues.size(); ++c) {
      const bool wrong_class = is_event
                                   ? cues[c].polarity == Polarity::kNegative
                                   : cues[c].polarity == Polarity::kPositive;
      if (wrong_class && cues[c].tpl.TargetIsFinal()) noise_sources.push_back(c);
    }

    const int64_t trials =
        rng.Between(params.min_occurrences, params.max_occurrences);
    for (int64_t t = 0; t < trials; ++t) {
      bool fired = false;
      for (const CueSource& cue : cues) {
        const bool matches_class =
            (cue.polarity == Polarity::kPositive) == is_event;
        const double p = matches_class ? params.p_event : params.p_non_event;
        if (!rng.Bernoulli(p)) continue;
        fired = true;
        if (plan.silent) continue;
        sentences.push_back(cue.tpl.Instantiate(plan.lemma));
        expected.counts[cue.index] += 1;
        ++expected.total_occurrences;
      }
      const size_t distractor = static_cast<size_t>(rng.Below(distractors.size()));
      if (!fired && !plan.silent) {
        sentences.push_back(distractors[distractor].Instantiate(plan.lemma));
        ++expected.total_occurrences;
      }
      const bool noisy = rng.Bernoulli(params.noise_fraction);
      if (noise_sources.empty()) continue;
      const size_t pick =
          noise_sources[static_cast<size_t>(rng.Below(noise_sources.size()))];
      if (noisy && !plan.silent) {
        sentences.push_back(
            cues[pick].tpl.InstantiateCompound(plan.lemma, head));
        expected.counts[cues[pick].index] += 1;
        ++expected.total_occurrences;
      }
    }
    log.emplace(plan.lemma, std::make_pair(std::move(expected), plan.label));
  }

  rng.Shuffle(sentences);
  out.corpus_text = SerializeCorpus(sentences);

  out.draw_log.cue_ids = cue_set.Ids();
  out.draw_log.labels.emplace();
  for (auto& [lemma, entry] : log) {
    out.draw_log.vectors.push_back(std::move(entry.first));
    out.draw_log.labels->push_back(entry.second);
  }
  return out;
}

}  // namespace evnoun
