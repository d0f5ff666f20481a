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

#include "evnoun/features.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <utility>

#include "evnoun/csv.h"

namespace evnoun {
namespace {

constexpr int kRelativeDigits = 6;

double ParseNumber(const std::string& text, long line) {
  double value = 0;
  auto [end, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size() || value < 0) {
    throw ParseError(line, "bad numeric field '" + text + "'");
  }
  return value;
}

}  // namespace

std::string_view LabelName(Label label) {
  return label == Label::kEvent ? "EVENT" : "NON_EVENT";
}

std::optional<Label> ParseLabel(std::string_view text) {
  std::string upper(text);
  for (char& c : upper) {
    if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
  }
  if (upper == "EVENT") return Label::kEvent;
  if (upper == "NON_EVENT") return Label::kNonEvent;
  return std::nullopt;
}

bool FeatureVector::IsZero() const {
  return std::all_of(counts.begin(), counts.end(),
                     [](double c) { return c == 0; });
}

size_t Dataset::CountNonZero() const {
  return static_cast<size_t>(std::count_if(
      vectors.begin(), vectors.end(),
      [](const FeatureVector& v) { return !v.IsZero(); }));
}

size_t Dataset::CountLabel(Label label) const {
  if (!labels) return 0;
  return static_cast<size_t>(std::count(labels->begin(), labels->end(), label));
}

void Dataset::Validate() const {
  std::set<std::string_view> seen;
  for (const FeatureVector& v : vectors) {
    if (!seen.insert(v.lemma).second) {
      throw std::invalid_argument("duplicate lemma in dataset: " + v.lemma);
    }
    if (v.counts.size() != dimension()) {
      throw std::invalid_argument("vector for '" + v.lemma + "' has " +
                                  std::to_string(v.counts.size()) +
                                  " counts, expected " +
                                  std::to_string(dimension()));
    }
  }
  if (labels && labels->size() != vectors.size()) {
    throw std::invalid_argument("label count does not match vector count");
  }
}

FeatureExtractor::FeatureExtractor(const CueSet& cue_set,
                                   std::set<std::string> targets,
                                   MatchOptions options)
    : cue_set_(&cue_set), options_(options) {
  for (const std::string& lemma : targets) {
    vectors_[lemma] =
        FeatureVector{lemma, std::vector<double>(cue_set.size(), 0.0), 0};
  }
}

void FeatureExtractor::Add(const Sentence& sentence) {
  for (const TaggedToken& token : sentence.tokens) {
    if (!token.IsNoun()) continue;
    auto it = vectors_.find(token.lemma);
    if (it != vectors_.end()) ++it->second.total_occurrences;
  }
  for (const CueHit& hit :
       MatchSentence(sentence, *cue_set_, sentences_seen_, options_)) {
    auto it = vectors_.find(hit.lemma);
    if (it != vectors_.end()) it->second.counts[hit.cue_index] += 1;
  }
  ++sentences_seen_;
}

void FeatureExtractor::Merge(const FeatureExtractor& other) {
  if (other.vectors_.size() != vectors_.size() ||
      other.cue_set_->size() != cue_set_->size()) {
    throw std::invalid_argument("cannot merge extractors with different setup");
  }
  for (auto& [lemma, vector] : vectors_) {
    auto it = other.vectors_.find(lemma);
    if (it == other.vectors_.end()) {
      throw std::invalid_argument("cannot merge: target sets differ");
    }
    vector.total_occurrences += it->second.total_occurrences;
    for (size_t i = 0; i < vector.counts.size(); ++i) {
      vector.counts[i] += it->second.counts[i];
    }
  }
  sentences_seen_ += other.sentences_seen_;
}

Dataset FeatureExtractor::Finish() const {
  Dataset dataset;
  dataset.cue_ids = cue_set_->Ids();
  dataset.vectors.reserve(vectors_.size());
  for (const auto& [lemma, vector] : vectors_) dataset.vectors.push_back(vector);
  return dataset;
}

Dataset ExtractFeatures(std::span<const Sentence> corpus, const CueSet& cue_set,
                        const std::set<std::string>& targets,
                        const MatchOptions& options) {
  FeatureExtractor extractor(cue_set, targets, options);
  for (const Sentence& sentence : corpus) extractor.Add(sentence);
  return extractor.Finish();
}

Dataset ToRelative(const Dataset& dataset) {
  Dataset out = dataset;
  if (dataset.relative) return out;
  for (FeatureVector& v : out.vectors) {
    double denominator =
        static_cast<double>(std::max<int64_t>(v.total_occurrences, 1));
    for (double& c : v.counts) c /= denominator;
  }
  out.relative = true;
  return out;
}

Dataset AttachLabels(const Dataset& dataset,
                     const std::map<std::string, Label>& gold) {
  std::vector<std::string> missing;
  std::set<std::string_view> present;
  for (const FeatureVector& v : dataset.vectors) {
    present.insert(v.lemma);
    if (!gold.contains(v.lemma)) missing.push_back(v.lemma);
  }
  if (!missing.empty()) {
    std::string names;
    for (const std::string& lemma : missing) {
      if (!names.empty()) names += ", ";
      names += lemma;
    }
    throw std::invalid_argument("lemmas without gold label: " + names);
  }

  Dataset out = dataset;
  for (const auto& [lemma, label] : gold) {
    if (!present.contains(lemma)) {
      out.vectors.push_back(FeatureVector{
          lemma, std::vector<double>(dataset.dimension(), 0.0), 0});
    }
  }
  std::vector<Label> labels;
  labels.reserve(out.vectors.size());
  for (const FeatureVector& v : out.vectors) labels.push_back(gold.at(v.lemma));
  out.labels = std::move(labels);
  return out;
}

void WriteDatasetCsv(std::ostream& out, const Dataset& dataset) {
  std::vector<std::string> row = {"lemma", "total"};
  row.insert(row.end(), dataset.cue_ids.begin(), dataset.cue_ids.end());
  if (dataset.labeled()) row.push_back("label");
  csv::WriteRow(out, row);

  for (size_t i = 0; i < dataset.size(); ++i) {
    const FeatureVector& v = dataset.vectors[i];
    row.clear();
    row.push_back(v.lemma);
    row.push_back(std::to_string(v.total_occurrences));
    for (double c : v.counts) {
      row.push_back(dataset.relative
                        ? csv::FormatDecimal(c, kRelativeDigits)
                        : std::to_string(static_cast<int64_t>(std::llround(c))));
    }
    if (dataset.labeled()) {
      row.emplace_back(LabelName((*dataset.labels)[i]));
    }
    csv::WriteRow(out, row);
  }
}

Dataset ReadDatasetCsv(std::istream& in) {
  long line = 0;
  std::vector<std::string> fields;
  if (!csv::ReadRow(in, &fields, &line)) {
    throw ParseError(1, "empty dataset file");
  }
  if (fields.size() < 2 || fields[0] != "lemma" || fields[1] != "total") {
    throw ParseError(line, "dataset header must start with lemma,total");
  }
  Dataset dataset;
  bool labeled = fields.back() == "label";
  size_t cue_end = labeled ? fields.size() - 1 : fields.size();
  dataset.cue_ids.assign(fields.begin() + 2,
                         fields.begin() + static_cast<long>(cue_end));
  if (labeled) dataset.labels.emplace();

  while (csv::ReadRow(in, &fields, &line)) {
    if (fields.size() != cue_end + (labeled ? 1 : 0)) {
      throw ParseError(line, "expected " +
                                 std::to_string(cue_end + (labeled ? 1 : 0)) +
                                 " fields, found " +
                                 std::to_string(fields.size()));
    }
    FeatureVector v;
    v.lemma = fields[0];
    if (v.lemma.empty()) throw ParseError(line, "empty lemma");
    v.total_occurrences =
        static_cast<int64_t>(std::llround(ParseNumber(fields[1], line)));
    for (size_t i = 2; i < cue_end; ++i) {
      if (fields[i].find('.') != std::string::npos) dataset.relative = true;
      v.counts.push_back(ParseNumber(fields[i], line));
    }
    if (labeled) {
      auto label = ParseLabel(fields.back());
      if (!label) throw ParseError(line, "unknown label '" + fields.back() + "'");
      dataset.labels->push_back(*label);
    }
    dataset.vectors.push_back(std::move(v));
  }
  try {
    dataset.Validate();
  } catch (const std::invalid_argument& e) {
    throw ParseError(line, e.what());
  }
  return dataset;
}

}  // namespace evnoun
