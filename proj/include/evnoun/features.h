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

// Type-level feature vectors: one vector per target lemma holding how many
// times each cue fired on that lemma across the whole corpus. Zero counts are
// kept, and lemmas never seen in the corpus get all-zero vectors.
//
// Datasets serialize as CSV:
//
//   lemma,total,<cue id>...[,label]

#ifndef EVNOUN_FEATURES_H_
#define EVNOUN_FEATURES_H_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "evnoun/corpus.h"
#include "evnoun/cues.h"

namespace evnoun {

enum class Label { kEvent = 0, kNonEvent = 1 };

inline constexpr size_t kNumLabels = 2;

std::string_view LabelName(Label label);  // "EVENT" / "NON_EVENT"
// Case-insensitive.
std::optional<Label> ParseLabel(std::string_view text);

struct FeatureVector {
  std::string lemma;
  // One entry per cue in the cue set. Integral unless converted by
  // ToRelative().
  std::vector<double> counts;
  int64_t total_occurrences = 0;

  bool IsZero() const;
  bool operator==(const FeatureVector&) const = default;
};

struct Dataset {
  std::vector<std::string> cue_ids;
  std::vector<FeatureVector> vectors;
  // Parallel to `vectors` when present.
  std::optional<std::vector<Label>> labels;
  bool relative = false;

  size_t dimension() const { return cue_ids.size(); }
  size_t size() const { return vectors.size(); }
  bool labeled() const { return labels.has_value(); }
  size_t CountNonZero() const;
  size_t CountLabel(Label label) const;

  // Throws std::invalid_argument on duplicate lemmas, ragged vectors or a
  // label list of the wrong length.
  void Validate() const;
};

// Accumulates hits sentence by sentence. Extractors built for the same cue
// set and targets can be merged, so shards may be processed independently.
class FeatureExtractor {
 public:
  FeatureExtractor(const CueSet& cue_set, std::set<std::string> targets,
                   MatchOptions options = {});

  void Add(const Sentence& sentence);
  void Merge(const FeatureExtractor& other);
  Dataset Finish() const;

 private:
  const CueSet* cue_set_;
  MatchOptions options_;
  std::map<std::string, FeatureVector> vectors_;
  size_t sentences_seen_ = 0;
};

Dataset ExtractFeatures(std::span<const Sentence> corpus, const CueSet& cue_set,
                        const std::set<std::string>& targets,
                        const MatchOptions& options = {});

// Divides every count by max(total_occurrences, 1).
Dataset ToRelative(const Dataset& dataset);

// Labels every vector from `gold`. Gold lemmas missing from the dataset are
// appended as zero vectors so they still take part in evaluation. Throws
// std::invalid_argument naming the dataset lemmas that have no gold label.
Dataset AttachLabels(const Dataset& dataset,
                     const std::map<std::string, Label>& gold);

void WriteDatasetCsv(std::ostream& out, const Dataset& dataset);
// Throws ParseError on malformed rows.
Dataset ReadDatasetCsv(std::istream& in);

}  // namespace evnoun

#endif  // EVNOUN_FEATURES_H_
