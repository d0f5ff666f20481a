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

// C4.5-style decision tree over numeric cue counts.
//
// Growth is greedy on gain ratio with binary threshold splits (value <=
// threshold goes left). Candidate thresholds are midpoints between
// consecutive distinct values. Ties go to the lowest attribute index, then the
// lowest threshold. Pruning is bottom-up subtree replacement driven by C4.5's
// pessimistic error bound U_CF(e, n).
//
// A trained tree serializes to JSON (round-trippable) and to an indented text
// listing for humans:
//
//   EN-1 <= 0.5
//   |   EN-12 <= 1.5: NON_EVENT (EVENT=3, NON_EVENT=40)
//   |   EN-12 > 1.5: ...
//   EN-1 > 0.5: EVENT (EVENT=51, NON_EVENT=2)

#ifndef EVNOUN_DTREE_H_
#define EVNOUN_DTREE_H_

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "evnoun/features.h"
#include "json.hpp"

namespace evnoun {

struct TreeParams {
  int min_leaf = 2;
  double confidence_factor = 0.25;
  bool pruning = true;
  bool laplace_confidence = false;

  // Throws std::invalid_argument.
  void Validate() const;
};

struct LabeledExample {
  FeatureVector vector;
  Label label = Label::kNonEvent;
};

// Indexed by static_cast<size_t>(Label).
using ClassCounts = std::array<int64_t, kNumLabels>;

struct Prediction {
  std::string lemma;
  Label predicted = Label::kNonEvent;
  double confidence = 0;
  std::optional<Label> gold;

  bool correct() const { return gold && *gold == predicted; }
};

struct SplitCandidate {
  double threshold = 0;
  double gain = 0;
  double gain_ratio = 0;
};

// Entropy in bits. Throws std::invalid_argument when all counts are zero.
double Entropy(std::span<const int64_t> class_counts);

// Best threshold on one attribute. Candidates need positive information gain
// and at least `min_leaf` examples on each side.
std::optional<SplitCandidate> BestSplit(std::span<const LabeledExample> examples,
                                        size_t attribute, int min_leaf = 1);

// Upper confidence limit on the error rate of a leaf with `errors`
// misclassified out of `n`, at confidence factor `cf` (C4.5's U_CF).
double PessimisticUpperBound(int64_t errors, int64_t n, double cf);

// Majority label of a distribution; ties go to NON_EVENT.
Label MajorityLabel(const ClassCounts& counts);

class DecisionTree {
 public:
  struct Node {
    int attribute = -1;  // -1 marks a leaf
    double threshold = 0;
    int left = -1;
    int right = -1;
    ClassCounts counts{};  // training distribution reaching this node

    bool is_leaf() const { return attribute < 0; }
  };

  // Throws std::invalid_argument on an empty set or ragged vectors.
  static DecisionTree Train(std::span<const LabeledExample> examples,
                            const TreeParams& params,
                            std::vector<std::string> attribute_names = {});

  // Throws std::invalid_argument on a dimensionality mismatch.
  Prediction Classify(const FeatureVector& vector) const;

  size_t dimension() const { return dimension_; }
  size_t node_count() const { return nodes_.size(); }
  size_t leaf_count() const;
  int depth() const;
  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<std::string>& attribute_names() const {
    return attribute_names_;
  }
  bool laplace_confidence() const { return laplace_; }

  std::string ToText() const;
  nlohmann::json ToJson() const;
  // Throws std::invalid_argument on a structurally invalid document.
  static DecisionTree FromJson(const nlohmann::json& doc);

  void Save(const std::string& path) const;
  static DecisionTree Load(const std::string& path);

 private:
  int Grow(std::vector<size_t> indices,
           std::span<const LabeledExample> examples, const TreeParams& params);
  double Prune(int node, double cf);
  void Compact();
  void AppendText(int node, int indent, std::string* out) const;

  std::vector<Node> nodes_;
  size_t dimension_ = 0;
  std::vector<std::string> attribute_names_;
  bool laplace_ = false;
};

}  // namespace evnoun

#endif  // EVNOUN_DTREE_H_
