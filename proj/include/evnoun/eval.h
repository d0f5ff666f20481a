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

// Stratified k-fold cross-validation, precision-vs-confidence curves and
// confidence-threshold lexicon filtering.

#ifndef EVNOUN_EVAL_H_
#define EVNOUN_EVAL_H_

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "evnoun/dtree.h"
#include "evnoun/features.h"
#include "evnoun/random.h"

namespace evnoun {

// Fold assignment: members of each class are shuffled with the seed, the
// class lists are concatenated (EVENT first) and dealt round-robin over the
// folds. Classes smaller than k thus spread one item per fold until they run
// out. Throws std::invalid_argument when k < 2, k > dataset size or the
// dataset is unlabeled.
std::vector<std::vector<size_t>> StratifiedFolds(const Dataset& dataset, int k,
                                                 uint64_t seed);

// confusion[gold][predicted], indexed by Label.
using ConfusionMatrix = std::array<std::array<int64_t, kNumLabels>, kNumLabels>;

ConfusionMatrix BuildConfusion(std::span<const Prediction> predictions);

struct EvalReport {
  std::vector<double> fold_accuracies;
  // Correct pooled predictions over dataset size.
  double mean_accuracy = 0;
  // One prediction per dataset item, in dataset order, each made by the model
  // that did not see it.
  std::vector<Prediction> predictions;
  ConfusionMatrix confusion{};
};

EvalReport CrossValidate(const Dataset& dataset, const TreeParams& params,
                         int k, uint64_t seed);

struct CurvePoint {
  double threshold = 0;
  std::optional<double> precision;  // nullopt when nothing is retained
  int64_t retained = 0;
};

// 0.00, 0.05, ..., 1.00.
std::vector<double> DefaultThresholds();

// At each threshold, keeps predictions of `positive` with confidence >=
// threshold and reports the fraction whose gold label agrees.
std::vector<CurvePoint> PrecisionCurve(std::span<const Prediction> predictions,
                                       Label positive,
                                       std::span<const double> thresholds);

struct FilterResult {
  std::vector<Prediction> accepted;   // confidence >= threshold
  std::vector<Prediction> to_review;  // the rest
};

FilterResult FilterByConfidence(std::span<const Prediction> predictions,
                                double threshold);

// threshold,precision,retained with NA for undefined precision.
void WriteCurveCsv(std::ostream& out, std::span<const CurvePoint> curve);
// lemma,gold,predicted,confidence
void WritePredictionsCsv(std::ostream& out,
                         std::span<const Prediction> predictions);
// Throws ParseError.
std::vector<Prediction> ReadPredictionsCsv(std::istream& in);
// gold\predicted matrix with EVENT/NON_EVENT headers.
void WriteConfusionCsv(std::ostream& out, const ConfusionMatrix& confusion);
void WriteReportText(std::ostream& out, const EvalReport& report,
                     std::span<const CurvePoint> curve, double threshold,
                     const FilterResult& filtered);

}  // namespace evnoun

#endif  // EVNOUN_EVAL_H_
