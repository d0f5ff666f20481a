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

#include "evnoun/eval.h"

#include <charconv>
#include <istream>
#include <ostream>
#include <stdexcept>

#include "evnoun/csv.h"

namespace evnoun {
namespace {

constexpr int kDigits = 4;

size_t LabelIndex(Label label) { return static_cast<size_t>(label); }

}  // namespace

std::vector<std::vector<size_t>> StratifiedFolds(const Dataset& dataset, int k,
                                                 uint64_t seed) {
  if (!dataset.labeled()) {
    throw std::invalid_argument("stratified folds need a labeled dataset");
  }
  if (k < 2) throw std::invalid_argument("k must be at least 2");
  if (static_cast<size_t>(k) > dataset.size()) {
    throw std::invalid_argument("k = " + std::to_string(k) +
                                " exceeds dataset size " +
                                std::to_string(dataset.size()));
  }

  Rng rng(seed);
  std::vector<size_t> order;
  order.reserve(dataset.size());
  for (Label label : {Label::kEvent, Label::kNonEvent}) {
    std::vector<size_t> members;
    for (size_t i = 0; i < dataset.size(); ++i) {
      if ((*dataset.labels)[i] == label) members.push_back(i);
    }
    rng.Shuffle(members);
    order.insert(order.end(), members.begin(), members.end());
  }

  std::vector<std::vector<size_t>> folds(static_cast<size_t>(k));
  for (size_t i = 0; i < order.size(); ++i) {
    folds[i % folds.size()].push_back(order[i]);
  }
  return folds;
}

ConfusionMatrix BuildConfusion(std::span<const Prediction> predictions) {
  ConfusionMatrix confusion{};
  for (const Prediction& p : predictions) {
    if (!p.gold) continue;
    ++confusion[LabelIndex(*p.gold)][LabelIndex(p.predicted)];
  }
  return confusion;
}

EvalReport CrossValidate(const Dataset& dataset, const TreeParams& params,
                         int k, uint64_t seed) {
  dataset.Validate();
  const auto folds = StratifiedFolds(dataset, k, seed);
  std::vector<int> fold_of(dataset.size(), -1);
  for (size_t f = 0; f < folds.size(); ++f) {
    for (size_t i : folds[f]) fold_of[i] = static_cast<int>(f);
  }

  EvalReport report;
  std::vector<std::optional<Prediction>> pooled(dataset.size());
  for (size_t f = 0; f < folds.size(); ++f) {
    std::vector<LabeledExample> train;
    train.reserve(dataset.size() - folds[f].size());
    for (size_t i = 0; i < dataset.size(); ++i) {
      if (fold_of[i] != static_cast<int>(f)) {
        train.push_back({dataset.vectors[i], (*dataset.labels)[i]});
      }
    }
    const DecisionTree tree =
        DecisionTree::Train(train, params, dataset.cue_ids);

    int64_t correct = 0;
    for (size_t i : folds[f]) {
      Prediction p = tree.Classify(dataset.vectors[i]);
      p.gold = (*dataset.labels)[i];
      if (p.correct()) ++correct;
      pooled[i] = std::move(p);
    }
    report.fold_accuracies.push_back(static_cast<double>(correct) /
                                     static_cast<double>(folds[f].size()));
  }

  int64_t correct = 0;
  for (auto& p : pooled) {
    if (p->correct()) ++correct;
    report.predictions.push_back(std::move(*p));
  }
  report.mean_accuracy =
      static_cast<double>(correct) / static_cast<double>(dataset.size());
  report.confusion = BuildConfusion(report.predictions);
  return report;
}

std::vector<double> DefaultThresholds() {
  std::vector<double> thresholds;
  for (int i = 0; i <= 20; ++i) thresholds.push_back(i / 20.0);
  return thresholds;
}

std::vector<CurvePoint> PrecisionCurve(std::span<const Prediction> predictions,
                                       Label positive,
                                       std::span<const double> thresholds) {
  std::vector<CurvePoint> curve;
  curve.reserve(thresholds.size());
  for (double threshold : thresholds) {
    CurvePoint point;
    point.threshold = threshold;
    int64_t correct = 0;
    for (const Prediction& p : predictions) {
      if (p.predicted != positive || p.confidence < threshold) continue;
      ++point.retained;
      if (p.gold && *p.gold == positive) ++correct;
    }
    if (point.retained > 0) {
      point.precision =
          static_cast<double>(correct) / static_cast<double>(point.retained);
    }
    curve.push_back(point);
  }
  return curve;
}

FilterResult FilterByConfidence(std::span<const Prediction> predictions,
                                double threshold) {
  FilterResult result;
  for (const Prediction& p : predictions) {
    (p.confidence >= threshold ? result.accepted : result.to_review)
        .push_back(p);
  }
  return result;
}

void WriteCurveCsv(std::ostream& out, std::span<const CurvePoint> curve) {
  csv::WriteRow(out, {"threshold", "precision", "retained"});
  for (const CurvePoint& point : curve) {
    csv::WriteRow(out, {csv::FormatDecimal(point.threshold, 2),
                        point.precision
                            ? csv::FormatDecimal(*point.precision, kDigits)
                            : "NA",
                        std::to_string(point.retained)});
  }
}

void WritePredictionsCsv(std::ostream& out,
                         std::span<const Prediction> predictions) {
  csv::WriteRow(out, {"lemma", "gold", "predicted", "confidence"});
  for (const Prediction& p : predictions) {
    csv::WriteRow(out, {p.lemma, p.gold ? std::string(LabelName(*p.gold)) : "",
                        std::string(LabelName(p.predicted)),
                        csv::FormatDecimal(p.confidence, kDigits)});
  }
}

std::vector<Prediction> ReadPredictionsCsv(std::istream& in) {
  long line = 0;
  std::vector<std::string> fields;
  if (!csv::ReadRow(in, &fields, &line) ||
      fields != std::vector<std::string>{"lemma", "gold", "predicted",
                                         "confidence"}) {
    throw ParseError(line, "expected header lemma,gold,predicted,confidence");
  }
  std::vector<Prediction> predictions;
  while (csv::ReadRow(in, &fields, &line)) {
    if (fields.size() != 4) throw ParseError(line, "expected 4 fields");
    Prediction p;
    p.lemma = fields[0];
    if (!fields[1].empty()) {
      p.gold = ParseLabel(fields[1]);
      if (!p.gold) throw ParseError(line, "unknown label '" + fields[1] + "'");
    }
    auto predicted = ParseLabel(fields[2]);
    if (!predicted) throw ParseError(line, "unknown label '" + fields[2] + "'");
    p.predicted = *predicted;
    const std::string& c = fields[3];
    auto [end, ec] = std::from_chars(c.data(), c.data() + c.size(), p.confidence);
    if (ec != std::errc() || end != c.data() + c.size() || p.confidence < 0 ||
        p.confidence > 1) {
      throw ParseError(line, "bad confidence '" + c + "'");
    }
    predictions.push_back(std::move(p));
  }
  return predictions;
}

void WriteConfusionCsv(std::ostream& out, const ConfusionMatrix& confusion) {
  csv::WriteRow(out, {"gold\\predicted", "EVENT", "NON_EVENT"});
  for (Label gold : {Label::kEvent, Label::kNonEvent}) {
    const auto& row = confusion[LabelIndex(gold)];
    csv::WriteRow(out, {std::string(LabelName(gold)), std::to_string(row[0]),
                        std::to_string(row[1])});
  }
}

void WriteReportText(std::ostream& out, const EvalReport& report,
                     std::span<const CurvePoint> curve, double threshold,
                     const FilterResult& filtered) {
  out << "items: " << report.predictions.size() << '\n';
  out << "folds: " << report.fold_accuracies.size() << '\n';
  out << "mean accuracy: " << csv::FormatDecimal(report.mean_accuracy, 3)
      << '\n';
  out << "fold accuracies:";
  for (double a : report.fold_accuracies) {
    out << ' ' << csv::FormatDecimal(a, 3);
  }
  out << '\n';
  const auto& m = report.confusion;
  out << "confusion (gold x predicted):\n"
      << "  EVENT     -> EVENT " << m[0][0] << ", NON_EVENT " << m[0][1] << '\n'
      << "  NON_EVENT -> EVENT " << m[1][0] << ", NON_EVENT " << m[1][1]
      << '\n';
  out << "EVENT precision by confidence threshold:\n";
  for (const CurvePoint& point : curve) {
    out << "  >= " << csv::FormatDecimal(point.threshold, 2) << ": "
        << (point.precision ? csv::FormatDecimal(*point.precision, 3) : "NA")
        << " (" << point.retained << " retained)\n";
  }
  out << "threshold " << csv::FormatDecimal(threshold, 2) << ": "
      << filtered.accepted.size() << " accepted, " << filtered.to_review.size()
      << " to review\n";
}

}  // namespace evnoun
