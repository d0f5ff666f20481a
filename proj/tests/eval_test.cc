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

#include <algorithm>
#include <set>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "evnoun/random.h"

namespace evnoun {
namespace {

constexpr Label E = Label::kEvent;
constexpr Label N = Label::kNonEvent;

Dataset MakeDataset(int events, int non_events, bool zero) {
  Dataset d;
  d.cue_ids = {"A", "B"};
  d.labels.emplace();
  for (int i = 0; i < events + non_events; ++i) {
    Label label = i < events ? E : N;
    double signal = zero ? 0 : (label == E ? 3 : 0);
    d.vectors.push_back(
        FeatureVector{"w" + std::to_string(i), {signal, 1}, 5});
    d.labels->push_back(label);
  }
  return d;
}

Prediction P(Label gold, Label predicted, double confidence) {
  Prediction p;
  p.gold = gold;
  p.predicted = predicted;
  p.confidence = confidence;
  return p;
}

TEST_CASE("stratified folds balance classes") {
  auto folds = StratifiedFolds(MakeDataset(10, 10, false), 10, 1);
  REQUIRE(folds.size() == 10);
  for (const auto& fold : folds) {
    REQUIRE(fold.size() == 2);
    CHECK(((fold[0] < 10) != (fold[1] < 10)));
  }

  Dataset d = MakeDataset(100, 99, false);
  folds = StratifiedFolds(d, 10, 2);
  std::vector<size_t> sizes;
  std::multiset<size_t> all;
  for (const auto& fold : folds) {
    sizes.push_back(fold.size());
    all.insert(fold.begin(), fold.end());
    size_t events = std::count_if(fold.begin(), fold.end(),
                                  [](size_t i) { return i < 100; });
    CHECK(events == 10);
  }
  std::sort(sizes.begin(), sizes.end());
  CHECK(sizes.front() == 19);
  CHECK(std::count(sizes.begin(), sizes.end(), 20) == 9);
  // A partition of all indices.
  CHECK(all.size() == d.size());
  CHECK(std::set<size_t>(all.begin(), all.end()).size() == d.size());

  CHECK(StratifiedFolds(d, 10, 2) == folds);
  CHECK(StratifiedFolds(d, 10, 3) != folds);
}

TEST_CASE("stratified folds reject bad input") {
  Dataset d = MakeDataset(3, 3, false);
  CHECK_THROWS_AS(StratifiedFolds(d, 1, 0), std::invalid_argument);
  CHECK_THROWS_AS(StratifiedFolds(d, 7, 0), std::invalid_argument);
  d.labels.reset();
  CHECK_THROWS_AS(StratifiedFolds(d, 2, 0), std::invalid_argument);
}

TEST_CASE("all-zero vectors predict the majority class") {
  EvalReport report = CrossValidate(MakeDataset(40, 60, true), {}, 10, 4);
  CHECK(report.mean_accuracy == doctest::Approx(0.6));
  for (const Prediction& p : report.predictions) {
    CHECK(p.predicted == N);
    CHECK(p.confidence == doctest::Approx(54.0 / 90));
  }
  CHECK(report.confusion[0][1] == 40);
  CHECK(report.confusion[1][1] == 60);
}

TEST_CASE("separable data is classified perfectly") {
  Dataset d = MakeDataset(30, 30, false);
  EvalReport report = CrossValidate(d, {}, 10, 5);
  CHECK(report.mean_accuracy == 1.0);
  REQUIRE(report.fold_accuracies.size() == 10);
  for (double a : report.fold_accuracies) CHECK(a == 1.0);
  // Predictions come back in dataset order.
  for (size_t i = 0; i < d.size(); ++i) {
    CHECK(report.predictions[i].lemma == d.vectors[i].lemma);
    CHECK(report.predictions[i].gold == (*d.labels)[i]);
  }
}

TEST_CASE("precision curve") {
  std::vector<Prediction> preds = {
      P(E, E, 0.9), P(E, E, 0.7), P(N, E, 0.6), P(N, N, 0.95),
      P(E, N, 0.8), P(N, E, 0.5),
  };
  std::vector<double> thresholds = {0.0, 0.55, 0.65, 0.95};
  auto curve = PrecisionCurve(preds, E, thresholds);
  REQUIRE(curve.size() == 4);
  CHECK(curve[0].retained == 4);
  CHECK(*curve[0].precision == doctest::Approx(0.5));
  CHECK(curve[1].retained == 3);
  CHECK(*curve[1].precision == doctest::Approx(2.0 / 3));
  CHECK(curve[2].retained == 2);
  CHECK(*curve[2].precision == 1.0);
  CHECK(curve[3].retained == 0);
  CHECK_FALSE(curve[3].precision);

  auto non_event = PrecisionCurve(preds, N, thresholds);
  CHECK(non_event[0].retained == 2);
  CHECK(*non_event[0].precision == doctest::Approx(0.5));

  std::ostringstream csv;
  WriteCurveCsv(csv, curve);
  CHECK(csv.str() ==
        "threshold,precision,retained\n0.00,0.5000,4\n0.55,0.6667,3\n"
        "0.65,1.0000,2\n0.95,NA,0\n");

  auto defaults = DefaultThresholds();
  CHECK(defaults.size() == 21);
  CHECK(defaults.front() == 0.0);
  CHECK(defaults.back() == 1.0);
}

TEST_CASE("filtering by confidence") {
  std::vector<Prediction> preds = {P(E, E, 0.9), P(N, N, 0.5), P(E, N, 0.7)};
  auto result = FilterByConfidence(preds, 0.7);
  CHECK(result.accepted.size() == 2);
  CHECK(result.to_review.size() == 1);
  CHECK(result.to_review[0].confidence == 0.5);
}

TEST_CASE("partition and monotonicity on random predictions") {
  Rng rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Prediction> preds(rng.Below(30));
    for (auto& p : preds) {
      p = P(rng.Bernoulli(0.5) ? E : N, rng.Bernoulli(0.5) ? E : N,
            static_cast<double>(rng.Below(11)) / 10);
    }
    double theta = static_cast<double>(rng.Below(11)) / 10;
    auto result = FilterByConfidence(preds, theta);
    CHECK(result.accepted.size() + result.to_review.size() == preds.size());
    for (const auto& p : result.accepted) CHECK(p.confidence >= theta);
    for (const auto& p : result.to_review) CHECK(p.confidence < theta);

    auto thresholds = DefaultThresholds();
    auto curve = PrecisionCurve(preds, E, thresholds);
    for (size_t i = 1; i < curve.size(); ++i) {
      CHECK(curve[i].retained <= curve[i - 1].retained);
    }
  }
}

TEST_CASE("prediction CSV round-trip") {
  std::vector<Prediction> preds = {P(E, E, 0.9), P(N, E, 0.25)};
  preds[0].lemma = "war";
  preds[1].lemma = "map";
  Prediction unlabeled;
  unlabeled.lemma = "trip";
  unlabeled.confidence = 1;
  preds.push_back(unlabeled);
  std::stringstream csv;
  WritePredictionsCsv(csv, preds);
  auto back = ReadPredictionsCsv(csv);
  REQUIRE(back.size() == 3);
  CHECK(back[0].lemma == "war");
  CHECK(back[1].gold == N);
  CHECK(back[1].confidence == 0.25);
  CHECK_FALSE(back[2].gold);

  std::istringstream bad("lemma,gold,predicted,confidence\nwar,EVENT,EVENT,1.5\n");
  CHECK_THROWS_AS(ReadPredictionsCsv(bad), ParseError);
  std::istringstream header("a,b\n");
  CHECK_THROWS_AS(ReadPredictionsCsv(header), ParseError);
}

TEST_CASE("confusion CSV") {
  std::vector<Prediction> preds = {P(E, E, 1), P(E, N, 1), P(N, N, 1),
                                   P(N, N, 1)};
  std::ostringstream csv;
  WriteConfusionCsv(csv, BuildConfusion(preds));
  CHECK(csv.str() ==
        "gold\\predicted,EVENT,NON_EVENT\nEVENT,1,1\nNON_EVENT,0,2\n");
}

}  // namespace
}  // namespace evnoun
