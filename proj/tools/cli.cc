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

#include "cli.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "evnoun/corpus.h"
#include "evnoun/csv.h"
#include "evnoun/cues.h"
#include "evnoun/data.h"
#include "evnoun/dtree.h"
#include "evnoun/eval.h"
#include "evnoun/features.h"

namespace evnoun::cli {
namespace {

namespace fs = std::filesystem;

// Bad flags or unreadable inputs.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string language = "EN";
  std::vector<std::string> corpus_paths;
  std::string gold_path;
  bool builtin_gold = false;
  std::string targets_path;
  std::string cues_path;
  std::string dataset_path;
  std::string model_path;
  std::string predictions_path;
  std::string positive = "EVENT";
  bool lenient = false;
  bool relative = false;
  std::string policy = "first";
  int k = 10;
  std::optional<uint64_t> seed;
  double threshold = 0.8;
  TreeParams tree;
  bool no_prune = false;
  std::string out;
  SynthParams synth;
};

void RequireReadable(const std::string& path, const char* what) {
  std::error_code ec;
  if (!fs::is_regular_file(path, ec)) {
    throw UsageError(std::string(what) + " not found: " + path);
  }
}

std::ofstream OpenOutput(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path.string());
  return out;
}

Language LanguageOf(const RunConfig& config) {
  try {
    return ParseLanguage(config.language);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

CueSet LoadCues(const RunConfig& config) {
  const Language language = LanguageOf(config);
  if (config.cues_path.empty()) return BuiltinCueSet(language);
  RequireReadable(config.cues_path, "cue file");
  return LoadCueSetFile(config.cues_path, language);
}

std::optional<GoldStandard> LoadGoldFor(const RunConfig& config) {
  const Language language = LanguageOf(config);
  if (!config.gold_path.empty()) {
    RequireReadable(config.gold_path, "gold file");
    return LoadGoldFile(config.gold_path, language);
  }
  if (config.builtin_gold) return BuiltinGold(language);
  return std::nullopt;
}

std::set<std::string> LoadTargets(const std::string& path) {
  RequireReadable(path, "targets file");
  std::ifstream in(path);
  std::set<std::string> targets;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    targets.insert(LowercaseUtf8(line));
  }
  return targets;
}

MatchOptions MatchOptionsOf(const RunConfig& config) {
  MatchOptions options;
  if (config.policy == "last") {
    options.policy = TargetPolicy::kLastNounOfCompound;
  } else if (config.policy != "first") {
    throw UsageError("--policy must be 'first' or 'last'");
  }
  return options;
}

std::vector<Sentence> LoadCorpora(const RunConfig& config, std::ostream& err) {
  if (config.corpus_paths.empty()) throw UsageError("no --corpus given");
  for (const std::string& path : config.corpus_paths) {
    RequireReadable(path, "corpus file");
  }
  std::vector<Sentence> corpus;
  for (const std::string& path : config.corpus_paths) {
    ReaderOptions options;
    options.strict = !config.lenient;
    options.on_warning = [&](const ParseError& e) {
      err << "warning: " << path << ": " << e.what() << '\n';
    };
    try {
      auto sentences = ReadCorpusFile(path, options);
      std::move(sentences.begin(), sentences.end(), std::back_inserter(corpus));
    } catch (const ParseError& e) {
      throw std::runtime_error(path + ": " + e.what());
    }
  }
  return corpus;
}

// Builds the dataset named by --dataset, or extracts one from --corpus with
// targets from the gold standard or --targets. Labels are attached whenever a
// gold standard is configured.
Dataset ObtainDataset(const RunConfig& config, bool need_labels,
                      std::ostream& err) {
  std::optional<GoldStandard> gold = LoadGoldFor(config);
  Dataset dataset;
  if (!config.dataset_path.empty()) {
    RequireReadable(config.dataset_path, "dataset file");
    std::ifstream in(config.dataset_path);
    dataset = ReadDatasetCsv(in);
    if (gold) dataset = AttachLabels(dataset, gold->entries);
  } else {
    std::set<std::string> targets;
    if (!config.targets_path.empty()) {
      targets = LoadTargets(config.targets_path);
    } else if (gold) {
      targets = gold->Lemmas();
    } else {
      throw UsageError("need --gold, --builtin-gold or --targets");
    }
    if (targets.empty()) throw UsageError("target lemma set is empty");
    const CueSet cues = LoadCues(config);
    const std::vector<Sentence> corpus = LoadCorpora(config, err);
    dataset = ExtractFeatures(corpus, cues, targets, MatchOptionsOf(config));
    if (gold) dataset = AttachLabels(dataset, gold->entries);
  }
  if (config.relative) dataset = ToRelative(dataset);
  if (need_labels && !dataset.labeled()) {
    throw UsageError("this command needs gold labels (--gold/--builtin-gold "
                     "or a labeled dataset)");
  }
  return dataset;
}

TreeParams TreeParamsOf(const RunConfig& config) {
  TreeParams params = config.tree;
  params.pruning = !config.no_prune;
  try {
    params.Validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return params;
}

std::vector<LabeledExample> ExamplesOf(const Dataset& dataset) {
  std::vector<LabeledExample> examples;
  examples.reserve(dataset.size());
  for (size_t i = 0; i < dataset.size(); ++i) {
    examples.push_back({dataset.vectors[i], (*dataset.labels)[i]});
  }
  return examples;
}

uint64_t SeedOf(const RunConfig& config) {
  if (!config.seed) throw UsageError("--seed is required for this command");
  return *config.seed;
}

int CmdExtract(const RunConfig& config, std::ostream& out, std::ostream& err) {
  if (config.out.empty()) throw UsageError("--out is required");
  Dataset dataset = ObtainDataset(config, false, err);
  std::ofstream file = OpenOutput(config.out);
  WriteDatasetCsv(file, dataset);
  out << "lemmas: " << dataset.size() << '\n'
      << "nonzero vectors: " << dataset.CountNonZero() << '\n';
  return kExitOk;
}

int CmdTrain(const RunConfig& config, std::ostream& out, std::ostream& err) {
  if (config.out.empty()) throw UsageError("--out is required");
  const TreeParams params = TreeParamsOf(config);
  Dataset dataset = ObtainDataset(config, true, err);
  const DecisionTree tree =
      DecisionTree::Train(ExamplesOf(dataset), params, dataset.cue_ids);
  if (fs::path(config.out).has_parent_path()) {
    fs::create_directories(fs::path(config.out).parent_path());
  }
  tree.Save(config.out);
  out << tree.ToText();
  out << "nodes: " << tree.node_count() << ", leaves: " << tree.leaf_count()
      << '\n';
  return kExitOk;
}

int CmdClassify(const RunConfig& config, std::ostream& out, std::ostream& err) {
  if (config.out.empty()) throw UsageError("--out is required");
  if (config.model_path.empty()) throw UsageError("--model is required");
  RequireReadable(config.model_path, "model file");
  const DecisionTree tree = DecisionTree::Load(config.model_path);
  Dataset dataset = ObtainDataset(config, false, err);
  if (dataset.dimension() != tree.dimension()) {
    throw std::runtime_error(
        "dimensionality mismatch: model has " +
        std::to_string(tree.dimension()) + " attributes, dataset has " +
        std::to_string(dataset.dimension()));
  }
  std::vector<Prediction> predictions;
  for (const FeatureVector& v : dataset.vectors) {
    predictions.push_back(tree.Classify(v));
  }
  std::stable_sort(predictions.begin(), predictions.end(),
                   [](const Prediction& a, const Prediction& b) {
                     if (a.confidence != b.confidence) {
                       return a.confidence > b.confidence;
                     }
                     return a.lemma < b.lemma;
                   });
  std::ofstream file = OpenOutput(config.out);
  csv::WriteRow(file, {"lemma", "predicted", "confidence"});
  for (const Prediction& p : predictions) {
    csv::WriteRow(file, {p.lemma, std::string(LabelName(p.predicted)),
                         csv::FormatDecimal(p.confidence, 4)});
  }
  out << "classified: " << predictions.size() << '\n';
  return kExitOk;
}

int CmdEvaluate(const RunConfig& config, std::ostream& out, std::ostream& err) {
  if (config.out.empty()) throw UsageError("--out is required");
  const TreeParams params = TreeParamsOf(config);
  const uint64_t seed = SeedOf(config);
  if (!(config.threshold >= 0 && config.threshold <= 1)) {
    throw UsageError("--threshold must lie in [0, 1]");
  }
  Dataset dataset = ObtainDataset(config, true, err);
  if (config.k < 2 || static_cast<size_t>(config.k) > dataset.size()) {
    throw UsageError("--k must lie in [2, dataset size]");
  }
  const EvalReport report = CrossValidate(dataset, params, config.k, seed);
  const auto thresholds = DefaultThresholds();
  const auto curve =
      PrecisionCurve(report.predictions, Label::kEvent, thresholds);
  const FilterResult filtered =
      FilterByConfidence(report.predictions, config.threshold);

  const fs::path dir(config.out);
  fs::create_directories(dir);
  {
    std::ofstream f = OpenOutput(dir / "report.txt");
    WriteReportText(f, report, curve, config.threshold, filtered);
  }
  {
    std::ofstream f = OpenOutput(dir / "predictions.csv");
    WritePredictionsCsv(f, report.predictions);
  }
  {
    std::ofstream f = OpenOutput(dir / "curve.csv");
    WriteCurveCsv(f, curve);
  }
  {
    std::ofstream f = OpenOutput(dir / "confusion.csv");
    WriteConfusionCsv(f, report.confusion);
  }
  {
    std::ofstream f = OpenOutput(dir / "accepted.csv");
    WritePredictionsCsv(f, filtered.accepted);
  }
  {
    std::ofstream f = OpenOutput(dir / "to_review.csv");
    WritePredictionsCsv(f, filtered.to_review);
  }
  out << "mean accuracy: " << csv::FormatDecimal(report.mean_accuracy, 3)
      << '\n';
  return kExitOk;
}

int CmdCurve(const RunConfig& config, std::ostream& out, std::ostream&) {
  if (config.predictions_path.empty()) {
    throw UsageError("--predictions is required");
  }
  RequireReadable(config.predictions_path, "predictions file");
  auto positive = ParseLabel(config.positive);
  if (!positive) throw UsageError("--positive must be EVENT or NON_EVENT");
  std::ifstream in(config.predictions_path);
  const auto predictions = ReadPredictionsCsv(in);
  const auto thresholds = DefaultThresholds();
  const auto curve = PrecisionCurve(predictions, *positive, thresholds);
  if (config.out.empty()) {
    WriteCurveCsv(out, curve);
  } else {
    std::ofstream f = OpenOutput(config.out);
    WriteCurveCsv(f, curve);
  }
  return kExitOk;
}

int CmdSynth(const RunConfig& config, std::ostream& out, std::ostream&) {
  if (config.out.empty()) throw UsageError("--out is required");
  SynthParams params = config.synth;
  params.seed = SeedOf(config);
  try {
    params.Validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const CueSet cues = LoadCues(config);
  const SyntheticCorpus synth = GenerateSyntheticCorpus(params, cues);

  const fs::path dir(config.out);
  fs::create_directories(dir);
  {
    std::ofstream f = OpenOutput(dir / "corpus.tsv");
    f << synth.corpus_text;
  }
  {
    std::ofstream f = OpenOutput(dir / "gold.csv");
    WriteGold(f, synth.gold);
  }
  {
    std::ofstream f = OpenOutput(dir / "draw_log.csv");
    WriteDatasetCsv(f, synth.draw_log);
  }
  out << "lemmas: " << synth.gold.entries.size() << '\n'
      << "nonzero vectors: " << synth.draw_log.CountNonZero() << '\n';
  return kExitOk;
}

void AddCorpusOptions(CLI::App* cmd, RunConfig& c) {
  cmd->add_option("--corpus", c.corpus_paths, "Tagged corpus file (repeatable)");
  cmd->add_option("--gold", c.gold_path, "Gold CSV lemma,label");
  cmd->add_flag("--builtin-gold", c.builtin_gold, "Use the built-in gold list");
  cmd->add_option("--targets", c.targets_path, "Target lemmas, one per line");
  cmd->add_option("--cues", c.cues_path, "Cue rule file (default: built-in)");
  cmd->add_option("--dataset", c.dataset_path, "Dataset CSV instead of corpus");
  cmd->add_flag("--lenient", c.lenient, "Skip malformed corpus lines");
  cmd->add_flag("--relative", c.relative, "Use relative cue frequencies");
  cmd->add_option("--policy", c.policy, "Target policy: first or last");
}

void AddTreeOptions(CLI::App* cmd, RunConfig& c) {
  cmd->add_option("--min-leaf", c.tree.min_leaf, "Minimum examples per leaf");
  cmd->add_option("--cf", c.tree.confidence_factor, "Pruning confidence factor");
  cmd->add_flag("--no-prune", c.no_prune, "Disable pruning");
  cmd->add_flag("--laplace", c.tree.laplace_confidence,
                "Laplace-smoothed leaf confidence");
}

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  RunConfig config;
  CLI::App app{"Event-noun lexicon acquisition from POS-tagged corpora",
               "evnoun"};
  app.require_subcommand(1);
  app.add_option("--lang", config.language, "Language: EN or ES")
      ->capture_default_str();
  app.add_option("--seed", config.seed, "Random seed");
  app.add_option("--out", config.out, "Output file or directory");

  auto* extract = app.add_subcommand("extract", "Write a dataset CSV");
  AddCorpusOptions(extract, config);

  auto* train = app.add_subcommand("train", "Train and save a tree");
  AddCorpusOptions(train, config);
  AddTreeOptions(train, config);

  auto* classify = app.add_subcommand("classify", "Apply a saved tree");
  AddCorpusOptions(classify, config);
  classify->add_option("--model", config.model_path, "Model JSON file");

  auto* evaluate = app.add_subcommand("evaluate", "Cross-validate and report");
  AddCorpusOptions(evaluate, config);
  AddTreeOptions(evaluate, config);
  evaluate->add_option("--k", config.k, "Number of folds")->capture_default_str();
  evaluate->add_option("--threshold", config.threshold,
                       "Confidence threshold for the accepted lexicon")
      ->capture_default_str();

  auto* curve = app.add_subcommand("curve", "Precision curve from predictions");
  curve->add_option("--predictions", config.predictions_path,
                    "Predictions CSV lemma,gold,predicted,confidence");
  curve->add_option("--positive", config.positive, "Class scored as positive");

  auto* synth = app.add_subcommand("synth", "Generate a synthetic corpus");
  synth->add_option("--cues", config.cues_path, "Cue rule file");
  synth->add_option("--events", config.synth.event_lemmas, "EVENT lemmas");
  synth->add_option("--non-events", config.synth.non_event_lemmas,
                    "NON_EVENT lemmas");
  synth->add_option("--p-event", config.synth.p_event,
                    "Same-class cue rate");
  synth->add_option("--p-non", config.synth.p_non_event,
                    "Cross-class cue rate");
  synth->add_option("--min-occ", config.synth.min_occurrences,
                    "Minimum trials per lemma");
  synth->add_option("--max-occ", config.synth.max_occurrences,
                    "Maximum trials per lemma");
  synth->add_option("--silence", config.synth.silence_fraction,
                    "Silent fraction of each class");
  synth->add_option("--event-silence", config.synth.event_silence_fraction,
                    "Extra silent fraction of EVENT lemmas");
  synth->add_option("--noise", config.synth.noise_fraction,
                    "Per-trial wrong-class compound noise rate");

  // Options given after the subcommand name are accepted too.
  for (auto* sub : {extract, train, classify, evaluate, curve, synth}) {
    sub->fallthrough();
  }

  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*extract) return CmdExtract(config, out, err);
    if (*train) return CmdTrain(config, out, err);
    if (*classify) return CmdClassify(config, out, err);
    if (*evaluate) return CmdEvaluate(config, out, err);
    if (*curve) return CmdCurve(config, out, err);
    if (*synth) return CmdSynth(config, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitDataError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitDataError;
  }
  return kExitUsage;
}

}  // namespace evnoun::cli
