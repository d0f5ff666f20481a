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

#include "evnoun/dtree.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <utility>

#include <boost/math/distributions/normal.hpp>

namespace evnoun {
namespace {

// Gains and ratios closer than this are treated as equal, so ties resolve
// by index order instead of by floating-point noise.
constexpr double kTolerance = 1e-12;

size_t LabelIndex(Label label) { return static_cast<size_t>(label); }

ClassCounts CountLabels(std::span<const size_t> indices,
                        std::span<const LabeledExample> examples) {
  ClassCounts counts{};
  for (size_t i : indices) ++counts[LabelIndex(examples[i].label)];
  return counts;
}

int64_t Total(const ClassCounts& counts) {
  return std::accumulate(counts.begin(), counts.end(), int64_t{0});
}

std::optional<SplitCandidate> BestSplitOn(
    std::span<const size_t> indices, std::span<const LabeledExample> examples,
    size_t attribute, int min_leaf) {
  if (indices.size() < 2) return std::nullopt;
  std::vector<size_t> order(indices.begin(), indices.end());
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return examples[a].vector.counts[attribute] <
           examples[b].vector.counts[attribute];
  });

  const ClassCounts parent = CountLabels(order, examples);
  const int64_t n = Total(parent);
  const double parent_entropy = Entropy(parent);

  ClassCounts left{};
  std::optional<SplitCandidate> best;
  for (size_t i = 0; i + 1 < order.size(); ++i) {
    ++left[LabelIndex(examples[order[i]].label)];
    double value = examples[order[i]].vector.counts[attribute];
    double next = examples[order[i + 1]].vector.counts[attribute];
    if (value == next) continue;

    const int64_t n_left = static_cast<int64_t>(i + 1);
    const int64_t n_right = n - n_left;
    if (n_left < min_leaf || n_right < min_leaf) continue;

    ClassCounts right{};
    for (size_t c = 0; c < kNumLabels; ++c) right[c] = parent[c] - left[c];
    const double w_left = static_cast<double>(n_left) / static_cast<double>(n);
    const double w_right = static_cast<double>(n_right) / static_cast<double>(n);
    const double gain = parent_entropy - w_left * Entropy(left) -
                        w_right * Entropy(right);
    if (gain <= kTolerance) continue;
    const ClassCounts sizes = {n_left, n_right};
    const double ratio = gain / Entropy(sizes);
    if (!best || ratio > best->gain_ratio + kTolerance) {
      best = SplitCandidate{(value + next) / 2, gain, ratio};
    }
  }
  return best;
}

// Lowest midpoint with at least min_leaf examples on each side, if any.
std::optional<SplitCandidate> ZeroGainSplit(
    std::span<const size_t> indices, std::span<const LabeledExample> examples,
    size_t attribute, int min_leaf) {
  std::vector<double> values;
  values.reserve(indices.size());
  for (size_t i : indices) values.push_back(examples[i].vector.counts[attribute]);
  std::sort(values.begin(), values.end());
  const int64_t n = static_cast<int64_t>(values.size());
  for (size_t i = 0; i + 1 < values.size(); ++i) {
    if (values[i] == values[i + 1]) continue;
    const int64_t n_left = static_cast<int64_t>(i + 1);
    if (n_left < min_leaf || n - n_left < min_leaf) continue;
    return SplitCandidate{(values[i] + values[i + 1]) / 2, 0, 0};
  }
  return std::nullopt;
}

}  // namespace

void TreeParams::Validate() const {
  if (min_leaf < 1) throw std::invalid_argument("min_leaf must be >= 1");
  if (!(confidence_factor > 0 && confidence_factor < 1)) {
    throw std::invalid_argument("confidence factor must lie in (0, 1)");
  }
}

double Entropy(std::span<const int64_t> class_counts) {
  int64_t total = 0;
  for (int64_t c : class_counts) {
    if (c < 0) throw std::invalid_argument("negative class count");
    total += c;
  }
  if (total == 0) throw std::invalid_argument("entropy of empty distribution");
  double h = 0;
  for (int64_t c : class_counts) {
    if (c == 0) continue;
    double p = static_cast<double>(c) / static_cast<double>(total);
    h -= p * std::log2(p);
  }
  return h;
}

std::optional<SplitCandidate> BestSplit(std::span<const LabeledExample> examples,
                                        size_t attribute, int min_leaf) {
  std::vector<size_t> indices(examples.size());
  std::iota(indices.begin(), indices.end(), size_t{0});
  for (const LabeledExample& e : examples) {
    if (attribute >= e.vector.counts.size()) {
      throw std::invalid_argument("attribute index out of range");
    }
  }
  return BestSplitOn(indices, examples, attribute, min_leaf);
}

double PessimisticUpperBound(int64_t errors, int64_t n, double cf) {
  if (n < 1 || errors < 0 || errors > n) {
    throw std::invalid_argument("pessimistic bound needs 0 <= errors <= n, n >= 1");
  }
  if (!(cf > 0 && cf < 1)) {
    throw std::invalid_argument("confidence factor must lie in (0, 1)");
  }
  const double N = static_cast<double>(n);
  const double e = static_cast<double>(errors);
  if (errors == 0) return 1 - std::pow(cf, 1 / N);
  if (e + 0.5 >= N) return 1.0;

  const double z =
      boost::math::quantile(boost::math::normal_distribution<double>(), 1 - cf);
  const double f = (e + 0.5) / N;
  const double z2 = z * z;
  return (f + z2 / (2 * N) +
          z * std::sqrt(f / N - f * f / N + z2 / (4 * N * N))) /
         (1 + z2 / N);
}

Label MajorityLabel(const ClassCounts& counts) {
  return counts[LabelIndex(Label::kEvent)] > counts[LabelIndex(Label::kNonEvent)]
             ? Label::kEvent
             : Label::kNonEvent;
}

DecisionTree DecisionTree::Train(std::span<const LabeledExample> examples,
                                 const TreeParams& params,
                                 std::vector<std::string> attribute_names) {
  params.Validate();
  if (examples.empty()) {
    throw std::invalid_argument("cannot train on an empty example set");
  }
  const size_t dimension = examples.front().vector.counts.size();
  for (const LabeledExample& e : examples) {
    if (e.vector.counts.size() != dimension) {
      throw std::invalid_argument("inconsistent vector dimensionality: " +
                                  std::to_string(e.vector.counts.size()) +
                                  " vs " + std::to_string(dimension));
    }
  }
  if (!attribute_names.empty() && attribute_names.size() != dimension) {
    throw std::invalid_argument("attribute names do not match dimensionality");
  }

  DecisionTree tree;
  tree.dimension_ = dimension;
  tree.laplace_ = params.laplace_confidence;
  tree.attribute_names_ = std::move(attribute_names);
  if (tree.attribute_names_.empty()) {
    for (size_t i = 0; i < dimension; ++i) {
      tree.attribute_names_.push_back("a" + std::to_string(i));
    }
  }

  std::vector<size_t> all(examples.size());
  std::iota(all.begin(), all.end(), size_t{0});
  tree.Grow(std::move(all), examples, params);
  if (params.pruning) {
    tree.Prune(0, params.confidence_factor);
    tree.Compact();
  }
  return tree;
}

int DecisionTree::Grow(std::vector<size_t> indices,
                       std::span<const LabeledExample> examples,
                       const TreeParams& params) {
  const int id = static_cast<int>(nodes_.size());
  nodes_.push_back(Node{});
  nodes_[id].counts = CountLabels(indices, examples);

  const ClassCounts& counts = nodes_[id].counts;
  const bool pure = std::count_if(counts.begin(), counts.end(),
                                  [](int64_t c) { return c > 0; }) <= 1;
  if (pure || static_cast<int64_t>(indices.size()) < 2 * params.min_leaf) {
    return id;
  }

  std::optional<SplitCandidate> best;
  size_t best_attribute = 0;
  for (size_t a = 0; a < dimension_; ++a) {
    auto candidate = BestSplitOn(indices, examples, a, params.min_leaf);
    if (candidate &&
        (!best || candidate->gain_ratio > best->gain_ratio + kTolerance)) {
      best = candidate;
      best_attribute = a;
    }
  }
  if (!best) {
    // Every split has zero gain (an XOR-like node). Split anyway on the lowest
    // attribute and threshold so consistent data can still be fitted exactly.
    for (size_t a = 0; a < dimension_ && !best; ++a) {
      best = ZeroGainSplit(indices, examples, a, params.min_leaf);
      best_attribute = a;
    }
  }
  if (!best) return id;

  std::vector<size_t> left;
  std::vector<size_t> right;
  for (size_t i : indices) {
    if (examples[i].vector.counts[best_attribute] <= best->threshold) {
      left.push_back(i);
    } else {
      right.push_back(i);
    }
  }
  indices.clear();
  indices.shrink_to_fit();

  nodes_[id].attribute = static_cast<int>(best_attribute);
  nodes_[id].threshold = best->threshold;
  const int left_id = Grow(std::move(left), examples, params);
  nodes_[id].left = left_id;
  const int right_id = Grow(std::move(right), examples, params);
  nodes_[id].right = right_id;
  return id;
}

// Returns the pessimistic error estimate (in examples) of the subtree rooted
// at `node` after pruning it.
double DecisionTree::Prune(int node, double cf) {
  Node& current = nodes_[node];
  const int64_t n = Total(current.counts);
  const int64_t errors =
      n - *std::max_element(current.counts.begin(), current.counts.end());
  const double as_leaf =
      static_cast<double>(n) * PessimisticUpperBound(errors, n, cf);
  if (current.is_leaf()) return as_leaf;

  const int left = current.left;
  const int right = current.right;
  const double as_subtree = Prune(left, cf) + Prune(right, cf);
  if (as_leaf <= as_subtree + 1e-9) {
    Node& collapsed = nodes_[node];
    collapsed.attribute = -1;
    collapsed.threshold = 0;
    collapsed.left = -1;
    collapsed.right = -1;
    return as_leaf;
  }
  return as_subtree;
}

void DecisionTree::Compact() {
  std::vector<Node> kept;
  kept.reserve(nodes_.size());
  // Preorder copy of the nodes reachable from the root.
  auto copy = [&](auto&& self, int old_id) -> int {
    const int new_id = static_cast<int>(kept.size());
    kept.push_back(nodes_[old_id]);
    if (!nodes_[old_id].is_leaf()) {
      const int left = self(self, nodes_[old_id].left);
      kept[new_id].left = left;
      const int right = self(self, nodes_[old_id].right);
      kept[new_id].right = right;
    }
    return new_id;
  };
  copy(copy, 0);
  nodes_ = std::move(kept);
}

Prediction DecisionTree::Classify(const FeatureVector& vector) const {
  if (vector.counts.size() != dimension_) {
    throw std::invalid_argument(
        "dimensionality mismatch: model has " + std::to_string(dimension_) +
        ", vector has " + std::to_string(vector.counts.size()));
  }
  int node = 0;
  while (!nodes_[node].is_leaf()) {
    const Node& current = nodes_[node];
    node = vector.counts[current.attribute] <= current.threshold ? current.left
                                                                 : current.right;
  }
  const ClassCounts& counts = nodes_[node].counts;
  const Label label = MajorityLabel(counts);
  const double majority = static_cast<double>(counts[LabelIndex(label)]);
  const double total = static_cast<double>(Total(counts));

  Prediction prediction;
  prediction.lemma = vector.lemma;
  prediction.predicted = label;
  if (laplace_) {
    prediction.confidence = (majority + 1) / (total + 2);
  } else {
    prediction.confidence = total > 0 ? majority / total : 0.5;
  }
  return prediction;
}

size_t DecisionTree::leaf_count() const {
  return static_cast<size_t>(std::count_if(
      nodes_.begin(), nodes_.end(), [](const Node& n) { return n.is_leaf(); }));
}

int DecisionTree::depth() const {
  auto walk = [&](auto&& self, int node) -> int {
    if (nodes_[node].is_leaf()) return 0;
    return 1 + std::max(self(self, nodes_[node].left),
                        self(self, nodes_[node].right));
  };
  return walk(walk, 0);
}

void DecisionTree::AppendText(int node, int indent, std::string* out) const {
  const Node& current = nodes_[node];
  auto leaf_text = [](const Node& leaf) {
    std::ostringstream s;
    s << LabelName(MajorityLabel(leaf.counts)) << " (EVENT="
      << leaf.counts[LabelIndex(Label::kEvent)]
      << ", NON_EVENT=" << leaf.counts[LabelIndex(Label::kNonEvent)] << ")";
    return s.str();
  };
  if (current.is_leaf()) {
    if (node == 0) *out += ": " + leaf_text(current) + "\n";
    return;
  }
  std::ostringstream threshold;
  threshold.precision(17);
  threshold << current.threshold;
  const std::string& name = attribute_names_[current.attribute];
  const std::pair<int, const char*> branches[] = {{current.left, " <= "},
                                                  {current.right, " > "}};
  for (const auto& [child, op] : branches) {
    std::string prefix;
    for (int i = 0; i < indent; ++i) prefix += "|   ";
    *out += prefix + name + op + threshold.str();
    if (nodes_[child].is_leaf()) {
      *out += ": " + leaf_text(nodes_[child]) + "\n";
    } else {
      *out += "\n";
      AppendText(child, indent + 1, out);
    }
  }
}

std::string DecisionTree::ToText() const {
  std::string out;
  AppendText(0, 0, &out);
  return out;
}

nlohmann::json DecisionTree::ToJson() const {
  nlohmann::json nodes = nlohmann::json::array();
  for (const Node& node : nodes_) {
    nlohmann::json entry;
    entry["counts"] = {node.counts[0], node.counts[1]};
    if (!node.is_leaf()) {
      entry["attribute"] = node.attribute;
      entry["threshold"] = node.threshold;
      entry["left"] = node.left;
      entry["right"] = node.right;
    }
    nodes.push_back(std::move(entry));
  }
  return nlohmann::json{{"format", "evnoun-tree"},
                        {"version", 1},
                        {"dimension", dimension_},
                        {"attributes", attribute_names_},
                        {"laplace_confidence", laplace_},
                        {"nodes", std::move(nodes)}};
}

DecisionTree DecisionTree::FromJson(const nlohmann::json& doc) {
  try {
    if (doc.at("format") != "evnoun-tree" || doc.at("version") != 1) {
      throw std::invalid_argument("not an evnoun tree (format/version)");
    }
    DecisionTree tree;
    tree.dimension_ = doc.at("dimension").get<size_t>();
    tree.attribute_names_ = doc.at("attributes").get<std::vector<std::string>>();
    tree.laplace_ = doc.at("laplace_confidence").get<bool>();
    if (tree.attribute_names_.size() != tree.dimension_) {
      throw std::invalid_argument("attribute list does not match dimension");
    }
    const auto& nodes = doc.at("nodes");
    if (!nodes.is_array() || nodes.empty()) {
      throw std::invalid_argument("tree has no nodes");
    }
    const int count = static_cast<int>(nodes.size());
    for (int id = 0; id < count; ++id) {
      const auto& entry = nodes[id];
      Node node;
      const auto counts = entry.at("counts").get<std::vector<int64_t>>();
      if (counts.size() != kNumLabels) {
        throw std::invalid_argument("node counts must have two entries");
      }
      node.counts = {counts[0], counts[1]};
      if (entry.contains("attribute")) {
        node.attribute = entry.at("attribute").get<int>();
        node.threshold = entry.at("threshold").get<double>();
        node.left = entry.at("left").get<int>();
        node.right = entry.at("right").get<int>();
        if (node.attribute < 0 ||
            static_cast<size_t>(node.attribute) >= tree.dimension_ ||
            node.left <= id || node.right <= id || node.left >= count ||
            node.right >= count) {
          throw std::invalid_argument("malformed internal node " +
                                      std::to_string(id));
        }
      }
      tree.nodes_.push_back(node);
    }
    return tree;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed tree file: ") + e.what());
  }
}

void DecisionTree::Save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write model file: " + path);
  out << ToJson().dump(2) << '\n';
}

DecisionTree DecisionTree::Load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open model file: " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("malformed model file " + path + ": " +
                                e.what());
  }
  return FromJson(doc);
}

}  // namespace evnoun
