/*
 * Copyright 2026 The pdstree Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "pdstree/tree.h"

#include <algorithm>
#include <functional>

#include "pdstree/error.h"
#include "pdstree/text.h"

namespace pdstree {

SplitTest SplitTest::Threshold(int attribute, double threshold) {
  SplitTest test;
  test.attribute = attribute;
  test.kind = Kind::kThreshold;
  test.threshold = threshold;
  return test;
}

SplitTest SplitTest::Subset(int attribute, std::vector<int> subset) {
  SplitTest test;
  test.attribute = attribute;
  test.kind = Kind::kSubset;
  std::sort(subset.begin(), subset.end());
  subset.erase(std::unique(subset.begin(), subset.end()), subset.end());
  test.subset = std::move(subset);
  return test;
}

bool SplitTest::GoesLeft(const Instance& instance) const {
  const double value = instance.values[attribute];
  if (kind == Kind::kThreshold) return value <= threshold;
  return std::binary_search(subset.begin(), subset.end(),
                            static_cast<int>(value));
}

void SplitTest::Validate(const Schema& schema) const {
  if (attribute < 0 || attribute >= schema.num_attributes()) {
    throw Error(ErrorCode::kSchemaMismatch,
                "test attribute " + std::to_string(attribute) + " out of range");
  }
  const AttributeSpec& spec = schema.attributes[attribute];
  if (kind == Kind::kThreshold) {
    if (!spec.is_numeric()) {
      throw Error(ErrorCode::kSchemaMismatch,
                  "threshold test on nominal attribute '" + spec.name + "'");
    }
    return;
  }
  if (spec.is_numeric()) {
    throw Error(ErrorCode::kSchemaMismatch,
                "subset test on numeric attribute '" + spec.name + "'");
  }
  if (subset.empty() || static_cast<int>(subset.size()) >= spec.domain_size()) {
    throw Error(ErrorCode::kSchemaMismatch,
                "subset must be a nonempty proper subset of the domain");
  }
  for (size_t i = 0; i < subset.size(); ++i) {
    if (subset[i] < 0 || subset[i] >= spec.domain_size() ||
        (i > 0 && subset[i] <= subset[i - 1])) {
      throw Error(ErrorCode::kSchemaMismatch, "bad subset index");
    }
  }
}

std::string SplitTest::ToString() const {
  std::string out = std::to_string(attribute) + " ";
  if (kind == Kind::kThreshold) return out + "<=" + FormatReal(threshold);
  return out + "in{" + JoinNumbers(subset, ',') + "}";
}

DecisionTree::DecisionTree(Schema schema) : schema_(std::move(schema)) {
  nodes_.push_back(Leaf{});
  leaf_index_[0] = 0;
}

int DecisionTree::LeafNodeIndex(const Instance& instance) const {
  int index = 0;
  while (const auto* internal = std::get_if<Internal>(&nodes_[index])) {
    index = internal->test.GoesLeft(instance) ? internal->left : internal->right;
  }
  return index;
}

LeafId DecisionTree::Route(const Instance& instance) const {
  ValidateInstance(instance, schema_);
  return RouteUnchecked(instance);
}

LeafId DecisionTree::RouteUnchecked(const Instance& instance) const {
  return std::get<Leaf>(nodes_[LeafNodeIndex(instance)]).leaf_id;
}

int DecisionTree::Predict(const Instance& instance) const {
  ValidateInstance(instance, schema_);
  return std::get<Leaf>(nodes_[LeafNodeIndex(instance)]).majority_class;
}

std::pair<LeafId, LeafId> DecisionTree::ApplySplit(LeafId leaf,
                                                   const SplitTest& test) {
  const auto it = leaf_index_.find(leaf);
  if (it == leaf_index_.end()) {
    // Ids are never reused, so an id below next_leaf_id_ belonged to a leaf
    // that has since become an internal node.
    if (leaf >= 0 && leaf < next_leaf_id_) {
      throw Error(ErrorCode::kNotALeaf,
                  "leaf " + std::to_string(leaf) + " was already split");
    }
    throw Error(ErrorCode::kUnknownLeaf, "no leaf " + std::to_string(leaf));
  }
  test.Validate(schema_);
  const int index = it->second;
  leaf_index_.erase(it);

  const LeafId left_id = next_leaf_id_++;
  const LeafId right_id = next_leaf_id_++;
  const int left = static_cast<int>(nodes_.size());
  nodes_.push_back(Leaf{left_id, 0, 0});
  nodes_.push_back(Leaf{right_id, 0, 0});
  leaf_index_[left_id] = left;
  leaf_index_[right_id] = left + 1;
  nodes_[index] = Internal{test, left, left + 1};
  return {left_id, right_id};
}

void DecisionTree::SetLeafSummary(LeafId leaf, int majority_class,
                                  int64_t seen) {
  const auto it = leaf_index_.find(leaf);
  if (it == leaf_index_.end()) {
    throw Error(ErrorCode::kUnknownLeaf, "no leaf " + std::to_string(leaf));
  }
  if (majority_class < 0 || majority_class >= schema_.num_classes()) {
    throw Error(ErrorCode::kOutOfRange, "class index out of range");
  }
  auto& node = std::get<Leaf>(nodes_[it->second]);
  node.majority_class = majority_class;
  node.seen = seen;
}

const DecisionTree::Leaf& DecisionTree::leaf(LeafId id) const {
  const auto it = leaf_index_.find(id);
  if (it == leaf_index_.end()) {
    throw Error(ErrorCode::kUnknownLeaf, "no leaf " + std::to_string(id));
  }
  return std::get<Leaf>(nodes_[it->second]);
}

std::vector<LeafId> DecisionTree::LeafIds() const {
  std::vector<LeafId> ids;
  ids.reserve(leaf_index_.size());
  for (const auto& [id, index] : leaf_index_) ids.push_back(id);
  return ids;
}

TreeMetrics DecisionTree::Metrics() const {
  TreeMetrics metrics{0, 0, 0};
  std::function<void(int, int)> visit = [&](int index, int depth) {
    ++metrics.node_count;
    if (const auto* internal = std::get_if<Internal>(&nodes_[index])) {
      visit(internal->left, depth + 1);
      visit(internal->right, depth + 1);
    } else {
      ++metrics.leaf_count;
      metrics.depth = std::max(metrics.depth, depth);
    }
  };
  visit(0, 1);
  return metrics;
}

std::string DecisionTree::Serialize() const {
  std::string out;
  std::function<void(int)> visit = [&](int index) {
    if (const auto* internal = std::get_if<Internal>(&nodes_[index])) {
      out += "I " + internal->test.ToString() + "\n";
      visit(internal->left);
      visit(internal->right);
    } else {
      const auto& leaf = std::get<Leaf>(nodes_[index]);
      out += "L " + std::to_string(leaf.leaf_id) +
             " c=" + std::to_string(leaf.majority_class) +
             " n=" + std::to_string(leaf.seen) + "\n";
    }
  };
  visit(0);
  return out;
}

namespace {

std::string_view ExpectPrefix(std::string_view token, std::string_view prefix,
                              int line) {
  if (token.substr(0, prefix.size()) != prefix) {
    throw Error(ErrorCode::kSyntax,
                "expected '" + std::string(prefix) + "' in '" +
                    std::string(token) + "'",
                line);
  }
  return token.substr(prefix.size());
}

int64_t ExpectInt(std::string_view token, int line) {
  const auto value = ParseInt(token);
  if (!value) {
    throw Error(ErrorCode::kSyntax,
                "expected integer, got '" + std::string(token) + "'", line);
  }
  return *value;
}

}  // namespace

DecisionTree DecisionTree::Parse(std::string_view text, const Schema& schema) {
  std::vector<std::string_view> lines;
  for (std::string_view line : SplitString(text, '\n')) {
    line = Trim(line);
    if (!line.empty()) lines.push_back(line);
  }
  DecisionTree tree(schema);
  tree.nodes_.clear();
  tree.leaf_index_.clear();
  size_t cursor = 0;
  LeafId max_leaf = -1;

  std::function<int()> parse_node = [&]() -> int {
    if (cursor >= lines.size()) {
      throw Error(ErrorCode::kSyntax, "truncated tree",
                  static_cast<int>(cursor) + 1);
    }
    const int line_number = static_cast<int>(cursor) + 1;
    const auto tokens = SplitString(lines[cursor++], ' ');
    const int index = static_cast<int>(tree.nodes_.size());
    if (tokens[0] == "L" && tokens.size() == 4) {
      Leaf leaf;
      leaf.leaf_id = ExpectInt(tokens[1], line_number);
      leaf.majority_class = static_cast<int>(
          ExpectInt(ExpectPrefix(tokens[2], "c=", line_number), line_number));
      leaf.seen = ExpectInt(ExpectPrefix(tokens[3], "n=", line_number), line_number);
      if (leaf.leaf_id < 0 || tree.leaf_index_.contains(leaf.leaf_id)) {
        throw Error(ErrorCode::kSyntax, "invalid or duplicate leaf id",
                    line_number);
      }
      if (leaf.majority_class < 0 || leaf.majority_class >= schema.num_classes()) {
        throw Error(ErrorCode::kSchemaMismatch, "leaf class out of range",
                    line_number);
      }
      tree.leaf_index_[leaf.leaf_id] = index;
      max_leaf = std::max(max_leaf, leaf.leaf_id);
      tree.nodes_.push_back(leaf);
      return index;
    }
    if (tokens[0] == "I" && tokens.size() == 3) {
      const int attribute = static_cast<int>(ExpectInt(tokens[1], line_number));
      SplitTest test;
      if (tokens[2].starts_with("<=")) {
        const auto threshold = ParseReal(tokens[2].substr(2));
        if (!threshold) {
          throw Error(ErrorCode::kSyntax, "bad threshold", line_number);
        }
        test = SplitTest::Threshold(attribute, *threshold);
      } else if (tokens[2].starts_with("in{") && tokens[2].ends_with("}")) {
        std::vector<int> subset;
        const auto body = tokens[2].substr(3, tokens[2].size() - 4);
        for (std::string_view item : SplitString(body, ',')) {
          subset.push_back(static_cast<int>(ExpectInt(item, line_number)));
        }
        test = SplitTest::Subset(attribute, std::move(subset));
      } else {
        throw Error(ErrorCode::kSyntax, "bad test '" + std::string(tokens[2]) + "'",
                    line_number);
      }
      try {
        test.Validate(schema);
      } catch (const Error& e) {
        throw Error(e.code(), e.what(), line_number);
      }
      tree.nodes_.push_back(Internal{test, -1, -1});
      const int left = parse_node();
      const int right = parse_node();
      auto& internal = std::get<Internal>(tree.nodes_[index]);
      internal.left = left;
      internal.right = right;
      return index;
    }
    throw Error(ErrorCode::kSyntax, "unrecognized node line", line_number);
  };

  parse_node();
  if (cursor != lines.size()) {
    throw Error(ErrorCode::kSyntax, "trailing content after tree",
                static_cast<int>(cursor) + 1);
  }
  tree.next_leaf_id_ = max_leaf + 1;
  return tree;
}

bool TreesEqual(const DecisionTree& a, const DecisionTree& b) {
  std::function<bool(int, int)> equal = [&](int i, int j) {
    const auto& na = a.node(i);
    const auto& nb = b.node(j);
    if (na.index() != nb.index()) return false;
    if (const auto* ia = std::get_if<DecisionTree::Internal>(&na)) {
      const auto& ib = std::get<DecisionTree::Internal>(nb);
      return ia->test == ib.test && equal(ia->left, ib.left) &&
             equal(ia->right, ib.right);
    }
    return std::get<DecisionTree::Leaf>(na).majority_class ==
           std::get<DecisionTree::Leaf>(nb).majority_class;
  };
  return equal(a.root(), b.root());
}

}  // namespace pdstree
