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

#ifndef PDSTREE_TREE_H_
#define PDSTREE_TREE_H_

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "pdstree/schema.h"

namespace pdstree {

using LeafId = int64_t;

// Binary test on one attribute. Numeric: x <= threshold goes left.
// Nominal: value in subset goes left.
struct SplitTest {
  enum class Kind { kThreshold, kSubset };

  int attribute = 0;
  Kind kind = Kind::kThreshold;
  double threshold = 0;
  std::vector<int> subset;  // sorted, unique domain indices

  static SplitTest Threshold(int attribute, double threshold);
  static SplitTest Subset(int attribute, std::vector<int> subset);

  bool GoesLeft(const Instance& instance) const;
  // Throws kSchemaMismatch if the test does not fit the schema.
  void Validate(const Schema& schema) const;
  std::string ToString() const;

  bool operator==(const SplitTest&) const = default;
};

struct TreeMetrics {
  int depth = 1;
  int node_count = 1;
  int leaf_count = 1;

  bool operator==(const TreeMetrics&) const = default;
};

class DecisionTree {
 public:
  struct Internal {
    SplitTest test;
    int left = -1;
    int right = -1;
  };
  struct Leaf {
    LeafId leaf_id = 0;
    int majority_class = 0;
    int64_t seen = 0;
  };
  using Node = std::variant<Internal, Leaf>;

  // A single fresh leaf with id 0.
  explicit DecisionTree(Schema schema);

  const Schema& schema() const { return schema_; }
  int root() const { return 0; }
  const Node& node(int index) const { return nodes_[index]; }
  int num_nodes() const { return static_cast<int>(nodes_.size()); }

  LeafId Route(const Instance& instance) const;
  // Same as Route without the schema check; for callers that validated.
  LeafId RouteUnchecked(const Instance& instance) const;
  int Predict(const Instance& instance) const;

  // Replaces the leaf by an internal node with two fresh, empty leaves.
  // Returns the (left, right) leaf ids.
  std::pair<LeafId, LeafId> ApplySplit(LeafId leaf, const SplitTest& test);

  // Records the prediction and instance count a leaf reports.
  void SetLeafSummary(LeafId leaf, int majority_class, int64_t seen);
  const Leaf& leaf(LeafId id) const;
  bool HasLeaf(LeafId id) const { return leaf_index_.contains(id); }
  // Ascending.
  std::vector<LeafId> LeafIds() const;
  LeafId next_leaf_id() const { return next_leaf_id_; }

  TreeMetrics Metrics() const;

  // Pre-order, one node per line:
  //   I <attr> <=<t>     I <attr> in{v1,v2}     L <leaf_id> c=<class> n=<seen>
  std::string Serialize() const;
  static DecisionTree Parse(std::string_view text, const Schema& schema);

 private:
  int LeafNodeIndex(const Instance& instance) const;

  Schema schema_;
  std::vector<Node> nodes_;
  std::map<LeafId, int> leaf_index_;
  LeafId next_leaf_id_ = 1;
};

// Identical shape, tests (exact thresholds and subsets) and leaf classes.
bool TreesEqual(const DecisionTree& a, const DecisionTree& b);

}  // namespace pdstree

#endif  // PDSTREE_TREE_H_
