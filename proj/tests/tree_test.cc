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

#include <random>

#include "gtest/gtest.h"
#include "pdstree/error.h"
#include "pdstree/schema.h"

namespace pdstree {
namespace {

Schema TestSchema() {
  return ParseSchema("attr x0 numeric\nattr x1 numeric\nattr n0 nominal a,b,c\nclasses p,q\n");
}

template <typename Fn>
ErrorCode CodeOf(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an Error";
  return ErrorCode::kInvalidArgument;
}

// Splits leaves at random until `splits` internal nodes exist.
DecisionTree RandomTree(const Schema& schema, int splits, uint64_t seed) {
  std::mt19937_64 rng(seed);
  DecisionTree tree(schema);
  for (int i = 0; i < splits; ++i) {
    const auto ids = tree.LeafIds();
    const LeafId leaf = ids[rng() % ids.size()];
    const int attribute = static_cast<int>(rng() % 3);
    if (attribute == 2) {
      tree.ApplySplit(leaf, SplitTest::Subset(2, {static_cast<int>(rng() % 3)}));
    } else {
      tree.ApplySplit(leaf, SplitTest::Threshold(
                                attribute, std::uniform_real_distribution<double>(-5, 5)(rng)));
    }
  }
  for (LeafId id : tree.LeafIds()) {
    tree.SetLeafSummary(id, static_cast<int>(rng() % 2), static_cast<int64_t>(rng() % 100));
  }
  return tree;
}

TEST(Route, SingleLeaf) {
  DecisionTree tree(TestSchema());
  EXPECT_EQ(tree.Route({{1.0, 2.0, 0}, 0}), 0);
  EXPECT_EQ(tree.Route({{-9.0, 7.0, 2}, 1}), 0);
}

TEST(Route, BoundaryGoesLeft) {
  DecisionTree tree(TestSchema());
  const auto [left, right] = tree.ApplySplit(0, SplitTest::Threshold(0, 2.0));
  EXPECT_EQ(tree.Route({{2.0, 0, 0}, 0}), left);
  EXPECT_EQ(tree.Route({{3.5, 0, 0}, 0}), right);
}

TEST(Route, NominalSubset) {
  DecisionTree tree(TestSchema());
  const auto [left, right] = tree.ApplySplit(0, SplitTest::Subset(2, {0, 2}));
  EXPECT_EQ(tree.Route({{0, 0, 0}, 0}), left);
  EXPECT_EQ(tree.Route({{0, 0, 1}, 0}), right);
  EXPECT_EQ(tree.Route({{0, 0, 2}, 0}), left);
}

TEST(Route, SchemaMismatch) {
  DecisionTree tree(TestSchema());
  EXPECT_EQ(CodeOf([&] { tree.Route({{1.0}, 0}); }), ErrorCode::kSchemaMismatch);
  EXPECT_EQ(CodeOf([&] { tree.Predict({{1.0, 1.0, 5}, 0}); }), ErrorCode::kSchemaMismatch);
}

TEST(Predict, LeafSummary) {
  DecisionTree tree(TestSchema());
  EXPECT_EQ(tree.Predict({{0, 0, 0}, 1}), 0);
  const auto [left, right] = tree.ApplySplit(0, SplitTest::Threshold(0, 0.0));
  tree.SetLeafSummary(right, 1, 12);
  EXPECT_EQ(tree.Predict({{1, 0, 0}, 0}), 1);
  EXPECT_EQ(tree.Predict({{-1, 0, 0}, 0}), 0);
  EXPECT_EQ(tree.leaf(right).seen, 12);
  (void)left;
}

TEST(ApplySplit, SmallestSplit) {
  DecisionTree tree(TestSchema());
  const auto [left, right] = tree.ApplySplit(0, SplitTest::Threshold(1, 0.5));
  EXPECT_EQ(left, 1);
  EXPECT_EQ(right, 2);
  EXPECT_EQ(tree.Metrics(), (TreeMetrics{2, 3, 2}));
  EXPECT_FALSE(tree.HasLeaf(0));
  EXPECT_EQ(tree.LeafIds(), (std::vector<LeafId>{1, 2}));
}

TEST(ApplySplit, Errors) {
  DecisionTree tree(TestSchema());
  tree.ApplySplit(0, SplitTest::Threshold(0, 0.0));
  EXPECT_EQ(CodeOf([&] { tree.ApplySplit(0, SplitTest::Threshold(0, 1.0)); }),
            ErrorCode::kNotALeaf);
  EXPECT_EQ(CodeOf([&] { tree.ApplySplit(99, SplitTest::Threshold(0, 1.0)); }),
            ErrorCode::kUnknownLeaf);
  // Threshold on a nominal attribute, subsets that are empty or the whole domain.
  EXPECT_EQ(CodeOf([&] { tree.ApplySplit(1, SplitTest::Threshold(2, 1.0)); }),
            ErrorCode::kSchemaMismatch);
  EXPECT_EQ(CodeOf([&] { tree.ApplySplit(1, SplitTest::Subset(2, {})); }),
            ErrorCode::kSchemaMismatch);
  EXPECT_EQ(CodeOf([&] { tree.ApplySplit(1, SplitTest::Subset(2, {0, 1, 2})); }),
            ErrorCode::kSchemaMismatch);
  EXPECT_EQ(CodeOf([&] { tree.ApplySplit(1, SplitTest::Subset(0, {0})); }),
            ErrorCode::kSchemaMismatch);
  EXPECT_EQ(tree.Metrics(), (TreeMetrics{2, 3, 2}));
}

TEST(Metrics, KSplitsInduction) {
  for (int k = 0; k < 40; ++k) {
    const DecisionTree tree = RandomTree(TestSchema(), k, static_cast<uint64_t>(k));
    const TreeMetrics m = tree.Metrics();
    EXPECT_EQ(m.node_count, 2 * k + 1);
    EXPECT_EQ(m.leaf_count, k + 1);
    EXPECT_EQ(m.leaf_count, (m.node_count + 1) / 2);
    EXPECT_GE(m.depth, 1);
    EXPECT_LE(m.depth, k + 1);
  }
}

TEST(Metrics, CompleteDepthThree) {
  DecisionTree tree(TestSchema());
  const auto [l, r] = tree.ApplySplit(0, SplitTest::Threshold(0, 0.0));
  tree.ApplySplit(l, SplitTest::Threshold(1, 0.0));
  tree.ApplySplit(r, SplitTest::Threshold(1, 0.0));
  EXPECT_EQ(tree.Metrics(), (TreeMetrics{3, 7, 4}));
}

TEST(Metrics, LeafIdsNeverReused) {
  DecisionTree tree(TestSchema());
  std::set<LeafId> seen = {0};
  for (int i = 0; i < 20; ++i) {
    const LeafId target = tree.LeafIds().back();
    const auto [l, r] = tree.ApplySplit(target, SplitTest::Threshold(0, i));
    EXPECT_TRUE(seen.insert(l).second);
    EXPECT_TRUE(seen.insert(r).second);
  }
  EXPECT_EQ(tree.next_leaf_id(), 41);
}

TEST(Serialize, SingleLeaf) {
  EXPECT_EQ(DecisionTree(TestSchema()).Serialize(), "L 0 c=0 n=0\n");
}

TEST(Serialize, Layout) {
  DecisionTree tree(TestSchema());
  const auto [l, r] = tree.ApplySplit(0, SplitTest::Threshold(0, 2.5));
  tree.ApplySplit(r, SplitTest::Subset(2, {1}));
  tree.SetLeafSummary(l, 1, 7);
  EXPECT_EQ(tree.Serialize(),
            "I 0 <=2.5\n"
            "L 1 c=1 n=7\n"
            "I 2 in{1}\n"
            "L 3 c=0 n=0\n"
            "L 4 c=0 n=0\n");
}

TEST(Serialize, RoundTripProperty) {
  const Schema schema = TestSchema();
  for (uint64_t seed = 0; seed < 100; ++seed) {
    const DecisionTree tree = RandomTree(schema, static_cast<int>(seed % 25), seed);
    const DecisionTree parsed = DecisionTree::Parse(tree.Serialize(), schema);
    EXPECT_TRUE(TreesEqual(tree, parsed));
    EXPECT_EQ(parsed.Serialize(), tree.Serialize());
    EXPECT_EQ(parsed.LeafIds(), tree.LeafIds());
    EXPECT_EQ(parsed.next_leaf_id(), tree.next_leaf_id());
  }
}

TEST(Parse, Errors) {
  const Schema schema = TestSchema();
  EXPECT_EQ(CodeOf([&] { DecisionTree::Parse("I 0 <=2.5\nL 1 c=0 n=0\n", schema); }),
            ErrorCode::kSyntax);
  EXPECT_EQ(CodeOf([&] { DecisionTree::Parse("", schema); }), ErrorCode::kSyntax);
  EXPECT_EQ(CodeOf([&] { DecisionTree::Parse("L 0 c=0 n=0\nL 1 c=0 n=0\n", schema); }),
            ErrorCode::kSyntax);
  EXPECT_EQ(CodeOf([&] { DecisionTree::Parse("X\n", schema); }), ErrorCode::kSyntax);
  EXPECT_EQ(CodeOf([&] { DecisionTree::Parse("I 2 <=1\nL 1 c=0 n=0\nL 2 c=0 n=0\n", schema); }),
            ErrorCode::kSchemaMismatch);
}

TEST(TreesEqual, DetectsDifferences) {
  const Schema schema = TestSchema();
  DecisionTree a(schema), b(schema), c(schema);
  a.ApplySplit(0, SplitTest::Threshold(0, 1.0));
  b.ApplySplit(0, SplitTest::Threshold(0, 1.0));
  c.ApplySplit(0, SplitTest::Threshold(0, std::nextafter(1.0, 2.0)));
  EXPECT_TRUE(TreesEqual(a, b));
  EXPECT_FALSE(TreesEqual(a, c));
  b.SetLeafSummary(1, 1, 3);
  EXPECT_FALSE(TreesEqual(a, b));
  // Seen counts are not part of equality.
  a.SetLeafSummary(1, 1, 99);
  EXPECT_TRUE(TreesEqual(a, b));
}

}  // namespace
}  // namespace pdstree
