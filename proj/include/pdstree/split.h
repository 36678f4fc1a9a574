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

#ifndef PDSTREE_SPLIT_H_
#define PDSTREE_SPLIT_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "pdstree/histogram.h"
#include "pdstree/schema.h"
#include "pdstree/tree.h"

namespace pdstree {

// Sufficient statistics of one leaf: class counts plus, for every attribute,
// one histogram (numeric) or count table (nominal) per class.
struct LeafStats {
  struct AttributeStats {
    std::vector<StreamingHistogram> histograms;  // numeric, one per class
    std::vector<NominalCounts> nominal;          // nominal, one per class

    bool is_numeric() const { return !histograms.empty(); }
    bool operator==(const AttributeStats&) const = default;
  };

  std::vector<int64_t> class_counts;
  int64_t n = 0;
  std::vector<AttributeStats> attributes;

  static LeafStats Empty(const Schema& schema, int max_bins);

  void Add(const Instance& instance);
  // Adds counts and merges histograms. Budgets must agree.
  void Merge(const LeafStats& other);
  LeafStats WithBudget(int max_bins) const;
  // Lowest class index among the most frequent classes.
  int MajorityClass() const;

  int num_classes() const { return static_cast<int>(class_counts.size()); }
  bool operator==(const LeafStats&) const = default;
};

struct CandidateSplit {
  int attribute = 0;
  SplitTest test;
  double gain = 0;
  // Estimated per-class counts on each side of the test.
  std::vector<double> left_counts;
  std::vector<double> right_counts;
};

// Bound on the gain estimation error after n observations at confidence
// 1 - delta.
using SplitBound = double (*)(int64_t n, double delta);

double HoeffdingBound(int64_t n, double delta);

struct SplitConfig {
  double delta = 1e-4;
  double tau = 0.05;
  int64_t n_min = 200;
  // Candidate thresholds per numeric attribute once histograms are lossy.
  int candidates = 10;
  // Nominal domains up to this size get exhaustive binary partitions.
  int nominal_cap = 12;
  SplitBound bound = &HoeffdingBound;

  void Validate() const;
};

struct SplitDecision {
  enum class Kind { kDefer, kSplit };

  Kind kind = Kind::kDefer;
  SplitTest test;  // meaningful for kSplit only
  double epsilon = 0;
  double margin = 0;  // best gain - second best gain

  bool should_split() const { return kind == Kind::kSplit; }
};

// Gains closer than this are treated as tied.
inline constexpr double kGainTieTolerance = 1e-12;

double Gini(std::span<const double> counts);
double GiniGain(std::span<const double> parent, std::span<const double> left,
                std::span<const double> right);

// All binary partitions of one attribute, in ascending threshold order
// (numeric) or ascending subset bitmask order (nominal).
std::vector<CandidateSplit> EnumerateCandidates(const LeafStats& stats,
                                                int attribute,
                                                const SplitConfig& config);

// True if `a` should be preferred over `b`: higher gain, then lower
// attribute index, then lower threshold / lexicographically smaller subset.
bool PreferCandidate(const CandidateSplit& a, const CandidateSplit& b);

struct BestTwo {
  CandidateSplit best;
  // Best gain among all attributes other than best.attribute (0 if none).
  double second_gain = 0;
};

// Throws kNoCandidates when no attribute yields a candidate.
BestTwo FindBestTwo(const LeafStats& stats, const SplitConfig& config);
std::optional<BestTwo> TryFindBestTwo(const LeafStats& stats,
                                      const SplitConfig& config);

SplitDecision DecideSplit(const CandidateSplit& best, double second_gain,
                          int64_t n, const SplitConfig& config);

}  // namespace pdstree

#endif  // PDSTREE_SPLIT_H_
