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

#ifndef PDSTREE_HISTOGRAM_H_
#define PDSTREE_HISTOGRAM_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pdstree {

struct Bin {
  double centroid = 0;
  double count = 0;

  bool operator==(const Bin&) const = default;
};

// Bounded-size mergeable sketch of a numeric distribution.
//
// Bins are kept strictly sorted by centroid. Whenever the bin count exceeds
// the budget, the two adjacent bins with the smallest centroid gap (leftmost
// pair on ties) are replaced by one bin at their count-weighted mean. Until
// the first such merge the bins are an exact record of the values seen.
class StreamingHistogram {
 public:
  explicit StreamingHistogram(int max_bins = 10);

  // Builds a histogram from an explicit bin list, compressing to the budget.
  // Bins must be sorted by strictly increasing centroid with positive counts.
  static StreamingHistogram FromBins(int max_bins, std::vector<Bin> bins);

  // Adds one observation of `x` (must be finite).
  void Update(double x);

  // Folds `other` into this histogram. Both must share the same budget.
  void Merge(const StreamingHistogram& other);

  // Copy of this histogram compressed to a (usually smaller) budget.
  StreamingHistogram WithBudget(int max_bins) const;

  // Estimated number of points <= b, by trapezoidal interpolation between
  // adjacent bins. 0 below the first centroid, total() at or above the last.
  double Sum(double b) const;

  // Up to m-1 strictly increasing thresholds u_j with Sum(u_j) ~ j*total/m.
  // Thresholds are confined to [first centroid, last centroid]; a single-bin
  // histogram has none.
  std::vector<double> Uniform(int m) const;

  std::span<const Bin> bins() const { return bins_; }
  int size() const { return static_cast<int>(bins_.size()); }
  bool empty() const { return bins_.empty(); }
  int max_bins() const { return max_bins_; }
  double total() const { return total_; }
  // True until a compression has merged two bins. Parsed histograms that
  // fill their budget are conservatively treated as lossy.
  bool exact() const { return !lossy_; }

  // `p1:m1;p2:m2;...` with shortest round-trip reals. Empty histogram -> "".
  std::string Serialize() const;
  static StreamingHistogram Parse(std::string_view text, int max_bins);

  // Bitwise comparison of budget and bins; exactness is not compared.
  bool operator==(const StreamingHistogram& other) const;

 private:
  void Compress();

  std::vector<Bin> bins_;
  int max_bins_;
  double total_ = 0;
  bool lossy_ = false;
};

// Per-domain-value counts for one nominal attribute (and one class).
struct NominalCounts {
  std::vector<int64_t> counts;

  NominalCounts() = default;
  explicit NominalCounts(int domain_size) : counts(domain_size, 0) {}

  void Update(int value);
  void Add(const NominalCounts& other);
  int64_t total() const;

  bool operator==(const NominalCounts&) const = default;
};

}  // namespace pdstree

#endif  // PDSTREE_HISTOGRAM_H_
