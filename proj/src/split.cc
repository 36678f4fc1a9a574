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

#include "pdstree/split.h"

#include <algorithm>
#include <cmath>

#include "pdstree/error.h"

namespace pdstree {

LeafStats LeafStats::Empty(const Schema& schema, int max_bins) {
  LeafStats stats;
  const int k = schema.num_classes();
  stats.class_counts.assign(k, 0);
  stats.attributes.resize(schema.attributes.size());
  for (size_t a = 0; a < schema.attributes.size(); ++a) {
    const AttributeSpec& spec = schema.attributes[a];
    if (spec.is_numeric()) {
      stats.attributes[a].histograms.assign(k, StreamingHistogram(max_bins));
    } else {
      stats.attributes[a].nominal.assign(k, NominalCounts(spec.domain_size()));
    }
  }
  return stats;
}

void LeafStats::Add(const Instance& instance) {
  ++class_counts[instance.label];
  ++n;
  for (size_t a = 0; a < attributes.size(); ++a) {
    AttributeStats& attr = attributes[a];
    if (attr.is_numeric()) {
      attr.histograms[instance.label].Update(instance.values[a]);
    } else {
      attr.nominal[instance.label].Update(static_cast<int>(instance.values[a]));
    }
  }
}

void LeafStats::Merge(const LeafStats& other) {
  if (other.class_counts.size() != class_counts.size() ||
      other.attributes.size() != attributes.size()) {
    throw Error(ErrorCode::kSchemaMismatch, "leaf statistics shape mismatch");
  }
  for (size_t k = 0; k < class_counts.size(); ++k) {
    class_counts[k] += other.class_counts[k];
  }
  n += other.n;
  for (size_t a = 0; a < attributes.size(); ++a) {
    AttributeStats& mine = attributes[a];
    const AttributeStats& theirs = other.attributes[a];
    if (mine.is_numeric() != theirs.is_numeric()) {
      throw Error(ErrorCode::kSchemaMismatch, "attribute kind mismatch");
    }
    for (size_t k = 0; k < mine.histograms.size(); ++k) {
      mine.histograms[k].Merge(theirs.histograms[k]);
    }
    for (size_t k = 0; k < mine.nominal.size(); ++k) {
      mine.nominal[k].Add(theirs.nominal[k]);
    }
  }
}

LeafStats LeafStats::WithBudget(int max_bins) const {
  LeafStats out = *this;
  for (AttributeStats& attr : out.attributes) {
    for (StreamingHistogram& h : attr.histograms) h = h.WithBudget(max_bins);
  }
  return out;
}

int LeafStats::MajorityClass() const {
  int best = 0;
  for (size_t k = 1; k < class_counts.size(); ++k) {
    if (class_counts[k] > class_counts[best]) best = static_cast<int>(k);
  }
  return best;
}

double HoeffdingBound(int64_t n, double delta) {
  return std::sqrt(std::log(1.0 / delta) / (2.0 * static_cast<double>(n)));
}

void SplitConfig::Validate() const {
  if (!(delta > 0 && delta < 1)) {
    throw Error(ErrorCode::kInvalidArgument, "delta must lie in (0, 1)");
  }
  if (!(tau >= 0)) throw Error(ErrorCode::kInvalidArgument, "tau must be >= 0");
  if (n_min < 1) throw Error(ErrorCode::kInvalidArgument, "n_min must be >= 1");
  if (candidates < 2) {
    throw Error(ErrorCode::kInvalidArgument, "candidates must be >= 2");
  }
  if (nominal_cap < 1) {
    throw Error(ErrorCode::kInvalidArgument, "nominal_cap must be >= 1");
  }
  if (bound == nullptr) throw Error(ErrorCode::kInvalidArgument, "no bound");
}

namespace {

double Total(std::span<const double> counts) {
  double total = 0;
  for (double c : counts) total += c;
  return total;
}

}  // namespace

double Gini(std::span<const double> counts) {
  const double total = Total(counts);
  if (!(total > 0)) {
    throw Error(ErrorCode::kInvalidArgument, "gini of an empty distribution");
  }
  double sum_sq = 0;
  for (double c : counts) {
    const double p = c / total;
    sum_sq += p * p;
  }
  return 1.0 - sum_sq;
}

double GiniGain(std::span<const double> parent, std::span<const double> left,
                std::span<const double> right) {
  if (parent.size() != left.size() || parent.size() != right.size()) {
    throw Error(ErrorCode::kInconsistentCounts, "class count length mismatch");
  }
  const double n = Total(parent);
  if (!(n > 0)) {
    throw Error(ErrorCode::kInvalidArgument, "gain of an empty parent");
  }
  const double tolerance = 1e-9 * std::max(1.0, n);
  for (size_t k = 0; k < parent.size(); ++k) {
    if (std::abs(left[k] + right[k] - parent[k]) > tolerance) {
      throw Error(ErrorCode::kInconsistentCounts,
                  "left + right differs from parent for class " +
                      std::to_string(k));
    }
  }
  const double n_left = Total(left);
  const double n_right = Total(right);
  if (n_left <= 0 || n_right <= 0) return 0;
  return Gini(parent) - (n_left / n) * Gini(left) - (n_right / n) * Gini(right);
}

namespace {

std::vector<double> ToReal(const std::vector<int64_t>& counts) {
  return std::vector<double>(counts.begin(), counts.end());
}

// Finishes a candidate from its left counts; returns false if a side is empty.
bool FillCandidate(const std::vector<double>& parent, std::vector<double> left,
                   CandidateSplit& candidate) {
  std::vector<double> right(parent.size());
  double n_left = 0, n_right = 0;
  for (size_t k = 0; k < parent.size(); ++k) {
    left[k] = std::clamp(left[k], 0.0, parent[k]);
    right[k] = parent[k] - left[k];
    n_left += left[k];
    n_right += right[k];
  }
  if (n_left <= 0 || n_right <= 0) return false;
  candidate.gain = std::max(0.0, GiniGain(parent, left, right));
  candidate.left_counts = std::move(left);
  candidate.right_counts = std::move(right);
  return true;
}

void EnumerateNumeric(const LeafStats& stats, int attribute,
                      const SplitConfig& config,
                      std::vector<CandidateSplit>& out) {
  const auto& histograms = stats.attributes[attribute].histograms;
  const std::vector<double> parent = ToReal(stats.class_counts);
  StreamingHistogram combined(histograms.front().max_bins());
  for (const auto& h : histograms) combined.Merge(h);
  if (combined.size() < 2) return;

  const size_t k_classes = histograms.size();
  if (combined.exact()) {
    // Lossless: every boundary between observed values is a candidate and
    // per-class counts below it are exact.
    const auto bins = combined.bins();
    for (size_t i = 0; i + 1 < bins.size(); ++i) {
      const double threshold = (bins[i].centroid + bins[i + 1].centroid) / 2;
      std::vector<double> left(k_classes, 0.0);
      for (size_t k = 0; k < k_classes; ++k) {
        for (const Bin& bin : histograms[k].bins()) {
          if (bin.centroid > threshold) break;
          left[k] += bin.count;
        }
      }
      CandidateSplit candidate;
      candidate.attribute = attribute;
      candidate.test = SplitTest::Threshold(attribute, threshold);
      if (FillCandidate(parent, std::move(left), candidate)) {
        out.push_back(std::move(candidate));
      }
    }
    return;
  }

  for (double threshold : combined.Uniform(config.candidates)) {
    std::vector<double> left(k_classes, 0.0);
    for (size_t k = 0; k < k_classes; ++k) {
      if (!histograms[k].empty()) left[k] = histograms[k].Sum(threshold);
    }
    CandidateSplit candidate;
    candidate.attribute = attribute;
    candidate.test = SplitTest::Threshold(attribute, threshold);
    if (FillCandidate(parent, std::move(left), candidate)) {
      out.push_back(std::move(candidate));
    }
  }
}

void EnumerateNominal(const LeafStats& stats, int attribute,
                      const SplitConfig& config,
                      std::vector<CandidateSplit>& out) {
  const auto& tables = stats.attributes[attribute].nominal;
  const std::vector<double> parent = ToReal(stats.class_counts);
  const int domain = static_cast<int>(tables.front().counts.size());
  const size_t k_classes = tables.size();

  auto emit = [&](std::vector<int> subset) {
    std::vector<double> left(k_classes, 0.0);
    for (size_t k = 0; k < k_classes; ++k) {
      for (int v : subset) left[k] += static_cast<double>(tables[k].counts[v]);
    }
    CandidateSplit candidate;
    candidate.attribute = attribute;
    candidate.test = SplitTest::Subset(attribute, std::move(subset));
    if (FillCandidate(parent, std::move(left), candidate)) {
      out.push_back(std::move(candidate));
    }
  };

  if (domain < 2) return;
  if (domain <= config.nominal_cap) {
    // Subsets of {0..d-2}; the last value always sits on the right, so each
    // binary partition appears exactly once.
    const uint64_t limit = uint64_t{1} << (domain - 1);
    for (uint64_t mask = 1; mask < limit; ++mask) {
      std::vector<int> subset;
      for (int v = 0; v < domain - 1; ++v) {
        if (mask & (uint64_t{1} << v)) subset.push_back(v);
      }
      emit(std::move(subset));
    }
  } else {
    for (int v = 0; v < domain; ++v) emit({v});
  }
}

}  // namespace

std::vector<CandidateSplit> EnumerateCandidates(const LeafStats& stats,
                                                int attribute,
                                                const SplitConfig& config) {
  if (stats.n <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "no instances in leaf statistics");
  }
  if (attribute < 0 || attribute >= static_cast<int>(stats.attributes.size())) {
    throw Error(ErrorCode::kOutOfRange, "attribute index out of range");
  }
  std::vector<CandidateSplit> out;
  if (stats.attributes[attribute].is_numeric()) {
    EnumerateNumeric(stats, attribute, config, out);
  } else {
    EnumerateNominal(stats, attribute, config, out);
  }
  return out;
}

bool PreferCandidate(const CandidateSplit& a, const CandidateSplit& b) {
  if (a.gain > b.gain + kGainTieTolerance) return true;
  if (b.gain > a.gain + kGainTieTolerance) return false;
  if (a.attribute != b.attribute) return a.attribute < b.attribute;
  if (a.test.kind == SplitTest::Kind::kThreshold) {
    return a.test.threshold < b.test.threshold;
  }
  return a.test.subset < b.test.subset;
}

std::optional<BestTwo> TryFindBestTwo(const LeafStats& stats,
                                      const SplitConfig& config) {
  std::vector<CandidateSplit> per_attribute;
  for (int a = 0; a < static_cast<int>(stats.attributes.size()); ++a) {
    auto candidates = EnumerateCandidates(stats, a, config);
    if (candidates.empty()) continue;
    size_t best = 0;
    for (size_t i = 1; i < candidates.size(); ++i) {
      if (PreferCandidate(candidates[i], candidates[best])) best = i;
    }
    per_attribute.push_back(std::move(candidates[best]));
  }
  if (per_attribute.empty()) return std::nullopt;
  size_t best = 0;
  for (size_t i = 1; i < per_attribute.size(); ++i) {
    if (PreferCandidate(per_attribute[i], per_attribute[best])) best = i;
  }
  BestTwo result;
  for (size_t i = 0; i < per_attribute.size(); ++i) {
    if (i != best) {
      result.second_gain = std::max(result.second_gain, per_attribute[i].gain);
    }
  }
  result.best = std::move(per_attribute[best]);
  return result;
}

BestTwo FindBestTwo(const LeafStats& stats, const SplitConfig& config) {
  auto result = TryFindBestTwo(stats, config);
  if (!result) {
    throw Error(ErrorCode::kNoCandidates, "no attribute yields a candidate split");
  }
  return std::move(*result);
}

SplitDecision DecideSplit(const CandidateSplit& best, double second_gain,
                          int64_t n, const SplitConfig& config) {
  SplitDecision decision;
  if (n < config.n_min || best.gain <= 0) return decision;
  decision.epsilon = config.bound(n, config.delta);
  decision.margin = best.gain - second_gain;
  if (decision.margin > decision.epsilon || decision.epsilon < config.tau) {
    decision.kind = SplitDecision::Kind::kSplit;
    decision.test = best.test;
  }
  return decision;
}

}  // namespace pdstree
