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

#include "pdstree/histogram.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <queue>
#include <tuple>

#include "pdstree/error.h"
#include "pdstree/text.h"

namespace pdstree {
namespace {

Bin MergePair(const Bin& left, const Bin& right) {
  const double count = left.count + right.count;
  return {(left.centroid * left.count + right.centroid * right.count) / count,
          count};
}

// Repeatedly merges the minimum-gap adjacent pair (leftmost on ties) until at
// most `max_bins` remain. Uses a heap with lazy invalidation over a linked
// list of the original positions; positions keep their relative order, so
// "smallest left position" is "leftmost pair".
void CompressInPlace(std::vector<Bin>& bins, int max_bins) {
  const int n = static_cast<int>(bins.size());
  if (n <= max_bins) return;
  if (n == max_bins + 1) {
    int best = 0;
    double best_gap = bins[1].centroid - bins[0].centroid;
    for (int i = 1; i + 1 < n; ++i) {
      const double gap = bins[i + 1].centroid - bins[i].centroid;
      if (gap < best_gap) {
        best_gap = gap;
        best = i;
      }
    }
    bins[best] = MergePair(bins[best], bins[best + 1]);
    bins.erase(bins.begin() + best + 1);
    return;
  }

  std::vector<int> next(n), prev(n), stamp(n, 0);
  std::vector<bool> alive(n, true);
  for (int i = 0; i < n; ++i) {
    next[i] = i + 1;
    prev[i] = i - 1;
  }
  // (gap, left, right, stamp of left, stamp of right)
  using Entry = std::tuple<double, int, int, int, int>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  auto push = [&](int left) {
    const int right = next[left];
    if (left < 0 || right >= n) return;
    heap.emplace(bins[right].centroid - bins[left].centroid, left, right,
                 stamp[left], stamp[right]);
  };
  for (int i = 0; i + 1 < n; ++i) push(i);

  int remaining = n;
  while (remaining > max_bins) {
    const auto [gap, left, right, stamp_left, stamp_right] = heap.top();
    heap.pop();
    if (!alive[left] || !alive[right] || next[left] != right ||
        stamp[left] != stamp_left || stamp[right] != stamp_right) {
      continue;
    }
    bins[left] = MergePair(bins[left], bins[right]);
    alive[right] = false;
    ++stamp[left];
    next[left] = next[right];
    if (next[right] < n) prev[next[right]] = left;
    --remaining;
    if (prev[left] >= 0) push(prev[left]);
    push(left);
  }

  size_t out = 0;
  for (int i = 0; i < n; ++i) {
    if (alive[i]) bins[out++] = bins[i];
  }
  bins.resize(out);
}

void CheckBins(const std::vector<Bin>& bins) {
  for (size_t i = 0; i < bins.size(); ++i) {
    if (!std::isfinite(bins[i].centroid) || !(bins[i].count > 0) ||
        !std::isfinite(bins[i].count)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "bin needs a finite centroid and positive count");
    }
    if (i > 0 && !(bins[i - 1].centroid < bins[i].centroid)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "bin centroids must be strictly increasing");
    }
  }
}

}  // namespace

StreamingHistogram::StreamingHistogram(int max_bins) : max_bins_(max_bins) {
  if (max_bins < 1) {
    throw Error(ErrorCode::kInvalidArgument, "max_bins must be positive");
  }
}

StreamingHistogram StreamingHistogram::FromBins(int max_bins,
                                                std::vector<Bin> bins) {
  CheckBins(bins);
  StreamingHistogram h(max_bins);
  for (const Bin& bin : bins) h.total_ += bin.count;
  h.bins_ = std::move(bins);
  h.Compress();
  return h;
}

void StreamingHistogram::Update(double x) {
  if (!std::isfinite(x)) {
    throw Error(ErrorCode::kNonFiniteValue, "histogram update with non-finite value");
  }
  total_ += 1;
  auto it = std::lower_bound(
      bins_.begin(), bins_.end(), x,
      [](const Bin& bin, double value) { return bin.centroid < value; });
  if (it != bins_.end() && it->centroid == x) {
    it->count += 1;
    return;
  }
  bins_.insert(it, Bin{x, 1});
  Compress();
}

void StreamingHistogram::Merge(const StreamingHistogram& other) {
  if (other.max_bins_ != max_bins_) {
    throw Error(ErrorCode::kBinBudgetMismatch,
                "cannot merge histograms with budgets " +
                    std::to_string(max_bins_) + " and " +
                    std::to_string(other.max_bins_));
  }
  if (other.bins_.empty()) return;
  std::vector<Bin> merged;
  merged.reserve(bins_.size() + other.bins_.size());
  size_t i = 0, j = 0;
  while (i < bins_.size() || j < other.bins_.size()) {
    if (j == other.bins_.size() ||
        (i < bins_.size() && bins_[i].centroid < other.bins_[j].centroid)) {
      merged.push_back(bins_[i++]);
    } else if (i == bins_.size() ||
               other.bins_[j].centroid < bins_[i].centroid) {
      merged.push_back(other.bins_[j++]);
    } else {
      merged.push_back({bins_[i].centroid, bins_[i].count + other.bins_[j].count});
      ++i;
      ++j;
    }
  }
  bins_ = std::move(merged);
  total_ += other.total_;
  lossy_ = lossy_ || other.lossy_;
  Compress();
}

StreamingHistogram StreamingHistogram::WithBudget(int max_bins) const {
  StreamingHistogram h(max_bins);
  h.bins_ = bins_;
  h.total_ = total_;
  h.lossy_ = lossy_;
  h.Compress();
  return h;
}

void StreamingHistogram::Compress() {
  if (size() <= max_bins_) return;
  CompressInPlace(bins_, max_bins_);
  lossy_ = true;
}

double StreamingHistogram::Sum(double b) const {
  if (bins_.empty()) {
    throw Error(ErrorCode::kEmptyHistogram, "sum over an empty histogram");
  }
  if (b < bins_.front().centroid) return 0;
  if (b >= bins_.back().centroid) return total_;
  // i: last bin with centroid <= b; i + 1 exists because b < last centroid.
  const auto upper = std::upper_bound(
      bins_.begin(), bins_.end(), b,
      [](double value, const Bin& bin) { return value < bin.centroid; });
  const size_t i = static_cast<size_t>(upper - bins_.begin()) - 1;
  double below = 0;
  for (size_t j = 0; j < i; ++j) below += bins_[j].count;
  const Bin& lo = bins_[i];
  const Bin& hi = bins_[i + 1];
  const double frac = (b - lo.centroid) / (hi.centroid - lo.centroid);
  const double m_b = lo.count + (hi.count - lo.count) * frac;
  const double s = below + lo.count / 2 + (lo.count + m_b) / 2 * frac;
  return std::clamp(s, 0.0, total_);
}

std::vector<double> StreamingHistogram::Uniform(int m) const {
  if (bins_.empty()) {
    throw Error(ErrorCode::kEmptyHistogram, "uniform over an empty histogram");
  }
  if (m < 2) throw Error(ErrorCode::kInvalidArgument, "uniform needs m >= 2");
  std::vector<double> out;
  if (bins_.size() < 2) return out;

  // cumulative[i] = sum_{j<i} m_j + m_i / 2, the interpolated mass at p_i.
  std::vector<double> cumulative(bins_.size());
  double running = 0;
  for (size_t i = 0; i < bins_.size(); ++i) {
    cumulative[i] = running + bins_[i].count / 2;
    running += bins_[i].count;
  }
  const size_t last = bins_.size() - 1;
  for (int j = 1; j < m; ++j) {
    const double s = j * total_ / m;
    if (s < cumulative.front() || s > cumulative.back()) continue;
    const size_t i = static_cast<size_t>(
        std::upper_bound(cumulative.begin(), cumulative.end(), s) -
        cumulative.begin()) - 1;
    double u;
    if (i == last) {
      u = bins_[last].centroid;
    } else {
      // Solve a z^2 + 2 m_i z - 2 d = 0 for z in [0, 1], in the form that
      // avoids cancellation when a is small.
      const double d = s - cumulative[i];
      const double m_i = bins_[i].count;
      const double a = bins_[i + 1].count - m_i;
      double z = 2 * d / (m_i + std::sqrt(std::max(0.0, m_i * m_i + 2 * a * d)));
      z = std::clamp(z, 0.0, 1.0);
      u = bins_[i].centroid + (bins_[i + 1].centroid - bins_[i].centroid) * z;
    }
    if (out.empty() || u > out.back()) out.push_back(u);
  }
  return out;
}

std::string StreamingHistogram::Serialize() const {
  std::string out;
  for (size_t i = 0; i < bins_.size(); ++i) {
    if (i > 0) out += ';';
    out += FormatReal(bins_[i].centroid);
    out += ':';
    out += FormatReal(bins_[i].count);
  }
  return out;
}

StreamingHistogram StreamingHistogram::Parse(std::string_view text,
                                             int max_bins) {
  std::vector<Bin> bins;
  text = Trim(text);
  if (!text.empty()) {
    for (std::string_view item : SplitString(text, ';')) {
      const size_t colon = item.find(':');
      if (colon == std::string_view::npos) {
        throw Error(ErrorCode::kSyntax,
                    "expected centroid:count, got '" + std::string(item) + "'");
      }
      const auto centroid = ParseReal(item.substr(0, colon));
      const auto count = ParseReal(item.substr(colon + 1));
      if (!centroid || !count) {
        throw Error(ErrorCode::kSyntax, "bad bin '" + std::string(item) + "'");
      }
      bins.push_back({*centroid, *count});
    }
  }
  if (static_cast<int>(bins.size()) > max_bins) {
    throw Error(ErrorCode::kBinBudgetMismatch,
                "serialized histogram exceeds its bin budget");
  }
  StreamingHistogram h = FromBins(max_bins, std::move(bins));
  h.lossy_ = h.size() == max_bins;
  return h;
}

bool StreamingHistogram::operator==(const StreamingHistogram& other) const {
  if (max_bins_ != other.max_bins_ || bins_.size() != other.bins_.size()) {
    return false;
  }
  return bins_.empty() ||
         std::memcmp(bins_.data(), other.bins_.data(),
                     bins_.size() * sizeof(Bin)) == 0;
}

void NominalCounts::Update(int value) {
  if (value < 0 || value >= static_cast<int>(counts.size())) {
    throw Error(ErrorCode::kOutOfRange,
                "nominal index " + std::to_string(value) + " outside domain of size " +
                    std::to_string(counts.size()));
  }
  ++counts[value];
}

void NominalCounts::Add(const NominalCounts& other) {
  if (other.counts.size() != counts.size()) {
    throw Error(ErrorCode::kInvalidArgument, "nominal domain size mismatch");
  }
  for (size_t v = 0; v < counts.size(); ++v) counts[v] += other.counts[v];
}

int64_t NominalCounts::total() const {
  int64_t sum = 0;
  for (int64_t c : counts) sum += c;
  return sum;
}

}  // namespace pdstree
