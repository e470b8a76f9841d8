// Copyright 2026 The Xplain Authors.
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

#include "leaf_tuples.h"

#include <algorithm>
#include <atomic>
#include <thread>

#include "fast_eval.h"
#include "xplain/error.h"

namespace xplain::internal {

namespace {

class TupleSearch {
 public:
  TupleSearch(const std::vector<std::vector<PathDescriptor>>& paths,
              const std::vector<int64_t>& weights, int64_t threshold,
              bool target, int feature_count, bool first_only,
              std::atomic<bool>& stop)
      : paths_(paths),
        weights_(weights),
        threshold_(threshold),
        target_(target),
        first_only_(first_only),
        stop_(stop),
        assignment_(feature_count, -1) {
    const int k = static_cast<int>(paths.size());
    best_.assign(k + 1, 0);
    worst_.assign(k + 1, 0);
    for (int t = k - 1; t >= 0; --t) {
      int64_t best = INT64_MIN;
      int64_t worst = INT64_MAX;
      for (const PathDescriptor& p : paths[t]) {
        const int64_t v = p.label ? weights[t] : 0;
        best = std::max(best, v);
        worst = std::min(worst, v);
      }
      best_[t] = best_[t + 1] + best;
      worst_[t] = worst_[t + 1] + worst;
    }
  }

  // Explores tuples whose first member is paths_[0][first].
  void RunFrom(size_t first, std::vector<MergedAssignment>& out) {
    out_ = &out;
    Extend(0, paths_[0][first], 0);
  }

 private:
  void Visit(size_t t, int64_t votes) {
    if (stop_.load(std::memory_order_relaxed)) return;
    if (t == paths_.size()) {
      if ((votes >= threshold_) == target_) {
        out_->push_back(assignment_);
        if (first_only_) stop_.store(true);
      }
      return;
    }
    if (target_ ? votes + best_[t] < threshold_
                : votes + worst_[t] >= threshold_) {
      return;
    }
    for (const PathDescriptor& p : paths_[t]) {
      Extend(t, p, votes);
      if (stop_.load(std::memory_order_relaxed)) return;
    }
  }

  void Extend(size_t t, const PathDescriptor& path, int64_t votes) {
    const size_t mark = trail_.size();
    bool consistent = true;
    for (const auto& [feature, value] : path.assignment) {
      int8_t& slot = assignment_[feature];
      if (slot == -1) {
        slot = value;
        trail_.push_back(feature);
      } else if (slot != static_cast<int8_t>(value)) {
        consistent = false;
        break;
      }
    }
    if (consistent) Visit(t + 1, votes + (path.label ? weights_[t] : 0));
    while (trail_.size() > mark) {
      assignment_[trail_.back()] = -1;
      trail_.pop_back();
    }
  }

  const std::vector<std::vector<PathDescriptor>>& paths_;
  const std::vector<int64_t>& weights_;
  int64_t threshold_;
  bool target_;
  bool first_only_;
  std::atomic<bool>& stop_;
  MergedAssignment assignment_;
  std::vector<int> trail_;
  std::vector<int64_t> best_;
  std::vector<int64_t> worst_;
  std::vector<MergedAssignment>* out_ = nullptr;
};

}  // namespace

std::vector<MergedAssignment> MatchingLeafTuples(const Ensemble& ensemble,
                                                 bool target, bool first_only,
                                                 const Limits& limits) {
  if (!ensemble.AllTrees()) {
    Fail(ErrorCode::kUnsupportedModel,
         "leaf-tuple enumeration requires decision-tree members");
  }
  const int k = ensemble.size();
  std::vector<std::vector<PathDescriptor>> paths;
  paths.reserve(k);
  for (int t = 0; t < k; ++t) {
    paths.push_back(TreePaths(std::get<DecisionTree>(ensemble.models()[t]), t));
  }
  std::vector<Rational> vote_values;
  for (int t = 0; t < k; ++t) vote_values.push_back(ensemble.VoteWeight(t));
  vote_values.push_back(ensemble.VoteThreshold());
  auto scaled = ScaleToInt64(vote_values);
  if (!scaled) {
    Fail(ErrorCode::kResourceExceeded, "voting weights too large to scale");
  }
  const int64_t threshold = scaled->back();
  scaled->pop_back();

  const size_t roots = paths[0].size();
  std::vector<std::vector<MergedAssignment>> buckets(roots);
  std::atomic<bool> stop{false};
  const int n = ensemble.feature_count();
  const size_t workers =
      std::min<size_t>(std::max(1, limits.threads), std::max<size_t>(roots, 1));
  auto work = [&](size_t worker) {
    TupleSearch search(paths, *scaled, threshold, target, n, first_only, stop);
    for (size_t r = worker; r < roots; r += workers) {
      if (stop.load()) break;
      search.RunFrom(r, buckets[r]);
    }
  };
  if (workers <= 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    for (size_t w = 0; w < workers; ++w) threads.emplace_back(work, w);
    for (std::thread& t : threads) t.join();
  }
  std::vector<MergedAssignment> out;
  for (auto& bucket : buckets) {
    for (auto& a : bucket) out.push_back(std::move(a));
    if (first_only && !out.empty()) break;
  }
  return out;
}

}  // namespace xplain::internal
