// Copyright 2026 The robqubo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "robqubo/solver.h"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "robqubo/errors.h"
#include "robqubo/preprocess.h"

namespace robqubo {

namespace {

// Incremental objective updates accumulate rounding error; only count a
// change as progress when it clears that noise.
bool Improves(double candidate, double incumbent) {
  return candidate > incumbent + 1e-9 * std::max(1.0, std::abs(incumbent));
}

using Clock = std::chrono::steady_clock;

class Deadline {
 public:
  explicit Deadline(double seconds)
      : start_(Clock::now()), limited_(seconds > 0.0),
        end_(start_ + std::chrono::duration_cast<Clock::duration>(
                          std::chrono::duration<double>(limited_ ? seconds : 0.0))) {}

  bool Expired() const { return limited_ && Clock::now() >= end_; }
  double Elapsed() const {
    return std::chrono::duration<double>(Clock::now() - start_).count();
  }

 private:
  Clock::time_point start_;
  bool limited_;
  Clock::time_point end_;
};

// h_i = c_ii + 2 sum_j c_ij x_j, so flipping i changes the objective by
// (1 - 2 x_i) h_i.
std::vector<double> LocalFields(const QuboInstance& q, std::span<const std::uint8_t> x) {
  std::vector<double> h(q.diagonals().begin(), q.diagonals().end());
  for (const auto& e : q.entries()) {
    if (e.i == e.j) continue;
    if (x[e.j]) h[e.i] += 2.0 * e.value;
    if (x[e.i]) h[e.j] += 2.0 * e.value;
  }
  return h;
}

void FlipAndUpdate(const QuboInstance& q, Bits& x, std::vector<double>& h, int i) {
  x[i] ^= 1;
  const double sign = x[i] ? 2.0 : -2.0;
  for (const auto& nb : q.neighbors(i)) h[nb.index] += sign * nb.value;
}

void Notify(const SolverConfig& config, double value) {
  if (config.on_improvement) config.on_improvement(value);
}

SolveOutcome EmptyOutcome(const QuboInstance& instance) {
  SolveOutcome out;
  out.solution = BinarySolution::Of(instance, Bits(instance.n(), 0));
  out.status = SolveStatus::kProvenOptimal;
  return out;
}

// Depth-first search over a preprocessed instance. All working state is
// saved on a trail and restored exactly on backtrack.
class BranchAndBoundSearch {
 public:
  BranchAndBoundSearch(const QuboInstance& q, const SolverConfig& config,
                       const Deadline& deadline)
      : q_(q), config_(config), deadline_(deadline), m_(q.n()),
        x_(m_, 0), free_(m_, 1), h_(q.diagonals().begin(), q.diagonals().end()),
        neg_(m_, 0.0), pos_(m_, 0.0) {
    for (int i = 0; i < m_; ++i) {
      for (const auto& nb : q_.neighbors(i)) {
        if (nb.value < 0.0) {
          neg_[i] += nb.value;
        } else {
          pos_[i] += nb.value;
          if (nb.index > i) positive_off_ += 2.0 * nb.value;
        }
      }
      positive_diag_ += std::max(h_[i], 0.0);
    }
    free_count_ = m_;
  }

  // Seeds the incumbent with a steepest-ascent 1-flip local optimum.
  void SeedIncumbent() {
    Bits x(m_, 0);
    std::vector<double> h = LocalFields(q_, x);
    for (;;) {
      int best = -1;
      double best_gain = 0.0;
      for (int i = 0; i < m_; ++i) {
        double gain = x[i] ? -h[i] : h[i];
        if (gain > best_gain && Improves(gain, 0.0)) {
          best_gain = gain;
          best = i;
        }
      }
      if (best < 0) break;
      FlipAndUpdate(q_, x, h, best);
    }
    best_bits_ = std::move(x);
    best_value_ = Evaluate(q_, best_bits_);
    Notify(config_, best_value_);
  }

  // Returns true when the search closed.
  bool Run() {
    Search();
    return !aborted_;
  }

  const Bits& best_bits() const { return best_bits_; }
  std::int64_t nodes() const { return nodes_; }

 private:
  struct TrailEntry {
    int index;
    double h;
    double neg;
    double pos;
  };

  struct Saved {
    double value;
    double positive_diag;
    double positive_off;
    std::size_t trail_size;
  };

  bool LimitReached() {
    if (config_.node_limit > 0 && nodes_ >= config_.node_limit) return true;
    return (nodes_ & 1023) == 0 && deadline_.Expired();
  }

  void Search() {
    if (aborted_) return;
    ++nodes_;
    if (LimitReached()) {
      aborted_ = true;
      return;
    }
    if (free_count_ == 0) {
      if (value_ > best_value_) {
        best_value_ = value_;
        best_bits_ = x_;
        Notify(config_, best_value_);
      }
      return;
    }
    if (value_ + positive_diag_ + positive_off_ <= best_value_) return;

    int branch = -1;
    double widest = -1.0;
    RowSummary branch_row;
    for (int i = 0; i < m_; ++i) {
      if (!free_[i]) continue;
      RowSummary row{h_[i], neg_[i], pos_[i]};
      double width = std::abs(RowDelta(row));
      if (width > widest) {
        widest = width;
        branch = i;
        branch_row = row;
      }
    }

    RuleOutcome rule = ApplyFixingRules(branch_row);
    std::uint8_t order[2];
    int children = 2;
    if (rule.fixable != Fixable::kNone) {
      order[0] = rule.fixable == Fixable::kOne ? 1 : 0;
      children = 1;
    } else {
      order[0] = h_[branch] > 0.0 ? 1 : 0;
      order[1] = order[0] ^ 1;
    }
    for (int c = 0; c < children && !aborted_; ++c) {
      Saved saved = Fix(branch, order[c]);
      Search();
      Restore(branch, saved);
    }
  }

  Saved Fix(int i, std::uint8_t bit) {
    Saved saved{value_, positive_diag_, positive_off_, trail_.size()};
    free_[i] = 0;
    --free_count_;
    x_[i] = bit;
    positive_diag_ -= std::max(h_[i], 0.0);
    if (bit) value_ += h_[i];
    for (const auto& nb : q_.neighbors(i)) {
      const int k = nb.index;
      if (!free_[k]) continue;
      trail_.push_back({k, h_[k], neg_[k], pos_[k]});
      if (nb.value < 0.0) {
        neg_[k] -= nb.value;
      } else {
        pos_[k] -= nb.value;
        positive_off_ -= 2.0 * nb.value;
      }
      if (bit) {
        positive_diag_ -= std::max(h_[k], 0.0);
        h_[k] += 2.0 * nb.value;
        positive_diag_ += std::max(h_[k], 0.0);
      }
    }
    return saved;
  }

  void Restore(int i, const Saved& saved) {
    while (trail_.size() > saved.trail_size) {
      const TrailEntry& t = trail_.back();
      h_[t.index] = t.h;
      neg_[t.index] = t.neg;
      pos_[t.index] = t.pos;
      trail_.pop_back();
    }
    value_ = saved.value;
    positive_diag_ = saved.positive_diag;
    positive_off_ = saved.positive_off;
    free_[i] = 1;
    ++free_count_;
    x_[i] = 0;
  }

  const QuboInstance& q_;
  const SolverConfig& config_;
  const Deadline& deadline_;
  const int m_;

  Bits x_;
  std::vector<std::uint8_t> free_;
  int free_count_ = 0;
  std::vector<double> h_;
  std::vector<double> neg_;
  std::vector<double> pos_;
  double value_ = 0.0;
  double positive_diag_ = 0.0;
  double positive_off_ = 0.0;
  std::vector<TrailEntry> trail_;

  Bits best_bits_;
  double best_value_ = -std::numeric_limits<double>::infinity();
  std::int64_t nodes_ = 0;
  bool aborted_ = false;
};

}  // namespace

const char* SolveModeName(SolveMode mode) {
  switch (mode) {
    case SolveMode::kExact:
      return "exact";
    case SolveMode::kHeuristic:
      return "heuristic";
    case SolveMode::kAuto:
      break;
  }
  return "auto";
}

const char* SolveStatusName(SolveStatus status) {
  switch (status) {
    case SolveStatus::kProvenOptimal:
      return "proven_optimal";
    case SolveStatus::kBudgetExhausted:
      return "budget_exhausted";
    case SolveStatus::kHeuristic:
      break;
  }
  return "heuristic";
}

SolveMode ParseSolveMode(std::string_view name) {
  if (name == "auto") return SolveMode::kAuto;
  if (name == "exact") return SolveMode::kExact;
  if (name == "heuristic") return SolveMode::kHeuristic;
  throw InputError("unknown solve mode '" + std::string(name) + "'");
}

void SolverConfig::Validate() const {
  if (enum_threshold < 1 || enum_threshold > 40) {
    throw InputError("enum_threshold must lie in [1, 40]");
  }
  if (restarts < 1) throw InputError("restarts must be at least 1");
  if (tabu_tenure < 0) throw InputError("tabu tenure must be non-negative");
  if (node_limit < 0) throw InputError("node limit must be non-negative");
}

double OneFlipGain(const QuboInstance& instance, std::span<const std::uint8_t> bits,
                   int i) {
  if (bits.size() != static_cast<std::size_t>(instance.n())) {
    throw InputError("assignment length does not match instance");
  }
  if (i < 0 || i >= instance.n()) {
    throw InputError("flip index " + std::to_string(i) + " out of range");
  }
  double field = instance.diagonal(i);
  for (const auto& nb : instance.neighbors(i)) {
    if (bits[nb.index]) field += 2.0 * nb.value;
  }
  return bits[i] ? -field : field;
}

SolveOutcome Enumerate(const QuboInstance& instance, const SolverConfig& config) {
  const int n = instance.n();
  if (n > 62) throw InputError("instance too large to enumerate");
  Deadline deadline(config.time_budget);
  if (n == 0) return EmptyOutcome(instance);

  Bits x(n, 0);
  std::vector<double> h(instance.diagonals().begin(), instance.diagonals().end());
  double value = 0.0;
  Bits best = x;
  double best_value = 0.0;
  Notify(config, best_value);

  const std::uint64_t total = std::uint64_t{1} << n;
  std::uint64_t step = 1;
  bool aborted = false;
  for (; step < total; ++step) {
    if ((step & 0xFFFF) == 0 && deadline.Expired()) {
      aborted = true;
      break;
    }
    const int i = std::countr_zero(step);
    value += x[i] ? -h[i] : h[i];
    FlipAndUpdate(instance, x, h, i);
    if (value > best_value) {
      best_value = value;
      best = x;
      Notify(config, best_value);
    }
  }

  SolveOutcome out;
  out.solution = BinarySolution::Of(instance, std::move(best));
  out.status = aborted ? SolveStatus::kBudgetExhausted : SolveStatus::kProvenOptimal;
  out.nodes_or_iterations = static_cast<std::int64_t>(step);
  out.elapsed = deadline.Elapsed();
  return out;
}

SolveOutcome BranchAndBound(const QuboInstance& instance, const SolverConfig& config) {
  Deadline deadline(config.time_budget);
  FixReport fixed = FixVariables(instance);

  SolverConfig inner = config;
  if (config.on_improvement) {
    inner.on_improvement = [&](double v) { config.on_improvement(v + fixed.constant); };
  }
  BranchAndBoundSearch search(fixed.reduced, inner, deadline);
  search.SeedIncumbent();
  const bool closed = search.Run();

  SolveOutcome out;
  out.solution = BinarySolution::Of(instance, fixed.Expand(search.best_bits()));
  out.status = closed ? SolveStatus::kProvenOptimal : SolveStatus::kBudgetExhausted;
  out.nodes_or_iterations = search.nodes();
  out.elapsed = deadline.Elapsed();
  return out;
}

SolveOutcome SolveExact(const QuboInstance& instance, const SolverConfig& config) {
  config.Validate();
  if (instance.n() <= config.enum_threshold) return Enumerate(instance, config);
  return BranchAndBound(instance, config);
}

SolveOutcome SolveHeuristic(const QuboInstance& instance, const SolverConfig& config) {
  config.Validate();
  const int n = instance.n();
  Deadline deadline(config.time_budget);
  if (n == 0) {
    SolveOutcome out = EmptyOutcome(instance);
    out.status = SolveStatus::kHeuristic;
    return out;
  }

  // Starting values forced by the row deltas; -1 means draw at random.
  std::vector<int> forced(n, -1);
  for (int i = 0; i < n; ++i) {
    RowSummary row = SummarizeRow(instance, i);
    const double delta = RowDelta(row);
    if (row.diagonal >= 0.0 && delta > 0.0) forced[i] = 1;
    if (row.diagonal < 0.0 && delta < 0.0) forced[i] = 0;
  }

  const std::int64_t stall_limit = static_cast<std::int64_t>(n) * 10;
  Bits global_best;
  double global_value = -std::numeric_limits<double>::infinity();
  std::int64_t moves = 0;
  bool out_of_time = false;

  for (int r = 0; r < config.restarts && !out_of_time; ++r) {
    std::seed_seq seq{static_cast<std::uint32_t>(config.seed),
                      static_cast<std::uint32_t>(config.seed >> 32),
                      static_cast<std::uint32_t>(r)};
    std::mt19937_64 rng(seq);

    Bits x(n, 0);
    for (int i = 0; i < n; ++i) {
      x[i] = forced[i] >= 0 ? static_cast<std::uint8_t>(forced[i])
                            : static_cast<std::uint8_t>(rng() >> 63);
    }
    std::vector<double> h = LocalFields(instance, x);
    double value = Evaluate(instance, x);
    if (value > global_value) {
      global_value = value;
      global_best = x;
      Notify(config, global_value);
    }
    double restart_best = value;

    std::vector<std::int64_t> tabu_until(n, 0);
    std::int64_t iter = 0;
    std::int64_t stall = 0;
    while (stall < stall_limit) {
      ++iter;
      if ((iter & 255) == 0 && deadline.Expired()) {
        out_of_time = true;
        break;
      }
      int move = -1;
      double move_gain = -std::numeric_limits<double>::infinity();
      for (int i = 0; i < n; ++i) {
        const double gain = x[i] ? -h[i] : h[i];
        const bool allowed = tabu_until[i] <= iter || Improves(value + gain, global_value);
        if (allowed && gain > move_gain) {
          move_gain = gain;
          move = i;
        }
      }
      if (move < 0) {
        ++stall;
        continue;
      }
      ++moves;
      value += move_gain;
      FlipAndUpdate(instance, x, h, move);
      tabu_until[move] = iter + config.tabu_tenure + 1;
      if (Improves(value, restart_best)) {
        restart_best = value;
        stall = 0;
      } else {
        ++stall;
      }
      if (Improves(value, global_value)) {
        global_value = value;
        global_best = x;
        Notify(config, global_value);
      }
    }
  }

  SolveOutcome out;
  out.solution = BinarySolution::Of(instance, std::move(global_best));
  out.status = SolveStatus::kHeuristic;
  out.nodes_or_iterations = moves;
  out.elapsed = deadline.Elapsed();
  return out;
}

SolveOutcome Solve(const QuboInstance& instance, const SolverConfig& config) {
  config.Validate();
  switch (config.mode) {
    case SolveMode::kExact:
      return SolveExact(instance, config);
    case SolveMode::kHeuristic:
      return SolveHeuristic(instance, config);
    case SolveMode::kAuto:
      break;
  }
  Deadline deadline(config.time_budget);
  SolveOutcome exact = SolveExact(instance, config);
  if (exact.status == SolveStatus::kProvenOptimal) return exact;

  SolverConfig rest = config;
  if (config.time_budget > 0.0) {
    rest.time_budget = std::max(config.time_budget - deadline.Elapsed(), 1e-3);
  }
  SolveOutcome heuristic = SolveHeuristic(instance, rest);
  SolveOutcome& better =
      heuristic.solution.value >= exact.solution.value ? heuristic : exact;
  better.status = SolveStatus::kHeuristic;
  better.nodes_or_iterations =
      exact.nodes_or_iterations + heuristic.nodes_or_iterations;
  better.elapsed = deadline.Elapsed();
  return std::move(better);
}

}  // namespace robqubo
