#include <doctest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <random>

#include "sched/core/errors.hpp"
#include "sched/core/validate.hpp"
#include "sched/oracles/oracles.hpp"

using namespace sched;
using namespace sched::oracle;

namespace {

// Minimum total flow over every preemptive unit-grid schedule of the given
// jobs, by memoized search over (time, remaining work).
std::int64_t unit_grid_optimum(const FlowInstance& inst, const std::vector<int>& jobs) {
  std::map<std::pair<std::int64_t, std::vector<std::int64_t>>, std::int64_t> memo;
  auto go = [&](auto&& self, std::int64_t t, std::vector<std::int64_t>& rem) -> std::int64_t {
    bool left = false;
    for (auto v : rem) left |= v > 0;
    if (!left) return 0;
    auto key = std::pair(t, rem);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    std::int64_t best = INT64_MAX;
    bool any = false;
    for (std::size_t a = 0; a < jobs.size(); ++a) {
      if (rem[a] == 0 || inst.jobs[jobs[a]].release > t) continue;
      any = true;
      --rem[a];
      std::int64_t here = rem[a] == 0 ? t + 1 - inst.jobs[jobs[a]].release : 0;
      best = std::min(best, here + self(self, t + 1, rem));
      ++rem[a];
    }
    if (!any) best = self(self, t + 1, rem);  // idle only when nothing is released
    memo[key] = best;
    return best;
  };
  std::vector<std::int64_t> rem;
  for (int j : jobs) rem.push_back(inst.jobs[j].proc);
  return go(go, 0, rem);
}

FlowInstance random_flow(std::mt19937_64& rng, int n, int pmax, int rmax, int target) {
  FlowInstance f;
  for (int j = 0; j < n; ++j) {
    f.jobs.push_back({std::uniform_int_distribution<int>(1, pmax)(rng), std::uniform_int_distribution<int>(0, rmax)(rng)});
  }
  f.profit_target = target;
  return f;
}

// Exhaustive over assignments and explicit permutations, with ASAP starts.
std::int64_t naive_wct(const WctInstance& inst) {
  const int n = static_cast<int>(inst.jobs.size());
  const int m = inst.machines;
  std::int64_t best = INT64_MAX;
  std::vector<int> a(n, -1);
  auto rec = [&](auto&& self, int j) -> void {
    if (j == n) {
      for (const auto& t : inst.profit_targets) {
        std::int64_t p = 0;
        for (int x = 0; x < n; ++x) {
          if (a[x] >= 0) p += t.profits[x];
        }
        if (p < t.target) return;
      }
      std::int64_t total = 0;
      for (int i = 0; i < m; ++i) {
        std::vector<int> on;
        for (int x = 0; x < n; ++x) {
          if (a[x] == i) on.push_back(x);
        }
        std::int64_t bi = INT64_MAX;
        do {
          std::int64_t t = 0, c = 0;
          for (int x : on) {
            t = std::max(t, inst.jobs[x].release) + inst.jobs[x].proc[i];
            c += inst.jobs[x].weight * t;
          }
          bi = std::min(bi, c);
        } while (std::next_permutation(on.begin(), on.end()));
        total += bi;
      }
      best = std::min(best, total);
      return;
    }
    for (int i = -1; i < m; ++i) {
      a[j] = i;
      self(self, j + 1);
    }
  };
  rec(rec, 0);
  return best;
}

}  // namespace

TEST_CASE("srpt on one job has flow p") {
  FlowInstance f;
  f.jobs = {{5, 3}};
  f.profit_target = 1;
  auto r = srpt(f, {0});
  CHECK(r.objective == Dyadic::integer(5));
  REQUIRE(r.witness.segments.size() == 1);
  CHECK(r.witness.segments[0] == Segment{0, 0, units_to_ticks(3), units_to_ticks(8)});
}

TEST_CASE("srpt preempts for a shorter arrival") {
  FlowInstance f;
  f.jobs = {{4, 0}, {1, 1}};
  f.profit_target = 2;
  auto r = srpt(f, {0, 1});
  // Job 1 runs in [1,2); job 0 finishes at 5. Flow 5 + 1.
  CHECK(r.objective == Dyadic::integer(6));
  REQUIRE(r.witness.segments.size() == 3);
  CHECK(r.witness.segments[1] == Segment{1, 0, units_to_ticks(1), units_to_ticks(2)});
  CHECK(r.witness.segments[2] == Segment{0, 0, units_to_ticks(2), units_to_ticks(5)});
}

TEST_CASE("srpt matches exhaustive unit-grid search") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 150; ++trial) {
    int n = 1 + trial % 5;
    FlowInstance f = random_flow(rng, n, 4, 6, n);
    std::vector<int> all(n);
    std::iota(all.begin(), all.end(), 0);
    // Random subset of the jobs.
    std::vector<int> sub;
    for (int j : all) {
      if (rng() % 3 != 0) sub.push_back(j);
    }
    CAPTURE(trial);
    CHECK(srpt(f, sub).objective == Dyadic::integer(unit_grid_optimum(f, sub)));
  }
}

TEST_CASE("witnesses validate with the reported objective") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    FlowInstance f = random_flow(rng, 6, 8, 10, 3);
    auto r = brute_flow(f);
    auto rep = validate_schedule(f, r.witness);
    CHECK(rep.feasible());
    CHECK(rep.objective == r.objective);
  }
}

TEST_CASE("brute_flow with all jobs required equals srpt") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 30; ++trial) {
    FlowInstance f = random_flow(rng, 6, 8, 10, 6);
    std::vector<int> all(6);
    std::iota(all.begin(), all.end(), 0);
    CHECK(brute_flow(f).objective == srpt(f, all).objective);
  }
}

TEST_CASE("brute_flow enumerates exactly C(n, target) subsets") {
  std::mt19937_64 rng(13);
  FlowInstance f = random_flow(rng, 7, 8, 10, 3);
  CHECK(brute_flow(f).explored == 35);
  f.profit_target = 0;
  auto r = brute_flow(f);
  CHECK(r.objective == Dyadic::integer(0));
  CHECK(r.witness.selected.empty());
}

TEST_CASE("brute_flow cap is a hard error") {
  FlowInstance f;
  for (int j = 0; j < 30; ++j) f.jobs.push_back({1, 0});
  f.profit_target = 15;
  CHECK_THROWS_AS(brute_flow(f), SizeError);
}

TEST_CASE("brute_wct basic values") {
  WctInstance w;
  w.jobs = {{{3}, 2, 1, 4}};
  w.profit_targets = {single_target(w.jobs, 1)};
  CHECK(brute_wct(w).objective == Dyadic::integer(2 * (4 + 3)));
  w.profit_targets = {single_target(w.jobs, 0)};
  CHECK(brute_wct(w).objective == Dyadic::integer(0));
}

TEST_CASE("brute_wct agrees with explicit permutation search") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 60; ++trial) {
    WctInstance w;
    w.machines = 1 + trial % 2;
    int n = 2 + trial % 4;
    for (int j = 0; j < n; ++j) {
      WctJob job;
      for (int i = 0; i < w.machines; ++i) job.proc.push_back(std::uniform_int_distribution<int>(1, 5)(rng));
      job.weight = std::uniform_int_distribution<int>(0, 4)(rng);
      job.profit = std::uniform_int_distribution<int>(0, 5)(rng);
      job.release = std::uniform_int_distribution<int>(0, 6)(rng);
      w.jobs.push_back(job);
    }
    std::int64_t total = 0;
    for (const auto& j : w.jobs) total += j.profit;
    w.profit_targets = {single_target(w.jobs, total / 2)};
    CAPTURE(trial);
    auto r = brute_wct(w);
    REQUIRE(r.feasible);
    CHECK(r.objective == Dyadic::integer(naive_wct(w)));
    auto rep = validate_schedule(w, r.witness);
    CHECK(rep.feasible());
    CHECK(rep.objective == r.objective);
  }
}

TEST_CASE("brute_gap trivial and infeasible cases") {
  GapInstance g;
  g.machines = 1;
  g.jobs = {{{3}, {2}, 1}};
  g.profit_target = 1;
  g.cost_bound = 2;
  g.makespan_bound = 3;
  auto r = brute_gap(g);
  CHECK(r.feasible);
  CHECK(r.machine_of == std::vector<int>{0});
  CHECK(r.makespan == 3);
  CHECK(validate_schedule(g, r.witness).feasible());

  g.makespan_bound = 2;
  CHECK_FALSE(brute_gap(g).feasible);
  g.makespan_bound = 3;
  g.cost_bound = 1;
  CHECK_FALSE(brute_gap(g).feasible);
}

TEST_CASE("gap pareto front is strictly improving") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    GapInstance g;
    g.machines = 2;
    for (int j = 0; j < 5; ++j) {
      GapJob job;
      for (int i = 0; i < 2; ++i) {
        job.proc.push_back(std::uniform_int_distribution<int>(1, 6)(rng));
        job.cost.push_back(std::uniform_int_distribution<int>(0, 6)(rng));
      }
      job.profit = std::uniform_int_distribution<int>(0, 4)(rng);
      g.jobs.push_back(job);
    }
    g.profit_target = g.total_profit() / 2;
    auto front = gap_pareto(g);
    REQUIRE(!front.empty());
    for (std::size_t a = 1; a < front.size(); ++a) {
      CHECK(front[a].cost > front[a - 1].cost);
      CHECK(front[a].makespan < front[a - 1].makespan);
    }
    // Every frontier point is exactly achievable per brute_gap.
    for (const auto& p : front) {
      g.cost_bound = p.cost;
      g.makespan_bound = p.makespan;
      auto r = brute_gap(g);
      CHECK(r.feasible);
      CHECK(r.makespan == p.makespan);
    }
  }
}
