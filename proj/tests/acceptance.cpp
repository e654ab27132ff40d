// Acceptance run: one PASS/FAIL line per criterion. Every tolerance and
// runtime limit is a named constant below.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "sched/core/errors.hpp"
#include "sched/core/validate.hpp"
#include "sched/flow/flow.hpp"
#include "sched/gap/gap.hpp"
#include "sched/lp/simplex.hpp"
#include "sched/oracles/oracles.hpp"
#include "sched/wct/wct.hpp"

using namespace sched;

namespace {

// Criterion 1
constexpr double kLpTol = 1e-9;
constexpr double kLimit1 = 1.0;
// Criterion 2
constexpr int kTrials2 = 500;
constexpr int kInstances2 = 20;
constexpr double kMinSuccess2 = 0.146;
constexpr double kLimit2 = 30.0;
// Criterion 3
constexpr int kTrials3 = 2000;
constexpr int kInstances3 = 20;
constexpr double kCostFactor3 = 16.0;
constexpr double kJobFactor3 = 8.0;
constexpr double kJobSlack3 = 1.1;
constexpr double kLimit3 = 120.0;
// Criterion 4
constexpr int kInstances4 = 100;
constexpr double kLimit4 = 120.0;
// Criterion 5
constexpr int kInstances5 = 200;
constexpr double kLimit5 = 120.0;
// Criterion 6
constexpr double kLimit6 = 300.0;
// Criterion 7
constexpr int kInstances7 = 100;
constexpr double kLimit7 = 300.0;
// Criterion 8
constexpr int kInstances8 = 100;
constexpr double kLimit8 = 120.0;
// Criterion 9
constexpr int kTargets9 = 4;
constexpr int kTrials9 = 500;
constexpr int kInstances9 = 10;
constexpr double kLimit9 = 60.0;

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void fail(const std::string& why) {
    if (pass) detail << why;
    pass = false;
  }
};

using Clock = std::chrono::steady_clock;

int run(int number, double limit, const std::function<void(Verdict&)>& body) {
  Verdict v;
  const auto t0 = Clock::now();
  try {
    body(v);
  } catch (const std::exception& e) {
    v.fail(std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  if (secs >= limit) {
    std::ostringstream s;
    s << "runtime " << secs << " s over the " << limit << " s limit";
    v.fail(s.str());
  }
  std::printf("criterion %d: %s  (%.2f s)  %s\n", number, v.pass ? "PASS" : "FAIL", secs, v.detail.str().c_str());
  std::fflush(stdout);
  return v.pass ? 0 : 1;
}

std::int64_t pick(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

WctInstance random_wct(std::mt19937_64& rng, int n, int m, int pmax, int rmax, int wmax) {
  WctInstance w;
  w.machines = m;
  std::int64_t total = 0;
  for (int j = 0; j < n; ++j) {
    WctJob job;
    for (int i = 0; i < m; ++i) job.proc.push_back(pick(rng, 1, pmax));
    job.weight = pick(rng, 1, wmax);
    job.profit = pick(rng, 0, 5);
    job.release = pick(rng, 0, rmax);
    total += job.profit;
    w.jobs.push_back(job);
  }
  w.profit_targets = {single_target(w.jobs, pick(rng, 1, std::max<std::int64_t>(1, total)))};
  if (total == 0) w.jobs[0].profit = w.profit_targets[0].profits[0] = 1;
  return w;
}

FlowInstance random_flow(std::mt19937_64& rng, int nmax, int pmax, int rmax) {
  FlowInstance f;
  const int n = static_cast<int>(pick(rng, 1, nmax));
  for (int j = 0; j < n; ++j) f.jobs.push_back({pick(rng, 1, pmax), pick(rng, 0, rmax)});
  f.profit_target = pick(rng, 1, n);
  return f;
}

// ---------------------------------------------------------------------------

void criterion1(Verdict& v) {
  WctInstance inst;
  inst.machines = 1;
  inst.jobs = {{{1}, 1, 1000, 0}};
  inst.profit_targets = {single_target(inst.jobs, 1)};
  const double integral = oracle::brute_wct(inst).objective.to_double();

  wct::WctLp plain = wct::build_wct_lp(inst, 10, {.profit_rows = wct::ProfitRows::Plain});
  auto ps = lp::solve(plain.model);
  const double y_plain = ps.values[plain.layout.y_index[0]];
  wct::WctLp kc = wct::build_wct_lp(inst, 10);
  auto ks = lp::solve(kc.model);
  const double y_kc = ks.values[kc.layout.y_index[0]];

  auto rel = wct::solve_relaxation(inst);
  auto rounds = wct::round_until_feasible(inst, rel.solution, 1);
  const double rounded = rounds.success ? rounds.success->cost : -1;

  v.detail << "plain y=" << y_plain << " ratio=" << ps.objective / integral << "; KC y=" << y_kc
           << " rounded=" << rounded << " opt=" << integral;
  if (std::abs(y_plain - 1e-3) > kLpTol) v.fail("plain y is not 1/1000; ");
  if (std::abs(ps.objective / integral - 1e-3) > kLpTol) v.fail("plain ratio is not 1/1000; ");
  if (std::abs(y_kc - 1.0) > kLpTol) v.fail("KC y is not 1; ");
  if (rounded != integral) v.fail("rounded cost differs from the optimum; ");
}

void criterion2(Verdict& v) {
  std::mt19937_64 rng(2002);
  double worst = 1.0;
  for (int inst_no = 0; inst_no < kInstances2; ++inst_no) {
    WctInstance w = random_wct(rng, static_cast<int>(pick(rng, 3, 10)), 1, 5, 5, 4);
    auto rel = wct::solve_relaxation(w);
    int ok = 0;
    for (int t = 0; t < kTrials2; ++t) ok += wct::randomized_round(w, rel.solution, 7000 + inst_no, t).meets_targets;
    const double freq = static_cast<double>(ok) / kTrials2;
    worst = std::min(worst, freq);
    if (freq < kMinSuccess2) v.fail("instance " + std::to_string(inst_no) + " below the floor; ");
  }
  v.detail << "lowest success frequency " << worst << " (floor " << kMinSuccess2 << ")";
}

void criterion3(Verdict& v) {
  std::mt19937_64 rng(3003);
  double worst_cost = 0, worst_job = 0;
  for (int inst_no = 0; inst_no < kInstances3; ++inst_no) {
    WctInstance w = random_wct(rng, static_cast<int>(pick(rng, 2, 7)), static_cast<int>(pick(rng, 1, 2)), 4, 4, 4);
    const double opt = oracle::brute_wct(w).objective.to_double();
    auto rel = wct::solve_relaxation(w);
    const int n = static_cast<int>(w.jobs.size());
    double cost = 0;
    std::vector<double> mean(n, 0.0);
    for (int t = 0; t < kTrials3; ++t) {
      auto o = wct::randomized_round(w, rel.solution, 9000 + inst_no, t);
      cost += o.cost;
      for (int j = 0; j < n; ++j) mean[j] += static_cast<double>(o.completion[j]) / kTicksPerUnit;
    }
    cost /= kTrials3;
    if (opt > 0) worst_cost = std::max(worst_cost, cost / opt);
    if (cost > kCostFactor3 * opt + 1e-9) v.fail("mean cost above 16 Opt on instance " + std::to_string(inst_no) + "; ");
    for (int j = 0; j < n; ++j) {
      mean[j] /= kTrials3;
      const double c_hat = rel.solution.completion[j];
      if (c_hat > 0) worst_job = std::max(worst_job, mean[j] / c_hat);
      if (mean[j] > kJobFactor3 * c_hat * kJobSlack3 + 1e-9) {
        v.fail("job " + std::to_string(j) + " of instance " + std::to_string(inst_no) + " above 8 C-hat; ");
      }
    }
  }
  v.detail << "worst mean/Opt " << worst_cost << ", worst per-job mean/C-hat " << worst_job;
}

void criterion4(Verdict& v) {
  std::mt19937_64 rng(4004);
  int runs = 0;
  double worst_cost = 0, worst_span = 0;
  for (int inst_no = 0; inst_no < kInstances4; ++inst_no) {
    GapInstance g;
    g.machines = static_cast<int>(pick(rng, 1, 3));
    const int n = static_cast<int>(pick(rng, 1, 8));
    for (int j = 0; j < n; ++j) {
      GapJob job;
      for (int i = 0; i < g.machines; ++i) {
        job.proc.push_back(pick(rng, 1, 9));
        job.cost.push_back(pick(rng, 0, 9));
      }
      job.profit = pick(rng, 0, 6);
      g.jobs.push_back(job);
    }
    g.profit_target = pick(rng, 0, g.total_profit());
    auto front = oracle::gap_pareto(g);
    const auto pt = front[static_cast<std::size_t>(pick(rng, 0, static_cast<std::int64_t>(front.size()) - 1))];
    g.cost_bound = pt.cost;
    g.makespan_bound = pt.makespan;
    for (double eps : {1.0, 0.5}) {
      auto r = gap::solve_gap_outliers(g, eps);
      ++runs;
      if (!r) {
        v.fail("no schedule for a feasible instance; ");
        continue;
      }
      if (r->profit < g.profit_target) v.fail("profit short; ");
      if (static_cast<double>(r->cost) > (1 + eps) * g.cost_bound + 1e-9) v.fail("cost above (1+eps)C; ");
      if (r->makespan > 3 * g.makespan_bound) v.fail("makespan above 3T; ");
      if (!validate_schedule(Instance{g}, r->schedule).feasible()) v.fail("schedule fails validation; ");
      if (g.cost_bound > 0) worst_cost = std::max(worst_cost, static_cast<double>(r->cost) / g.cost_bound);
      if (g.makespan_bound > 0) worst_span = std::max(worst_span, static_cast<double>(r->makespan) / g.makespan_bound);
    }
  }
  v.detail << runs << " runs, worst cost/C " << worst_cost << ", worst makespan/T " << worst_span;
}

void criterion5(Verdict& v) {
  std::mt19937_64 rng(5005);
  double worst = 0;
  for (int inst_no = 0; inst_no < kInstances5; ++inst_no) {
    const int n = static_cast<int>(pick(rng, 1, 10));
    WctInstance w;
    w.machines = 1;
    std::int64_t total = 0;
    for (int j = 0; j < n; ++j) {
      WctJob job{{pick(rng, 1, 8)}, 1, pick(rng, 1, 5), 0};
      total += job.profit;
      w.jobs.push_back(job);
    }
    w.profit_targets = {single_target(w.jobs, pick(rng, 1, total))};
    const std::string tag = "instance " + std::to_string(inst_no) + ": ";
    const Dyadic opt = oracle::brute_wct(w).objective;
    const auto dp = wct::dp_exact(w);
    if (Dyadic::integer(dp.value) != opt) v.fail(tag + "dp_exact differs from the oracle; ");
    for (double eps : {0.1, 0.5}) {
      const auto f = wct::fptas(w, eps);
      worst = std::max(worst, static_cast<double>(f.result.value) / static_cast<double>(dp.value));
      if (static_cast<double>(f.result.value) > (1 + eps) * static_cast<double>(dp.value) + 1e-9) {
        v.fail(tag + "FPTAS above (1+eps) DP; ");
      }
    }
    WctInstance two = w;
    two.machines = 2;
    for (auto& job : two.jobs) job.proc = {job.proc[0], job.proc[0]};
    if (Dyadic::integer(wct::dp_multi_machine(two, 2).value) != oracle::brute_wct(two).objective) {
      v.fail(tag + "two-machine DP differs from the oracle; ");
    }
  }
  v.detail << kInstances5 << " instances, worst FPTAS/DP " << worst;
}

void criterion6(Verdict& v) {
  for (int k : {4, 6}) {
    const auto g = flow::gen_gap_instance(k);
    const std::int64_t M = g.small_count;
    auto built = flow::build_flow_lp(g.instance, k + 1);
    auto sol = lp::solve(built.model);
    if (sol.status != lp::Status::Optimal) {
      v.fail("LP not optimal; ");
      continue;
    }
    const double bound_a = static_cast<double>(M + (std::int64_t{1} << (k + 2)));
    if (sol.objective > bound_a + 1e-6) v.fail("k=" + std::to_string(k) + " LP above M + 2^(k+2); ");

    // Every (k/2 + 1)-subset of the k + 1 large jobs plus all small jobs.
    const int large = static_cast<int>(g.large.size());
    const int take = k / 2 + 1;
    std::vector<int> mask(large, 0);
    std::fill(mask.end() - take, mask.end(), 1);
    double best = -1;
    std::int64_t subsets = 0;
    do {
      std::vector<int> jobs = g.small;
      for (int i = 0; i < large; ++i) {
        if (mask[i]) jobs.push_back(g.large[i]);
      }
      const double f = oracle::srpt(g.instance, jobs).objective.to_double();
      best = best < 0 ? f : std::min(best, f);
      ++subsets;
    } while (std::next_permutation(mask.begin(), mask.end()));
    const double ratio = best / sol.objective;
    v.detail << "k=" << k << ": LP " << sol.objective << " <= " << bound_a << ", Opt " << best << " >= "
             << M * k / 2 << " over " << subsets << " subsets, ratio " << ratio << " >= " << k / 6.0 << "; ";
    if (best < static_cast<double>(M * k / 2)) v.fail("k=" + std::to_string(k) + " Opt below Mk/2; ");
    if (ratio < k / 6.0) v.fail("k=" + std::to_string(k) + " ratio below k/6; ");
  }
}

void criterion7(Verdict& v) {
  std::mt19937_64 rng(7007);
  int runs = 0, certified = 0;
  for (int inst_no = 0; inst_no < kInstances7; ++inst_no) {
    FlowInstance f = random_flow(rng, 12, 16, 20);
    auto res = flow::solve_flow_outliers(f);
    for (const auto& r : res.runs) {
      if (!r.ok) continue;
      ++runs;
      const auto& c = r.certificate;
      certified += c.all();
      const std::string tag = "instance " + std::to_string(inst_no) + " k*=" + std::to_string(r.kstar) + ": ";
      if (!c.lemma_i) v.fail(tag + "(i) fails; ");
      if (!c.lemma_ii) v.fail(tag + "(ii) fails; ");
      if (!c.lemma_iii) v.fail(tag + "(iii) fails; ");
      if (!c.lemma_iv) v.fail(tag + "(iv) fails; ");
      if (!c.chain_v) v.fail(tag + "(v) fails; ");
      if (!c.relaxation_order) v.fail(tag + "normalization raised the flow; ");
      if (!c.audit.ok()) v.fail(tag + "charge audit fails; ");
    }
  }
  v.detail << certified << "/" << runs << " successful runs certified";
}

void criterion8(Verdict& v) {
  std::mt19937_64 rng(8008);
  double worst = 0;
  for (int inst_no = 0; inst_no < kInstances8; ++inst_no) {
    FlowInstance f = random_flow(rng, 7, 8, 10);
    auto res = flow::solve_flow_outliers(f);
    auto opt = oracle::brute_flow(f);
    const std::string tag = "instance " + std::to_string(inst_no) + ": ";
    if (static_cast<std::int64_t>(res.schedule.selected.size()) < f.profit_target) v.fail(tag + "too few jobs; ");
    if (!validate_schedule(Instance{f}, res.schedule).feasible()) v.fail(tag + "schedule fails validation; ");
    int k = 0;
    for (const auto& s : opt.witness.segments) k = std::max(k, flow_class(f.jobs[s.job].proc));
    const Dyadic bound = opt.objective * (8 + 32 * (k + 1)) + Dyadic::integer(std::int64_t{k} << (k + 2));
    const Dyadic got = Dyadic::ticks(res.total_flow);
    if (got > bound) v.fail(tag + "flow above the composed bound; ");
    if (opt.objective > Dyadic::integer(0)) worst = std::max(worst, got.to_double() / opt.objective.to_double());
  }
  v.detail << kInstances8 << " instances, worst flow/Opt " << worst;
}

void criterion9(Verdict& v) {
  const double beta = wct::beta_for_targets(kTargets9);
  const double tail = std::exp(-(beta - 1) * (beta - 1) / (2 * beta));
  if (tail > 1.0 / (10 * kTargets9)) v.fail("beta misses the tail bound; ");
  const double sigma = std::sqrt(0.9 * 0.1 / kTrials9);
  const double floor = 0.9 - 3 * sigma;
  std::mt19937_64 rng(9009);
  double worst = 1.0;
  for (int inst_no = 0; inst_no < kInstances9; ++inst_no) {
    WctInstance w = random_wct(rng, static_cast<int>(pick(rng, 4, 10)), 1, 4, 3, 3);
    w.profit_targets.clear();
    for (int t = 0; t < kTargets9; ++t) {
      ProfitTarget tg;
      std::int64_t total = 0;
      for (std::size_t j = 0; j < w.jobs.size(); ++j) {
        tg.profits.push_back(pick(rng, 0, 5));
        total += tg.profits.back();
      }
      tg.target = total / 2;
      w.profit_targets.push_back(tg);
    }
    wct::RelaxationOptions opts;
    opts.threshold = 1.0 / beta;
    auto rel = wct::solve_relaxation(w, opts);
    int ok = 0;
    for (int t = 0; t < kTrials9; ++t) ok += wct::randomized_round(w, rel.solution, 11000 + inst_no, t).meets_targets;
    const double freq = static_cast<double>(ok) / kTrials9;
    worst = std::min(worst, freq);
    if (freq < floor) v.fail("instance " + std::to_string(inst_no) + " below the floor; ");
  }
  v.detail << "beta_4 " << beta << " tail " << tail << " <= " << 1.0 / (10 * kTargets9) << ", lowest all-target frequency "
           << worst << " (floor " << floor << ")";
}

}  // namespace

int main() {
  int failed = 0;
  failed += run(1, kLimit1, criterion1);
  failed += run(2, kLimit2, criterion2);
  failed += run(3, kLimit3, criterion3);
  failed += run(4, kLimit4, criterion4);
  failed += run(5, kLimit5, criterion5);
  failed += run(6, kLimit6, criterion6);
  failed += run(7, kLimit7, criterion7);
  failed += run(8, kLimit8, criterion8);
  failed += run(9, kLimit9, criterion9);
  std::printf("%d of 9 criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
