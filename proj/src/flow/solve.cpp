#include <algorithm>
#include <set>

#include "sched/core/errors.hpp"
#include "sched/core/validate.hpp"
#include "sched/flow/flow.hpp"
#include "sched/lp/simplex.hpp"

namespace sched::flow {

namespace {

constexpr int kTicksToFlow = kFlowBits - kTickBits;

Wide as_flow(Ticks t) { return static_cast<Wide>(t) << kTicksToFlow; }

Ticks flow_of(const FlowInstance& inst, const SegmentSchedule& s, const std::vector<int>& jobs) {
  auto done = completion_ticks(s, static_cast<int>(inst.jobs.size()));
  Ticks total = 0;
  for (int j : jobs) total += done[j] - units_to_ticks(inst.jobs[j].release);
  return total;
}

}  // namespace

SegmentSchedule srpt_schedule(const FlowInstance& inst, std::vector<int> jobs) {
  std::sort(jobs.begin(), jobs.end());
  SegmentSchedule out;
  out.selected = jobs;
  std::vector<int> order = jobs;
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return inst.jobs[a].release < inst.jobs[b].release; });
  std::vector<Ticks> left(inst.jobs.size(), 0);
  for (int j : jobs) left[j] = units_to_ticks(inst.jobs[j].proc);
  std::set<std::pair<Ticks, int>> ready;
  std::size_t next = 0;
  Ticks now = 0;
  while (next < order.size() || !ready.empty()) {
    if (ready.empty()) now = std::max(now, units_to_ticks(inst.jobs[order[next]].release));
    while (next < order.size() && units_to_ticks(inst.jobs[order[next]].release) <= now) {
      ready.insert({left[order[next]], order[next]});
      ++next;
    }
    auto [rem, j] = *ready.begin();
    ready.erase(ready.begin());
    Ticks stop = now + rem;
    if (next < order.size()) stop = std::min(stop, units_to_ticks(inst.jobs[order[next]].release));
    out.segments.push_back({j, 0, now, stop});
    left[j] -= stop - now;
    now = stop;
    if (left[j] > 0) ready.insert({left[j], j});
  }
  canonicalize(out);
  return out;
}

GuessRun run_guess(const FlowInstance& inst, int kstar) {
  const int n = static_cast<int>(inst.jobs.size());
  GuessRun run;
  run.kstar = kstar;
  int eligible = 0;
  for (const auto& job : inst.jobs) eligible += flow_class(job.proc) <= kstar;
  if (eligible < inst.profit_target) {
    run.reason = "fewer than the target jobs fit under this class";
    return run;
  }

  FlowLp built = build_flow_lp(inst, kstar);
  lp::LpSolution sol = lp::solve(built.model);
  if (sol.status != lp::Status::Optimal) {
    run.reason = std::string("LP ended with status ") + lp::to_string(sol.status);
    return run;
  }
  FlowLpSolution snapped = snap_flow_solution(inst, built.layout, sol.values, sol.objective);

  Certificate& cert = run.certificate;
  cert.kstar = kstar;
  cert.classes = kstar + 1;
  cert.lp_value = sol.objective;
  const Timeline start = normalize(inst, snapped.timeline);
  cert.flow_star = lp_flow(inst, start);
  cert.p_star = start.processed();
  cert.relaxation_order = cert.flow_star <= lp_flow(inst, snapped.timeline);

  std::vector<std::int64_t> class_y(kstar + 1, 0);
  for (int j = 0; j < n; ++j) {
    int k = flow_class(inst.jobs[j].proc);
    if (k <= kstar) class_y[k] += snapped.y[j];
  }

  std::vector<ClassCharges> ledger;
  Timeline cur = start;
  for (int k = 0; k <= kstar; ++k) {
    if (class_y[k] == 0) continue;
    SwapResult sw = stage1_swap(inst, cur, k);
    ledger.push_back(std::move(sw.ledger));
    cert.class_reports.push_back(sw.report);
    cur = stage1_shift(inst, sw.timeline, k);
  }
  cert.flow_prime = lp_flow(inst, cur);
  cert.p_prime = cur.processed();
  const std::vector<int> full = full_jobs(inst, cur);
  cert.full_flow = flow_of(inst, to_schedule(cur, {}), full);

  std::vector<int> target(kstar + 1);
  for (int k = 0; k <= kstar; ++k) target[k] = static_cast<int>((class_y[k] + kFull - 1) / kFull);
  AugmentResult aug = stage2_augment(inst, cur, target);
  if (!aug.ok) {
    run.reason = aug.reason;
    return run;
  }
  cert.added_flow = aug.added_flow;
  cert.total_flow = flow_of(inst, aug.schedule, aug.schedule.selected);
  if (cert.total_flow != cert.full_flow + cert.added_flow) throw InternalError("flow bookkeeping mismatch");
  if (static_cast<std::int64_t>(aug.schedule.selected.size()) < inst.profit_target) {
    throw InternalError("final schedule selects fewer jobs than the target");
  }
  ValidationReport check = validate_schedule(Instance{inst}, aug.schedule);
  if (!check.feasible()) throw InternalError("final flow schedule fails validation");

  const Wide K = cert.classes;
  const Ticks tail = units_to_ticks(std::int64_t{1} << (kstar + 2));
  cert.lemma_i = cert.p_prime <= 2 * cert.p_star;
  cert.lemma_ii = cert.flow_prime <= 4 * cert.flow_star + 6 * K * as_flow(cert.p_star);
  cert.lemma_iii = as_flow(cert.full_flow) <= 2 * cert.flow_prime + K * as_flow(cert.p_prime);
  cert.lemma_iv = static_cast<Wide>(cert.added_flow) <= K * (static_cast<Wide>(cert.p_prime) + tail);
  cert.chain_v = as_flow(cert.total_flow) <= 8 * cert.flow_star + 16 * K * as_flow(cert.p_star) + K * as_flow(tail);
  cert.audit = audit_charges(ledger, cert.p_star);

  run.constructed = std::move(aug.schedule);
  run.schedule = srpt_schedule(inst, run.constructed.selected);
  run.flow = flow_of(inst, run.schedule, run.schedule.selected);
  if (run.flow > cert.total_flow) throw InternalError("SRPT polish made the schedule worse");
  run.ok = true;
  return run;
}

FlowResult solve_flow_outliers(const FlowInstance& inst) {
  check_invariants(inst);
  FlowResult res;
  std::set<int> classes;
  for (const auto& job : inst.jobs) classes.insert(flow_class(job.proc));
  if (classes.empty()) {
    GuessRun empty;
    empty.ok = true;
    Certificate& c = empty.certificate;
    c.lemma_i = c.lemma_ii = c.lemma_iii = c.lemma_iv = c.chain_v = true;
    res.runs.push_back(empty);
    res.best = 0;
    return res;
  }
  for (int k : classes) {
    res.runs.push_back(run_guess(inst, k));
    const GuessRun& r = res.runs.back();
    if (!r.ok) continue;
    if (res.best < 0 || r.flow < res.runs[res.best].flow) {
      res.best = static_cast<int>(res.runs.size()) - 1;
    }
  }
  if (res.best < 0) throw InfeasibleError("no class guess produced a schedule");
  res.schedule = res.runs[res.best].schedule;
  res.total_flow = res.runs[res.best].flow;
  return res;
}

}  // namespace sched::flow
