#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sched/core/instance.hpp"
#include "sched/core/schedule.hpp"
#include "sched/flow/timeline.hpp"
#include "sched/lp/model.hpp"

namespace sched::flow {

// ---------------------------------------------------------------------------
// LP relaxation

struct FlowLpLayout {
  int jobs = 0;
  int horizon = 0;
  int kstar = 0;
  std::vector<int> x_index;  // [j * horizon + t], -1 before release or for dropped jobs
  std::vector<int> y_index;  // -1 for dropped jobs

  int x(int j, int t) const { return x_index[static_cast<std::size_t>(j) * horizon + t]; }
};

struct FlowLp {
  lp::LpModel model;
  FlowLpLayout layout;
};

// max_j r_j + sum_j p_j over jobs of class at most kstar.
int flow_horizon(const FlowInstance& inst, int kstar);

// Jobs above class kstar get no variables. Objective is sum_j f_j with f_j
// expanded in x. Throws SizeError above max_vars.
FlowLp build_flow_lp(const FlowInstance& inst, int kstar, int horizon = -1, std::int64_t max_vars = 400'000);

struct FlowLpSolution {
  int kstar = 0;
  int horizon = 0;
  double lp_value = 0;
  std::vector<std::int64_t> y;  // per job, over kFull
  Timeline timeline;            // slot amounts laid out from each slot start
};

// Rounds y to the 2^-20 grid keeping sum y >= target, spreads y_j p_j ticks
// over the job's slots in proportion to x, and packs each slot from its
// start (spill-over moves to the next slot).
FlowLpSolution snap_flow_solution(const FlowInstance& inst, const FlowLpLayout& layout,
                                  const std::vector<double>& values, double lp_value);

// ---------------------------------------------------------------------------
// Normalization

// For each class in ascending order, reschedule the class's fractions in
// (release, id) order as early as possible inside the class's own time plus
// free time.
Timeline normalize(const FlowInstance& inst, const Timeline& tl);
// Single class version.
Timeline normalize_class(const FlowInstance& inst, const Timeline& tl, int k);

// ---------------------------------------------------------------------------
// Stage I

struct Charge {
  int job = 0;
  Ticks from = 0;  // open interval (from, to) of real time
  Ticks to = 0;
  Wide height = 0;  // per point, units of 2^-45
};

struct ClassCharges {
  int k = 0;
  std::vector<Charge> charges;
  std::vector<std::pair<Ticks, Ticks>> free_at_close;  // free time when swapping ends
  Ticks end_at_close = 0;                              // everything later is free too
};

struct ClassReport {
  int k = 0;
  std::int64_t sum_y = 0;   // over kFull
  int target = 0;           // floor(sum y) - 1
  int full_before = 0;
  int full_after = 0;
  int case_one = 0;
  int case_two = 0;
  Ticks max_violation = 0;  // largest release-date advance before shifting, virtual ticks
};

struct SwapResult {
  Timeline timeline;
  ClassCharges ledger;
  ClassReport report;
};

// Swapping phase for class k on a timeline whose class-k part is
// non-alternating. Fractions move between class-k jobs until
// floor(sum y) - 1 of them are complete.
SwapResult stage1_swap(const FlowInstance& inst, const Timeline& tl, int k);

// Moves every class-k piece 2 * 2^k later inside the class space. Throws
// InternalError if a release date is still violated afterwards.
Timeline stage1_shift(const FlowInstance& inst, const Timeline& tl, int k);

// ---------------------------------------------------------------------------
// Stage II

struct AugmentResult {
  bool ok = false;
  std::string reason;
  SegmentSchedule schedule;
  std::vector<int> added;
  Ticks added_flow = 0;
};

// Keeps the fully processed jobs of tl and brings class k up to
// class_target[k] complete jobs by adding non-complete class-k jobs in
// (p, id) order, each run preemptively as early as possible in free time.
AugmentResult stage2_augment(const FlowInstance& inst, const Timeline& tl, const std::vector<int>& class_target);

// ---------------------------------------------------------------------------
// Charge audit

struct AuditReport {
  bool free_time_never_pays = true;   // no charge lands on free time
  bool one_job_per_point = true;      // each point charged by one job
  bool total_within_bound = true;     // class integral <= 2 P*
  std::vector<Wide> class_integral;   // units of 2^-65
  std::vector<std::string> problems;

  bool ok() const { return free_time_never_pays && one_job_per_point && total_within_bound; }
};

// p_star is the baseline processed length in ticks.
AuditReport audit_charges(const std::vector<ClassCharges>& ledger, Ticks p_star);

// ---------------------------------------------------------------------------
// Full pipeline

struct Certificate {
  int kstar = 0;
  int classes = 0;  // k* + 1, the number of classes 0..k*
  double lp_value = 0;
  Wide flow_star = 0;   // normalized LP solution, 2^-45
  Ticks p_star = 0;
  Wide flow_prime = 0;  // after Stage I
  Ticks p_prime = 0;
  Ticks full_flow = 0;   // actual flow of jobs complete after Stage I
  Ticks added_flow = 0;  // Stage II
  Ticks total_flow = 0;
  bool relaxation_order = true;  // flow(normalized) <= flow(LP)
  bool lemma_i = false;
  bool lemma_ii = false;
  bool lemma_iii = false;
  bool lemma_iv = false;
  bool chain_v = false;
  AuditReport audit;
  std::vector<ClassReport> class_reports;

  bool all() const { return relaxation_order && lemma_i && lemma_ii && lemma_iii && lemma_iv && chain_v && audit.ok(); }
};

struct GuessRun {
  int kstar = 0;
  bool ok = false;
  std::string reason;  // why the guess produced nothing
  SegmentSchedule constructed;  // Stage II output, the one the certificate measures
  SegmentSchedule schedule;     // SRPT over the constructed selection
  Ticks flow = 0;               // flow of schedule, never above certificate.total_flow
  Certificate certificate;
};

struct FlowResult {
  SegmentSchedule schedule;
  Ticks total_flow = 0;
  int best = -1;  // index into runs
  std::vector<GuessRun> runs;

  const Certificate& certificate() const { return runs[best].certificate; }
};

GuessRun run_guess(const FlowInstance& inst, int kstar);

// Preemptive SRPT of the given jobs; ties go to the smaller id.
SegmentSchedule srpt_schedule(const FlowInstance& inst, std::vector<int> jobs);

// Tries every class present as k*, ascending, and keeps the smallest
// polished flow. Throws InfeasibleError when no guess yields a schedule.
FlowResult solve_flow_outliers(const FlowInstance& inst);

// ---------------------------------------------------------------------------
// Integrality gap family

struct GapConstruction {
  int k = 0;
  std::int64_t small_count = 0;  // M = 2^(k+1)
  std::int64_t grey_start = 0;
  std::vector<int> large;        // large job j = 1..k+1 at index j - 1
  std::vector<int> small;
  FlowInstance instance;
};

// White blocks k, k-1, ..., 1 (block j lasts 2^j, large job j arrives at
// its start with p = 2^(j+1)), then M unit jobs one per time unit, then
// block k+1 where job k+1 with p = 2^(k+1) arrives. Target M + k/2 + 1.
GapConstruction gen_gap_instance(int k);

}  // namespace sched::flow
