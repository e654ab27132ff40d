#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>

#include "sched/core/errors.hpp"
#include "sched/core/validate.hpp"
#include "sched/flow/flow.hpp"
#include "sched/lp/simplex.hpp"
#include "sched/oracles/oracles.hpp"

using namespace sched;
using namespace sched::flow;

namespace {

Ticks U(double x) { return static_cast<Ticks>(x * kTicksPerUnit); }

FlowInstance random_flow(std::mt19937_64& rng, int n, int pmax, int rmax) {
  FlowInstance in;
  for (int j = 0; j < n; ++j) {
    in.jobs.push_back({std::uniform_int_distribution<int>(1, pmax)(rng), std::uniform_int_distribution<int>(0, rmax)(rng)});
  }
  in.profit_target = std::uniform_int_distribution<int>(1, n)(rng);
  return in;
}

int max_class(const FlowInstance& in) {
  int k = 0;
  for (const auto& j : in.jobs) k = std::max(k, flow_class(j.proc));
  return k;
}

// Jobs in shuffled order, each with a random multiple of 1/8 of its size,
// placed after its release with random idle gaps.
Timeline random_fractional(std::mt19937_64& rng, const FlowInstance& in) {
  const int n = static_cast<int>(in.jobs.size());
  std::vector<int> ids(n);
  for (int j = 0; j < n; ++j) ids[j] = j;
  std::shuffle(ids.begin(), ids.end(), rng);
  Timeline tl;
  Ticks cur = 0;
  for (int j : ids) {
    int eighths = std::uniform_int_distribution<int>(0, 8)(rng);
    if (eighths == 0) continue;
    Ticks amount = eighths * kFull / 8 * in.jobs[j].proc;
    Ticks st = std::max(cur, units_to_ticks(in.jobs[j].release)) + std::uniform_int_distribution<int>(0, 3)(rng) * kFull / 2;
    tl.pieces.push_back({j, st, st + amount});
    cur = st + amount;
  }
  normalize_pieces(tl);
  return tl;
}

bool has_class(const FlowInstance& in, const Timeline& tl, int k) {
  return std::any_of(tl.pieces.begin(), tl.pieces.end(),
                     [&](const Piece& p) { return flow_class(in.jobs[p.job].proc) == k; });
}

// Independent LP-flow evaluation: slot by slot, in doubles.
double lp_flow_direct(const FlowInstance& in, const Timeline& tl) {
  double f = 0;
  for (const auto& p : tl.pieces) {
    const double pt = static_cast<double>(rounded_size(in.jobs[p.job].proc));
    for (Ticks t = p.start / kTicksPerUnit; t * kTicksPerUnit < p.end; ++t) {
      double x = static_cast<double>(std::min(p.end, (t + 1) * kTicksPerUnit) - std::max(p.start, t * kTicksPerUnit)) /
                 kTicksPerUnit;
      f += x / pt * (t + 0.5 - in.jobs[p.job].release) + x / 2;
    }
  }
  return f;
}

double as_units(Wide flow) { return static_cast<double>(flow) / static_cast<double>(Wide{1} << kFlowBits); }

}  // namespace

TEST_CASE("LP cost uses the rounded size and the extent uses the true size") {
  FlowInstance in;
  in.jobs = {{3, 0}};
  in.profit_target = 1;
  FlowLp lp = build_flow_lp(in, 2);
  auto sol = lp::solve(lp.model);
  REQUIRE(sol.status == lp::Status::Optimal);
  // Slots 0, 1, 2 filled: sum_t (t + 1/2) / 4 + 1/2.
  const double expected = (0.5 + 1.5 + 2.5) / 4 + 1.5;
  CHECK(sol.objective == doctest::Approx(expected).epsilon(1e-9));
  CHECK(sol.values[lp.layout.y_index[0]] == doctest::Approx(1.0));

  Timeline tl;
  tl.pieces = {{0, 0, U(3)}};
  CHECK(lp_flow(in, tl) == static_cast<Wide>(expected * (Wide{1} << 20)) << (kFlowBits - 20));
  CHECK(lp_flow_direct(in, tl) == doctest::Approx(expected));
}

TEST_CASE("jobs above the class cap get no variables") {
  FlowInstance in;
  in.jobs = {{1, 0}, {5, 0}, {2, 1}};
  in.profit_target = 2;
  FlowLp lp = build_flow_lp(in, 1);
  CHECK(lp.layout.y_index[1] == -1);
  CHECK(lp.layout.y_index[0] >= 0);
  CHECK(lp.layout.horizon == flow_horizon(in, 1));
  CHECK(flow_horizon(in, 1) == 1 + 1 + 2);
  CHECK_THROWS_AS(build_flow_lp(in, 3, -1, 5), SizeError);
}

TEST_CASE("LP value is a lower bound on the optimum") {
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 40; ++trial) {
    FlowInstance in = random_flow(rng, 2 + trial % 5, 6, 6);
    CAPTURE(trial);
    auto opt = oracle::brute_flow(in);
    REQUIRE(opt.feasible);
    FlowLp lp = build_flow_lp(in, max_class(in));
    auto sol = lp::solve(lp.model);
    REQUIRE(sol.status == lp::Status::Optimal);
    CHECK(sol.objective <= opt.objective.to_double() + 1e-6);

    in.profit_target = static_cast<std::int64_t>(in.jobs.size());
    std::vector<int> all(in.jobs.size());
    for (std::size_t j = 0; j < all.size(); ++j) all[j] = static_cast<int>(j);
    auto srpt = oracle::srpt(in, all);
    auto full = lp::solve(build_flow_lp(in, max_class(in)).model);
    CHECK(full.objective <= srpt.objective.to_double() + 1e-6);
  }
}

TEST_CASE("snapped LP solution keeps the count and the slot capacity") {
  std::mt19937_64 rng(72);
  for (int trial = 0; trial < 30; ++trial) {
    FlowInstance in = random_flow(rng, 2 + trial % 8, 9, 8);
    CAPTURE(trial);
    FlowLp lp = build_flow_lp(in, max_class(in));
    auto sol = lp::solve(lp.model);
    REQUIRE(sol.status == lp::Status::Optimal);
    auto snap = snap_flow_solution(in, lp.layout, sol.values, sol.objective);
    std::int64_t sum = 0;
    auto amounts = snap.timeline.amounts(static_cast<int>(in.jobs.size()));
    for (std::size_t j = 0; j < in.jobs.size(); ++j) {
      CHECK(snap.y[j] >= 0);
      CHECK(snap.y[j] <= kFull);
      CHECK(amounts[j] == snap.y[j] * in.jobs[j].proc);
      sum += snap.y[j];
    }
    CHECK(sum >= in.profit_target * kFull);
    for (const auto& p : snap.timeline.pieces) CHECK(p.start >= units_to_ticks(in.jobs[p.job].release));
    CHECK(as_units(lp_flow(in, snap.timeline)) == doctest::Approx(lp_flow_direct(in, snap.timeline)));
  }
}

TEST_CASE("normalize leaves a packed single job alone") {
  FlowInstance in;
  in.jobs = {{3, 2}};
  Timeline tl;
  tl.pieces = {{0, U(2), U(3.5)}};
  CHECK(normalize(in, tl).pieces == tl.pieces);
}

TEST_CASE("normalize reorders interleaved jobs of one class by release") {
  FlowInstance in;
  in.jobs = {{2, 0}, {2, 1}};
  Timeline tl;
  tl.pieces = {{1, U(1), U(2)}, {0, U(2), U(3)}, {1, U(3), U(4)}, {0, U(4), U(5)}};
  CHECK_FALSE(non_alternating(in, tl, 1));
  Timeline out = normalize(in, tl);
  CHECK(out.pieces == std::vector<Piece>{{0, 0, U(2)}, {1, U(2), U(4)}});
  CHECK(non_alternating(in, out, 1));
  CHECK(packed(in, out, 1));
  CHECK(lp_flow(in, out) <= lp_flow(in, tl));
  CHECK(lp_flow_direct(in, out) <= lp_flow_direct(in, tl));
}

TEST_CASE("normalize keeps fractions and never raises suffix volume or flow") {
  std::mt19937_64 rng(73);
  for (int trial = 0; trial < 200; ++trial) {
    FlowInstance in = random_flow(rng, 2 + trial % 10, 12, 15);
    Timeline tl = random_fractional(rng, in);
    CAPTURE(trial);
    Timeline out = normalize(in, tl);
    CHECK(out.amounts(static_cast<int>(in.jobs.size())) == tl.amounts(static_cast<int>(in.jobs.size())));
    CHECK(out.processed() == tl.processed());
    CHECK(lp_flow(in, out) <= lp_flow(in, tl));
    for (int k = 0; k <= 4; ++k) {
      CHECK(non_alternating(in, out, k));
      CHECK(packed(in, out, k));
      for (std::int64_t t = 0; t <= tl.end() / kTicksPerUnit + 1; ++t) {
        CHECK(suffix_volume(in, out, k, t) <= suffix_volume(in, tl, k, t));
      }
    }
    for (const auto& p : out.pieces) CHECK(p.start >= units_to_ticks(in.jobs[p.job].release));
  }
}

TEST_CASE("class space maps real and virtual time both ways") {
  FlowInstance in;
  in.jobs = {{1, 0}, {4, 0}};
  Timeline tl;
  tl.pieces = {{0, 0, U(1)}, {1, U(1), U(3)}, {0, U(4), U(4.5)}};
  ClassSpace space(in, tl, 0);
  CHECK(space.to_virtual(U(1)) == U(1));
  CHECK(space.to_virtual(U(3)) == U(1));
  CHECK(space.to_real(U(1)) == U(3));
  CHECK(space.to_real(U(3)) == U(5));
  auto parts = space.to_real(U(0.5), U(1.5));
  CHECK(parts == std::vector<std::pair<Ticks, Ticks>>{{U(0.5), U(1)}, {U(3), U(3.5)}});
}

TEST_CASE("swap does nothing to a class with integral fractions") {
  FlowInstance in;
  in.jobs = {{2, 0}, {2, 1}, {1, 0}};
  Timeline tl;
  tl.pieces = {{0, 0, U(2)}, {2, U(2), U(3)}, {1, U(3), U(5)}};
  auto sw = stage1_swap(in, tl, 1);
  CHECK(sw.timeline.pieces == tl.pieces);
  CHECK(sw.report.case_one == 0);
  CHECK(sw.report.case_two == 0);
  CHECK(sw.ledger.charges.empty());
}

TEST_CASE("two half jobs back to back: the first completes over the second") {
  FlowInstance in;
  in.jobs = {{2, 0}, {2, 0}, {2, 0}, {2, 0}};
  Timeline tl;
  for (int j = 0; j < 4; ++j) tl.pieces.push_back({j, U(j), U(j + 1)});
  auto sw = stage1_swap(in, tl, 1);
  CHECK(sw.report.target == 1);
  CHECK(sw.report.case_one == 1);
  CHECK(sw.report.full_after == 1);
  CHECK(sw.timeline.pieces == std::vector<Piece>{{0, 0, U(2)}, {2, U(2), U(3)}, {3, U(3), U(4)}});
  CHECK(sw.timeline.processed() == tl.processed());
}

TEST_CASE("free time before the next job lets the first job grow") {
  FlowInstance in;
  in.jobs = {{2, 0}, {2, 3}, {2, 3}, {2, 3}};
  Timeline tl;
  tl.pieces = {{0, 0, U(1)}, {1, U(3), U(4)}, {2, U(4), U(5)}, {3, U(5), U(6)}};
  auto sw = stage1_swap(in, tl, 1);
  CHECK(sw.report.case_one == 1);
  CHECK(sw.timeline.pieces == std::vector<Piece>{{0, 0, U(2)}, {1, U(3), U(4)}, {2, U(4), U(5)}});
  REQUIRE(sw.ledger.charges.size() == 1);
  CHECK(sw.ledger.charges[0].from == 0);
  CHECK(sw.ledger.charges[0].to == U(1));
  auto audit = audit_charges({sw.ledger}, tl.processed());
  CHECK(audit.ok());
}

TEST_CASE("a short fractional job moves ahead of the prefix and the shift repairs its release") {
  FlowInstance in;
  in.jobs = {{3, 3}, {3, 3}, {4, 3}, {4, 1}};
  Timeline tl;
  tl.pieces = {{3, U(1), U(3)}, {0, U(3), U(5.25)}, {1, U(5.25), U(6)}, {2, U(6), U(9)}};
  auto sw = stage1_swap(in, tl, 2);
  CHECK(sw.report.case_two == 1);
  CHECK(sw.report.full_after == 1);
  CHECK(sw.report.max_violation == U(2));
  CHECK(sw.timeline.pieces.front() == Piece{0, U(1), U(4)});
  // Fractions move between jobs of different sizes, so the fraction total
  // is what stays fixed, not the processed length.
  auto fraction_sum = [&](const Timeline& t) {
    auto a = t.amounts(4);
    std::int64_t s = 0;
    for (int j = 0; j < 4; ++j) s += a[j] / in.jobs[j].proc;
    return s;
  };
  CHECK(fraction_sum(sw.timeline) == fraction_sum(tl));

  Timeline shifted = stage1_shift(in, sw.timeline, 2);
  for (const auto& p : shifted.pieces) CHECK(p.start >= units_to_ticks(in.jobs[p.job].release));
  CHECK(shifted.pieces.front() == Piece{0, U(9), U(12)});
}

TEST_CASE("shift moves a class even when nothing is violated") {
  FlowInstance in;
  in.jobs = {{1, 0}, {2, 0}};
  Timeline tl;
  tl.pieces = {{0, 0, U(1)}, {1, U(1), U(3)}};
  Timeline out = stage1_shift(in, tl, 0);
  // Class-0 space is [0, 1) then [3, inf); two units on lands at 4.
  CHECK(out.pieces == std::vector<Piece>{{1, U(1), U(3)}, {0, U(4), U(5)}});
}

TEST_CASE("swap and shift keep their bounds on random fractional timelines") {
  std::mt19937_64 rng(74);
  int case_one = 0, case_two = 0;
  for (int trial = 0; trial < 400; ++trial) {
    FlowInstance in = random_flow(rng, 2 + trial % 13, 1 + trial % 16, 25);
    CAPTURE(trial);
    const Timeline start = normalize(in, random_fractional(rng, in));
    const Ticks p_star = start.processed();
    std::vector<ClassCharges> ledger;
    Timeline cur = start;
    for (int k = 0; k <= 4; ++k) {
      if (!has_class(in, cur, k)) continue;
      auto sw = stage1_swap(in, cur, k);
      case_one += sw.report.case_one;
      case_two += sw.report.case_two;
      CHECK(sw.report.full_after >= sw.report.target);
      CHECK(sw.report.max_violation <= units_to_ticks(std::int64_t{2} << k));
      ledger.push_back(sw.ledger);
      cur = stage1_shift(in, sw.timeline, k);
    }
    CHECK(cur.processed() <= 2 * p_star);
    auto audit = audit_charges(ledger, p_star);
    CHECK(audit.ok());
    for (Wide integral : audit.class_integral) CHECK(integral <= static_cast<Wide>(p_star) << 46);
    for (const auto& p : cur.pieces) CHECK(p.start >= units_to_ticks(in.jobs[p.job].release));
  }
  CHECK(case_one > 50);
  CHECK(case_two > 10);
}

TEST_CASE("charge audit") {
  CHECK(audit_charges({}, 0).ok());

  ClassCharges c;
  c.k = 1;
  c.end_at_close = U(10);
  c.charges = {{0, U(0), U(2), Wide{1} << 40}, {1, U(1), U(3), Wide{1} << 40}};
  auto twice = audit_charges({c}, U(100));
  CHECK_FALSE(twice.one_job_per_point);
  CHECK(twice.free_time_never_pays);
  CHECK_FALSE(twice.ok());

  c.charges = {{0, U(0), U(2), Wide{1} << 40}};
  c.free_at_close = {{U(1), U(2)}};
  auto free_pays = audit_charges({c}, U(100));
  CHECK_FALSE(free_pays.free_time_never_pays);
  CHECK(free_pays.one_job_per_point);

  c.free_at_close.clear();
  c.charges = {{0, U(0), U(2), Wide{1} << 50}};
  auto heavy = audit_charges({c}, U(1));
  CHECK_FALSE(heavy.total_within_bound);
  CHECK(audit_charges({c}, U(64)).ok());
}

TEST_CASE("augmentation picks the smallest size, then the smaller id") {
  FlowInstance in;
  in.jobs = {{4, 0}, {3, 0}, {3, 0}};
  auto aug = stage2_augment(in, Timeline{}, {0, 0, 1});
  REQUIRE(aug.ok);
  CHECK(aug.added == std::vector<int>{1});
  CHECK(aug.schedule.selected == std::vector<int>{1});
  CHECK(aug.schedule.segments == std::vector<Segment>{{1, 0, 0, U(3)}});
  CHECK(aug.added_flow == U(3));

  auto short_of = stage2_augment(in, Timeline{}, {0, 0, 4});
  CHECK_FALSE(short_of.ok);
}

TEST_CASE("augmentation fills gaps and keeps complete jobs") {
  FlowInstance in;
  in.jobs = {{2, 0}, {2, 0}, {2, 0}};
  Timeline tl;
  tl.pieces = {{0, U(1), U(3)}, {1, U(4), U(5)}};
  auto aug = stage2_augment(in, tl, {0, 2});
  REQUIRE(aug.ok);
  CHECK(aug.added == std::vector<int>{1});
  CHECK(aug.schedule.selected == std::vector<int>{0, 1});
  // Job 1 restarts from scratch in the free time [0, 1) and [3, 4).
  CHECK(aug.schedule.segments == std::vector<Segment>{{1, 0, 0, U(1)}, {0, 0, U(1), U(3)}, {1, 0, U(3), U(4)}});
  CHECK(validate_schedule(Instance{in}, aug.schedule).feasible());
}

TEST_CASE("SRPT polish matches the oracle") {
  std::mt19937_64 rng(75);
  for (int trial = 0; trial < 60; ++trial) {
    FlowInstance in = random_flow(rng, 1 + trial % 6, 7, 8);
    std::vector<int> jobs;
    for (std::size_t j = 0; j < in.jobs.size(); ++j) {
      if (rng() % 3) jobs.push_back(static_cast<int>(j));
    }
    CAPTURE(trial);
    auto s = srpt_schedule(in, jobs);
    auto o = oracle::srpt(in, jobs);
    in.profit_target = static_cast<std::int64_t>(jobs.size());
    auto rep = validate_schedule(Instance{in}, s);
    CHECK(rep.feasible());
    CHECK(rep.objective == o.objective);
  }
}

TEST_CASE("one job with target one is scheduled at its release") {
  FlowInstance in;
  in.jobs = {{3, 5}};
  in.profit_target = 1;
  auto res = solve_flow_outliers(in);
  CHECK(res.total_flow == U(3));
  CHECK(res.schedule.segments == std::vector<Segment>{{0, 0, U(5), U(8)}});
  CHECK(res.certificate().all());
}

TEST_CASE("no jobs and a zero target give an empty schedule") {
  auto res = solve_flow_outliers(FlowInstance{});
  CHECK(res.schedule.segments.empty());
  CHECK(res.total_flow == 0);
}

TEST_CASE("target above the job count is rejected") {
  FlowInstance in;
  in.jobs = {{1, 0}};
  in.profit_target = 2;
  CHECK_THROWS(solve_flow_outliers(in));
}

TEST_CASE("every guess is tried and the certificate holds against the oracle") {
  std::mt19937_64 rng(76);
  for (int trial = 0; trial < 60; ++trial) {
    FlowInstance in = random_flow(rng, 1 + trial % 7, 8, 10);
    CAPTURE(trial);
    auto res = solve_flow_outliers(in);
    std::set<int> classes;
    for (const auto& j : in.jobs) classes.insert(flow_class(j.proc));
    CHECK(res.runs.size() == classes.size());
    for (const auto& run : res.runs) {
      if (!run.ok) continue;
      CHECK(run.certificate.all());
      CHECK(run.flow <= run.certificate.total_flow);
      CHECK(res.total_flow <= run.flow);
    }
    auto rep = validate_schedule(Instance{in}, res.schedule);
    CHECK(rep.feasible());
    CHECK(static_cast<std::int64_t>(res.schedule.selected.size()) >= in.profit_target);
    CHECK(rep.objective == Dyadic::ticks(res.total_flow));

    auto opt = oracle::brute_flow(in);
    CHECK(opt.objective <= Dyadic::ticks(res.total_flow));
    int k = 0;
    for (const auto& s : opt.witness.segments) k = std::max(k, flow_class(in.jobs[s.job].proc));
    Dyadic bound = opt.objective * (8 + 32 * (k + 1)) + Dyadic::integer(std::int64_t{k} << (k + 2));
    CHECK(Dyadic::ticks(res.total_flow) <= bound);
  }
}

TEST_CASE("gap construction for k = 4") {
  auto g = gen_gap_instance(4);
  CHECK(g.small_count == 32);
  CHECK(g.instance.profit_target == 35);
  CHECK(g.grey_start == 30);
  REQUIRE(g.large.size() == 5);
  std::vector<std::int64_t> p;
  for (int j : g.large) p.push_back(g.instance.jobs[j].proc);
  CHECK(p == std::vector<std::int64_t>{4, 8, 16, 32, 32});
  for (int j = 1; j <= 4; ++j) {
    const auto& job = g.instance.jobs[g.large[j - 1]];
    CHECK(job.proc - (g.grey_start - job.release) == 2);
  }
  CHECK(g.instance.jobs[g.large[4]].release == g.grey_start + 32);
  REQUIRE(g.small.size() == 32);
  for (std::size_t i = 0; i < g.small.size(); ++i) {
    CHECK(g.instance.jobs[g.small[i]].proc == 1);
    CHECK(g.instance.jobs[g.small[i]].release == g.grey_start + static_cast<std::int64_t>(i));
  }
  auto lp = build_flow_lp(g.instance, 5);
  auto sol = lp::solve(lp.model);
  REQUIRE(sol.status == lp::Status::Optimal);
  CHECK(sol.objective <= 32 + 64);
}

TEST_CASE("gap construction rejects odd or tiny k") {
  CHECK_THROWS_AS(gen_gap_instance(3), std::invalid_argument);
  CHECK_THROWS_AS(gen_gap_instance(0), std::invalid_argument);
  CHECK_NOTHROW(gen_gap_instance(2));
}
