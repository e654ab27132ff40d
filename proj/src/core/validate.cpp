#include "sched/core/validate.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <tuple>

#include "sched/core/errors.hpp"

namespace sched {

const char* to_string(ViolationKind k) {
  switch (k) {
    case ViolationKind::Overlap: return "overlap";
    case ViolationKind::ReleaseDate: return "release_date";
    case ViolationKind::UnderProcessing: return "under_processing";
    case ViolationKind::OverProcessing: return "over_processing";
    case ViolationKind::Migration: return "migration";
    case ViolationKind::UnselectedProcessing: return "unselected_processing";
    case ViolationKind::ProfitShortfall: return "profit_shortfall";
    case ViolationKind::Unsorted: return "unsorted";
  }
  return "unknown";
}

bool ValidationReport::has(ViolationKind k) const {
  return std::any_of(violations.begin(), violations.end(), [k](const Violation& v) { return v.kind == k; });
}

namespace {

struct JobView {
  std::int64_t proc(int job, int machine) const { return proc_fn(job, machine); }
  std::function<std::int64_t(int, int)> proc_fn;
  std::vector<std::int64_t> release;
};

JobView view_of(const Instance& inst) {
  JobView v;
  std::visit(
      [&](const auto& i) {
        using T = std::decay_t<decltype(i)>;
        v.release.assign(i.jobs.size(), 0);
        if constexpr (std::is_same_v<T, GapInstance>) {
          v.proc_fn = [&i](int j, int m) { return i.jobs[j].proc[m]; };
        } else if constexpr (std::is_same_v<T, WctInstance>) {
          v.proc_fn = [&i](int j, int m) { return i.jobs[j].proc[m]; };
          for (std::size_t j = 0; j < i.jobs.size(); ++j) v.release[j] = i.jobs[j].release;
        } else {
          v.proc_fn = [&i](int j, int) { return i.jobs[j].proc; };
          for (std::size_t j = 0; j < i.jobs.size(); ++j) v.release[j] = i.jobs[j].release;
        }
      },
      inst);
  return v;
}

}  // namespace

ValidationReport validate_schedule(const Instance& inst, const SegmentSchedule& sched) {
  const int n = job_count(inst);
  const int m = machine_count(inst);
  const JobView view = view_of(inst);
  ValidationReport rep;

  for (const auto& s : sched.segments) {
    if (s.job < 0 || s.job >= n) throw StructuralError("unknown job id " + std::to_string(s.job));
    if (s.machine < 0 || s.machine >= m) throw StructuralError("unknown machine id " + std::to_string(s.machine));
    if (s.end <= s.start) throw StructuralError("segment of job " + std::to_string(s.job) + " has non-positive length");
  }
  for (int j : sched.selected) {
    if (j < 0 || j >= n) throw StructuralError("unknown selected job id " + std::to_string(j));
  }
  std::set<int> selected(sched.selected.begin(), sched.selected.end());

  auto add = [&](ViolationKind k, int job, int machine, std::string detail) {
    rep.violations.push_back({k, job, machine, std::move(detail)});
  };

  const auto& seg = sched.segments;
  for (std::size_t a = 1; a < seg.size(); ++a) {
    if (std::tie(seg[a].machine, seg[a].start) < std::tie(seg[a - 1].machine, seg[a - 1].start)) {
      add(ViolationKind::Unsorted, seg[a].job, seg[a].machine, "segment " + std::to_string(a) + " out of order");
      break;
    }
  }

  // Overlap check on a sorted copy so an unsorted input still gets checked.
  std::vector<Segment> sorted = seg;
  std::sort(sorted.begin(), sorted.end(), [](const Segment& a, const Segment& b) {
    return std::tie(a.machine, a.start) < std::tie(b.machine, b.start);
  });
  for (std::size_t a = 1; a < sorted.size(); ++a) {
    if (sorted[a].machine == sorted[a - 1].machine && sorted[a].start < sorted[a - 1].end) {
      add(ViolationKind::Overlap, sorted[a].job, sorted[a].machine,
          "jobs " + std::to_string(sorted[a - 1].job) + " and " + std::to_string(sorted[a].job));
    }
  }

  std::vector<Ticks> done(n, 0);
  std::vector<Ticks> completion(n, 0);
  std::vector<std::set<int>> machines_of(n);
  Ticks makespan = 0;
  for (const auto& s : seg) {
    if (s.start < units_to_ticks(view.release[s.job])) {
      add(ViolationKind::ReleaseDate, s.job, s.machine, "starts before release");
    }
    if (!selected.count(s.job)) {
      add(ViolationKind::UnselectedProcessing, s.job, s.machine, "job is processed but not selected");
    }
    done[s.job] += s.length();
    completion[s.job] = std::max(completion[s.job], s.end);
    machines_of[s.job].insert(s.machine);
    makespan = std::max(makespan, s.end);
  }
  rep.makespan = Dyadic::ticks(makespan);

  for (int j : selected) {
    if (machines_of[j].size() > 1) {
      add(ViolationKind::Migration, j, -1, "processed on several machines");
      continue;
    }
    int machine = machines_of[j].empty() ? 0 : *machines_of[j].begin();
    Ticks need = units_to_ticks(view.proc(j, machine));
    if (done[j] < need) add(ViolationKind::UnderProcessing, j, machine, "processed less than p");
    if (done[j] > need) add(ViolationKind::OverProcessing, j, machine, "processed more than p");
  }

  std::visit(
      [&](const auto& i) {
        using T = std::decay_t<decltype(i)>;
        if constexpr (std::is_same_v<T, GapInstance>) {
          std::int64_t profit = 0, cost = 0;
          for (int j : selected) {
            profit += i.jobs[j].profit;
            if (!machines_of[j].empty()) cost += i.jobs[j].cost[*machines_of[j].begin()];
          }
          rep.profit = {profit};
          rep.cost = cost;
          rep.objective = Dyadic::integer(cost);
          if (profit < i.profit_target) add(ViolationKind::ProfitShortfall, -1, -1, "profit below target");
        } else if constexpr (std::is_same_v<T, WctInstance>) {
          __int128 obj = 0;
          for (int j : selected) obj += static_cast<__int128>(i.jobs[j].weight) * completion[j];
          rep.objective = Dyadic::ticks(obj);
          for (std::size_t k = 0; k < i.profit_targets.size(); ++k) {
            std::int64_t profit = 0;
            for (int j : selected) profit += i.profit_targets[k].profits[j];
            rep.profit.push_back(profit);
            if (profit < i.profit_targets[k].target) {
              add(ViolationKind::ProfitShortfall, -1, -1, "target " + std::to_string(k) + " not met");
            }
          }
        } else {
          __int128 obj = 0;
          for (int j : selected) obj += completion[j] - units_to_ticks(i.jobs[j].release);
          rep.objective = Dyadic::ticks(obj);
          rep.profit = {static_cast<std::int64_t>(selected.size())};
          if (static_cast<std::int64_t>(selected.size()) < i.profit_target) {
            add(ViolationKind::ProfitShortfall, -1, -1, "fewer jobs than the target");
          }
        }
      },
      inst);
  return rep;
}

}  // namespace sched
