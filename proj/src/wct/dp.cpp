#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>

#include "sched/core/errors.hpp"
#include "sched/wct/wct.hpp"

namespace sched::wct {

namespace {

constexpr std::int64_t kNone = std::numeric_limits<std::int64_t>::min() / 4;

struct DpJob {
  int id;
  std::int64_t p;
  std::int64_t profit;
};

void require_dp_shape(const WctInstance& inst) {
  if (inst.profit_targets.size() != 1) throw std::invalid_argument("dynamic program takes a single profit target");
  for (const auto& job : inst.jobs) {
    if (job.weight != 1) throw std::invalid_argument("dynamic program requires unit weights");
    if (job.release != 0) throw std::invalid_argument("dynamic program requires zero release dates");
  }
}

// profit(j, C, L_1..L_m): best profit of a subset of the first j jobs (in
// non-decreasing p order) with sum of completion times at most C and load
// exactly L_i on machine i. Rolling value layers plus one decision byte per
// cell and layer for the backtrack.
struct Selection {
  bool found = false;
  std::int64_t bound = 0;
  std::vector<std::vector<int>> order;  // per machine, positions into jobs
  std::int64_t cells = 0;
};

Selection run_dp(const std::vector<DpJob>& jobs, int m, std::int64_t target, std::int64_t max_cells) {
  const int n = static_cast<int>(jobs.size());
  Selection out;
  out.order.assign(m, {});
  std::int64_t lmax = 0;
  for (const auto& j : jobs) lmax += j.p;
  const std::int64_t pn = n ? jobs.back().p : 0;
  const std::int64_t cmax = pn * n * (n + 1) / 2;

  double states = 1;
  for (int i = 0; i < m; ++i) states *= static_cast<double>(lmax + 1);
  const double layer_d = states * static_cast<double>(cmax + 1);
  const double total = layer_d * (n + 1) + 2 * layer_d;
  if (total > static_cast<double>(max_cells)) {
    throw SizeError("dynamic program table needs " + std::to_string(static_cast<long long>(total)) +
                    " cells; use the FPTAS");
  }
  const std::size_t nl = static_cast<std::size_t>(states);
  const std::size_t layer = static_cast<std::size_t>(layer_d);
  out.cells = static_cast<std::int64_t>(total);

  // Decode every load vector once.
  std::vector<std::int64_t> stride(m);
  for (int i = 0; i < m; ++i) stride[i] = i == 0 ? 1 : stride[i - 1] * (lmax + 1);
  std::vector<std::int64_t> loads(nl * m);
  for (std::size_t s = 0; s < nl; ++s) {
    std::size_t rest = s;
    for (int i = 0; i < m; ++i) {
      loads[s * m + i] = static_cast<std::int64_t>(rest % (lmax + 1));
      rest /= (lmax + 1);
    }
  }

  std::vector<std::int64_t> prev(layer, kNone), cur(layer, kNone);
  for (std::int64_t c = 0; c <= cmax; ++c) prev[static_cast<std::size_t>(c) * nl] = 0;
  std::vector<std::uint8_t> decision(layer * (n + 1), 0);

  for (int j = 1; j <= n; ++j) {
    const std::int64_t p = jobs[j - 1].p;
    const std::int64_t gain = jobs[j - 1].profit;
    std::uint8_t* dec = &decision[layer * j];
    for (std::int64_t c = 0; c <= cmax; ++c) {
      const std::size_t base = static_cast<std::size_t>(c) * nl;
      for (std::size_t s = 0; s < nl; ++s) {
        std::int64_t best = prev[base + s];
        std::uint8_t how = 0;
        for (int i = 0; i < m; ++i) {
          const std::int64_t li = loads[s * m + i];
          if (li < p || c < li) continue;
          std::int64_t from = prev[static_cast<std::size_t>(c - li) * nl + s - static_cast<std::size_t>(p * stride[i])];
          if (from == kNone) continue;
          if (from + gain > best) {
            best = from + gain;
            how = static_cast<std::uint8_t>(i + 1);
          }
        }
        cur[base + s] = best;
        dec[base + s] = how;
      }
    }
    std::swap(prev, cur);
  }

  for (std::int64_t c = 0; c <= cmax && !out.found; ++c) {
    for (std::size_t s = 0; s < nl; ++s) {
      if (prev[static_cast<std::size_t>(c) * nl + s] < target) continue;
      out.found = true;
      out.bound = c;
      std::int64_t cc = c;
      std::size_t ss = s;
      for (int j = n; j >= 1; --j) {
        std::uint8_t how = decision[layer * j + static_cast<std::size_t>(cc) * nl + ss];
        if (how == 0) continue;
        int i = how - 1;
        out.order[i].push_back(j - 1);
        cc -= loads[ss * m + i];
        ss -= static_cast<std::size_t>(jobs[j - 1].p * stride[i]);
      }
      for (auto& o : out.order) std::reverse(o.begin(), o.end());
      break;
    }
  }
  return out;
}

std::vector<DpJob> sorted_jobs(const WctInstance& inst, const std::vector<int>& ids) {
  std::vector<DpJob> jobs;
  for (int id : ids) jobs.push_back({id, inst.jobs[id].proc[0], inst.profit_targets[0].profits[id]});
  std::stable_sort(jobs.begin(), jobs.end(), [](const DpJob& a, const DpJob& b) { return a.p < b.p; });
  return jobs;
}

// Lay out the chosen jobs back to back in the given order with true sizes.
DpResult realize(const WctInstance& inst, const std::vector<std::vector<int>>& order_ids) {
  DpResult r;
  r.order = order_ids;
  for (std::size_t i = 0; i < order_ids.size(); ++i) {
    std::int64_t t = 0;
    for (int id : order_ids[i]) {
      std::int64_t p = inst.jobs[id].proc[0];
      r.schedule.segments.push_back({id, static_cast<int>(i), units_to_ticks(t), units_to_ticks(t + p)});
      t += p;
      r.value += t;
      r.selected.push_back(id);
    }
  }
  std::sort(r.selected.begin(), r.selected.end());
  r.schedule.selected = r.selected;
  canonicalize(r.schedule);
  return r;
}

DpResult exact(const WctInstance& inst, int m, std::int64_t max_cells) {
  require_dp_shape(inst);
  if (m < 1 || m > 3) throw std::invalid_argument("machine count must be between 1 and 3");
  std::vector<int> ids(inst.jobs.size());
  std::iota(ids.begin(), ids.end(), 0);
  std::vector<DpJob> jobs = sorted_jobs(inst, ids);
  Selection sel = run_dp(jobs, m, inst.profit_targets[0].target, max_cells);
  if (!sel.found) throw InfeasibleError("total profit is below the target");
  std::vector<std::vector<int>> order(m);
  for (int i = 0; i < m; ++i) {
    for (int pos : sel.order[i]) order[i].push_back(jobs[pos].id);
  }
  DpResult r = realize(inst, order);
  r.cells = sel.cells;
  if (r.value != sel.bound) throw InternalError("dynamic program bound disagrees with its schedule");
  return r;
}

}  // namespace

DpResult dp_exact(const WctInstance& inst, std::int64_t max_cells) { return exact(inst, 1, max_cells); }

DpResult dp_multi_machine(const WctInstance& inst, int machines, std::int64_t max_cells) {
  return exact(inst, machines, max_cells);
}

double fptas_scale(int n, double eps, std::int64_t p_max) {
  return 2.0 * eps * static_cast<double>(p_max) / (static_cast<double>(n) * (n + 1));
}

FptasResult fptas(const WctInstance& inst, double eps, std::int64_t max_cells) {
  require_dp_shape(inst);
  if (!(eps > 0) || eps > 1) throw std::invalid_argument("eps must lie in (0, 1]");
  const int n = static_cast<int>(inst.jobs.size());
  const ProfitTarget& tg = inst.profit_targets[0];
  std::set<std::int64_t> sizes;
  for (const auto& job : inst.jobs) sizes.insert(job.proc[0]);

  std::optional<FptasResult> best;
  for (std::int64_t p_max : sizes) {
    std::vector<int> ids;
    std::int64_t avail = 0;
    for (int j = 0; j < n; ++j) {
      if (inst.jobs[j].proc[0] <= p_max) {
        ids.push_back(j);
        avail += tg.profits[j];
      }
    }
    if (avail < tg.target) continue;
    const double k = fptas_scale(n, eps, p_max);
    std::vector<DpJob> jobs;
    for (int id : ids) {
      std::int64_t p = inst.jobs[id].proc[0];
      std::int64_t scaled = k <= 1 ? p : static_cast<std::int64_t>(std::ceil(static_cast<double>(p) / k - 1e-9));
      jobs.push_back({id, scaled, tg.profits[id]});
    }
    std::stable_sort(jobs.begin(), jobs.end(), [](const DpJob& a, const DpJob& b) { return a.p < b.p; });
    Selection sel = run_dp(jobs, 1, tg.target, max_cells);
    if (!sel.found) continue;
    // Evaluate the chosen set in true shortest-first order.
    std::vector<int> chosen;
    for (int pos : sel.order[0]) chosen.push_back(jobs[pos].id);
    std::stable_sort(chosen.begin(), chosen.end(),
                     [&](int a, int b) { return inst.jobs[a].proc[0] < inst.jobs[b].proc[0]; });
    FptasResult cand;
    cand.result = realize(inst, {chosen});
    cand.result.cells = sel.cells;
    cand.p_max = p_max;
    cand.scale = std::max(1.0, k);
    if (!best || cand.result.value < best->result.value) best = std::move(cand);
  }
  if (!best) {
    if (tg.target > 0) throw InfeasibleError("total profit is below the target");
    FptasResult empty;
    empty.result = realize(inst, {{}});
    return empty;
  }
  return *best;
}

}  // namespace sched::wct
