#include <algorithm>
#include <set>

#include "class_layout.hpp"
#include "sched/core/errors.hpp"
#include "sched/flow/flow.hpp"

namespace sched::flow {

namespace detail {

Timeline write_class(const FlowInstance& inst, const Timeline& base, int k, const ClassSpace& space,
                     const std::vector<Placed>& placed) {
  Timeline out;
  for (const auto& p : base.pieces) {
    if (flow_class(inst.jobs[p.job].proc) != k) out.pieces.push_back(p);
  }
  for (const auto& pl : placed) {
    for (auto [a, b] : space.to_real(pl.start, pl.start + pl.len)) out.pieces.push_back({pl.job, a, b});
  }
  normalize_pieces(out);
  return out;
}

}  // namespace detail

Timeline normalize_class(const FlowInstance& inst, const Timeline& tl, int k) {
  const int n = static_cast<int>(inst.jobs.size());
  const auto amount = tl.amounts(n);
  std::vector<int> ids;
  for (int j = 0; j < n; ++j) {
    if (amount[j] > 0 && flow_class(inst.jobs[j].proc) == k) ids.push_back(j);
  }
  std::sort(ids.begin(), ids.end(), [&](int a, int b) {
    return std::pair(inst.jobs[a].release, a) < std::pair(inst.jobs[b].release, b);
  });
  ClassSpace space(inst, tl, k);
  std::vector<detail::Placed> placed;
  Ticks cursor = 0;
  for (int j : ids) {
    Ticks start = std::max(cursor, space.to_virtual(units_to_ticks(inst.jobs[j].release)));
    placed.push_back({j, start, amount[j]});
    cursor = start + amount[j];
  }
  return detail::write_class(inst, tl, k, space, placed);
}

Timeline normalize(const FlowInstance& inst, const Timeline& tl) {
  std::set<int> classes;
  for (const auto& p : tl.pieces) classes.insert(flow_class(inst.jobs[p.job].proc));
  // A class pass can open free time inside another class's span; repeat
  // until nothing moves. Pieces only move earlier, so this terminates.
  Timeline cur = tl;
  for (int pass = 0;; ++pass) {
    Timeline before = cur;
    for (int k : classes) cur = normalize_class(inst, cur, k);
    if (cur.pieces == before.pieces) return cur;
    if (pass > 10'000) throw InternalError("normalization did not settle");
  }
}

}  // namespace sched::flow
