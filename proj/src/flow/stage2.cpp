#include <algorithm>
#include <string>

#include "sched/flow/flow.hpp"

namespace sched::flow {

AugmentResult stage2_augment(const FlowInstance& inst, const Timeline& tl, const std::vector<int>& class_target) {
  const int n = static_cast<int>(inst.jobs.size());
  AugmentResult out;
  std::vector<int> full = full_jobs(inst, tl);
  std::vector<char> is_full(n, 0);
  for (int j : full) is_full[j] = 1;

  std::vector<Piece> busy;
  for (const auto& pc : tl.pieces) {
    if (is_full[pc.job]) busy.push_back(pc);
  }
  std::vector<int> count(class_target.size(), 0);
  for (int j : full) {
    int k = flow_class(inst.jobs[j].proc);
    if (k < static_cast<int>(count.size())) ++count[k];
  }

  for (int k = 0; k < static_cast<int>(class_target.size()); ++k) {
    int need = class_target[k] - count[k];
    if (need <= 0) continue;
    std::vector<int> cand;
    for (int j = 0; j < n; ++j) {
      if (!is_full[j] && flow_class(inst.jobs[j].proc) == k) cand.push_back(j);
    }
    if (static_cast<int>(cand.size()) < need) {
      out.reason = "class " + std::to_string(k) + " has too few jobs left to reach its target";
      return out;
    }
    std::sort(cand.begin(), cand.end(), [&](int a, int b) {
      return std::pair(inst.jobs[a].proc, a) < std::pair(inst.jobs[b].proc, b);
    });
    for (int i = 0; i < need; ++i) {
      const int j = cand[i];
      const Ticks release = units_to_ticks(inst.jobs[j].release);
      Ticks left = units_to_ticks(inst.jobs[j].proc);
      Ticks cursor = release;
      std::vector<Piece> mine;
      // busy is sorted and disjoint; fill the gaps after the release.
      for (const auto& b : busy) {
        if (left == 0) break;
        if (b.end <= cursor) continue;
        if (b.start > cursor) {
          Ticks take = std::min(left, b.start - cursor);
          mine.push_back({j, cursor, cursor + take});
          left -= take;
        }
        cursor = std::max(cursor, b.end);
      }
      if (left > 0) mine.push_back({j, cursor, cursor + left});
      out.added_flow += mine.back().end - release;
      out.added.push_back(j);
      busy.insert(busy.end(), mine.begin(), mine.end());
      std::sort(busy.begin(), busy.end(), [](const Piece& a, const Piece& b) { return a.start < b.start; });
    }
  }
  std::vector<int> selected = full;
  selected.insert(selected.end(), out.added.begin(), out.added.end());
  std::sort(selected.begin(), selected.end());
  Timeline fin;
  fin.pieces = busy;
  normalize_pieces(fin);
  out.schedule = to_schedule(fin, selected);
  out.ok = true;
  return out;
}

}  // namespace sched::flow
