#include <algorithm>
#include <string>

#include "class_layout.hpp"
#include "sched/core/errors.hpp"
#include "sched/flow/flow.hpp"

namespace sched::flow {

namespace {

constexpr int kIterationCap = 1'000'000;

struct VJob {
  int id = 0;
  std::int64_t p = 0;
  std::int64_t y = 0;  // over kFull
  Ticks release = 0;   // real
  Ticks vr = 0;        // release in class space
  Ticks es = 0;        // earliest start in class space
  Ticks start = 0;

  Ticks len() const { return y * p; }
  Ticks end() const { return start + len(); }
  bool fractional() const { return y > 0 && y < kFull; }
};

class ClassState {
 public:
  ClassState(const FlowInstance& inst, const Timeline& tl, int k) : space_(inst, tl, k), k_(k) {
    const int n = static_cast<int>(inst.jobs.size());
    const auto amount = tl.amounts(n);
    std::vector<Ticks> first(n, kForever);
    for (const auto& pc : tl.pieces) first[pc.job] = std::min(first[pc.job], pc.start);
    for (int j = 0; j < n; ++j) {
      if (amount[j] == 0 || flow_class(inst.jobs[j].proc) != k) continue;
      if (amount[j] % inst.jobs[j].proc != 0) throw InternalError("fraction off the 2^-20 grid");
      VJob v;
      v.id = j;
      v.p = inst.jobs[j].proc;
      v.y = amount[j] / v.p;
      v.release = units_to_ticks(inst.jobs[j].release);
      v.vr = space_.to_virtual(v.release);
      v.start = space_.to_virtual(first[j]);
      v.es = std::min(v.vr, v.start);
      order_.push_back(v);
    }
    std::sort(order_.begin(), order_.end(),
              [](const VJob& a, const VJob& b) { return std::pair(a.start, a.id) < std::pair(b.start, b.id); });
    layout();
  }

  void layout() {
    Ticks cur = 0;
    for (auto& v : order_) {
      if (v.y == 0) {
        v.start = cur;
        continue;
      }
      v.start = std::max(cur, v.es);
      cur = v.end();
    }
  }

  // Move everything as early as releases allow; jobs already ahead of their
  // release keep their start as a floor.
  void advance() {
    for (auto& v : order_) {
      if (v.y > 0) v.es = std::min(v.vr, v.start);
    }
    layout();
  }

  int full() const {
    int c = 0;
    for (const auto& v : order_) c += v.y == kFull;
    return c;
  }

  std::int64_t sum_y() const {
    std::int64_t s = 0;
    for (const auto& v : order_) s += v.y;
    return s;
  }

  Ticks max_violation() const {
    Ticks worst = 0;
    for (const auto& v : order_) {
      if (v.y > 0) worst = std::max(worst, v.vr - v.start);
    }
    return worst;
  }

  std::vector<VJob>& order() { return order_; }
  const ClassSpace& space() const { return space_; }
  int k() const { return k_; }

  std::vector<detail::Placed> placement() const {
    std::vector<detail::Placed> out;
    for (const auto& v : order_) {
      if (v.y > 0) out.push_back({v.id, v.start, v.len()});
    }
    return out;
  }

 private:
  ClassSpace space_;
  int k_;
  std::vector<VJob> order_;
};

Wide charge_height(Ticks amount, int k) { return static_cast<Wide>(amount) << (kFlowBits - kTickBits - k); }

int next_scheduled(const std::vector<VJob>& order, int after) {
  for (int i = after + 1; i < static_cast<int>(order.size()); ++i) {
    if (order[i].y > 0) return i;
  }
  return -1;
}

}  // namespace

SwapResult stage1_swap(const FlowInstance& inst, const Timeline& tl, int k) {
  ClassState st(inst, tl, k);
  auto& order = st.order();
  SwapResult out;
  out.ledger.k = k;
  ClassReport& rep = out.report;
  rep.k = k;
  rep.sum_y = st.sum_y();
  rep.target = static_cast<int>(rep.sum_y / kFull) - 1;
  rep.full_before = st.full();

  int guard = 0;
  auto tick = [&] {
    if (++guard > kIterationCap) throw InternalError("class " + std::to_string(k) + " swapping does not terminate");
  };

  while (st.full() < rep.target) {
    tick();
    st.advance();
    int i1 = -1;
    for (int i = 0; i < static_cast<int>(order.size()); ++i) {
      if (order[i].fractional()) {
        i1 = i;
        break;
      }
    }
    if (i1 < 0) throw InternalError("no fractional job while below the class target");
    const std::int64_t p1 = order[i1].p;

    // j_2..j_q: scheduled jobs after j_1 up to the first strictly shorter one.
    std::vector<int> mids;
    int q1 = -1;
    for (int i = i1 + 1; i < static_cast<int>(order.size()); ++i) {
      if (order[i].y == 0) continue;
      if (order[i].p < p1) {
        q1 = i;
        break;
      }
      mids.push_back(i);
    }
    bool case_one = q1 < 0;
    if (!case_one) {
      Wide room = 0;
      Ticks prev = order[i1].end();
      for (int i : mids) {
        room += static_cast<Wide>(order[i].y) * p1 + (order[i].start - prev);
        prev = order[i].end();
      }
      room += order[q1].start - prev;
      case_one = room >= static_cast<Wide>(kFull - order[i1].y) * p1;
    }

    if (case_one) {
      ++rep.case_one;
      VJob* j1 = &order[i1];
      while (j1->y < kFull) {
        tick();
        const int s = next_scheduled(order, i1);
        const Ticks end1 = j1->end();
        const Ticks gap = s < 0 ? kForever : order[s].start - end1;
        Ticks moved = 0;
        if (gap == 0) {
          // Replace the front of j_s by j_1.
          VJob& js = order[s];
          const std::int64_t d = std::min(kFull - j1->y, js.y);
          moved = d * p1;
          if (js.release > j1->release) {
            out.ledger.charges.push_back({j1->id, j1->release, js.release, charge_height(moved, k)});
          }
          j1->y += d;
          js.y -= d;
        } else {
          // Grow j_1 into the free time right after it, inside one slot, and
          // take the same fraction off the last fractional job.
          const Ticks real = st.space().to_real(end1);
          const Ticks slot = real / kTicksPerUnit;
          const Ticks len = std::min({gap, (slot + 1) * kTicksPerUnit - real, st.space().interval_end(real) - real});
          int l = -1;
          for (int i = static_cast<int>(order.size()) - 1; i >= 0; --i) {
            if (order[i].fractional()) {
              l = i;
              break;
            }
          }
          if (l < 0 || l == i1) throw InternalError("no job to delete from while growing the first fractional job");
          const std::int64_t d = std::min({kFull - j1->y, order[l].y, (len + p1 - 1) / p1});
          moved = d * p1;
          const Ticks t = slot * kTicksPerUnit;
          if (j1->release < t) out.ledger.charges.push_back({j1->id, j1->release, t, charge_height(moved, k)});
          j1->y += d;
          order[l].y -= d;
        }
        st.layout();
        st.advance();
        j1 = &order[i1];
      }
    } else {
      ++rep.case_two;
      const Ticks a1 = order[i1].start;
      VJob& jq = order[q1];
      std::vector<int> group{i1};
      group.insert(group.end(), mids.begin(), mids.end());
      for (int s : group) {
        if (jq.y == kFull) break;
        const std::int64_t d = std::min(kFull - jq.y, order[s].y);
        order[s].y -= d;
        jq.y += d;
      }
      for (int s : group) order[s].es = order[s].vr;
      VJob moved = jq;
      moved.es = a1;
      order.erase(order.begin() + q1);
      order.insert(order.begin() + i1, moved);
      st.layout();
      rep.max_violation = std::max(rep.max_violation, st.max_violation());
    }
  }
  rep.max_violation = std::max(rep.max_violation, st.max_violation());
  rep.full_after = st.full();
  out.timeline = detail::write_class(inst, tl, k, st.space(), st.placement());
  out.ledger.free_at_close = out.timeline.free_intervals();
  out.ledger.end_at_close = out.timeline.end();
  return out;
}

Timeline stage1_shift(const FlowInstance& inst, const Timeline& tl, int k) {
  ClassSpace space(inst, tl, k);
  const Ticks shift = units_to_ticks(std::int64_t{2} << k);
  std::vector<detail::Placed> placed;
  for (const auto& pc : tl.pieces) {
    if (flow_class(inst.jobs[pc.job].proc) != k) continue;
    placed.push_back({pc.job, space.to_virtual(pc.start) + shift, pc.length()});
  }
  Timeline out = detail::write_class(inst, tl, k, space, placed);
  for (const auto& pc : out.pieces) {
    if (flow_class(inst.jobs[pc.job].proc) != k) continue;
    if (pc.start < units_to_ticks(inst.jobs[pc.job].release)) {
      throw InternalError("job " + std::to_string(pc.job) + " still starts before its release after shifting");
    }
  }
  return out;
}

}  // namespace sched::flow
