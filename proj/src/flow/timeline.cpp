#include <algorithm>

#include "sched/core/errors.hpp"
#include "sched/flow/timeline.hpp"

namespace sched::flow {

Ticks Timeline::processed() const {
  Ticks total = 0;
  for (const auto& p : pieces) total += p.length();
  return total;
}

std::vector<Ticks> Timeline::amounts(int jobs) const {
  std::vector<Ticks> a(jobs, 0);
  for (const auto& p : pieces) a[p.job] += p.length();
  return a;
}

std::vector<std::pair<Ticks, Ticks>> Timeline::free_intervals() const {
  std::vector<std::pair<Ticks, Ticks>> out;
  Ticks cursor = 0;
  for (const auto& p : pieces) {
    if (p.start > cursor) out.emplace_back(cursor, p.start);
    cursor = std::max(cursor, p.end);
  }
  return out;
}

void normalize_pieces(Timeline& tl) {
  std::vector<Piece> in;
  for (const auto& p : tl.pieces) {
    if (p.end > p.start) in.push_back(p);
  }
  std::sort(in.begin(), in.end(), [](const Piece& a, const Piece& b) { return a.start < b.start; });
  std::vector<Piece> out;
  for (const auto& p : in) {
    if (!out.empty() && p.start < out.back().end) throw InternalError("timeline pieces overlap");
    if (!out.empty() && out.back().job == p.job && out.back().end == p.start) {
      out.back().end = p.end;
    } else {
      out.push_back(p);
    }
  }
  tl.pieces = std::move(out);
}

namespace {

Wide piece_flow(const FlowInstance& inst, const Piece& p) {
  const int k = flow_class(inst.jobs[p.job].proc);
  if (k > kMaxClass) throw SizeError("processing time above 2^24");
  const Wide r2 = 2 * static_cast<Wide>(inst.jobs[p.job].release);
  Wide total = 0;
  for (Ticks s = p.start; s < p.end;) {
    const Ticks u = s / kTicksPerUnit;
    const Ticks e = std::min(p.end, (u + 1) * kTicksPerUnit);
    const Wide a = e - s;
    total += a * (2 * static_cast<Wide>(u) + 1 - r2) * (Wide{1} << (kMaxClass - k)) + a * (Wide{1} << kMaxClass);
    s = e;
  }
  return total;
}

}  // namespace

Wide lp_flow(const FlowInstance& inst, const Timeline& tl) {
  Wide total = 0;
  for (const auto& p : tl.pieces) total += piece_flow(inst, p);
  return total;
}

Wide lp_flow_class(const FlowInstance& inst, const Timeline& tl, int k) {
  Wide total = 0;
  for (const auto& p : tl.pieces) {
    if (flow_class(inst.jobs[p.job].proc) == k) total += piece_flow(inst, p);
  }
  return total;
}

Ticks suffix_volume(const FlowInstance& inst, const Timeline& tl, int k, std::int64_t t) {
  const Ticks from = units_to_ticks(t);
  Ticks total = 0;
  for (const auto& p : tl.pieces) {
    if (flow_class(inst.jobs[p.job].proc) != k) continue;
    total += std::max<Ticks>(0, p.end - std::max(p.start, from));
  }
  return total;
}

namespace {

struct Span {
  Ticks first = kForever;
  Ticks last = 0;
};

std::vector<Span> spans(const Timeline& tl, int jobs) {
  std::vector<Span> s(jobs);
  for (const auto& p : tl.pieces) {
    s[p.job].first = std::min(s[p.job].first, p.start);
    s[p.job].last = std::max(s[p.job].last, p.end);
  }
  return s;
}

}  // namespace

bool non_alternating(const FlowInstance& inst, const Timeline& tl, int k) {
  const int n = static_cast<int>(inst.jobs.size());
  auto s = spans(tl, n);
  std::vector<int> ids;
  for (int j = 0; j < n; ++j) {
    if (flow_class(inst.jobs[j].proc) == k && s[j].first != kForever) ids.push_back(j);
  }
  std::sort(ids.begin(), ids.end(), [&](int a, int b) {
    return std::pair(inst.jobs[a].release, a) < std::pair(inst.jobs[b].release, b);
  });
  Ticks reach = 0;
  for (int j : ids) {
    if (s[j].first < reach) return false;
    reach = std::max(reach, s[j].last);
  }
  return true;
}

bool packed(const FlowInstance& inst, const Timeline& tl, int k) {
  const int n = static_cast<int>(inst.jobs.size());
  auto s = spans(tl, n);
  auto gaps = tl.free_intervals();
  for (int j = 0; j < n; ++j) {
    if (flow_class(inst.jobs[j].proc) != k || s[j].first == kForever) continue;
    const Ticks r = units_to_ticks(inst.jobs[j].release);
    for (auto [a, b] : gaps) {
      if (std::max(a, r) < std::min(b, s[j].last)) return false;
    }
  }
  return true;
}

std::vector<int> full_jobs(const FlowInstance& inst, const Timeline& tl) {
  auto a = tl.amounts(static_cast<int>(inst.jobs.size()));
  std::vector<int> out;
  for (int j = 0; j < static_cast<int>(a.size()); ++j) {
    if (a[j] == units_to_ticks(inst.jobs[j].proc)) out.push_back(j);
  }
  return out;
}

SegmentSchedule to_schedule(const Timeline& tl, std::vector<int> selected) {
  SegmentSchedule s;
  for (const auto& p : tl.pieces) s.segments.push_back({p.job, 0, p.start, p.end});
  s.selected = std::move(selected);
  canonicalize(s);
  return s;
}

ClassSpace::ClassSpace(const FlowInstance& inst, const Timeline& tl, int k) {
  Ticks cursor = 0;
  auto add = [&](Ticks a, Ticks b) {
    offset_.push_back(offset_.empty() ? 0 : offset_.back() + (end_.back() - start_.back()));
    start_.push_back(a);
    end_.push_back(b);
  };
  for (const auto& p : tl.pieces) {
    if (flow_class(inst.jobs[p.job].proc) == k) continue;
    if (p.start > cursor) add(cursor, p.start);
    cursor = p.end;
  }
  add(cursor, kForever);
}

Ticks ClassSpace::to_virtual(Ticks x) const {
  auto it = std::upper_bound(start_.begin(), start_.end(), x);
  if (it == start_.begin()) return 0;
  std::size_t i = static_cast<std::size_t>(it - start_.begin()) - 1;
  if (x < end_[i]) return offset_[i] + (x - start_[i]);
  return offset_[i + 1];
}

Ticks ClassSpace::to_real(Ticks v) const {
  auto it = std::upper_bound(offset_.begin(), offset_.end(), v);
  std::size_t i = static_cast<std::size_t>(it - offset_.begin()) - 1;
  return start_[i] + (v - offset_[i]);
}

Ticks ClassSpace::interval_end(Ticks x) const {
  auto it = std::upper_bound(start_.begin(), start_.end(), x);
  if (it == start_.begin()) throw InternalError("point outside the class space");
  std::size_t i = static_cast<std::size_t>(it - start_.begin()) - 1;
  if (x >= end_[i]) throw InternalError("point outside the class space");
  return end_[i];
}

std::vector<std::pair<Ticks, Ticks>> ClassSpace::to_real(Ticks va, Ticks vb) const {
  std::vector<std::pair<Ticks, Ticks>> out;
  if (vb <= va) return out;
  auto it = std::upper_bound(offset_.begin(), offset_.end(), va);
  for (std::size_t i = static_cast<std::size_t>(it - offset_.begin()) - 1; i < start_.size(); ++i) {
    const Ticks lo = std::max(va, offset_[i]);
    const Ticks hi = std::min(vb, offset_[i] + (end_[i] - start_[i]));
    if (lo >= vb) break;
    if (hi > lo) out.emplace_back(start_[i] + (lo - offset_[i]), start_[i] + (hi - offset_[i]));
  }
  return out;
}

}  // namespace sched::flow
