#include <algorithm>
#include <string>

#include "sched/flow/flow.hpp"

namespace sched::flow {

AuditReport audit_charges(const std::vector<ClassCharges>& ledger, Ticks p_star) {
  AuditReport rep;
  const Wide bound = static_cast<Wide>(p_star) << (kChargeBits - kTickBits + 1);
  for (const auto& cls : ledger) {
    const std::string tag = "class " + std::to_string(cls.k) + ": ";
    Wide integral = 0;
    for (const auto& c : cls.charges) {
      if (c.to <= c.from) continue;
      integral += c.height * (c.to - c.from);
      bool free_paid = c.to > cls.end_at_close;
      for (auto [a, b] : cls.free_at_close) free_paid = free_paid || std::max(a, c.from) < std::min(b, c.to);
      if (free_paid) {
        rep.free_time_never_pays = false;
        rep.problems.push_back(tag + "free time pays for job " + std::to_string(c.job));
      }
    }
    std::vector<Charge> sorted = cls.charges;
    std::sort(sorted.begin(), sorted.end(), [](const Charge& a, const Charge& b) { return a.from < b.from; });
    for (std::size_t i = 0; i < sorted.size() && rep.one_job_per_point; ++i) {
      for (std::size_t j = i + 1; j < sorted.size() && sorted[j].from < sorted[i].to; ++j) {
        if (sorted[j].job != sorted[i].job && sorted[j].to > sorted[j].from && sorted[i].to > sorted[i].from) {
          rep.one_job_per_point = false;
          rep.problems.push_back(tag + "a point pays for jobs " + std::to_string(sorted[i].job) + " and " +
                                 std::to_string(sorted[j].job));
          break;
        }
      }
    }
    rep.class_integral.push_back(integral);
    if (integral > bound) {
      rep.total_within_bound = false;
      rep.problems.push_back(tag + "charges exceed twice the baseline processing");
    }
  }
  return rep;
}

}  // namespace sched::flow
