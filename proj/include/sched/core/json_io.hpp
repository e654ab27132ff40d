#pragma once

#include <string>
#include <string_view>

#include "sched/core/instance.hpp"
#include "sched/core/schedule.hpp"
#include "sched/core/ticks.hpp"

namespace sched {

// Throws ParseError naming the offending field, or StructuralError when the
// parsed instance breaks a type invariant.
Instance read_instance(std::string_view text);
// Canonical form: sorted keys, two-space indent, trailing newline.
std::string write_instance(const Instance& inst);

struct ScheduleDocument {
  SegmentSchedule schedule;
  Dyadic objective;
};

ScheduleDocument read_schedule(std::string_view text);
std::string write_schedule(const SegmentSchedule& sched, const Dyadic& objective);

const char* kind_name(const Instance& inst);

}  // namespace sched
