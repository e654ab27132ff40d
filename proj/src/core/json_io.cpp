#include "sched/core/json_io.hpp"

#include <json.hpp>
#include <stdexcept>

#include "sched/core/errors.hpp"

namespace sched {

using nlohmann::json;

namespace {

std::string at(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }
std::string at(const std::string& path, std::size_t idx) { return path + "[" + std::to_string(idx) + "]"; }

const json& field(const json& obj, const std::string& path, const std::string& key) {
  if (!obj.is_object()) throw ParseError(path.empty() ? "<root>" : path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(at(path, key), "missing field");
  return *it;
}

std::int64_t as_int(const json& v, const std::string& path) {
  if (!v.is_number_integer()) throw ParseError(path, "expected an integer");
  return v.get<std::int64_t>();
}

std::int64_t int_field(const json& obj, const std::string& path, const std::string& key) {
  return as_int(field(obj, path, key), at(path, key));
}

std::int64_t int_field_or(const json& obj, const std::string& path, const std::string& key, std::int64_t dflt) {
  if (!obj.contains(key)) return dflt;
  return as_int(obj.at(key), at(path, key));
}

std::vector<std::int64_t> int_list(const json& v, const std::string& path) {
  if (!v.is_array()) throw ParseError(path, "expected an array");
  std::vector<std::int64_t> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(as_int(v[i], at(path, i)));
  return out;
}

const json& array_field(const json& obj, const std::string& path, const std::string& key) {
  const json& v = field(obj, path, key);
  if (!v.is_array()) throw ParseError(at(path, key), "expected an array");
  return v;
}

int machine_field(const json& doc) {
  std::int64_t m = int_field(doc, "", "machines");
  if (m < 1 || m > 1'000'000) throw ParseError("machines", "must be a positive count");
  return static_cast<int>(m);
}

GapInstance parse_gap(const json& doc) {
  GapInstance g;
  g.machines = machine_field(doc);
  const json& jobs = array_field(doc, "", "jobs");
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    std::string p = at("jobs", j);
    GapJob job;
    job.proc = int_list(field(jobs[j], p, "proc"), at(p, "proc"));
    job.cost = int_list(field(jobs[j], p, "cost"), at(p, "cost"));
    job.profit = int_field(jobs[j], p, "profit");
    if (job.proc.size() != static_cast<std::size_t>(g.machines)) throw ParseError(at(p, "proc"), "length must equal machines");
    if (job.cost.size() != static_cast<std::size_t>(g.machines)) throw ParseError(at(p, "cost"), "length must equal machines");
    g.jobs.push_back(std::move(job));
  }
  g.profit_target = int_field(doc, "", "profit_target");
  g.cost_bound = int_field(doc, "", "cost_bound");
  g.makespan_bound = int_field(doc, "", "makespan_bound");
  return g;
}

WctInstance parse_wct(const json& doc) {
  WctInstance w;
  w.machines = machine_field(doc);
  const json& jobs = array_field(doc, "", "jobs");
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    std::string p = at("jobs", j);
    WctJob job;
    job.proc = int_list(field(jobs[j], p, "proc"), at(p, "proc"));
    if (job.proc.size() != static_cast<std::size_t>(w.machines)) throw ParseError(at(p, "proc"), "length must equal machines");
    job.weight = int_field_or(jobs[j], p, "weight", 1);
    job.profit = int_field_or(jobs[j], p, "profit", 0);
    job.release = int_field_or(jobs[j], p, "release", 0);
    w.jobs.push_back(std::move(job));
  }
  bool single = doc.contains("profit_target");
  bool multi = doc.contains("profit_targets");
  if (single == multi) throw ParseError("profit_target", "exactly one of profit_target and profit_targets is required");
  if (single) {
    w.profit_targets.push_back(single_target(w.jobs, int_field(doc, "", "profit_target")));
  } else {
    const json& ts = array_field(doc, "", "profit_targets");
    if (ts.empty()) throw ParseError("profit_targets", "must not be empty");
    for (std::size_t k = 0; k < ts.size(); ++k) {
      std::string p = at("profit_targets", k);
      ProfitTarget t;
      t.profits = int_list(field(ts[k], p, "profits"), at(p, "profits"));
      if (t.profits.size() != w.jobs.size()) throw ParseError(at(p, "profits"), "length must equal job count");
      t.target = int_field(ts[k], p, "target");
      w.profit_targets.push_back(std::move(t));
    }
  }
  return w;
}

FlowInstance parse_flow(const json& doc) {
  FlowInstance f;
  if (doc.contains("machines") && as_int(doc.at("machines"), "machines") != 1) {
    throw ParseError("machines", "flow instances are single machine");
  }
  const json& jobs = array_field(doc, "", "jobs");
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    std::string p = at("jobs", j);
    FlowJob job;
    job.proc = int_field(jobs[j], p, "proc");
    job.release = int_field(jobs[j], p, "release");
    f.jobs.push_back(job);
  }
  f.profit_target = int_field(doc, "", "profit_target");
  return f;
}

json to_json(const GapInstance& g) {
  json jobs = json::array();
  for (const auto& j : g.jobs) jobs.push_back({{"proc", j.proc}, {"cost", j.cost}, {"profit", j.profit}});
  return {{"kind", "gap"},
          {"machines", g.machines},
          {"jobs", jobs},
          {"profit_target", g.profit_target},
          {"cost_bound", g.cost_bound},
          {"makespan_bound", g.makespan_bound}};
}

json to_json(const WctInstance& w) {
  json jobs = json::array();
  for (const auto& j : w.jobs) {
    jobs.push_back({{"proc", j.proc}, {"weight", j.weight}, {"profit", j.profit}, {"release", j.release}});
  }
  json doc = {{"kind", "wct"}, {"machines", w.machines}, {"jobs", jobs}};
  bool mirrors = w.profit_targets.size() == 1;
  if (mirrors) {
    for (std::size_t j = 0; j < w.jobs.size(); ++j) {
      if (w.profit_targets[0].profits[j] != w.jobs[j].profit) mirrors = false;
    }
  }
  if (mirrors) {
    doc["profit_target"] = w.profit_targets[0].target;
  } else {
    json ts = json::array();
    for (const auto& t : w.profit_targets) ts.push_back({{"profits", t.profits}, {"target", t.target}});
    doc["profit_targets"] = ts;
  }
  return doc;
}

json to_json(const FlowInstance& f) {
  json jobs = json::array();
  for (const auto& j : f.jobs) jobs.push_back({{"proc", j.proc}, {"release", j.release}});
  return {{"kind", "flow"}, {"machines", 1}, {"jobs", jobs}, {"profit_target", f.profit_target}};
}

json parse_text(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("<root>", e.what());
  }
}

}  // namespace

Instance read_instance(std::string_view text) {
  json doc = parse_text(text);
  if (!doc.is_object()) throw ParseError("<root>", "expected an object");
  const json& kind = field(doc, "", "kind");
  if (!kind.is_string()) throw ParseError("kind", "expected a string");
  Instance inst;
  const std::string k = kind.get<std::string>();
  if (k == "gap") {
    inst = parse_gap(doc);
  } else if (k == "wct") {
    inst = parse_wct(doc);
  } else if (k == "flow") {
    inst = parse_flow(doc);
  } else {
    throw ParseError("kind", "unknown kind '" + k + "'");
  }
  check_invariants(inst);
  return inst;
}

std::string write_instance(const Instance& inst) {
  json doc = std::visit([](const auto& i) { return to_json(i); }, inst);
  return doc.dump(2) + "\n";
}

ScheduleDocument read_schedule(std::string_view text) {
  json doc = parse_text(text);
  ScheduleDocument out;
  const json& segs = array_field(doc, "", "segments");
  for (std::size_t a = 0; a < segs.size(); ++a) {
    std::string p = at("segments", a);
    Segment s;
    auto job = int_field(segs[a], p, "job");
    auto machine = int_field(segs[a], p, "machine");
    if (job < 0 || job > INT32_MAX) throw ParseError(at(p, "job"), "out of range");
    if (machine < 0 || machine > INT32_MAX) throw ParseError(at(p, "machine"), "out of range");
    s.job = static_cast<int>(job);
    s.machine = static_cast<int>(machine);
    s.start = int_field(segs[a], p, "start_ticks");
    s.end = int_field(segs[a], p, "end_ticks");
    out.schedule.segments.push_back(s);
  }
  for (auto j : int_list(field(doc, "", "selected"), "selected")) {
    if (j < 0 || j > INT32_MAX) throw ParseError("selected", "job id out of range");
    out.schedule.selected.push_back(static_cast<int>(j));
  }
  const json& obj = field(doc, "", "objective");
  if (!obj.is_string()) throw ParseError("objective", "expected a string-encoded rational");
  try {
    out.objective = Dyadic::parse(obj.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw ParseError("objective", e.what());
  }
  return out;
}

std::string write_schedule(const SegmentSchedule& sched, const Dyadic& objective) {
  json segs = json::array();
  for (const auto& s : sched.segments) {
    segs.push_back({{"job", s.job}, {"machine", s.machine}, {"start_ticks", s.start}, {"end_ticks", s.end}});
  }
  json doc = {{"segments", segs}, {"selected", sched.selected}, {"objective", objective.to_string()}};
  return doc.dump(2) + "\n";
}

const char* kind_name(const Instance& inst) {
  switch (inst.index()) {
    case 0: return "gap";
    case 1: return "wct";
    default: return "flow";
  }
}

}  // namespace sched
