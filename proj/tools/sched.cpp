// sched: command-line front end for the solvers, generators, oracles and
// the schedule validator.
//
// Exit codes: 0 success with every bound check passing, 2 declared
// infeasibility, 1 anything else (usage, parse, size, failed check).

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include "sched/core/errors.hpp"
#include "sched/core/json_io.hpp"
#include "sched/core/validate.hpp"
#include "sched/flow/flow.hpp"
#include "sched/gap/gap.hpp"
#include "sched/oracles/oracles.hpp"
#include "sched/wct/wct.hpp"

using json = nlohmann::json;
using namespace sched;

namespace {

constexpr int kReportVersion = 1;

struct Failure {
  int code;
  std::string message;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{1, "cannot open " + path};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Failure{1, "cannot write " + path};
  out << text;
}

// FNV-1a, printed as 16 hex digits.
std::string digest(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

json schedule_json(const SegmentSchedule& s, const Dyadic& objective) {
  return json::parse(write_schedule(s, objective));
}

json check(bool pass, double value, double bound) {
  return {{"pass", pass}, {"value", value}, {"bound", bound}};
}

double units(Ticks t) { return static_cast<double>(t) / kTicksPerUnit; }
double units(flow::Wide v, int bits) {
  return static_cast<double>(v) / static_cast<double>(flow::Wide{1} << bits);
}

struct Options {
  std::optional<std::uint64_t> seed;
  std::string out;
  bool json_out = false;
};

struct Loaded {
  Instance inst;
  std::string digest;
};

Loaded load(const std::string& path) {
  std::string text = read_file(path);
  return {read_instance(text), digest(text)};
}

template <class T>
const T& expect(const Instance& inst, const char* command) {
  if (const T* p = std::get_if<T>(&inst)) return *p;
  throw Failure{1, std::string(command) + " does not take a " + kind_name(inst) + " instance"};
}

bool all_checks_pass(const json& report) {
  if (!report.contains("checks")) return true;
  for (const auto& [name, c] : report["checks"].items()) {
    if (!c.at("pass").get<bool>()) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

json run_gap(const Loaded& in, double eps, bool sweep) {
  const auto& g = expect<GapInstance>(in.inst, "gap");
  std::vector<double> eps_list = sweep ? std::vector<double>{1.0, 0.5, 0.25} : std::vector<double>{eps};
  json runs = json::array();
  json last;
  for (double e : eps_list) {
    auto r = gap::solve_gap_outliers(g, e);
    if (!r) throw Failure{2, "no assignment meets the profit target within the cost and makespan bounds"};
    const double C = static_cast<double>(g.cost_bound), T = static_cast<double>(g.makespan_bound);
    json checks = {
        {"profit", check(r->profit >= g.profit_target, static_cast<double>(r->profit), static_cast<double>(g.profit_target))},
        {"cost", check(r->cost <= (1 + e) * C + 1e-9, static_cast<double>(r->cost), (1 + e) * C)},
        {"makespan", check(r->makespan <= 3 * g.makespan_bound, static_cast<double>(r->makespan), 3 * T)},
    };
    json run = {
        {"eps", e},
        {"cost", r->cost},
        {"makespan", r->makespan},
        {"profit", r->profit},
        {"bound_ratios", {{"cost", C > 0 ? r->cost / C : 0.0}, {"makespan", T > 0 ? r->makespan / T : 0.0}}},
        {"guesses_tried", r->guesses_tried},
        {"checks", checks},
        {"schedule", schedule_json(r->schedule, Dyadic::integer(r->cost))},
    };
    runs.push_back(run);
    last = run;
  }
  json report = last;
  if (sweep) {
    json checks = json::object();
    for (const auto& run : runs) {
      for (const auto& [name, c] : run["checks"].items()) checks[name + "@" + std::to_string(run["eps"].get<double>())] = c;
    }
    report["checks"] = checks;
    report["sweep"] = runs;
  }
  report["objective"] = last["cost"];
  return report;
}

json run_wct(const Loaded& in, std::uint64_t seed, int trials, bool multi) {
  const auto& w = expect<WctInstance>(in.inst, "wct");
  wct::RelaxationOptions opts;
  if (multi) opts.threshold = 1.0 / wct::beta_for_targets(static_cast<int>(w.profit_targets.size()));
  auto relax = wct::solve_relaxation(w, opts);
  auto rounds = multi ? wct::multi_profit_round(w, relax.solution, seed, trials)
                      : wct::round_until_feasible(w, relax.solution, seed, trials);
  json report = {
      {"lp_value", relax.lp_value},
      {"opt_guess", relax.opt_guess},
      {"cuts", relax.cuts},
      {"trials_used", rounds.trials_used},
  };
  if (!rounds.success) {
    report["checks"] = {{"targets_met", check(false, 0, 1)}};
    report["error"] = "no rounding trial met every profit target";
    return report;
  }
  const auto& s = *rounds.success;
  report["cost"] = s.cost;
  report["profit"] = s.profit;
  report["objective"] = s.cost;
  report["checks"] = {{"targets_met", check(s.meets_targets, 1, 1)}};
  Dyadic obj = validate_schedule(in.inst, s.schedule).objective;
  report["schedule"] = schedule_json(s.schedule, obj);
  return report;
}

json run_wct_dp(const Loaded& in, std::optional<double> eps, int machines) {
  const auto& w = expect<WctInstance>(in.inst, "wct-dp");
  json report;
  wct::DpResult r;
  if (eps) {
    if (machines != 1) throw Failure{1, "--eps runs the single-machine FPTAS; drop --machines"};
    auto f = wct::fptas(w, *eps);
    r = f.result;
    report["method"] = "fptas";
    report["eps"] = *eps;
    report["scale"] = f.scale;
  } else if (machines > 1) {
    r = wct::dp_multi_machine(w, machines);
    report["method"] = "dp_multi_machine";
  } else {
    r = wct::dp_exact(w);
    report["method"] = "dp_exact";
  }
  report["machines"] = machines;
  report["objective"] = r.value;
  report["selected"] = r.selected;
  report["cells"] = r.cells;
  report["schedule"] = schedule_json(r.schedule, Dyadic::integer(r.value));
  return report;
}

json run_flow(const Loaded& in) {
  const auto& f = expect<FlowInstance>(in.inst, "flow");
  auto res = flow::solve_flow_outliers(f);
  json runs = json::array();
  for (const auto& r : res.runs) {
    json run = {{"kstar", r.kstar}, {"ok", r.ok}};
    if (!r.ok) run["reason"] = r.reason;
    runs.push_back(run);
  }
  json report = {{"total_flow", units(res.total_flow)}, {"objective", Dyadic::ticks(res.total_flow).to_string()}, {"guesses", runs}};
  if (res.best >= 0 && !res.runs[res.best].certificate.class_reports.empty()) {
    const auto& c = res.certificate();
    json stage1 = json::array();
    for (const auto& cr : c.class_reports) {
      stage1.push_back({{"k", cr.k},
                        {"target", cr.target},
                        {"full_before", cr.full_before},
                        {"full_after", cr.full_after},
                        {"case_one", cr.case_one},
                        {"case_two", cr.case_two}});
    }
    report["certificate"] = {
        {"kstar", c.kstar},
        {"lp_value", c.lp_value},
        {"flow_star", units(c.flow_star, flow::kFlowBits)},
        {"P_star", units(c.p_star)},
        {"flow_prime", units(c.flow_prime, flow::kFlowBits)},
        {"P_prime", units(c.p_prime)},
        {"full_flow", units(c.full_flow)},
        {"added_flow", units(c.added_flow)},
        {"constructed_flow", units(c.total_flow)},
        {"stage1", stage1},
        {"per_lemma_pass",
         {{"relaxation_order", c.relaxation_order},
          {"i", c.lemma_i},
          {"ii", c.lemma_ii},
          {"iii", c.lemma_iii},
          {"iv", c.lemma_iv},
          {"v", c.chain_v},
          {"audit", c.audit.ok()}}},
    };
    if (!c.audit.problems.empty()) report["certificate"]["audit_problems"] = c.audit.problems;
    report["checks"] = {{"certificate", check(c.all(), c.all() ? 1 : 0, 1)}};
    // The oracle is cheap for small instances; skip it when it would not be.
    try {
      auto opt = oracle::brute_flow(f);
      if (opt.feasible) {
        double o = opt.objective.to_double();
        report["opt"] = o;
        report["opt_over_lp"] = c.lp_value > 0 ? o / c.lp_value : 0.0;
        report["flow_over_opt"] = o > 0 ? units(res.total_flow) / o : 0.0;
      }
    } catch (const SizeError&) {
      report["opt"] = nullptr;
    }
  }
  report["schedule"] = schedule_json(res.schedule, Dyadic::ticks(res.total_flow));
  return report;
}

json run_oracle(const Loaded& in) {
  json report;
  std::visit(
      [&](const auto& inst) {
        using T = std::decay_t<decltype(inst)>;
        if constexpr (std::is_same_v<T, GapInstance>) {
          auto r = oracle::brute_gap(inst);
          report = {{"feasible", r.feasible}, {"explored", r.explored}};
          if (r.feasible) {
            report["cost"] = r.cost;
            report["makespan"] = r.makespan;
            report["profit"] = r.profit;
            report["machine_of"] = r.machine_of;
            report["objective"] = r.cost;
            report["witness"] = schedule_json(r.witness, Dyadic::integer(r.cost));
          }
        } else {
          oracle::OracleResult r;
          if constexpr (std::is_same_v<T, WctInstance>) {
            r = oracle::brute_wct(inst);
          } else {
            r = oracle::brute_flow(inst);
          }
          report = {{"feasible", r.feasible}, {"explored", r.explored}};
          if (r.feasible) {
            report["objective"] = r.objective.to_string();
            report["witness"] = schedule_json(r.witness, r.objective);
          }
        }
      },
      in.inst);
  if (!report["feasible"].get<bool>()) throw Failure{2, "no feasible solution exists"};
  return report;
}

json run_verify(const Loaded& in, const std::string& schedule_path) {
  ScheduleDocument doc = read_schedule(read_file(schedule_path));
  ValidationReport v = validate_schedule(in.inst, doc.schedule);
  json violations = json::array();
  for (const auto& x : v.violations) {
    violations.push_back({{"kind", to_string(x.kind)}, {"job", x.job}, {"machine", x.machine}, {"detail", x.detail}});
  }
  json report = {
      {"feasible", v.feasible()},
      {"objective", v.objective.to_string()},
      {"claimed_objective", doc.objective.to_string()},
      {"makespan", v.makespan.to_string()},
      {"profit", v.profit},
      {"violations", violations},
      {"checks",
       {{"feasible", check(v.feasible(), static_cast<double>(v.violations.size()), 0)},
        {"objective", check(v.objective == doc.objective, v.objective.to_double(), doc.objective.to_double())}}},
  };
  return report;
}

// ---------------------------------------------------------------------------
// Generators

Instance random_instance(const std::string& kind, int n, int m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto pick = [&](std::int64_t lo, std::int64_t hi) { return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng); };
  if (kind == "gap") {
    GapInstance g;
    g.machines = m;
    for (int j = 0; j < n; ++j) {
      GapJob job;
      for (int i = 0; i < m; ++i) {
        job.proc.push_back(pick(1, 9));
        job.cost.push_back(pick(0, 9));
      }
      job.profit = pick(1, 6);
      g.jobs.push_back(job);
    }
    g.profit_target = g.total_profit() / 2;
    g.cost_bound = 5 * n;
    g.makespan_bound = 10;
    return g;
  }
  if (kind == "wct") {
    WctInstance w;
    w.machines = m;
    std::vector<std::int64_t> profits;
    for (int j = 0; j < n; ++j) {
      WctJob job;
      for (int i = 0; i < m; ++i) job.proc.push_back(pick(1, 6));
      job.weight = pick(1, 4);
      job.release = pick(0, 5);
      job.profit = pick(1, 5);
      w.jobs.push_back(job);
    }
    std::int64_t total = 0;
    for (const auto& j : w.jobs) total += j.profit;
    w.profit_targets = {single_target(w.jobs, total / 2)};
    return w;
  }
  if (kind == "flow") {
    FlowInstance f;
    for (int j = 0; j < n; ++j) f.jobs.push_back({pick(1, 8), pick(0, 10)});
    f.profit_target = std::max(1, n / 2);
    return f;
  }
  throw Failure{1, "unknown generator '" + kind + "'"};
}

void emit(const json& report, const Options& opt, bool ok, const std::string& summary) {
  const std::string text = report.dump(2) + "\n";
  if (!opt.out.empty()) write_file(opt.out, text);
  if (opt.json_out) {
    std::cout << text;
  } else {
    std::cout << summary << (ok ? "" : " [check failed]") << "\n";
  }
}

std::string describe(const json& report) {
  std::ostringstream ss;
  ss << "objective " << (report.contains("objective") ? report["objective"].dump() : "-");
  if (report.contains("checks")) {
    for (const auto& [name, c] : report["checks"].items()) ss << "  " << name << (c["pass"].get<bool>() ? " ok" : " FAIL");
  }
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Scheduling with outliers: solvers, generators, oracles and a validator"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  std::uint64_t seed_value = 0;
  auto* seed_flag = app.add_option("--seed", seed_value, "Seed for every random choice")->type_name("UINT");
  app.add_option("--out", opt.out, "Write the report (or generated instance) here");
  app.add_flag("--json", opt.json_out, "Print the JSON report to stdout");

  std::string instance_path, schedule_path;

  auto* gap = app.add_subcommand("gap", "GAP with outliers");
  double gap_eps = 1.0;
  bool gap_sweep = false;
  gap->add_option("instance", instance_path)->required()->check(CLI::ExistingFile);
  gap->add_option("--eps", gap_eps, "Guessing accuracy")->check(CLI::Range(1e-3, 1.0));
  gap->add_flag("--sweep", gap_sweep, "Run eps = 1, 1/2, 1/4");

  auto* wct_cmd = app.add_subcommand("wct", "Weighted completion time with outliers, LP rounding");
  int trials = wct::kDefaultMaxTrials;
  bool multi = false;
  wct_cmd->add_option("instance", instance_path)->required()->check(CLI::ExistingFile);
  wct_cmd->add_option("--trials", trials, "Rounding attempts")->check(CLI::PositiveNumber);
  wct_cmd->add_flag("--multi", multi, "Rounding for several profit targets");

  auto* dp_cmd = app.add_subcommand("wct-dp", "Exact DP or FPTAS for unit weights without releases");
  double dp_eps = 0;
  int dp_machines = 1;
  dp_cmd->add_option("instance", instance_path)->required()->check(CLI::ExistingFile);
  auto* dp_eps_opt = dp_cmd->add_option("--eps", dp_eps, "Run the FPTAS")->check(CLI::Range(1e-6, 1.0));
  dp_cmd->add_option("--machines", dp_machines, "Identical machines for the DP")->check(CLI::Range(1, 3));

  auto* flow_cmd = app.add_subcommand("flow", "Single-machine flow time with outliers");
  flow_cmd->add_option("instance", instance_path)->required()->check(CLI::ExistingFile);

  auto* gen = app.add_subcommand("gen", "Generate an instance");
  std::string gen_kind;
  int gen_k = 4, gen_jobs = 6, gen_machines = 1;
  gen->add_option("kind", gen_kind, "flow-gap | gap | wct | flow")->required();
  gen->add_option("-k", gen_k, "Even k for flow-gap");
  gen->add_option("--jobs", gen_jobs, "Job count for random kinds")->check(CLI::Range(1, 1000));
  gen->add_option("--machines", gen_machines, "Machine count for random gap and wct")->check(CLI::Range(1, 8));

  auto* oracle_cmd = app.add_subcommand("oracle", "Exhaustive optimum for a small instance");
  oracle_cmd->add_option("instance", instance_path)->required()->check(CLI::ExistingFile);

  auto* verify = app.add_subcommand("verify", "Check a schedule against an instance");
  verify->add_option("instance", instance_path)->required()->check(CLI::ExistingFile);
  verify->add_option("schedule", schedule_path)->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return 1;
  }

  const auto t0 = std::chrono::steady_clock::now();
  const bool randomized = wct_cmd->parsed() || (gen->parsed() && gen_kind != "flow-gap");
  if (seed_flag->count() > 0) {
    opt.seed = seed_value;
  } else if (randomized) {
    opt.seed = std::random_device{}() | (static_cast<std::uint64_t>(std::random_device{}()) << 32);
    std::cerr << "seed " << *opt.seed << "\n";
  }

  try {
    std::string command;
    json report;
    if (gen->parsed()) {
      Instance inst;
      if (gen_kind == "flow-gap") {
        inst = flow::gen_gap_instance(gen_k).instance;
      } else {
        inst = random_instance(gen_kind, gen_jobs, gen_machines, opt.seed.value_or(0));
      }
      const std::string text = write_instance(inst);
      if (opt.out.empty()) {
        std::cout << text;
      } else {
        write_file(opt.out, text);
      }
      return 0;
    }

    Loaded in = load(instance_path);
    if (gap->parsed()) {
      command = "gap";
      report = run_gap(in, gap_eps, gap_sweep);
    } else if (wct_cmd->parsed()) {
      command = "wct";
      report = run_wct(in, opt.seed.value_or(0), trials, multi);
    } else if (dp_cmd->parsed()) {
      command = "wct-dp";
      std::optional<double> eps;
      if (dp_eps_opt->count() > 0) eps = dp_eps;
      report = run_wct_dp(in, eps, dp_machines);
    } else if (flow_cmd->parsed()) {
      command = "flow";
      report = run_flow(in);
    } else if (oracle_cmd->parsed()) {
      command = "oracle";
      report = run_oracle(in);
    } else {
      command = "verify";
      report = run_verify(in, schedule_path);
    }
    report["report_version"] = kReportVersion;
    report["command"] = command;
    report["instance_digest"] = in.digest;
    report["seed"] = opt.seed ? json(*opt.seed) : json(nullptr);
    const bool ok = all_checks_pass(report);
    emit(report, opt, ok, command + ": " + describe(report));
    std::cerr << "wall time "
              << std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() << " s\n";
    return ok ? 0 : 1;
  } catch (const Failure& f) {
    std::cerr << "sched: " << f.message << "\n";
    return f.code;
  } catch (const InfeasibleError& e) {
    std::cerr << "sched: infeasible: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "sched: " << e.what() << "\n";
    return 1;
  }
}
