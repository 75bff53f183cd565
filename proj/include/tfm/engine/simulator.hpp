#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "tfm/engine/configuration.hpp"
#include "tfm/engine/system.hpp"
#include "tfm/engine/time_mapping.hpp"
#include "tfm/engine/trace.hpp"

namespace tfm {

/// A started, unfinished rule application. For evolution rules `membrane` is the host
/// region and `multiplicity` counts how many copies of the rule were bundled; for every
/// other kind it is the subject membrane.
struct InFlightRecord {
  RecordId id{};
  RuleId rule{};
  RuleKind kind{};
  MembraneId membrane{};
  std::uint64_t multiplicity = 1;
  Multiset bound;
  Instant start = 0;
  Instant completion = 0;
};

struct RuleInstance {
  RuleId rule{};
  MembraneId membrane{};
  std::uint64_t multiplicity = 1;
  friend bool operator==(const RuleInstance&, const RuleInstance&) = default;
};

/// A structural rule that was applicable but could not start because a live record
/// sits inside the subject's subtree.
struct Deferral {
  RuleId rule{};
  MembraneId membrane{};
  RecordId blocking{};
};

struct CompletedInstance {
  RecordId record{};
  RuleId rule{};
  RuleKind kind{};
  MembraneId membrane{};
  std::uint64_t multiplicity = 1;
  std::vector<MembraneId> created;  // division children / separation copies
  std::optional<MembraneId> destination;  // region that received the products (nullopt: environment)
};

struct StepReport {
  std::uint64_t step = 0;  // step t spans instants t-1 .. t
  Instant instant = 0;     // instant at which completions and starts happened
  std::vector<InFlightRecord> started;
  std::vector<CompletedInstance> completed;
  std::vector<Deferral> deferrals;
  bool is_rs_step = false;
};

enum class Answer : std::uint8_t { Yes, No, Undetermined };
std::string_view to_string(Answer a);

enum class SchedulerPolicy : std::uint8_t {
  /// Competing membrane rules are tried in a seeded uniformly random order.
  Random,
  /// Competing membrane rules are tried by kind (b),(c),(d),(e),(e'), then rule id.
  KindOrder,
};

struct SimulatorOptions {
  SchedulerPolicy policy = SchedulerPolicy::Random;
  /// Re-examine every membrane each step instead of only those touched since the last
  /// selection. Slower; used to cross-check the incremental scan.
  bool full_scan = false;
};

struct EnabledSet {
  std::vector<RuleInstance> startable;
  std::vector<Deferral> deferred;
};

Answer answer_of(const Configuration& cfg, const SystemDefinition& def);

/// Timed P system with active membranes under seeded nondeterministic maximal parallelism.
class Simulator {
 public:
  Simulator(SystemDefinition def, TimeMapping tm, std::uint64_t seed, SimulatorOptions opts = {},
            TraceSink* trace = nullptr);

  /// One clock tick: finalize records due now, start a maximal assignment, advance the clock.
  StepReport advance_step();

  /// The two halves of advance_step, exposed for reference-semantics checks.
  void complete_due(StepReport& report);
  void start_enabled(StepReport& report);
  void tick() { ++now_; }

  /// Every instance startable right now (ignoring mutual conflicts) plus structural deferrals.
  EnabledSet enabled_instances() const;

  bool is_halted() const;
  Answer answer() const { return answer_of(cfg_, def_); }

  /// Instant of the earliest live record, if any.
  std::optional<Instant> next_completion() const;
  /// True when nothing can happen at the current instant.
  bool idle_now() const;
  /// Moves the clock forward to `t` without any state change. Precondition: idle until t.
  void skip_to(Instant t);

  Instant now() const noexcept { return now_; }
  const Configuration& configuration() const noexcept { return cfg_; }
  const SystemDefinition& system() const noexcept { return def_; }
  const TimeMapping& time_mapping() const noexcept { return tm_; }
  std::vector<InFlightRecord> live_records() const;
  std::size_t live_count() const noexcept { return live_.size(); }

 private:
  struct Candidate {
    RuleId rule;
    MembraneId membrane;
  };

  bool frozen(MembraneId m) const;  // m or an ancestor is the subject of a live structural rule
  std::optional<RecordId> busy_in_subtree(MembraneId m) const;
  bool membrane_rule_applicable(const Rule& r, MembraneId m) const;
  bool separation_applicable(const Rule& r, MembraneId m) const;
  Multiset* source_region(const Rule& r, MembraneId m);
  const Multiset* source_region(const Rule& r, MembraneId m) const;

  std::vector<MembraneId> candidates();
  void start_evolution(MembraneId m, StepReport& report);
  void try_start(std::vector<Candidate>& list, StepReport& report, std::vector<char>& taken);
  void start_record(const Rule& r, MembraneId m, std::uint64_t mult, Multiset bound,
                    StepReport& report);
  void finalize(const InFlightRecord& rec, StepReport& report);

  void touch(MembraneId m);
  void touch_up(MembraneId m);
  void touch_subtree(MembraneId m);
  void emit(TraceEvent e) const;

  SystemDefinition def_;
  TimeMapping tm_;
  SimulatorOptions opts_;
  TraceSink* trace_;
  std::mt19937_64 rng_;
  Configuration cfg_;
  Instant now_ = 0;

  // Rules grouped by (label, guard) and by phase.
  std::unordered_map<std::uint64_t, std::vector<RuleId>> evolution_rules_;
  std::unordered_map<std::uint64_t, std::vector<RuleId>> membrane_rules_;
  std::unordered_map<std::uint64_t, std::vector<RuleId>> separation_rules_;
  // Send-in rules keyed by (object) are matched from the parent side via membrane_rules_.

  std::unordered_map<std::uint64_t, InFlightRecord> live_;
  std::map<Instant, std::vector<RecordId>> due_;
  std::uint64_t next_record_ = 0;

  // Per-membrane bookkeeping indexed by membrane id.
  std::vector<std::uint32_t> active_;            // live records hosted by / subject to m
  std::vector<std::optional<RecordId>> lock_;    // live (b)-(f) record with subject m
  std::vector<char> dirty_flag_;
  std::vector<MembraneId> dirty_;
};

struct RunLimits {
  std::uint64_t max_wall_steps = 1'000'000;
};

struct RunResult {
  Answer answer = Answer::Undetermined;
  bool halted = false;
  std::uint64_t wall_steps = 0;
  std::uint64_t rs_steps = 0;
  std::uint64_t deferrals = 0;
  std::string diagnosis;  // non-empty when the run did not halt
};

using StepObserver = std::function<void(const StepReport&, const Simulator&)>;

/// Steps until halting or the wall-step limit. Idle stretches are skipped in one jump
/// and still counted as wall steps.
RunResult run(const SystemDefinition& def, const TimeMapping& tm, std::uint64_t seed,
              RunLimits limits = {}, SimulatorOptions opts = {}, TraceSink* trace = nullptr,
              const StepObserver& observer = {});

}  // namespace tfm
