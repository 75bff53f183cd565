#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tfm/construction/builder.hpp"
#include "tfm/engine/simulator.hpp"
#include "tfm/harness/lineage.hpp"
#include "tfm/harness/time_policy.hpp"
#include "tfm/oracle/oracle.hpp"

namespace tfm {

/// Upper bounds on RS-steps: the repaired construction's phase count and the figure
/// claimed for the listed rules.
std::uint64_t repaired_rs_bound(const Instance& inst);  // 8n + 4s + 16
std::uint64_t literal_rs_bound(const Instance& inst);   // 5n + 4s + 12

struct RunOutcome {
  RunResult result;
  bool structure_ok = false;
  std::string structure_detail;
  bool d_counts_ok = false;
  std::string d_count_detail;
  bool lockstep_ok = false;
  std::optional<StrandedG> stranded;
};

/// One simulation of a built system with lineage tracking.
RunOutcome run_tracked(const Instance& inst, const BuiltSystem& built, const TimeMapping& tm,
                       std::uint64_t seed, RunLimits limits = {}, SimulatorOptions opts = {},
                       TraceSink* trace = nullptr);

struct PolicyCount {
  TimePolicy policy;
  int mappings = 1;
};

struct CampaignConfig {
  Variant variant = Variant::Repaired;
  std::vector<PolicyCount> policies;
  int scheduler_seeds = 1;
  std::uint64_t seed = 1;
  RunLimits limits{};
  SchedulerPolicy scheduler = SchedulerPolicy::Random;
};

/// `mappings` UniformRandom{lo,hi} mappings plus `spotlights` Spotlight mappings on a
/// seeded random rule.
CampaignConfig default_campaign(Variant v, int mappings, int seeds, int spotlights = 3,
                                std::uint64_t seed = 1);

struct RunRecord {
  std::string policy;
  std::uint64_t mapping_seed = 0;
  std::uint64_t scheduler_seed = 0;
  Answer answer = Answer::Undetermined;
  bool halted = false;
  std::uint64_t rs_steps = 0;
  std::uint64_t wall_steps = 0;
  std::uint64_t deferrals = 0;
  bool structure_ok = false;
  bool d_counts_ok = false;
  bool lockstep_ok = false;
  std::string diagnosis;
};

struct CampaignReport {
  Variant variant = Variant::Repaired;
  OracleVerdict oracle;
  std::vector<RunRecord> runs;
  std::uint64_t rs_bound = 0;
  bool time_free_sound = false;     // no run accepts a no-instance; every run halts and rejects it
  bool time_free_complete = false;  // every run on a yes-instance halts and accepts
  bool rs_bound_ok = false;
  bool d_counts_ok = false;
  bool lockstep_ok = false;
  bool structure_ok = false;
  std::uint64_t deferrals = 0;

  bool all_ok() const {
    return time_free_sound && time_free_complete && rs_bound_ok && d_counts_ok && lockstep_ok &&
           structure_ok;
  }
};

CampaignReport run_campaign(const Instance& inst, const CampaignConfig& cfg);
nlohmann::ordered_json report_to_json(const Instance& inst, const CampaignReport& report);

enum class AnomalyKind : std::uint8_t { None, StrandedG, WrongAnswer };
std::string_view to_string(AnomalyKind k);

struct RaceReport {
  AnomalyKind anomaly = AnomalyKind::None;
  int round = 0;  // StrandedG only
  std::uint64_t runs = 0;
  std::uint64_t scheduler_seed = 0;
  std::uint64_t mapping_seed = 0;
  std::string mapping;  // policy description
  Answer answer = Answer::Undetermined;
};

/// Samples up to `budget` (mapping, scheduler seed) pairs with UniformRandom{1,5}
/// mappings and stops at the first anomaly.
RaceReport race_hunt(const Instance& inst, std::uint64_t budget, std::uint64_t seed,
                     Variant variant = Variant::Literal);
nlohmann::ordered_json race_to_json(const Instance& inst, Variant v, const RaceReport& r);

}  // namespace tfm
