#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "tfm/construction/builder.hpp"
#include "tfm/engine/simulator.hpp"

namespace tfm {

/// Follows the candidate subsets through a run of a built system. Each membrane created
/// by the generation divisions is tagged with the subset it encodes; later membranes
/// inherit the tag of the membrane they came from.
class LineageTracker {
 public:
  LineageTracker(const Instance& inst, const ConstructionMap& map);

  void observe(const StepReport& report, const Simulator& sim);
  StepObserver observer() {
    return [this](const StepReport& r, const Simulator& s) { observe(r, s); };
  }

  struct LineageStats {
    int deposits = 0;  // d objects sent out of the lineage's check membranes
    bool dissolved = false;
  };

  bool generation_finished() const { return generation_instant_.has_value(); }
  std::optional<Instant> generation_instant() const { return generation_instant_; }

  /// 2^n membranes labelled 0 under the skin, each holding exactly one membrane labelled
  /// n+1 whose contents match the encoded subset. False if generation never finished.
  bool structure_ok() const { return structure_ok_; }
  const std::string& structure_detail() const { return structure_detail_; }

  /// Every lineage deposited predict_d_count(S) copies of d and dissolved iff predicted.
  bool d_counts_ok() const;
  std::string d_count_detail() const;

  /// All separations of a round completed at one instant, and all check divisions too.
  bool lockstep_ok() const;

  const std::unordered_map<Subset, LineageStats>& lineages() const { return stats_; }

 private:
  void seed_owners(const Configuration& cfg);
  void check_structure(const Simulator& sim, Instant at);
  std::optional<Subset> owner(MembraneId m) const;

  const Instance& inst_;
  const ConstructionMap& map_;
  std::unordered_map<std::uint32_t, Subset> owner_;
  std::unordered_map<std::uint32_t, int> round_of_divide_;
  std::unordered_map<std::uint32_t, int> round_of_separate_;
  std::vector<std::set<Instant>> separation_instants_;
  std::set<Instant> check_instants_;
  std::uint64_t last_round_separations_ = 0;
  std::optional<Instant> generation_instant_;
  bool seeded_ = false;
  bool structure_ok_ = false;
  std::string structure_detail_ = "generation did not finish";
  std::unordered_map<Subset, LineageStats> stats_;
};

struct StrandedG {
  int round = 0;
  MembraneId membrane{};
  Label label{};
};

/// A g_i left inside a membrane other than membrane 0, the skin, or the label i+1
/// membrane that should have sent it out.
std::optional<StrandedG> find_stranded_g(const Configuration& cfg, const ConstructionMap& map);

}  // namespace tfm
