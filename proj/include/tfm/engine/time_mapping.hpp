#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "tfm/core/types.hpp"

namespace tfm {

struct SystemDefinition;

/// Execution time per rule id. Every duration is at least one time unit.
class TimeMapping {
 public:
  TimeMapping() = default;
  /// Throws std::invalid_argument if any duration is zero.
  explicit TimeMapping(std::vector<std::uint32_t> durations);

  static TimeMapping unit(std::size_t rule_count);

  std::uint32_t duration(RuleId r) const { return durations_.at(raw(r)); }
  std::size_t size() const noexcept { return durations_.size(); }
  const std::vector<std::uint32_t>& durations() const noexcept { return durations_; }

  /// Throws std::invalid_argument unless the mapping covers exactly def's rules.
  void check_total(const SystemDefinition& def) const;

  friend bool operator==(const TimeMapping&, const TimeMapping&) = default;

 private:
  std::vector<std::uint32_t> durations_;
};

}  // namespace tfm
