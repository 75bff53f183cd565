#include "tfm/engine/time_mapping.hpp"

#include <string>

#include "tfm/engine/system.hpp"

namespace tfm {

TimeMapping::TimeMapping(std::vector<std::uint32_t> durations) : durations_(std::move(durations)) {
  for (std::size_t i = 0; i < durations_.size(); ++i)
    if (durations_[i] == 0)
      throw std::invalid_argument("rule #" + std::to_string(i) + " has duration 0");
}

TimeMapping TimeMapping::unit(std::size_t rule_count) {
  return TimeMapping(std::vector<std::uint32_t>(rule_count, 1));
}

void TimeMapping::check_total(const SystemDefinition& def) const {
  if (durations_.size() != def.rules.size())
    throw std::invalid_argument("time mapping covers " + std::to_string(durations_.size()) +
                                " rules, system has " + std::to_string(def.rules.size()));
}

}  // namespace tfm
