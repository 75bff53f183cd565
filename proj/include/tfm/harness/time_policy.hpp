#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "tfm/engine/system.hpp"
#include "tfm/engine/time_mapping.hpp"

namespace tfm {

struct UnitPolicy {};

struct UniformRandomPolicy {
  std::uint32_t lo = 1;
  std::uint32_t hi = 5;
};

/// One slow rule, every other rule takes `others`. An empty rule name means "pick one
/// uniformly from the mapping seed".
struct SpotlightPolicy {
  std::string rule;
  std::uint32_t duration = 20;
  std::uint32_t others = 1;
};

struct ExplicitPolicy {
  std::map<std::string, std::uint32_t> table;
};

using TimePolicy = std::variant<UnitPolicy, UniformRandomPolicy, SpotlightPolicy, ExplicitPolicy>;

std::string describe(const TimePolicy& p);

/// CLI forms: `unit`, `random` or `random:lo,hi`, `spotlight:NAME,D` (rule names may
/// themselves contain commas; the last comma separates the duration), `file:PATH` with a
/// JSON object {rule name: duration}. Throws std::invalid_argument.
TimePolicy parse_time_policy(std::string_view text);

/// Throws std::invalid_argument for a zero duration, a range with lo > hi, a spotlight
/// naming an unknown rule, or an explicit table that misses a rule.
TimeMapping make_time_mapping(const SystemDefinition& def, const TimePolicy& policy,
                              std::uint64_t seed);

/// splitmix64 finalizer over the pair, used to derive independent per-run seeds.
std::uint64_t derive_seed(std::uint64_t a, std::uint64_t b);

}  // namespace tfm
