#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "tfm/engine/system.hpp"
#include "tfm/engine/time_mapping.hpp"

namespace tfm {

inline constexpr std::string_view kSystemFormat = "tfm-active-membranes/1";

/// Canonical document: format, alphabet, labels, skin (nested membranes), rules with kind tags.
nlohmann::ordered_json system_to_json(const SystemDefinition& def);
/// Throws ValidationError on malformed documents or names outside the alphabet.
SystemDefinition system_from_json(const nlohmann::json& doc);

/// Time mapping as an object {rule name: duration}; must name every rule.
nlohmann::ordered_json time_mapping_to_json(const TimeMapping& tm, const SystemDefinition& def);
TimeMapping time_mapping_from_json(const nlohmann::json& doc, const SystemDefinition& def);

}  // namespace tfm
