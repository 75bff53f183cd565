#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tfm/core/alphabet.hpp"
#include "tfm/core/multiset.hpp"
#include "tfm/engine/rule.hpp"

namespace tfm {

struct MembraneSpec {
  Label label{};
  Charge charge = Charge::Neutral;
  Multiset objects;
  std::vector<MembraneSpec> children;
};

/// The static system: alphabet O, labels H, initial structure and contents, rules R.
/// The skin is the root of `skin`.
struct SystemDefinition {
  Alphabet alphabet;
  std::vector<Label> labels;
  MembraneSpec skin;
  std::vector<Rule> rules;

  RuleId add_rule(Rule rule);
  const Rule* find_rule(std::string_view name) const;
  const Rule& rule(RuleId id) const { return rules.at(raw(id)); }

  std::optional<SymbolId> yes() const { return alphabet.find("yes"); }
  std::optional<SymbolId> no() const { return alphabet.find("no"); }
};

class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Checks every structural invariant of `def`; throws ValidationError naming the first violation.
const SystemDefinition& validate_system(const SystemDefinition& def);

}  // namespace tfm
