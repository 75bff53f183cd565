#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "tfm/core/multiset.hpp"
#include "tfm/core/types.hpp"

namespace tfm {

/// Rule forms of P systems with active membranes:
/// (a) Evolve, (a') CoopEvolve, (b) SendIn, (c) SendOut, (d) Dissolve,
/// (e) Divide2, (e') DivideMulti, (f) Separate.
enum class RuleKind : std::uint8_t {
  Evolve,
  CoopEvolve,
  SendIn,
  SendOut,
  Dissolve,
  Divide2,
  DivideMulti,
  Separate,
};

std::string_view to_string(RuleKind k);
std::optional<RuleKind> parse_rule_kind(std::string_view text);

/// Bottom-up precedence class: evolution first, then (b)-(e'), then (f).
enum class RulePhase : std::uint8_t { Evolution = 0, Membrane = 1, Separation = 2 };

constexpr RulePhase phase_of(RuleKind k) noexcept {
  switch (k) {
    case RuleKind::Evolve:
    case RuleKind::CoopEvolve:
      return RulePhase::Evolution;
    case RuleKind::Separate:
      return RulePhase::Separation;
    default:
      return RulePhase::Membrane;
  }
}

/// Kinds whose subject membrane is locked while the rule is in flight.
constexpr bool locks_subject(RuleKind k) noexcept { return phase_of(k) != RulePhase::Evolution; }

/// Kinds that replace the subject by new membranes; their whole subtree is frozen while in flight.
constexpr bool is_structural(RuleKind k) noexcept {
  return k == RuleKind::Divide2 || k == RuleKind::DivideMulti || k == RuleKind::Separate;
}

struct Evolution {
  Multiset lhs;
  Multiset rhs;
};

/// Send-in: `object` outside becomes `product` inside. Send-out: the reverse.
struct Communication {
  SymbolId object;
  SymbolId product;
  Charge result;
};

struct Dissolution {
  SymbolId object;
  SymbolId product;
};

struct ChildSpec {
  Label label;
  Charge charge;
  SymbolId object;
};

struct Division {
  SymbolId object;
  std::vector<ChildSpec> children;
};

struct SeparationGroup {
  std::vector<Label> labels;
  Charge charge;
};

/// [ [ ]_{first}^{a1} .. [ ]_{second}^{a2} ]_h^{a0} ->
///   [ [ ]_{first}^{a3} ]_h^{a5} [ [ ]_{second}^{a4} ]_h^{a6}
struct Separation {
  SeparationGroup first;
  SeparationGroup second;
  Charge first_inner;
  Charge second_inner;
  Charge first_parent;
  Charge second_parent;
};

struct Rule {
  RuleId id{};
  std::string name;
  RuleKind kind{};
  Label label{};
  Charge guard = Charge::Neutral;
  std::variant<Evolution, Communication, Dissolution, Division, Separation> body;

  const Evolution& evolution() const { return std::get<Evolution>(body); }
  const Communication& communication() const { return std::get<Communication>(body); }
  const Dissolution& dissolution() const { return std::get<Dissolution>(body); }
  const Division& division() const { return std::get<Division>(body); }
  const Separation& separation() const { return std::get<Separation>(body); }

  /// Objects the rule binds when it starts (the trigger object or left-hand side).
  Multiset demand() const;
};

// Rule factories. Ids are assigned by SystemDefinition::add_rule.
Rule make_evolution(std::string name, Label label, Charge guard, Multiset lhs, Multiset rhs);
Rule make_send_in(std::string name, Label label, Charge guard, SymbolId object, SymbolId product,
                  Charge result);
Rule make_send_out(std::string name, Label label, Charge guard, SymbolId object, SymbolId product,
                   Charge result);
Rule make_dissolution(std::string name, Label label, Charge guard, SymbolId object,
                      SymbolId product);
Rule make_division(std::string name, Label label, Charge guard, SymbolId object,
                   std::vector<ChildSpec> children);
Rule make_separation(std::string name, Label label, Charge guard, Separation sep);

}  // namespace tfm
