#include "tfm/engine/rule.hpp"

#include <array>
#include <utility>

namespace tfm {

namespace {

constexpr std::array<std::pair<RuleKind, std::string_view>, 8> kKindNames{{
    {RuleKind::Evolve, "evolve"},
    {RuleKind::CoopEvolve, "coop_evolve"},
    {RuleKind::SendIn, "send_in"},
    {RuleKind::SendOut, "send_out"},
    {RuleKind::Dissolve, "dissolve"},
    {RuleKind::Divide2, "divide2"},
    {RuleKind::DivideMulti, "divide_multi"},
    {RuleKind::Separate, "separate"},
}};

}  // namespace

std::string_view to_string(RuleKind k) {
  for (const auto& [kind, name] : kKindNames)
    if (kind == k) return name;
  return "?";
}

std::optional<RuleKind> parse_rule_kind(std::string_view text) {
  for (const auto& [kind, name] : kKindNames)
    if (name == text) return kind;
  return std::nullopt;
}

Multiset Rule::demand() const {
  switch (kind) {
    case RuleKind::Evolve:
    case RuleKind::CoopEvolve:
      return evolution().lhs;
    case RuleKind::SendIn:
    case RuleKind::SendOut:
      return Multiset{{communication().object, 1}};
    case RuleKind::Dissolve:
      return Multiset{{dissolution().object, 1}};
    case RuleKind::Divide2:
    case RuleKind::DivideMulti:
      return Multiset{{division().object, 1}};
    case RuleKind::Separate:
      break;
  }
  return {};
}

Rule make_evolution(std::string name, Label label, Charge guard, Multiset lhs, Multiset rhs) {
  Rule r;
  r.name = std::move(name);
  r.kind = lhs.total() == 1 ? RuleKind::Evolve : RuleKind::CoopEvolve;
  r.label = label;
  r.guard = guard;
  r.body = Evolution{std::move(lhs), std::move(rhs)};
  return r;
}

Rule make_send_in(std::string name, Label label, Charge guard, SymbolId object, SymbolId product,
                  Charge result) {
  Rule r;
  r.name = std::move(name);
  r.kind = RuleKind::SendIn;
  r.label = label;
  r.guard = guard;
  r.body = Communication{object, product, result};
  return r;
}

Rule make_send_out(std::string name, Label label, Charge guard, SymbolId object, SymbolId product,
                   Charge result) {
  Rule r = make_send_in(std::move(name), label, guard, object, product, result);
  r.kind = RuleKind::SendOut;
  return r;
}

Rule make_dissolution(std::string name, Label label, Charge guard, SymbolId object,
                      SymbolId product) {
  Rule r;
  r.name = std::move(name);
  r.kind = RuleKind::Dissolve;
  r.label = label;
  r.guard = guard;
  r.body = Dissolution{object, product};
  return r;
}

Rule make_division(std::string name, Label label, Charge guard, SymbolId object,
                   std::vector<ChildSpec> children) {
  Rule r;
  r.name = std::move(name);
  bool same_label = children.size() == 2;
  for (const auto& c : children) same_label = same_label && c.label == label;
  r.kind = same_label ? RuleKind::Divide2 : RuleKind::DivideMulti;
  r.label = label;
  r.guard = guard;
  r.body = Division{object, std::move(children)};
  return r;
}

Rule make_separation(std::string name, Label label, Charge guard, Separation sep) {
  Rule r;
  r.name = std::move(name);
  r.kind = RuleKind::Separate;
  r.label = label;
  r.guard = guard;
  r.body = std::move(sep);
  return r;
}

}  // namespace tfm
