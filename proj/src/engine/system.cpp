#include "tfm/engine/system.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

namespace tfm {

RuleId SystemDefinition::add_rule(Rule rule) {
  rule.id = static_cast<RuleId>(rules.size());
  rules.push_back(std::move(rule));
  return rules.back().id;
}

const Rule* SystemDefinition::find_rule(std::string_view name) const {
  for (const auto& r : rules)
    if (r.name == name) return &r;
  return nullptr;
}

namespace {

struct Checker {
  const SystemDefinition& def;
  std::set<std::int32_t> labels;

  [[noreturn]] static void fail(const std::string& what) { throw ValidationError(what); }

  void label(Label l, const std::string& where) const {
    if (!labels.contains(raw(l)))
      fail("unknown label " + std::to_string(raw(l)) + " in " + where);
  }

  void symbol(SymbolId s, const std::string& where) const {
    if (!def.alphabet.contains(s)) fail("unknown symbol #" + std::to_string(s) + " in " + where);
  }

  void multiset(const Multiset& m, const std::string& where) const {
    for (const auto& [s, n] : m) symbol(s, where);
  }

  void membranes(const MembraneSpec& m, std::set<std::int32_t>& seen) const {
    label(m.label, "initial structure");
    if (!seen.insert(raw(m.label)).second)
      fail("duplicate initial label " + std::to_string(raw(m.label)));
    multiset(m.objects, "initial multiset of membrane " + std::to_string(raw(m.label)));
    for (const auto& c : m.children) membranes(c, seen);
  }

  void rule(const Rule& r, std::size_t index) const {
    const std::string where = "rule '" + r.name + "'";
    if (raw(r.id) != index) fail(where + ": id does not match its position");
    if (r.name.empty()) fail("rule #" + std::to_string(index) + " has no name");
    label(r.label, where);
    switch (r.kind) {
      case RuleKind::Evolve:
      case RuleKind::CoopEvolve: {
        const auto& e = r.evolution();
        if (e.lhs.empty()) fail(where + ": empty left-hand side");
        if (r.kind == RuleKind::Evolve && e.lhs.total() != 1)
          fail(where + ": evolution rule needs a single-object left-hand side");
        multiset(e.lhs, where);
        multiset(e.rhs, where);
        break;
      }
      case RuleKind::SendIn:
      case RuleKind::SendOut:
        symbol(r.communication().object, where);
        symbol(r.communication().product, where);
        break;
      case RuleKind::Dissolve:
        if (r.label == def.skin.label) fail(where + ": the skin cannot dissolve");
        symbol(r.dissolution().object, where);
        symbol(r.dissolution().product, where);
        break;
      case RuleKind::Divide2:
      case RuleKind::DivideMulti: {
        const auto& d = r.division();
        symbol(d.object, where);
        if (d.children.size() < 2) fail(where + ": division needs at least two children");
        if (r.kind == RuleKind::Divide2) {
          if (d.children.size() != 2) fail(where + ": two-way division needs exactly two children");
          for (const auto& c : d.children)
            if (c.label != r.label) fail(where + ": two-way division must keep the label");
        }
        for (const auto& c : d.children) {
          label(c.label, where);
          symbol(c.object, where);
        }
        break;
      }
      case RuleKind::Separate: {
        const auto& s = r.separation();
        const std::set<Charge> groups{s.first.charge, s.second.charge};
        if (groups != std::set<Charge>{Charge::Positive, Charge::Negative})
          fail(where + ": malformed separation groups (charges must be {+,-})");
        if (s.first.labels.empty() || s.second.labels.empty())
          fail(where + ": malformed separation groups (empty label list)");
        for (auto l : s.first.labels) label(l, where);
        for (auto l : s.second.labels) label(l, where);
        break;
      }
    }
  }
};

}  // namespace

const SystemDefinition& validate_system(const SystemDefinition& def) {
  Checker ck{def, {}};
  for (auto l : def.labels)
    if (!ck.labels.insert(raw(l)).second)
      Checker::fail("duplicate label " + std::to_string(raw(l)) + " in H");
  std::set<std::int32_t> seen;
  ck.membranes(def.skin, seen);
  std::unordered_set<std::string> names;
  for (std::size_t i = 0; i < def.rules.size(); ++i) {
    ck.rule(def.rules[i], i);
    if (!names.insert(def.rules[i].name).second)
      Checker::fail("duplicate rule name '" + def.rules[i].name + "'");
  }
  return def;
}

}  // namespace tfm
