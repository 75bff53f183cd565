#include "tfm/engine/system_json.hpp"

#include <map>

namespace tfm {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

ordered_json multiset_json(const Multiset& m, const Alphabet& a) {
  auto out = ordered_json::object();
  for (const auto& [s, n] : m) out[a.name(s)] = n;
  return out;
}

ordered_json membrane_json(const MembraneSpec& m, const Alphabet& a) {
  ordered_json j;
  j["label"] = raw(m.label);
  j["charge"] = to_string(m.charge);
  j["objects"] = multiset_json(m.objects, a);
  auto kids = ordered_json::array();
  for (const auto& c : m.children) kids.push_back(membrane_json(c, a));
  j["children"] = std::move(kids);
  return j;
}

ordered_json labels_json(const std::vector<Label>& ls) {
  auto out = ordered_json::array();
  for (auto l : ls) out.push_back(raw(l));
  return out;
}

[[noreturn]] void bad(const std::string& what) { throw ValidationError("system json: " + what); }

Charge charge_from(const json& j) {
  if (!j.is_string()) bad("charge must be a string");
  auto c = parse_charge(j.get<std::string>());
  if (!c) bad("bad charge '" + j.get<std::string>() + "'");
  return *c;
}

SymbolId symbol_from(const json& j, const Alphabet& a) {
  if (!j.is_string()) bad("object names must be strings");
  auto s = a.find(j.get<std::string>());
  if (!s) throw ValidationError("unknown symbol '" + j.get<std::string>() + "'");
  return *s;
}

Multiset multiset_from(const json& j, const Alphabet& a) {
  if (!j.is_object()) bad("multiset must be an object");
  Multiset m;
  for (const auto& [name, count] : j.items()) {
    auto s = a.find(name);
    if (!s) throw ValidationError("unknown symbol '" + name + "'");
    if (!count.is_number_unsigned() && !(count.is_number_integer() && count.get<long long>() >= 0))
      bad("multiplicity of '" + name + "' must be a non-negative integer");
    m.add(*s, count.get<std::uint64_t>());
  }
  return m;
}

MembraneSpec membrane_from(const json& j, const Alphabet& a) {
  MembraneSpec m;
  m.label = label_of(j.at("label").get<std::int32_t>());
  m.charge = charge_from(j.at("charge"));
  m.objects = multiset_from(j.value("objects", json::object()), a);
  for (const auto& c : j.value("children", json::array())) m.children.push_back(membrane_from(c, a));
  return m;
}

std::vector<Label> labels_from(const json& j) {
  std::vector<Label> out;
  for (const auto& l : j) out.push_back(label_of(l.get<std::int32_t>()));
  return out;
}

}  // namespace

ordered_json system_to_json(const SystemDefinition& def) {
  const auto& a = def.alphabet;
  ordered_json j;
  j["format"] = kSystemFormat;
  j["alphabet"] = a.names();
  j["labels"] = labels_json(def.labels);
  j["skin"] = membrane_json(def.skin, a);
  auto rules = ordered_json::array();
  for (const auto& r : def.rules) {
    ordered_json o;
    o["id"] = raw(r.id);
    o["name"] = r.name;
    o["kind"] = to_string(r.kind);
    o["label"] = raw(r.label);
    o["charge"] = to_string(r.guard);
    switch (r.kind) {
      case RuleKind::Evolve:
      case RuleKind::CoopEvolve:
        o["lhs"] = multiset_json(r.evolution().lhs, a);
        o["rhs"] = multiset_json(r.evolution().rhs, a);
        break;
      case RuleKind::SendIn:
      case RuleKind::SendOut:
        o["object"] = a.name(r.communication().object);
        o["product"] = a.name(r.communication().product);
        o["result_charge"] = to_string(r.communication().result);
        break;
      case RuleKind::Dissolve:
        o["object"] = a.name(r.dissolution().object);
        o["product"] = a.name(r.dissolution().product);
        break;
      case RuleKind::Divide2:
      case RuleKind::DivideMulti: {
        o["object"] = a.name(r.division().object);
        auto kids = ordered_json::array();
        for (const auto& c : r.division().children)
          kids.push_back(ordered_json{{"label", raw(c.label)},
                                      {"charge", to_string(c.charge)},
                                      {"object", a.name(c.object)}});
        o["children"] = std::move(kids);
        break;
      }
      case RuleKind::Separate: {
        const auto& s = r.separation();
        o["first"] = ordered_json{{"labels", labels_json(s.first.labels)},
                                  {"charge", to_string(s.first.charge)}};
        o["second"] = ordered_json{{"labels", labels_json(s.second.labels)},
                                   {"charge", to_string(s.second.charge)}};
        o["result_inner"] = {to_string(s.first_inner), to_string(s.second_inner)};
        o["result_parent"] = {to_string(s.first_parent), to_string(s.second_parent)};
        break;
      }
    }
    rules.push_back(std::move(o));
  }
  j["rules"] = std::move(rules);
  return j;
}

SystemDefinition system_from_json(const json& doc) {
  try {
    if (doc.value("format", std::string{}) != kSystemFormat) bad("missing or unknown format tag");
    SystemDefinition def;
    for (const auto& n : doc.at("alphabet")) {
      const auto name = n.get<std::string>();
      if (def.alphabet.find(name)) bad("duplicate symbol '" + name + "'");
      def.alphabet.intern(name);
    }
    def.labels = labels_from(doc.at("labels"));
    const auto& a = def.alphabet;
    def.skin = membrane_from(doc.at("skin"), a);
    for (const auto& o : doc.at("rules")) {
      const auto kind_name = o.at("kind").get<std::string>();
      auto kind = parse_rule_kind(kind_name);
      if (!kind) bad("unknown rule kind '" + kind_name + "'");
      Rule r;
      r.name = o.at("name").get<std::string>();
      r.kind = *kind;
      r.label = label_of(o.at("label").get<std::int32_t>());
      r.guard = charge_from(o.at("charge"));
      switch (*kind) {
        case RuleKind::Evolve:
        case RuleKind::CoopEvolve:
          r.body = Evolution{multiset_from(o.at("lhs"), a), multiset_from(o.at("rhs"), a)};
          break;
        case RuleKind::SendIn:
        case RuleKind::SendOut:
          r.body = Communication{symbol_from(o.at("object"), a), symbol_from(o.at("product"), a),
                                 charge_from(o.at("result_charge"))};
          break;
        case RuleKind::Dissolve:
          r.body = Dissolution{symbol_from(o.at("object"), a), symbol_from(o.at("product"), a)};
          break;
        case RuleKind::Divide2:
        case RuleKind::DivideMulti: {
          Division d{symbol_from(o.at("object"), a), {}};
          for (const auto& c : o.at("children"))
            d.children.push_back({label_of(c.at("label").get<std::int32_t>()),
                                  charge_from(c.at("charge")), symbol_from(c.at("object"), a)});
          r.body = std::move(d);
          break;
        }
        case RuleKind::Separate: {
          Separation s;
          s.first = {labels_from(o.at("first").at("labels")), charge_from(o.at("first").at("charge"))};
          s.second = {labels_from(o.at("second").at("labels")),
                      charge_from(o.at("second").at("charge"))};
          const auto& inner = o.at("result_inner");
          const auto& parent = o.at("result_parent");
          if (inner.size() != 2 || parent.size() != 2) bad("separation result charges need two entries");
          s.first_inner = charge_from(inner[0]);
          s.second_inner = charge_from(inner[1]);
          s.first_parent = charge_from(parent[0]);
          s.second_parent = charge_from(parent[1]);
          r.body = std::move(s);
          break;
        }
      }
      const auto id = def.add_rule(std::move(r));
      if (o.contains("id") && o.at("id").get<std::uint32_t>() != raw(id))
        bad("rule ids must be consecutive from 0");
    }
    validate_system(def);
    return def;
  } catch (const json::exception& e) {
    bad(e.what());
  }
}

ordered_json time_mapping_to_json(const TimeMapping& tm, const SystemDefinition& def) {
  tm.check_total(def);
  ordered_json j = ordered_json::object();
  for (const auto& r : def.rules) j[r.name] = tm.duration(r.id);
  return j;
}

TimeMapping time_mapping_from_json(const json& doc, const SystemDefinition& def) {
  if (!doc.is_object()) throw std::invalid_argument("time mapping must be a JSON object");
  std::vector<std::uint32_t> d(def.rules.size(), 0);
  for (const auto& [name, value] : doc.items()) {
    const auto* r = def.find_rule(name);
    if (!r) throw std::invalid_argument("time mapping names unknown rule '" + name + "'");
    const auto v = value.get<std::int64_t>();
    if (v < 1) throw std::invalid_argument("rule '" + name + "' needs a duration >= 1");
    d[raw(r->id)] = static_cast<std::uint32_t>(v);
  }
  for (const auto& r : def.rules)
    if (d[raw(r.id)] == 0) throw std::invalid_argument("time mapping is missing rule '" + r.name + "'");
  return TimeMapping(std::move(d));
}

}  // namespace tfm
