#include "tfm/construction/builder.hpp"

#include <algorithm>
#include <bit>
#include <string>
#include <utility>

namespace tfm {

std::string_view to_string(Variant v) {
  return v == Variant::Literal ? "literal" : "repaired";
}

std::optional<Variant> parse_variant(std::string_view text) {
  if (text == "literal") return Variant::Literal;
  if (text == "repaired") return Variant::Repaired;
  return std::nullopt;
}

namespace {

std::string idx(std::string_view base, int i) { return std::string(base) + std::to_string(i); }

std::string rname(std::string_view base, int i) {
  return std::string(base) + "," + std::to_string(i);
}

class Builder {
 public:
  Builder(const Instance& inst, Variant variant, RepairOptions opts)
      : inst_(inst), n_(inst.n()), s_(inst.s()), k_(inst.k), variant_(variant), opts_(opts) {
    map_.variant = variant;
    map_.n = n_;
    map_.s = s_;
    map_.k = k_;
    map_.skin = L(n_ + 3 + s_);
    map_.lineage_label = L(0);
    map_.selection_label = L(n_ + 1);
    for (int h = -1; h <= n_ + 3 + s_; ++h) def_.labels.push_back(L(h));
    intern_alphabet();
  }

  BuiltSystem finish() && {
    initial_structure();
    generation();
    check_phase();
    endgame();
    validate_system(def_);
    return {std::move(def_), std::move(map_)};
  }

 private:
  bool repaired() const { return variant_ == Variant::Repaired; }
  bool survivor() const { return repaired() && opts_.survivor_check; }

  static Label L(int h) { return label_of(h); }
  SymbolId S(const std::string& name) const { return def_.alphabet.at(name); }

  Multiset ms(std::initializer_list<std::pair<std::string, std::uint64_t>> items) const {
    Multiset m;
    for (const auto& [name, count] : items) m.add(S(name), count);
    return m;
  }

  RuleId add(Rule r) { return def_.add_rule(std::move(r)); }

  void intern_alphabet() {
    auto& a = def_.alphabet;
    for (int i = 1; i <= n_; ++i) {
      a.intern(idx("v", i));
      a.intern(idx("v", i) + "'");
      a.intern(idx("v", i) + "''");
      a.intern(idx("g", i));
      a.intern(idx("g", i) + "'");
    }
    for (int i = 1; i <= s_; ++i) {
      a.intern(idx("a", i));
      a.intern(idx("e", i));
    }
    for (const char* name : {"yes", "no", "a"}) a.intern(name);
    a.intern(idx("a", s_ + 1));
    for (const char* name : {"b0", "b", "c", "d", "d'", "d''", "d'''"}) a.intern(name);
    for (int i = 1; i <= s_ + 1; ++i) a.intern(idx("b", i));
    if (repaired()) {
      for (int i = 1; i <= n_; ++i) a.intern(idx("w", i));
      for (int i = 2; i <= n_ + 1; ++i) a.intern(idx("p", i));
      a.intern("u");
      a.intern("b'");
    }
    if (survivor()) {
      a.intern("q");
      for (int h = 1; h <= s_; ++h) a.intern(idx("ebar", h));
      a.intern("zt");
      a.intern("z");
      for (int h = 1; h <= s_; ++h) a.intern(idx("f", h));
    }
    for (int i = 1; i <= n_; ++i) map_.g.push_back(S(idx("g", i)));
    map_.d = S("d");
    map_.c = S("c");
  }

  void initial_structure() {
    MembraneSpec m1{L(1), Charge::Neutral, {}, {}};
    m1.objects.add(S("b"));
    for (int i = 1; i <= n_; ++i)
      m1.objects.add(S(repaired() && i == 1 ? std::string("w1") : idx("v", i)));
    MembraneSpec m0{L(0), Charge::Neutral, {}, {std::move(m1)}};
    def_.skin = MembraneSpec{L(n_ + 3 + s_), Charge::Neutral, ms({{"no", 1}}), {std::move(m0)}};
  }

  void generation() {
    const auto zero = Charge::Neutral;
    const auto pos = Charge::Positive;
    const auto neg = Charge::Negative;
    const std::string prime = repaired() ? "'" : "";

    for (int i = 1; i <= n_; ++i) {
      const auto trigger = repaired() ? idx("w", i) : idx("v", i);
      map_.round_divide.push_back(
          add(make_division(rname("r1" + prime, i), L(i), zero, S(trigger),
                            {{L(i + 1), zero, S(idx("v", i) + "'")},
                             {L(i + 1), zero, S(idx("v", i) + "''")}})));
    }
    const std::string check = survivor() ? "'" : "";
    for (int i = 1; i <= n_; ++i) {
      Multiset rhs;
      for (int h : inst_.graph.incident(i)) rhs.add(S(idx("e", h)));
      rhs.add(S(idx("g", i)));
      if (survivor()) rhs.add(S("q"));
      map_.round_select.push_back(add(make_evolution(rname("r2" + check, i), L(i + 1), zero,
                                                     ms({{idx("v", i) + "'", 1}}), rhs)));
    }
    for (int i = 1; i <= n_; ++i) {
      Multiset rhs;
      rhs.add(S("c"));
      if (survivor())
        for (int h : inst_.graph.incident(i)) rhs.add(S(idx("ebar", h)));
      rhs.add(S(idx("g", i) + "'"));
      map_.round_reject.push_back(add(make_evolution(rname("r3" + check, i), L(i + 1), zero,
                                                     ms({{idx("v", i) + "''", 1}}), rhs)));
    }
    for (int i = 1; i <= n_; ++i) {
      const auto g = S(idx("g", i));
      map_.round_mark_pos.push_back(add(make_send_out(rname("r4", i), L(i + 1), zero, g, g, pos)));
    }
    for (int i = 1; i <= n_; ++i) {
      const auto g = S(idx("g", i) + "'");
      map_.round_mark_neg.push_back(add(make_send_out(rname("r5", i), L(i + 1), zero, g, g, neg)));
    }
    // Repaired rounds alternate the post-separation charge of membrane 0 so a charge left
    // over from round i-1 (slow reset) cannot enable round i's token rules early.
    auto round_charge = [&](int i) { return i % 2 == 1 ? pos : neg; };
    for (int i = 1; i <= n_; ++i) {
      const auto parent = repaired() ? round_charge(i) : zero;
      Separation sep{{{L(i + 1)}, pos}, {{L(i + 1)}, neg}, zero, zero, parent, parent};
      map_.round_separate.push_back(
          add(make_separation(rname("r6" + prime, i), L(0), zero, std::move(sep))));
    }
    if (!repaired()) return;
    for (int i = 1; i <= n_; ++i) {
      map_.round_token.push_back(add(make_evolution(rname("t1", i), L(0), round_charge(i),
                                                    ms({{idx("g", i), 1}}),
                                                    ms({{idx("p", i + 1), 1}}))));
      const auto gp = S(idx("g", i) + "'");
      map_.round_reset.push_back(add(make_send_out(rname("t2", i), L(0), round_charge(i), gp, gp, zero)));
      map_.round_deliver.push_back(
          add(make_send_in(rname("t3", i), L(i + 1), zero, S(idx("p", i + 1)), S("u"), zero)));
      const auto fused = i < n_ ? ms({{"u", 1}, {idx("v", i + 1), 1}}) : ms({{"u", 1}, {"b", 1}});
      const auto product = i < n_ ? ms({{idx("w", i + 1), 1}}) : ms({{"b'", 1}});
      map_.round_fuse.push_back(
          add(make_evolution(rname("t4", i), L(i + 1), zero, fused, product)));
    }
  }

  void check_phase() {
    const auto zero = Charge::Neutral;
    const auto pos = Charge::Positive;
    const auto neg = Charge::Negative;

    std::vector<ChildSpec> kids{{L(n_ + 2), pos, S("b0")}};
    for (int i = 1; i <= s_ + 1; ++i) kids.push_back({L(n_ + 1 + i), zero, S(idx("b", i))});
    map_.check_divide = add(make_division(repaired() ? "r7'" : "r7", L(n_ + 1), zero,
                                          S(repaired() ? "b'" : "b"), std::move(kids)));

    Multiset r8;
    r8.add(S("a"));
    for (int i = 1; i <= s_ + 1; ++i) r8.add(S(idx("a", i)));
    for (int i = 1; i <= s_; ++i) r8.add(S(idx("e", i)), 2);
    if (survivor())
      for (int i = 1; i <= s_; ++i) r8.add(S(idx("f", i)));
    r8.add(S("c"), static_cast<std::uint64_t>(n_ - k_ + 1));
    add(make_evolution("r8", L(n_ + 2), pos, ms({{"b0", 1}}), std::move(r8)));
    add(make_send_out("r9", L(n_ + 2), pos, S("a"), S("a"), zero));

    for (int i = 1; i <= s_; ++i) {
      if (!survivor()) {
        map_.chain_count.push_back(add(make_evolution(
            rname("r10", i), L(n_ + 1 + i), zero, ms({{idx("e", i), 2}}), ms({{"d", 1}}))));
        continue;
      }
      map_.chain_count.push_back(
          add(make_evolution(rname("r10'", i), L(n_ + 1 + i), zero,
                             ms({{idx("f", i), 1}, {idx("e", i), 2}}), ms({{"d", 1}}))));
      map_.side_count.push_back(
          add(make_evolution(rname("r10''", i), L(n_ + 1 + i), zero,
                             ms({{idx("b", i), 1}, {idx("e", i), 2}}), ms({{"d", 1}}))));
    }
    for (int i = 1; i <= s_ + 1; ++i)
      map_.d_send_out.push_back(
          add(make_send_out(rname("r11", i), L(n_ + 1 + i), zero, S("d"), S("d"), neg)));
    for (int i = 1; i <= s_; ++i)
      add(make_division(rname("r12", i), L(n_ + 1 + i), neg, S(idx("a", i)),
                        {{L(n_ + 2 + i), zero, S("d''")}, {L(-1), zero, S("d'''")}}));
    add(make_evolution("r13", L(n_ + 2 + s_), zero,
                       ms({{"c", static_cast<std::uint64_t>(n_ - k_ + 1)}}), ms({{"d", 1}})));
    map_.d_merge = add(make_evolution("r14", L(0), zero,
                                      ms({{"d", static_cast<std::uint64_t>(s_ + 2)}}),
                                      ms({{"d'", 1}})));
    map_.lineage_dissolve = add(make_dissolution("r15", L(0), zero, S("d'"), S("d'")));
  }

  void endgame() {
    const auto zero = Charge::Neutral;
    const auto pos = Charge::Positive;
    const auto neg = Charge::Negative;
    const auto skin = L(n_ + 3 + s_);

    add(make_send_out("r16", skin, zero, S("no"), S("no"), pos));
    add(make_send_in("r17", skin, neg, S("no"), S("no"), neg));
    if (!survivor()) map_.yes_send_in = add(make_send_in("r18", L(0), zero, S("d'"), S("yes"), zero));
    add(make_send_out("r19", L(0), zero, S("yes"), S("yes"), zero));
    add(make_send_out("r20", skin, pos, S("yes"), S("yes"), neg));
    if (!survivor()) return;

    for (int i = 1; i <= s_; ++i)
      map_.survivor_emit.push_back(add(make_evolution(rname("y1", i), L(n_ + 1 + i), zero,
                                                      ms({{idx("b", i), 1}, {idx("ebar", i), 1}}),
                                                      ms({{"zt", 1}}))));
    map_.survivor_emit.push_back(add(make_evolution(
        rname("y1", s_ + 1), L(n_ + 2 + s_), zero,
        ms({{idx("b", s_ + 1), 1}, {"q", static_cast<std::uint64_t>(k_)}}), ms({{"zt", 1}}))));
    for (int i = 1; i <= s_ + 1; ++i)
      map_.survivor_export.push_back(
          add(make_send_out(rname("y2", i), L(n_ + 1 + i), zero, S("zt"), S("z"), neg)));
    map_.survivor_accept = add(make_evolution(
        "y3", L(0), zero, ms({{"z", static_cast<std::uint64_t>(s_ + 1)}}), ms({{"yes", 1}})));
  }

  const Instance& inst_;
  int n_, s_, k_;
  Variant variant_;
  RepairOptions opts_;
  SystemDefinition def_;
  ConstructionMap map_;
};

}  // namespace

BuiltSystem build_literal(const Instance& inst) {
  return Builder(inst, Variant::Literal, {}).finish();
}

BuiltSystem build_repaired(const Instance& inst, RepairOptions opts) {
  return Builder(inst, Variant::Repaired, opts).finish();
}

BuiltSystem build(const Instance& inst, Variant v) {
  return v == Variant::Literal ? build_literal(inst) : build_repaired(inst);
}

std::size_t rule_length(const Rule& r) {
  switch (r.kind) {
    case RuleKind::Evolve:
    case RuleKind::CoopEvolve:
      return r.evolution().lhs.total() + r.evolution().rhs.total() + 2;
    case RuleKind::SendIn:
    case RuleKind::SendOut:
    case RuleKind::Dissolve:
      return 2 + 4;
    case RuleKind::Divide2:
    case RuleKind::DivideMulti: {
      const auto& d = r.division();
      return 1 + d.children.size() + 2 * (1 + d.children.size());
    }
    case RuleKind::Separate: {
      const auto& s = r.separation();
      const auto inner = s.first.labels.size() + s.second.labels.size();
      return 2 * (1 + inner) + 2 * (2 + inner);
    }
  }
  return 0;
}

SystemStats system_stats(const SystemDefinition& def) {
  SystemStats st;
  st.object_count = def.alphabet.size();
  st.rule_count = def.rules.size();
  std::vector<const MembraneSpec*> stack{&def.skin};
  while (!stack.empty()) {
    const auto* m = stack.back();
    stack.pop_back();
    ++st.initial_membranes;
    st.initial_multiset_size += m->objects.total();
    for (const auto& c : m->children) stack.push_back(&c);
  }
  for (const auto& r : def.rules) st.max_rule_length = std::max(st.max_rule_length, rule_length(r));
  return st;
}

DCountPrediction predict_d_count(const Instance& inst, Subset subset) {
  DCountPrediction p;
  p.subset = subset;
  for (const auto& e : inst.graph.edges())
    if ((subset >> (e.u - 1) & 1U) && (subset >> (e.v - 1) & 1U)) ++p.violated_edges;
  p.below_threshold = std::popcount(subset) < inst.k;
  p.predicted = inst.s() + 1 + p.violated_edges + (p.below_threshold ? 1 : 0);
  p.dissolves = p.predicted >= inst.s() + 2;
  return p;
}

}  // namespace tfm
