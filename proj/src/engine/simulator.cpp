#include "tfm/engine/simulator.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace tfm {

namespace {

std::uint64_t key(Label l, Charge c) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(raw(l))) << 8) |
         static_cast<std::uint64_t>(c);
}

// Order used by the kind-order scheduler: (b), (c), (d), (e), (e').
int precedence(RuleKind k) {
  switch (k) {
    case RuleKind::SendIn:
      return 0;
    case RuleKind::SendOut:
      return 1;
    case RuleKind::Dissolve:
      return 2;
    case RuleKind::Divide2:
      return 3;
    case RuleKind::DivideMulti:
      return 4;
    default:
      return 5;
  }
}

bool overlaps(const Multiset& a, const Multiset& b) {
  for (const auto& [s, n] : a)
    if (b.count(s) > 0) return true;
  return false;
}

void replace_child(std::vector<MembraneId>& kids, MembraneId old,
                   const std::vector<MembraneId>& with) {
  auto it = std::find(kids.begin(), kids.end(), old);
  assert(it != kids.end());
  it = kids.erase(it);
  kids.insert(it, with.begin(), with.end());
}

}  // namespace

std::string_view to_string(Answer a) {
  switch (a) {
    case Answer::Yes:
      return "yes";
    case Answer::No:
      return "no";
    case Answer::Undetermined:
      break;
  }
  return "undetermined";
}

Answer answer_of(const Configuration& cfg, const SystemDefinition& def) {
  auto yes = def.yes();
  auto no = def.no();
  const bool has_yes = yes && cfg.environment().count(*yes) > 0;
  const bool has_no = no && cfg.environment().count(*no) > 0;
  if (has_yes && !has_no) return Answer::Yes;
  if (has_no && !has_yes) return Answer::No;
  return Answer::Undetermined;
}

Simulator::Simulator(SystemDefinition def, TimeMapping tm, std::uint64_t seed,
                     SimulatorOptions opts, TraceSink* trace)
    : def_(std::move(def)),
      tm_(std::move(tm)),
      opts_(opts),
      trace_(trace),
      rng_(seed),
      cfg_(def_.skin) {
  validate_system(def_);
  tm_.check_total(def_);
  for (const auto& r : def_.rules) {
    auto k = key(r.label, r.guard);
    switch (phase_of(r.kind)) {
      case RulePhase::Evolution:
        evolution_rules_[k].push_back(r.id);
        break;
      case RulePhase::Membrane:
        membrane_rules_[k].push_back(r.id);
        break;
      case RulePhase::Separation:
        separation_rules_[k].push_back(r.id);
        break;
    }
  }
  const auto slots = cfg_.slot_count();
  active_.assign(slots, 0);
  lock_.assign(slots, std::nullopt);
  dirty_flag_.assign(slots, 0);
  for (auto id : cfg_.alive_ids()) touch(id);
}

void Simulator::touch(MembraneId m) {
  const auto i = raw(m);
  if (i >= dirty_flag_.size()) {
    const auto slots = cfg_.slot_count();
    active_.resize(slots, 0);
    lock_.resize(slots, std::nullopt);
    dirty_flag_.resize(slots, 0);
  }
  if (!dirty_flag_[i]) {
    dirty_flag_[i] = 1;
    dirty_.push_back(m);
  }
}

void Simulator::touch_up(MembraneId m) {
  for (auto p = cfg_.node(m).parent; p; p = cfg_.node(*p).parent) touch(*p);
}

void Simulator::touch_subtree(MembraneId m) {
  touch(m);
  for (auto c : cfg_.node(m).children) touch_subtree(c);
}

void Simulator::emit(TraceEvent e) const {
  if (trace_) trace_->write(e);
}

bool Simulator::frozen(MembraneId m) const {
  for (std::optional<MembraneId> cur = m; cur; cur = cfg_.node(*cur).parent) {
    const auto& l = lock_[raw(*cur)];
    if (l && is_structural(live_.at(raw(*l)).kind)) return true;
  }
  return false;
}

std::optional<RecordId> Simulator::busy_in_subtree(MembraneId m) const {
  if (active_[raw(m)] > 0) {
    std::optional<RecordId> best;
    for (const auto& [id, rec] : live_)
      if (rec.membrane == m && (!best || raw(rec.id) < raw(*best))) best = rec.id;
    return best;
  }
  for (auto c : cfg_.node(m).children)
    if (auto r = busy_in_subtree(c)) return r;
  return std::nullopt;
}

const Multiset* Simulator::source_region(const Rule& r, MembraneId m) const {
  const auto& n = cfg_.node(m);
  if (r.kind == RuleKind::SendIn)
    return n.parent ? &cfg_.node(*n.parent).objects : &cfg_.environment();
  return &n.objects;
}

Multiset* Simulator::source_region(const Rule& r, MembraneId m) {
  return const_cast<Multiset*>(std::as_const(*this).source_region(r, m));
}

bool Simulator::membrane_rule_applicable(const Rule& r, MembraneId m) const {
  const auto& n = cfg_.node(m);
  if (n.label != r.label || n.charge != r.guard) return false;
  switch (r.kind) {
    case RuleKind::SendIn:
    case RuleKind::SendOut:
      return source_region(r, m)->count(r.communication().object) > 0;
    case RuleKind::Dissolve:
      return m != cfg_.skin() && n.objects.count(r.dissolution().object) > 0;
    case RuleKind::Divide2:
    case RuleKind::DivideMulti:
      return n.children.empty() && n.objects.count(r.division().object) > 0;
    default:
      return false;
  }
}

bool Simulator::separation_applicable(const Rule& r, MembraneId m) const {
  const auto& n = cfg_.node(m);
  if (n.label != r.label || n.charge != r.guard) return false;
  const auto& sep = r.separation();
  auto in = [](const std::vector<Label>& ls, Label l) {
    return std::find(ls.begin(), ls.end(), l) != ls.end();
  };
  bool first = false, second = false;
  for (auto c : n.children) {
    const auto& cn = cfg_.node(c);
    if (cn.charge == sep.first.charge && in(sep.first.labels, cn.label)) {
      first = true;
    } else if (cn.charge == sep.second.charge && in(sep.second.labels, cn.label)) {
      second = true;
    } else if (cn.charge != Charge::Neutral) {
      return false;
    }
  }
  return first && second;
}

std::vector<MembraneId> Simulator::candidates() {
  if (opts_.full_scan) return cfg_.alive_ids();
  std::vector<MembraneId> out;
  out.reserve(dirty_.size() * 2);
  for (auto m : dirty_) {
    if (!cfg_.alive(m)) continue;
    out.push_back(m);
    const auto& n = cfg_.node(m);
    if (n.parent) out.push_back(*n.parent);
    out.insert(out.end(), n.children.begin(), n.children.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void Simulator::start_record(const Rule& r, MembraneId m, std::uint64_t mult, Multiset bound,
                             StepReport& report) {
  InFlightRecord rec;
  rec.id = static_cast<RecordId>(next_record_++);
  rec.rule = r.id;
  rec.kind = r.kind;
  rec.membrane = m;
  rec.multiplicity = mult;
  rec.bound = std::move(bound);
  rec.start = now_;
  rec.completion = now_ + tm_.duration(r.id);
  ++active_[raw(m)];
  if (locks_subject(r.kind)) lock_[raw(m)] = rec.id;
  due_[rec.completion].push_back(rec.id);
  if (trace_) {
    const auto& n = cfg_.node(m);
    TraceEvent e;
    e.step = now_ + 1;
    e.instant = now_;
    e.event = TraceEventKind::Start;
    e.rule_id = r.id;
    e.rule_name = r.name;
    e.membrane = m;
    e.label = n.label;
    e.charge = n.charge;
    e.bound = rec.bound;
    e.record = rec.id;
    e.multiplicity = mult;
    emit(std::move(e));
  }
  report.started.push_back(rec);
  live_.emplace(raw(rec.id), std::move(rec));
}

void Simulator::start_evolution(MembraneId m, StepReport& report) {
  auto& node = cfg_.node(m);
  auto it = evolution_rules_.find(key(node.label, node.charge));
  if (it == evolution_rules_.end()) return;
  std::vector<const Rule*> app;
  for (auto rid : it->second) {
    const auto& r = def_.rule(rid);
    if (node.objects.contains(r.evolution().lhs)) app.push_back(&r);
  }
  if (app.empty()) return;

  bool compete = false;
  for (std::size_t i = 0; i < app.size() && !compete; ++i)
    for (std::size_t j = i + 1; j < app.size() && !compete; ++j)
      compete = overlaps(app[i]->evolution().lhs, app[j]->evolution().lhs);

  std::vector<std::uint64_t> mult(app.size(), 0);
  if (!compete) {
    for (std::size_t i = 0; i < app.size(); ++i) mult[i] = node.objects.fit_count(app[i]->evolution().lhs);
  } else {
    // One application at a time, uniformly among rules that still fit: a maximal multiset.
    Multiset left = node.objects;
    std::vector<std::size_t> fit;
    for (;;) {
      fit.clear();
      for (std::size_t i = 0; i < app.size(); ++i)
        if (left.contains(app[i]->evolution().lhs)) fit.push_back(i);
      if (fit.empty()) break;
      std::uniform_int_distribution<std::size_t> pick(0, fit.size() - 1);
      const auto i = fit[pick(rng_)];
      ++mult[i];
      left.remove(app[i]->evolution().lhs);
    }
  }
  for (std::size_t i = 0; i < app.size(); ++i) {
    if (mult[i] == 0) continue;
    auto bound = app[i]->evolution().lhs.times(mult[i]);
    cfg_.node(m).objects.remove(bound);
    start_record(*app[i], m, mult[i], std::move(bound), report);
  }
}

void Simulator::try_start(std::vector<Candidate>& list, StepReport& report,
                          std::vector<char>& taken) {
  std::sort(list.begin(), list.end(), [](const Candidate& a, const Candidate& b) {
    return std::pair(raw(a.rule), raw(a.membrane)) < std::pair(raw(b.rule), raw(b.membrane));
  });
  if (opts_.policy == SchedulerPolicy::Random) {
    std::shuffle(list.begin(), list.end(), rng_);
  } else {
    std::stable_sort(list.begin(), list.end(), [this](const Candidate& a, const Candidate& b) {
      return precedence(def_.rule(a.rule).kind) < precedence(def_.rule(b.rule).kind);
    });
  }
  for (const auto& c : list) {
    const auto i = raw(c.membrane);
    if (!cfg_.alive(c.membrane) || taken[i] || lock_[i]) continue;
    const auto& r = def_.rule(c.rule);
    const bool ok = r.kind == RuleKind::Separate ? separation_applicable(r, c.membrane)
                                                 : membrane_rule_applicable(r, c.membrane);
    if (!ok) continue;
    if (is_structural(r.kind)) {
      if (auto blocker = busy_in_subtree(c.membrane)) {
        report.deferrals.push_back({r.id, c.membrane, *blocker});
        if (trace_) {
          const auto& n = cfg_.node(c.membrane);
          TraceEvent e;
          e.step = now_ + 1;
          e.instant = now_;
          e.event = TraceEventKind::Deferral;
          e.rule_id = r.id;
          e.rule_name = r.name;
          e.membrane = c.membrane;
          e.label = n.label;
          e.charge = n.charge;
          e.blocking = *blocker;
          emit(std::move(e));
        }
        continue;
      }
    }
    auto demand = r.demand();
    if (!demand.empty()) source_region(r, c.membrane)->remove(demand);
    taken[i] = 1;
    start_record(r, c.membrane, 1, std::move(demand), report);
  }
}

void Simulator::start_enabled(StepReport& report) {
  report.step = now_ + 1;
  report.instant = now_;
  if (!opts_.full_scan && dirty_.empty()) return;
  const auto cands = candidates();

  for (auto m : cands)
    if (cfg_.alive(m) && !frozen(m)) start_evolution(m, report);

  std::vector<char> taken(cfg_.slot_count(), 0);
  std::vector<Candidate> list;
  for (auto m : cands) {
    if (!cfg_.alive(m) || lock_[raw(m)] || frozen(m)) continue;
    const auto& n = cfg_.node(m);
    if (auto it = membrane_rules_.find(key(n.label, n.charge)); it != membrane_rules_.end())
      for (auto rid : it->second)
        if (membrane_rule_applicable(def_.rule(rid), m)) list.push_back({rid, m});
  }
  try_start(list, report, taken);

  list.clear();
  for (auto m : cands) {
    if (!cfg_.alive(m) || lock_[raw(m)] || taken[raw(m)] || frozen(m)) continue;
    const auto& n = cfg_.node(m);
    if (auto it = separation_rules_.find(key(n.label, n.charge)); it != separation_rules_.end())
      for (auto rid : it->second)
        if (separation_applicable(def_.rule(rid), m)) list.push_back({rid, m});
  }
  try_start(list, report, taken);

  for (auto m : dirty_)
    if (raw(m) < dirty_flag_.size()) dirty_flag_[raw(m)] = 0;
  dirty_.clear();
  report.is_rs_step = !report.started.empty();
}

void Simulator::complete_due(StepReport& report) {
  report.step = now_ + 1;
  report.instant = now_;
  auto it = due_.find(now_);
  if (it == due_.end()) return;
  std::vector<InFlightRecord> recs;
  recs.reserve(it->second.size());
  for (auto id : it->second) recs.push_back(live_.at(raw(id)));
  due_.erase(it);
  std::sort(recs.begin(), recs.end(), [](const InFlightRecord& a, const InFlightRecord& b) {
    return std::pair(phase_of(a.kind), raw(a.id)) < std::pair(phase_of(b.kind), raw(b.id));
  });
  for (const auto& r : recs) {
    // Evolution hosts may have been re-pointed by a dissolution earlier in this batch.
    auto current = live_.at(raw(r.id));
    live_.erase(raw(r.id));
    finalize(current, report);
  }
}

void Simulator::finalize(const InFlightRecord& rec, StepReport& report) {
  const auto& rule = def_.rule(rec.rule);
  const auto m = rec.membrane;
  if (!cfg_.alive(m)) throw std::logic_error("rule '" + rule.name + "' lost its membrane");
  --active_[raw(m)];
  if (lock_[raw(m)] == rec.id) lock_[raw(m)].reset();

  CompletedInstance done{rec.id, rule.id, rule.kind, m, rec.multiplicity, {}, m};
  TraceEvent ev;
  ev.step = now_ + 1;
  ev.instant = now_;
  ev.event = TraceEventKind::Complete;
  ev.rule_id = rule.id;
  ev.rule_name = rule.name;
  ev.membrane = m;
  ev.bound = rec.bound;
  ev.record = rec.id;
  ev.multiplicity = rec.multiplicity;

  switch (rule.kind) {
    case RuleKind::Evolve:
    case RuleKind::CoopEvolve:
      cfg_.node(m).objects.add(rule.evolution().rhs, rec.multiplicity);
      touch(m);
      touch_up(m);
      break;
    case RuleKind::SendIn: {
      auto& n = cfg_.node(m);
      n.objects.add(rule.communication().product);
      n.charge = rule.communication().result;
      touch(m);
      touch_up(m);
      break;
    }
    case RuleKind::SendOut: {
      auto& n = cfg_.node(m);
      n.charge = rule.communication().result;
      if (n.parent) {
        cfg_.node(*n.parent).objects.add(rule.communication().product);
        done.destination = n.parent;
      } else {
        cfg_.environment().add(rule.communication().product);
        done.destination.reset();
      }
      touch(m);
      touch_up(m);
      break;
    }
    case RuleKind::Dissolve: {
      const auto p = *cfg_.node(m).parent;
      auto objects = std::move(cfg_.node(m).objects);
      auto kids = std::move(cfg_.node(m).children);
      cfg_.node(m).objects.clear();
      cfg_.node(m).children.clear();
      cfg_.node(m).alive = false;
      auto& pn = cfg_.node(p);
      pn.objects.add(objects);
      pn.objects.add(rule.dissolution().product);
      replace_child(pn.children, m, kids);
      for (auto c : kids) cfg_.node(c).parent = p;
      // In-flight evolutions travel to the region that absorbed the dissolved one.
      for (auto& [id, other] : live_) {
        if (other.membrane == m && phase_of(other.kind) == RulePhase::Evolution) {
          other.membrane = p;
          --active_[raw(m)];
          ++active_[raw(p)];
        }
      }
      done.destination = p;
      ev.event = TraceEventKind::Dissolve;
      ev.parent = p;
      touch(p);
      touch_up(p);
      for (auto c : kids) touch(c);
      break;
    }
    case RuleKind::Divide2:
    case RuleKind::DivideMulti: {
      const auto p = *cfg_.node(m).parent;
      const auto objects = cfg_.node(m).objects;
      std::vector<MembraneId> made;
      for (const auto& spec : rule.division().children) {
        auto contents = objects;
        contents.add(spec.object);
        made.push_back(cfg_.create(spec.label, spec.charge, std::move(contents), p));
      }
      cfg_.node(m).alive = false;
      cfg_.node(m).objects.clear();
      replace_child(cfg_.node(p).children, m, made);
      for (auto c : made) touch(c);
      touch(p);
      touch_up(p);
      done.created = made;
      done.destination = p;
      ev.event = TraceEventKind::Divide;
      ev.created = made;
      break;
    }
    case RuleKind::Separate: {
      const auto& sep = rule.separation();
      const auto p = *cfg_.node(m).parent;
      const auto label = cfg_.node(m).label;
      const auto objects = cfg_.node(m).objects;
      const auto kids = cfg_.node(m).children;
      const auto c1 = cfg_.create(label, sep.first_parent, objects, p);
      const auto c2 = cfg_.create(label, sep.second_parent, objects, p);
      auto in = [](const std::vector<Label>& ls, Label l) {
        return std::find(ls.begin(), ls.end(), l) != ls.end();
      };
      for (auto k : kids) {
        auto& kn = cfg_.node(k);
        if (kn.charge == sep.first.charge && in(sep.first.labels, kn.label)) {
          kn.charge = sep.first_inner;
          kn.parent = c1;
          cfg_.node(c1).children.push_back(k);
        } else if (kn.charge == sep.second.charge && in(sep.second.labels, kn.label)) {
          kn.charge = sep.second_inner;
          kn.parent = c2;
          cfg_.node(c2).children.push_back(k);
        } else {
          kn.parent = c1;
          cfg_.node(c1).children.push_back(k);
          const auto copy = cfg_.clone_subtree(k, c2);
          cfg_.node(c2).children.push_back(copy);
        }
      }
      cfg_.node(m).alive = false;
      cfg_.node(m).objects.clear();
      cfg_.node(m).children.clear();
      replace_child(cfg_.node(p).children, m, {c1, c2});
      touch_subtree(c1);
      touch_subtree(c2);
      touch(p);
      touch_up(p);
      done.created = {c1, c2};
      done.destination = p;
      ev.event = TraceEventKind::Separate;
      ev.created = done.created;
      break;
    }
  }
  if (trace_) {
    const auto& n = cfg_.node(m);
    ev.label = n.label;
    ev.charge = n.charge;
    emit(std::move(ev));
  }
  report.completed.push_back(std::move(done));
}

StepReport Simulator::advance_step() {
  StepReport report;
  complete_due(report);
  start_enabled(report);
  tick();
  return report;
}

EnabledSet Simulator::enabled_instances() const {
  EnabledSet out;
  for (auto m : cfg_.alive_ids()) {
    if (frozen(m)) continue;
    const auto& n = cfg_.node(m);
    const auto k = key(n.label, n.charge);
    if (auto it = evolution_rules_.find(k); it != evolution_rules_.end())
      for (auto rid : it->second)
        if (auto f = n.objects.fit_count(def_.rule(rid).evolution().lhs); f > 0)
          out.startable.push_back({rid, m, f});
    if (lock_[raw(m)]) continue;
    auto consider = [&](RuleId rid, bool ok) {
      if (!ok) return;
      const auto& r = def_.rule(rid);
      if (is_structural(r.kind)) {
        if (auto b = busy_in_subtree(m)) {
          out.deferred.push_back({rid, m, *b});
          return;
        }
      }
      out.startable.push_back({rid, m, 1});
    };
    if (auto it = membrane_rules_.find(k); it != membrane_rules_.end())
      for (auto rid : it->second) consider(rid, membrane_rule_applicable(def_.rule(rid), m));
    if (auto it = separation_rules_.find(k); it != separation_rules_.end())
      for (auto rid : it->second) consider(rid, separation_applicable(def_.rule(rid), m));
  }
  return out;
}

bool Simulator::is_halted() const {
  if (!live_.empty()) return false;
  auto e = enabled_instances();
  return e.startable.empty() && e.deferred.empty();
}

std::optional<Instant> Simulator::next_completion() const {
  if (due_.empty()) return std::nullopt;
  return due_.begin()->first;
}

bool Simulator::idle_now() const { return !due_.contains(now_) && dirty_.empty(); }

void Simulator::skip_to(Instant t) {
  if (t < now_) throw std::logic_error("cannot move the clock backwards");
  now_ = t;
}

std::vector<InFlightRecord> Simulator::live_records() const {
  std::vector<InFlightRecord> out;
  out.reserve(live_.size());
  for (const auto& [id, r] : live_) out.push_back(r);
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return raw(a.id) < raw(b.id); });
  return out;
}

RunResult run(const SystemDefinition& def, const TimeMapping& tm, std::uint64_t seed,
              RunLimits limits, SimulatorOptions opts, TraceSink* trace,
              const StepObserver& observer) {
  Simulator sim(def, tm, seed, opts, trace);
  RunResult res;
  for (;;) {
    if (sim.now() >= limits.max_wall_steps) {
      res.wall_steps = sim.now();
      res.diagnosis = "wall-step limit " + std::to_string(limits.max_wall_steps) +
                      " reached with " + std::to_string(sim.live_count()) + " live records";
      break;
    }
    auto rep = sim.advance_step();
    if (rep.is_rs_step) ++res.rs_steps;
    res.deferrals += rep.deferrals.size();
    if (observer) observer(rep, sim);
    if (rep.started.empty() && sim.live_count() == 0) {
      res.halted = true;
      res.wall_steps = sim.now() - 1;
      break;
    }
    if (sim.idle_now()) {
      if (auto next = sim.next_completion())
        sim.skip_to(std::min<Instant>(*next, limits.max_wall_steps));
    }
  }
  res.answer = sim.answer();
  return res;
}

}  // namespace tfm
