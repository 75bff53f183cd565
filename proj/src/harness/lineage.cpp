#include "tfm/harness/lineage.hpp"

#include <bit>
#include <sstream>

#include "tfm/oracle/oracle.hpp"

namespace tfm {

LineageTracker::LineageTracker(const Instance& inst, const ConstructionMap& map)
    : inst_(inst), map_(map), separation_instants_(static_cast<std::size_t>(map.n)) {
  for (int i = 0; i < map.n; ++i) {
    round_of_divide_[raw(map.round_divide[i])] = i + 1;
    round_of_separate_[raw(map.round_separate[i])] = i + 1;
  }
}

std::optional<Subset> LineageTracker::owner(MembraneId m) const {
  if (auto it = owner_.find(raw(m)); it != owner_.end()) return it->second;
  return std::nullopt;
}

void LineageTracker::seed_owners(const Configuration& cfg) {
  for (auto id : cfg.alive_ids())
    if (id != cfg.skin()) owner_[raw(id)] = 0;
  seeded_ = true;
}

void LineageTracker::observe(const StepReport& report, const Simulator& sim) {
  const auto& cfg = sim.configuration();
  if (!seeded_) seed_owners(cfg);
  bool generation_done_now = false;
  for (const auto& c : report.completed) {
    const auto mine = owner(c.membrane);
    const auto rid = raw(c.rule);
    if (auto it = round_of_divide_.find(rid); it != round_of_divide_.end() && mine) {
      // The first child receives v_i' (vertex selected).
      if (c.created.size() == 2) {
        owner_[raw(c.created[0])] = *mine | (Subset{1} << (it->second - 1));
        owner_[raw(c.created[1])] = *mine;
      }
    } else if (auto sep = round_of_separate_.find(rid); sep != round_of_separate_.end()) {
      const int round = sep->second;
      separation_instants_[round - 1].insert(report.instant);
      for (auto copy : c.created) {
        for (auto child : cfg.node(copy).children)
          if (auto o = owner(child)) {
            owner_[raw(copy)] = *o;
            break;
          }
      }
      if (round == map_.n && ++last_round_separations_ == (std::uint64_t{1} << (map_.n - 1)))
        generation_done_now = true;
    } else if (mine) {
      for (auto m : c.created) owner_[raw(m)] = *mine;
    }
    if (!mine) continue;
    if (c.rule == map_.check_divide) check_instants_.insert(report.instant);
    for (auto r : map_.d_send_out)
      if (c.rule == r) ++stats_[*mine].deposits;
    if (c.rule == map_.lineage_dissolve) stats_[*mine].dissolved = true;
  }
  if (generation_done_now) check_structure(sim, report.instant);
}

void LineageTracker::check_structure(const Simulator& sim, Instant at) {
  generation_instant_ = at;
  const auto& cfg = sim.configuration();
  const auto& skin = cfg.node(cfg.skin());
  const int n = map_.n;
  std::ostringstream why;
  std::set<Subset> seen;
  std::size_t zeros = 0;
  const auto live = sim.live_records();
  for (auto id : cfg.alive_ids()) {
    const auto& node = cfg.node(id);
    if (node.label != map_.lineage_label) continue;
    ++zeros;
    if (node.parent != skin.id) {
      why << "membrane " << raw(id) << " labelled 0 is not directly under the skin; ";
      continue;
    }
    if (node.children.size() != 1 || cfg.node(node.children[0]).label != map_.selection_label) {
      why << "membrane " << raw(id) << " does not hold exactly one membrane labelled "
          << raw(map_.selection_label) << "; ";
      continue;
    }
    const auto inner = node.children[0];
    const auto s = owner(inner);
    if (!s) {
      why << "membrane " << raw(inner) << " has no lineage; ";
      continue;
    }
    seen.insert(*s);
    // Rules starting at this same instant may already hold some of the contents.
    auto objs = cfg.node(inner).objects;
    for (const auto& rec : live)
      if (rec.membrane == inner && rec.kind != RuleKind::SendIn) objs.add(rec.bound);
    const auto c_expected = static_cast<std::uint64_t>(n - std::popcount(*s));
    if (objs.count(map_.c) != c_expected)
      why << "lineage " << *s << " holds " << objs.count(map_.c) << " c, expected " << c_expected
          << "; ";
    const auto& alpha = sim.system().alphabet;
    if (objs.count(alpha.at("b")) != 1) why << "lineage " << *s << " lost its b; ";
    int h = 0;
    for (const auto& e : inst_.graph.edges()) {
      ++h;
      const auto expected = static_cast<std::uint64_t>(((*s >> (e.u - 1)) & 1U) +
                                                       ((*s >> (e.v - 1)) & 1U));
      const auto sym = alpha.at("e" + std::to_string(h));
      if (objs.count(sym) != expected)
        why << "lineage " << *s << " holds " << objs.count(sym) << " e" << h << ", expected "
            << expected << "; ";
    }
  }
  const auto expected = std::size_t{1} << n;
  if (zeros != expected) why << zeros << " membranes labelled 0, expected " << expected << "; ";
  if (seen.size() != expected) why << seen.size() << " distinct lineages, expected " << expected << "; ";
  structure_detail_ = why.str();
  structure_ok_ = structure_detail_.empty();
  if (structure_ok_) structure_detail_ = "ok";
}

bool LineageTracker::d_counts_ok() const {
  if (!generation_finished()) return false;
  for (Subset s = 0; s < (Subset{1} << map_.n); ++s) {
    const auto p = predict_d_count(inst_, s);
    const auto it = stats_.find(s);
    const LineageStats got = it == stats_.end() ? LineageStats{} : it->second;
    if (got.deposits != p.predicted || got.dissolved != p.dissolves) return false;
  }
  return true;
}

std::string LineageTracker::d_count_detail() const {
  if (!generation_finished()) return "generation did not finish";
  std::ostringstream out;
  for (Subset s = 0; s < (Subset{1} << map_.n); ++s) {
    const auto p = predict_d_count(inst_, s);
    const auto it = stats_.find(s);
    const LineageStats got = it == stats_.end() ? LineageStats{} : it->second;
    if (got.deposits != p.predicted || got.dissolved != p.dissolves)
      out << "lineage " << s << ": " << got.deposits << " d (predicted " << p.predicted
          << "), dissolved=" << got.dissolved << "; ";
  }
  const auto s = out.str();
  return s.empty() ? "ok" : s;
}

bool LineageTracker::lockstep_ok() const {
  if (!generation_finished()) return false;
  for (const auto& round : separation_instants_)
    if (round.size() != 1) return false;
  return check_instants_.size() == 1;
}

std::optional<StrandedG> find_stranded_g(const Configuration& cfg, const ConstructionMap& map) {
  for (auto id : cfg.alive_ids()) {
    const auto& node = cfg.node(id);
    if (id == cfg.skin() || node.label == map.lineage_label) continue;
    for (int i = 1; i <= map.n; ++i) {
      if (node.objects.count(map.g[i - 1]) == 0) continue;
      if (node.label == label_of(i + 1)) continue;
      return StrandedG{i, id, node.label};
    }
  }
  return std::nullopt;
}

}  // namespace tfm
