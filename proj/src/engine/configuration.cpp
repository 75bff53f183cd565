#include "tfm/engine/configuration.hpp"

#include <algorithm>

#include "tfm/engine/system.hpp"

namespace tfm {

Configuration::Configuration(const MembraneSpec& skin) { skin_ = build(skin, std::nullopt); }

MembraneId Configuration::build(const MembraneSpec& spec, std::optional<MembraneId> parent) {
  auto id = create(spec.label, spec.charge, spec.objects, parent);
  for (const auto& c : spec.children) {
    auto child = build(c, id);
    nodes_[raw(id)].children.push_back(child);
  }
  return id;
}

MembraneId Configuration::create(Label label, Charge charge, Multiset objects,
                                 std::optional<MembraneId> parent) {
  auto id = static_cast<MembraneId>(nodes_.size());
  MembraneNode n;
  n.id = id;
  n.label = label;
  n.charge = charge;
  n.objects = std::move(objects);
  n.parent = parent;
  nodes_.push_back(std::move(n));
  return id;
}

MembraneId Configuration::clone_subtree(MembraneId id, MembraneId new_parent) {
  const auto src = nodes_.at(raw(id));  // copy: nodes_ may reallocate below
  auto copy = create(src.label, src.charge, src.objects, new_parent);
  for (auto c : src.children) {
    auto cc = clone_subtree(c, copy);
    nodes_[raw(copy)].children.push_back(cc);
  }
  return copy;
}

std::vector<MembraneId> Configuration::alive_ids() const {
  std::vector<MembraneId> out;
  for (const auto& n : nodes_)
    if (n.alive) out.push_back(n.id);
  return out;
}

std::size_t Configuration::alive_count() const {
  return static_cast<std::size_t>(
      std::count_if(nodes_.begin(), nodes_.end(), [](const auto& n) { return n.alive; }));
}

bool Configuration::in_subtree(MembraneId root, MembraneId id) const {
  for (std::optional<MembraneId> cur = id; cur; cur = node(*cur).parent)
    if (*cur == root) return true;
  return false;
}

std::string render(const Multiset& m, const Alphabet& alphabet) {
  std::vector<std::string> parts;
  for (const auto& [s, n] : m)
    parts.push_back(alphabet.name(s) + (n > 1 ? "^" + std::to_string(n) : ""));
  std::sort(parts.begin(), parts.end());
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out += ' ';
    out += p;
  }
  return out;
}

std::string Configuration::canonical(const Alphabet& alphabet, MembraneId id) const {
  const auto& n = node(id);
  std::vector<std::string> kids;
  for (auto c : n.children) kids.push_back(canonical(alphabet, c));
  std::sort(kids.begin(), kids.end());
  std::string out = "[" + render(n.objects, alphabet);
  for (const auto& k : kids) out += k;
  out += "]" + std::to_string(raw(n.label)) + std::string(to_string(n.charge));
  return out;
}

std::string Configuration::canonical(const Alphabet& alphabet) const {
  return render(environment_, alphabet) + " " + canonical(alphabet, skin_);
}

}  // namespace tfm
