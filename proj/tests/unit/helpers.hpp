#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "tfm/engine/simulator.hpp"
#include "tfm/engine/system.hpp"

namespace tfm::test {

/// Multiset from "a b:3 c" (name, optionally :count), interning names as needed.
inline Multiset ms(Alphabet& a, const std::string& spec) {
  Multiset m;
  std::istringstream in(spec);
  for (std::string tok; in >> tok;) {
    const auto colon = tok.find(':');
    const auto name = tok.substr(0, colon);
    const std::uint64_t n = colon == std::string::npos ? 1 : std::stoull(tok.substr(colon + 1));
    m.add(a.intern(name), n);
  }
  return m;
}

/// Skin labelled 0 with the given contents, labels 0..max_label.
inline SystemDefinition small_system(int max_label, const std::string& skin_objects = "") {
  SystemDefinition def;
  for (int h = -1; h <= max_label; ++h) def.labels.push_back(label_of(h));
  def.skin.label = label_of(0);
  def.skin.objects = ms(def.alphabet, skin_objects);
  return def;
}

inline MembraneSpec membrane(SystemDefinition& def, int label, Charge c, const std::string& objects,
                             std::vector<MembraneSpec> children = {}) {
  return MembraneSpec{label_of(label), c, ms(def.alphabet, objects), std::move(children)};
}

inline std::string contents(const Simulator& sim, MembraneId id) {
  return render(sim.configuration().node(id).objects, sim.system().alphabet);
}

/// First alive membrane with the given label.
inline MembraneId find_label(const Configuration& cfg, int label) {
  for (auto id : cfg.alive_ids())
    if (cfg.node(id).label == label_of(label)) return id;
  throw std::runtime_error("no membrane labelled " + std::to_string(label));
}

inline std::vector<MembraneId> all_with_label(const Configuration& cfg, int label) {
  std::vector<MembraneId> out;
  for (auto id : cfg.alive_ids())
    if (cfg.node(id).label == label_of(label)) out.push_back(id);
  return out;
}

inline Simulator unit_sim(const SystemDefinition& def, std::uint64_t seed = 1,
                          SimulatorOptions opts = {}) {
  return Simulator(def, TimeMapping::unit(def.rules.size()), seed, opts);
}

}  // namespace tfm::test
