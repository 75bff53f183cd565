#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tfm/core/alphabet.hpp"
#include "tfm/core/multiset.hpp"
#include "tfm/core/types.hpp"

namespace tfm {

struct MembraneSpec;

struct MembraneNode {
  MembraneId id{};
  Label label{};
  Charge charge = Charge::Neutral;
  Multiset objects;
  std::vector<MembraneId> children;
  std::optional<MembraneId> parent;  // empty for the skin
  bool alive = true;
};

/// Live membrane tree plus the environment. Ids index a slot vector and are never reused;
/// dissolved or replaced membranes stay as dead slots.
class Configuration {
 public:
  explicit Configuration(const MembraneSpec& skin);

  MembraneId skin() const noexcept { return skin_; }
  const MembraneNode& node(MembraneId id) const { return nodes_.at(raw(id)); }
  MembraneNode& node(MembraneId id) { return nodes_.at(raw(id)); }
  bool alive(MembraneId id) const { return raw(id) < nodes_.size() && nodes_[raw(id)].alive; }
  std::size_t slot_count() const noexcept { return nodes_.size(); }

  const Multiset& environment() const noexcept { return environment_; }
  Multiset& environment() noexcept { return environment_; }

  /// Appends a fresh membrane (not yet linked into any children list).
  MembraneId create(Label label, Charge charge, Multiset objects, std::optional<MembraneId> parent);
  /// Deep-copies the subtree rooted at `id` under `new_parent`; returns the copy's id.
  MembraneId clone_subtree(MembraneId id, MembraneId new_parent);

  std::vector<MembraneId> alive_ids() const;
  std::size_t alive_count() const;
  bool in_subtree(MembraneId root, MembraneId id) const;

  /// Id-free rendering: label, charge, sorted object names and sorted children. Two
  /// configurations are equal up to renaming of ids iff their canonical strings match.
  std::string canonical(const Alphabet& alphabet) const;

 private:
  MembraneId build(const MembraneSpec& spec, std::optional<MembraneId> parent);
  std::string canonical(const Alphabet& alphabet, MembraneId id) const;

  std::vector<MembraneNode> nodes_;
  Multiset environment_;
  MembraneId skin_{};
};

std::string render(const Multiset& m, const Alphabet& alphabet);

}  // namespace tfm
