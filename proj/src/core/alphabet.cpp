#include "tfm/core/alphabet.hpp"

#include <stdexcept>

namespace tfm {

SymbolId Alphabet::intern(std::string_view name) {
  if (auto it = index_.find(name); it != index_.end()) return it->second;
  auto id = static_cast<SymbolId>(names_.size());
  names_.emplace_back(name);
  index_.emplace(names_.back(), id);
  return id;
}

std::optional<SymbolId> Alphabet::find(std::string_view name) const {
  if (auto it = index_.find(name); it != index_.end()) return it->second;
  return std::nullopt;
}

SymbolId Alphabet::at(std::string_view name) const {
  if (auto id = find(name)) return *id;
  throw std::out_of_range("unknown symbol '" + std::string(name) + "'");
}

}  // namespace tfm
