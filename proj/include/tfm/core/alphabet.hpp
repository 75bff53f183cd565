#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tfm/core/types.hpp"

namespace tfm {

/// Interned object names. Symbol ids are dense and assigned in insertion order.
class Alphabet {
 public:
  SymbolId intern(std::string_view name);
  std::optional<SymbolId> find(std::string_view name) const;
  /// Throws std::out_of_range for names not in the alphabet.
  SymbolId at(std::string_view name) const;
  const std::string& name(SymbolId id) const { return names_.at(id); }
  bool contains(SymbolId id) const noexcept { return id < names_.size(); }
  std::size_t size() const noexcept { return names_.size(); }
  const std::vector<std::string>& names() const noexcept { return names_; }

 private:
  std::vector<std::string> names_;
  std::map<std::string, SymbolId, std::less<>> index_;
};

}  // namespace tfm
