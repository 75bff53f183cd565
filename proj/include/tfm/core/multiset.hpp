#pragma once

#include <cstdint>
#include <initializer_list>
#include <utility>
#include <vector>

#include "tfm/core/types.hpp"

namespace tfm {

/// Finite multiset over symbol ids, stored as a sorted vector with no zero counts.
class Multiset {
 public:
  using Entry = std::pair<SymbolId, std::uint64_t>;

  Multiset() = default;
  Multiset(std::initializer_list<Entry> entries);

  std::uint64_t count(SymbolId s) const noexcept;
  void add(SymbolId s, std::uint64_t n = 1);
  void add(const Multiset& other, std::uint64_t times = 1);
  /// Removes n copies of s; returns false (and leaves the multiset untouched) if fewer are present.
  bool remove(SymbolId s, std::uint64_t n = 1);
  /// Removes `other` `times` times. Precondition: contains(other, times).
  void remove(const Multiset& other, std::uint64_t times = 1);
  bool contains(const Multiset& other, std::uint64_t times = 1) const noexcept;
  /// Largest m such that contains(pattern, m). Pattern must be non-empty.
  std::uint64_t fit_count(const Multiset& pattern) const noexcept;

  Multiset times(std::uint64_t m) const;

  std::uint64_t total() const noexcept;
  bool empty() const noexcept { return entries_.empty(); }
  std::size_t distinct() const noexcept { return entries_.size(); }
  void clear() noexcept { entries_.clear(); }

  auto begin() const noexcept { return entries_.begin(); }
  auto end() const noexcept { return entries_.end(); }

  friend bool operator==(const Multiset&, const Multiset&) = default;

 private:
  std::vector<Entry> entries_;
};

}  // namespace tfm
