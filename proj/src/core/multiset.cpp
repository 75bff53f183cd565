#include "tfm/core/multiset.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace tfm {

namespace {

auto lower(std::vector<Multiset::Entry>& v, SymbolId s) {
  return std::lower_bound(v.begin(), v.end(), s,
                          [](const Multiset::Entry& e, SymbolId key) { return e.first < key; });
}

auto lower(const std::vector<Multiset::Entry>& v, SymbolId s) {
  return std::lower_bound(v.begin(), v.end(), s,
                          [](const Multiset::Entry& e, SymbolId key) { return e.first < key; });
}

}  // namespace

Multiset::Multiset(std::initializer_list<Entry> entries) {
  for (const auto& [s, n] : entries) add(s, n);
}

std::uint64_t Multiset::count(SymbolId s) const noexcept {
  auto it = lower(entries_, s);
  return (it != entries_.end() && it->first == s) ? it->second : 0;
}

void Multiset::add(SymbolId s, std::uint64_t n) {
  if (n == 0) return;
  auto it = lower(entries_, s);
  if (it != entries_.end() && it->first == s) {
    it->second += n;
  } else {
    entries_.insert(it, {s, n});
  }
}

void Multiset::add(const Multiset& other, std::uint64_t times) {
  if (times == 0) return;
  if (entries_.empty()) {
    entries_ = other.entries_;
    if (times != 1)
      for (auto& e : entries_) e.second *= times;
    return;
  }
  for (const auto& [s, n] : other.entries_) add(s, n * times);
}

bool Multiset::remove(SymbolId s, std::uint64_t n) {
  if (n == 0) return true;
  auto it = lower(entries_, s);
  if (it == entries_.end() || it->first != s || it->second < n) return false;
  it->second -= n;
  if (it->second == 0) entries_.erase(it);
  return true;
}

void Multiset::remove(const Multiset& other, std::uint64_t times) {
  if (!contains(other, times)) throw std::logic_error("multiset removal exceeds contents");
  for (const auto& [s, n] : other.entries_) remove(s, n * times);
}

bool Multiset::contains(const Multiset& other, std::uint64_t times) const noexcept {
  for (const auto& [s, n] : other.entries_)
    if (count(s) < n * times) return false;
  return true;
}

std::uint64_t Multiset::fit_count(const Multiset& pattern) const noexcept {
  auto best = std::numeric_limits<std::uint64_t>::max();
  for (const auto& [s, n] : pattern.entries_) best = std::min(best, count(s) / n);
  return pattern.entries_.empty() ? 0 : best;
}

Multiset Multiset::times(std::uint64_t m) const {
  Multiset out;
  out.add(*this, m);
  return out;
}

std::uint64_t Multiset::total() const noexcept {
  std::uint64_t t = 0;
  for (const auto& e : entries_) t += e.second;
  return t;
}

}  // namespace tfm
