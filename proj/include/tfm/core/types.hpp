#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <type_traits>

namespace tfm {

/// Membrane polarization.
enum class Charge : std::uint8_t { Neutral, Positive, Negative };

std::string_view to_string(Charge c);
std::optional<Charge> parse_charge(std::string_view text);

// Strong integer handles. Labels are signed: the dummy label -1 is legal.
enum class Label : std::int32_t {};
enum class MembraneId : std::uint32_t {};
enum class RuleId : std::uint32_t {};
enum class RecordId : std::uint64_t {};

using SymbolId = std::uint32_t;
using Instant = std::uint64_t;

template <class E>
constexpr std::underlying_type_t<E> raw(E e) noexcept {
  return static_cast<std::underlying_type_t<E>>(e);
}

constexpr Label label_of(std::int32_t v) noexcept { return static_cast<Label>(v); }

}  // namespace tfm
